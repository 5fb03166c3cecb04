// cli.hpp - command dispatch for the discovery engine: data ingestion,
// encoding, subcommands, and machine-readable reports on stdout.
#pragma once

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bandod/bandwidth.hpp"
#include "bandod/bench.hpp"
#include "bandod/core.hpp"
#include "bandod/csv.hpp"
#include "bandod/discovery.hpp"
#include "bandod/encoding.hpp"
#include "bandod/lmb.hpp"
#include "bandod/oracle.hpp"
#include "bandod/pieces.hpp"
#include "bandod/report.hpp"

namespace bandod::cli {

using report::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitSizeLimit = 4;

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

// --order month=Jan,Feb,... declarations, keyed by column name.
inline std::map<std::string, std::vector<std::string>> parse_orders(
    const std::vector<std::string>& decls) {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& d : decls) {
    const auto eq = d.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw DataError("bad --order declaration '" + d + "', expected col=v1,v2,...");
    }
    out[d.substr(0, eq)] = split(d.substr(eq + 1), ',');
  }
  return out;
}

// A column is numeric when at least one non-null cell parses; stray
// non-numeric cells in such a column are data errors reported with their
// row, not a reason to silently fall back to text ranks.
inline bool column_is_numeric(const io::CsvTable& table, int col) {
  for (const auto& row : table.rows) {
    const std::string& v = row[static_cast<std::size_t>(col)];
    if (is_null_token(v)) continue;
    try {
      parse_scaled_decimal(v, decimal_scale_of(v), "probe");
      return true;
    } catch (const EncodingError&) {
    }
  }
  return false;
}

// Builds a row encoder for the named columns: declared orders win, then
// numeric if every non-null value parses, then lexicographic text ranks.
inline RowEncoder make_encoder(const io::CsvTable& table, const std::vector<std::string>& columns,
                               const std::map<std::string, std::vector<std::string>>& orders) {
  std::vector<ColumnSchema> schemas;
  for (const auto& name : columns) {
    ColumnSchema s;
    s.name = name;
    const auto declared = orders.find(name);
    if (declared != orders.end()) {
      s.kind = ColumnKind::categorical;
      s.category_order = declared->second;
    } else {
      s.kind = column_is_numeric(table, table.column(name)) ? ColumnKind::numeric
                                                            : ColumnKind::text_rank;
    }
    schemas.push_back(std::move(s));
  }
  RowEncoder enc(std::move(schemas));
  std::vector<std::string> raw(columns.size());
  std::vector<int> cols;
  for (const auto& name : columns) cols.push_back(table.column(name));
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) raw[c] = table.cell(r, cols[c]);
    enc.observe(raw);
  }
  enc.finalize();
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) raw[c] = table.cell(r, cols[c]);
    enc.observe_encoded(raw, "row " + std::to_string(r + 1));
  }
  return enc;
}

struct Dataset {
  std::vector<std::string> x_columns, y_columns;
  SequenceView sequence;                 // rows sorted by x
  std::vector<std::int64_t> x_combined;  // linearized x per sorted position
};

struct LoadArgs {
  std::string input;
  std::string x_list, y_list;
  std::vector<std::string> order_decls;
};

// `row_ids`, when given, carries source row numbers for a projected table
// (the --group-by path); by default rows are numbered 1..n in file order.
inline Dataset load_dataset_table(const io::CsvTable& table, const LoadArgs& args, bool need_y,
                                  const std::vector<std::int64_t>* row_ids = nullptr) {
  Dataset d;
  d.x_columns = split(args.x_list, ',');
  if (need_y) d.y_columns = split(args.y_list, ',');
  const auto orders = parse_orders(args.order_decls);

  RowEncoder x_enc = make_encoder(table, d.x_columns, orders);
  std::optional<RowEncoder> y_enc;
  if (need_y) y_enc.emplace(make_encoder(table, d.y_columns, orders));

  std::vector<int> x_cols, y_cols;
  for (const auto& name : d.x_columns) x_cols.push_back(table.column(name));
  for (const auto& name : d.y_columns) y_cols.push_back(table.column(name));

  std::vector<TupleRecord> records;
  std::vector<std::string> raw;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    TupleRecord rec;
    rec.row_id = row_ids ? (*row_ids)[r] : static_cast<std::int64_t>(r) + 1;
    const std::string context = "row " + std::to_string(rec.row_id);
    raw.assign(x_cols.size(), "");
    for (std::size_t c = 0; c < x_cols.size(); ++c) raw[c] = table.cell(r, x_cols[c]);
    const OrderedValue combined = x_enc.encode(raw, context);
    if (combined.is_null) {
      throw DataError("null X value at " + context + " of '" + args.input + "'");
    }
    rec.x_key = {combined.encoded};
    if (need_y) {
      raw.assign(y_cols.size(), "");
      for (std::size_t c = 0; c < y_cols.size(); ++c) raw[c] = table.cell(r, y_cols[c]);
      rec.y = y_enc->encode(raw, context);
    }
    records.push_back(std::move(rec));
  }
  d.sequence = build_sequence(std::move(records));
  for (int i = 1; i <= d.sequence.size(); ++i) {
    d.x_combined.push_back(d.sequence.at(i).x_key[0]);
  }
  return d;
}

inline Dataset load_dataset(const LoadArgs& args, bool need_y = true) {
  return load_dataset_table(io::read_csv(args.input), args, need_y);
}

inline void emit(std::ostream& out, const ordered_json& j) { out << j.dump(2) << "\n"; }

inline std::int64_t row_of(const SequenceView& seq, int pos) { return seq.at(pos).row_id; }

inline std::vector<std::int64_t> rows_of(const SequenceView& seq, const std::vector<int>& pos) {
  std::vector<std::int64_t> out;
  out.reserve(pos.size());
  for (int p : pos) out.push_back(row_of(seq, p));
  return out;
}

struct DiscoverOptions {
  std::string mode = "abcod";
  std::string direction = "asc";
  std::string delta = "auto";
  std::int64_t epsilon = 1;
  bool pieces = true;
  double ratio = 0.4;
  std::int64_t delta_max = 20;
};

inline std::int64_t resolve_delta(const SequenceView& seq, const DiscoverOptions& opt,
                                  bool* was_auto = nullptr) {
  if (opt.delta != "auto") {
    if (was_auto) *was_auto = false;
    try {
      std::size_t used = 0;
      const std::int64_t v = std::stoll(opt.delta, &used);
      if (used != opt.delta.size() || v < 0) throw std::invalid_argument(opt.delta);
      return v;
    } catch (const std::exception&) {
      throw DataError("--delta expects a non-negative integer or 'auto', got '" + opt.delta + "'");
    }
  }
  if (was_auto) *was_auto = true;
  return estimate_bandwidth(seq, opt.delta_max, opt.ratio, direction_from_string(opt.direction));
}

inline report::DiscoveryReport discover_one(const Dataset& d, const DiscoverOptions& opt,
                                            std::vector<std::pair<std::string, double>>* timings) {
  const SequenceView& seq = d.sequence;
  report::DiscoveryReport rep;
  rep.mode = opt.mode;
  rep.x_columns = d.x_columns;
  rep.y_columns = d.y_columns;
  rep.direction = opt.direction;
  rep.epsilon = opt.epsilon;
  rep.pieces = opt.pieces;

  const auto t0 = std::chrono::steady_clock::now();
  rep.delta = resolve_delta(seq, opt, &rep.delta_auto);
  const Direction dir = direction_from_string(opt.direction);
  const auto t1 = std::chrono::steady_clock::now();

  const int n = seq.size();
  if (opt.mode == "abod") {
    const AbodResult r = abod_error_ratio(seq, rep.delta, dir);
    rep.error_ratio = r.error_ratio;
    rep.total_gain = 2 * static_cast<std::int64_t>(r.lmb.length) - seq.count_non_null();
    rep.segment_count = n > 0 ? 1 : 0;
    if (n > 0) {
      report::SegmentReport s;
      s.start_row = row_of(seq, 1);
      s.end_row = row_of(seq, n);
      s.direction = to_string(r.lmb.direction);
      s.gain = rep.total_gain;
      s.cost = bandod::detail::longest_outlier_run(seq, r.lmb);
      s.outlier_rows = rows_of(seq, r.outlier_indices);
      rep.segments.push_back(std::move(s));
    }
  } else {
    Segmentation seg;
    if (opt.mode == "bcod") {
      if (dir == Direction::bidirectional) {
        throw DataError("--mode bcod needs --direction asc or desc");
      }
      seg = bcod_segment(seq, rep.delta, dir);
    } else if (opt.mode == "abcod") {
      BandOdSpec spec;
      spec.x_columns = d.x_columns;
      spec.y_columns = d.y_columns;
      spec.delta = rep.delta;
      spec.epsilon = opt.epsilon;
      spec.direction = dir;
      seg = opt.pieces ? discover_abcod_pieces(seq, spec) : discover_abcod(seq, spec);
    } else {
      throw DataError("unknown --mode '" + opt.mode + "'");
    }
    rep.total_gain = seg.total_gain;
    rep.segment_count = static_cast<std::int64_t>(seg.segments.size());
    std::int64_t outliers = 0;
    for (const auto& s : seg.segments) {
      report::SegmentReport sr;
      sr.start_row = row_of(seq, s.start);
      sr.end_row = row_of(seq, s.end);
      sr.direction = to_string(s.direction);
      sr.gain = s.gain;
      sr.cost = s.cost;
      sr.outlier_rows = rows_of(seq, s.outlier_indices);
      outliers += static_cast<std::int64_t>(s.outlier_indices.size());
      rep.segments.push_back(std::move(sr));
    }
    rep.error_ratio = Ratio{outliers, n == 0 ? 1 : n};
  }
  const auto t2 = std::chrono::steady_clock::now();
  if (timings) {
    timings->emplace_back("delta_ms", std::chrono::duration<double, std::milli>(t1 - t0).count());
    timings->emplace_back("discover_ms",
                          std::chrono::duration<double, std::milli>(t2 - t1).count());
  }
  return rep;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"band order dependency discovery engine"};
  app.require_subcommand(1);

  detail::LoadArgs load;
  auto add_data_flags = [&](CLI::App* cmd, bool need_y = true) {
    cmd->add_option("--input", load.input, "input CSV (UTF-8, header row)")->required();
    cmd->add_option("--x", load.x_list, "comma-separated X columns")->required();
    if (need_y) cmd->add_option("--y", load.y_list, "comma-separated Y columns")->required();
    cmd->add_option("--order", load.order_decls,
                    "declared category order, col=v1,v2,... (repeatable)");
  };

  detail::DiscoverOptions opt;
  std::string format = "json";
  bool timings = false;
  std::string group_by;
  int threads = 0;
  std::optional<std::uint64_t> seed;

  auto* discover = app.add_subcommand("discover", "discover dependencies and segment the data");
  add_data_flags(discover);
  discover->add_option("--mode", opt.mode, "abod|bcod|abcod")
      ->check(CLI::IsMember({"abod", "bcod", "abcod"}));
  discover->add_option("--direction", opt.direction, "asc|desc|bi")
      ->check(CLI::IsMember({"asc", "desc", "bi"}));
  discover->add_option("--delta", opt.delta, "band width (integer) or 'auto'");
  discover->add_option("--epsilon", opt.epsilon, "max consecutive outliers per segment")
      ->check(CLI::NonNegativeNumber);
  discover->add_flag("--pieces,!--no-pieces", opt.pieces, "use the piece-pruned DP (default on)");
  discover->add_option("--ratio", opt.ratio, "approximation ratio for --delta auto");
  discover->add_option("--delta-max", opt.delta_max, "sweep cap for --delta auto")
      ->check(CLI::PositiveNumber);
  discover->add_option("--format", format, "json|tsv")->check(CLI::IsMember({"json", "tsv"}));
  discover->add_flag("--timings", timings, "include per-phase wall clock in the report");
  discover->add_option("--group-by", group_by, "process each group of this column separately");
  discover->add_option("--threads", threads,
                       "worker threads for --group-by (default $BANDOD_THREADS or 1)");
  discover->add_option("--seed", seed, "echoed into the report");

  auto* lmb_cmd = app.add_subcommand("lmb", "longest monotonic band of the whole sequence");
  add_data_flags(lmb_cmd);
  std::int64_t lmb_delta = 0;
  std::string lmb_direction = "asc";
  lmb_cmd->add_option("--delta", lmb_delta, "band width")->check(CLI::NonNegativeNumber);
  lmb_cmd->add_option("--direction", lmb_direction, "asc|desc|bi")
      ->check(CLI::IsMember({"asc", "desc", "bi"}));

  auto* estimate = app.add_subcommand("estimate-delta", "automatic band-width estimation");
  add_data_flags(estimate);
  double est_ratio = 0.4;
  std::int64_t est_delta_max = 20;
  std::string est_direction = "asc";
  estimate->add_option("--ratio", est_ratio, "approximation ratio for the division step");
  estimate->add_option("--delta-max", est_delta_max, "largest width to sweep")
      ->check(CLI::PositiveNumber);
  estimate->add_option("--direction", est_direction, "asc|desc|bi")
      ->check(CLI::IsMember({"asc", "desc", "bi"}));

  auto* generate = app.add_subcommand("generate", "write a synthetic series dataset");
  bench::SeriesDatasetConfig gen;
  std::string gen_out, gen_truth_out;
  generate->add_option("--out", gen_out, "data CSV path")->required();
  generate->add_option("--truth-out", gen_truth_out, "ground-truth CSV path")->required();
  generate->add_option("--series", gen.series_count, "number of series");
  generate->add_option("--size-min", gen.size_min, "min series size");
  generate->add_option("--size-max", gen.size_max, "max series size");
  generate->add_option("--asc-fraction", gen.asc_fraction, "fraction of ascending series");
  generate->add_option("--step-max", gen.step_max, "max upward step inside a series");
  generate->add_option("--jitter", gen.jitter, "max pairwise dip inside a series");
  generate->add_option("--null-rate", gen.null_rate, "probability of a null y");
  generate->add_option("--seed", gen.seed, "rng seed");

  auto* perturb = app.add_subcommand("perturb", "inject a controlled error rate");
  std::string pert_input, pert_truth, pert_out, pert_truth_out;
  double pert_rate = 0.05;
  std::uint64_t pert_seed = 1;
  perturb->add_option("--input", pert_input, "data CSV from 'generate'")->required();
  perturb->add_option("--truth", pert_truth, "truth CSV from 'generate'")->required();
  perturb->add_option("--out", pert_out, "perturbed data CSV path")->required();
  perturb->add_option("--truth-out", pert_truth_out, "updated truth CSV path")->required();
  perturb->add_option("--rate", pert_rate, "error rate in [0, 1]");
  perturb->add_option("--seed", pert_seed, "rng seed");

  auto* evaluate = app.add_subcommand("evaluate", "score discovered segments against truth");
  add_data_flags(evaluate);
  std::string eval_truth, eval_method = "abcod";
  double eval_k_sigma = 3.0;
  evaluate->add_option("--truth", eval_truth, "truth CSV (row_id, series_id, is_error)")
      ->required();
  evaluate->add_option("--method", eval_method, "abcod|gap")
      ->check(CLI::IsMember({"abcod", "gap"}));
  evaluate->add_option("--k-sigma", eval_k_sigma, "gap threshold in standard deviations");
  evaluate->add_option("--mode", opt.mode)->check(CLI::IsMember({"abod", "bcod", "abcod"}));
  evaluate->add_option("--direction", opt.direction)->check(CLI::IsMember({"asc", "desc", "bi"}));
  evaluate->add_option("--delta", opt.delta);
  evaluate->add_option("--epsilon", opt.epsilon)->check(CLI::NonNegativeNumber);
  evaluate->add_flag("--pieces,!--no-pieces", opt.pieces);
  evaluate->add_option("--ratio", opt.ratio);
  evaluate->add_option("--delta-max", opt.delta_max);

  auto* gap = app.add_subcommand("gap", "segment at large X gaps (baseline)");
  add_data_flags(gap, /*need_y=*/false);
  double gap_k_sigma = 3.0;
  gap->add_option("--k-sigma", gap_k_sigma, "threshold in standard deviations");

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force references (size-capped)");
  add_data_flags(oracle_cmd);
  std::string what = "lmb";
  std::int64_t oracle_delta = 0, oracle_epsilon = 1;
  std::string oracle_direction = "asc";
  oracle_cmd->add_option("--what", what, "lmb|segmentation|bcod")
      ->check(CLI::IsMember({"lmb", "segmentation", "bcod"}));
  oracle_cmd->add_option("--delta", oracle_delta)->check(CLI::NonNegativeNumber);
  oracle_cmd->add_option("--epsilon", oracle_epsilon)->check(CLI::NonNegativeNumber);
  oracle_cmd->add_option("--direction", oracle_direction)
      ->check(CLI::IsMember({"asc", "desc", "bi"}));

  auto* rank = app.add_subcommand("rank", "rank candidate dependencies by distinctive degree");
  std::string rank_input;
  std::vector<std::string> rank_candidates;
  std::vector<std::string> rank_orders;
  double rank_ratio = 0.4;
  std::int64_t rank_delta_max = 20;
  std::string rank_direction = "asc";
  rank->add_option("--input", rank_input, "input CSV")->required();
  rank->add_option("--candidate", rank_candidates,
                   "candidate as xcols:ycols[:dir], '+'-separated columns (repeatable)")
      ->required();
  rank->add_option("--order", rank_orders, "declared category order, col=v1,v2,...");
  rank->add_option("--ratio", rank_ratio);
  rank->add_option("--delta-max", rank_delta_max);
  rank->add_option("--direction", rank_direction)->check(CLI::IsMember({"asc", "desc", "bi"}));

  try {
    std::vector<const char*> argv;
    argv.push_back("bandod");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (discover->parsed()) {
      if (threads == 0) {
        const char* env = std::getenv("BANDOD_THREADS");
        threads = env ? std::max(1, std::atoi(env)) : 1;
      }
      if (group_by.empty()) {
        const detail::Dataset d = detail::load_dataset(load);
        std::vector<std::pair<std::string, double>> phase_times;
        report::DiscoveryReport rep = detail::discover_one(d, opt, timings ? &phase_times : nullptr);
        rep.seed = seed;
        if (timings) rep.timings_ms = phase_times;
        if (format == "tsv") {
          out << report::to_tsv(rep);
        } else {
          detail::emit(out, report::to_json(rep));
        }
        return kExitOk;
      }
      if (format == "tsv") throw DataError("tsv output is not available with --group-by");
      const io::CsvTable table = io::read_csv(load.input);
      const int gcol = table.column(group_by);
      std::vector<std::string> group_names;
      std::map<std::string, std::size_t> group_index;
      std::vector<io::CsvTable> group_tables;
      std::vector<std::vector<std::int64_t>> group_rows;
      for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const std::string& g = table.rows[r][static_cast<std::size_t>(gcol)];
        auto it = group_index.find(g);
        if (it == group_index.end()) {
          it = group_index.emplace(g, group_names.size()).first;
          group_names.push_back(g);
          group_tables.push_back(io::CsvTable{table.header, {}});
          group_rows.emplace_back();
        }
        group_tables[it->second].rows.push_back(table.rows[r]);
        group_rows[it->second].push_back(static_cast<std::int64_t>(r) + 1);
      }
      std::vector<ordered_json> group_reports(group_names.size());
      std::vector<std::string> failures(group_names.size());
      auto work = [&](std::size_t tid, std::size_t stride) {
        for (std::size_t g = tid; g < group_names.size(); g += stride) {
          try {
            const detail::Dataset d =
                detail::load_dataset_table(group_tables[g], load, true, &group_rows[g]);
            report::DiscoveryReport rep = detail::discover_one(d, opt, nullptr);
            rep.seed = seed;
            ordered_json j = report::to_json(rep);
            j["group"] = group_names[g];
            group_reports[g] = std::move(j);
          } catch (const std::exception& e) {
            failures[g] = e.what();
          }
        }
      };
      const std::size_t nthreads = std::max<std::size_t>(
          1, std::min<std::size_t>(static_cast<std::size_t>(threads), group_names.size()));
      std::vector<std::thread> pool;
      for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(work, t, nthreads);
      work(0, nthreads);
      for (auto& th : pool) th.join();
      for (const auto& f : failures) {
        if (!f.empty()) throw DataError(f);
      }
      ordered_json result;
      result["group_by"] = group_by;
      result["groups"] = ordered_json::array();
      for (auto& g : group_reports) result["groups"].push_back(std::move(g));
      detail::emit(out, result);
      return kExitOk;
    }

    if (lmb_cmd->parsed()) {
      const detail::Dataset d = detail::load_dataset(load);
      const LmbResult r =
          compute_lmb_any(d.sequence, lmb_delta, direction_from_string(lmb_direction));
      ordered_json j;
      j["length"] = r.length;
      j["direction"] = to_string(r.direction);
      j["member_rows"] = detail::rows_of(d.sequence, r.member_indices);
      j["outlier_rows"] = detail::rows_of(d.sequence, r.outlier_indices);
      detail::emit(out, j);
      return kExitOk;
    }

    if (estimate->parsed()) {
      const detail::Dataset d = detail::load_dataset(load);
      const BandwidthEstimate est = estimate_bandwidth_detailed(
          d.sequence, est_delta_max, est_ratio, direction_from_string(est_direction));
      ordered_json j;
      j["delta"] = est.delta;
      j["segments"] = ordered_json::array();
      for (std::size_t i = 0; i < est.segments.size(); ++i) {
        const auto& seg = est.segments[i];
        ordered_json sj;
        sj["start_row"] = detail::row_of(d.sequence, seg.start);
        sj["end_row"] = detail::row_of(d.sequence, seg.end);
        sj["od_error"] = {{"num", seg.approx_od_error.num}, {"den", seg.approx_od_error.den}};
        sj["chosen"] = est.sweeps[i].chosen;
        sj["sweep"] = ordered_json::array();
        for (const auto& e : est.sweeps[i].per_delta) {
          ordered_json ej;
          ej["delta"] = e.delta;
          ej["d"] =
              e.d ? ordered_json{{"num", e.d->num}, {"den", e.d->den}} : ordered_json(nullptr);
          ej["a"] = e.a;
          sj["sweep"].push_back(std::move(ej));
        }
        j["segments"].push_back(std::move(sj));
      }
      detail::emit(out, j);
      return kExitOk;
    }

    if (generate->parsed()) {
      const auto [records, truth] = bench::generate_dataset(gen);
      io::CsvTable data;
      data.header = {"x", "y"};
      for (const auto& r : records) {
        data.rows.push_back(
            {std::to_string(r.x_key[0]), r.y.is_null ? "Null" : std::to_string(r.y.encoded)});
      }
      io::write_csv_file(gen_out, data);
      io::CsvTable tt;
      tt.header = {"row_id", "series_id", "is_error"};
      for (std::size_t i = 0; i < records.size(); ++i) {
        tt.rows.push_back({std::to_string(i + 1), std::to_string(truth.series_id[i]),
                           truth.is_error[i] ? "1" : "0"});
      }
      io::write_csv_file(gen_truth_out, tt);
      ordered_json j;
      j["rows"] = records.size();
      j["series"] = gen.series_count;
      j["out"] = gen_out;
      j["truth_out"] = gen_truth_out;
      detail::emit(out, j);
      return kExitOk;
    }

    if (perturb->parsed()) {
      const io::CsvTable data = io::read_csv(pert_input);
      const io::CsvTable tt = io::read_csv(pert_truth);
      const int xcol = data.column("x");
      const int ycol = data.column("y");
      std::vector<TupleRecord> records;
      bench::GroundTruth truth;
      for (std::size_t r = 0; r < data.rows.size(); ++r) {
        TupleRecord rec;
        rec.row_id = static_cast<std::int64_t>(r) + 1;
        rec.x_key = {std::stoll(data.cell(r, xcol))};
        const std::string& y = data.cell(r, ycol);
        rec.y = is_null_token(y) ? OrderedValue::null() : OrderedValue::of(std::stoll(y));
        records.push_back(std::move(rec));
      }
      const int sid = tt.column("series_id");
      const int ecol = tt.column("is_error");
      for (std::size_t r = 0; r < tt.rows.size(); ++r) {
        truth.series_id.push_back(std::stoi(tt.cell(r, sid)));
        truth.is_error.push_back(tt.cell(r, ecol) == "1");
      }
      auto [records2, truth2] =
          bench::perturb_cer(std::move(records), std::move(truth), pert_rate, pert_seed);
      io::CsvTable out_data;
      out_data.header = {"x", "y"};
      for (const auto& r : records2) {
        out_data.rows.push_back(
            {std::to_string(r.x_key[0]), r.y.is_null ? "Null" : std::to_string(r.y.encoded)});
      }
      io::write_csv_file(pert_out, out_data);
      io::CsvTable out_truth;
      out_truth.header = {"row_id", "series_id", "is_error"};
      for (std::size_t i = 0; i < records2.size(); ++i) {
        out_truth.rows.push_back({std::to_string(i + 1), std::to_string(truth2.series_id[i]),
                                  truth2.is_error[i] ? "1" : "0"});
      }
      io::write_csv_file(pert_truth_out, out_truth);
      int flagged = 0;
      for (bool e : truth2.is_error) flagged += e;
      ordered_json j;
      j["rows"] = records2.size();
      j["errors"] = flagged;
      detail::emit(out, j);
      return kExitOk;
    }

    if (evaluate->parsed()) {
      const detail::Dataset d = detail::load_dataset(load);
      const io::CsvTable tt = io::read_csv(eval_truth);
      const int rid = tt.column("row_id");
      const int sid = tt.column("series_id");
      std::map<std::int64_t, int> truth_by_row;
      for (std::size_t r = 0; r < tt.rows.size(); ++r) {
        truth_by_row[std::stoll(tt.cell(r, rid))] = std::stoi(tt.cell(r, sid));
      }
      Segmentation seg;
      if (eval_method == "gap") {
        seg = bench::gap_baseline(d.sequence, d.x_combined, eval_k_sigma);
      } else {
        BandOdSpec spec;
        spec.delta = detail::resolve_delta(d.sequence, opt);
        spec.epsilon = opt.epsilon;
        spec.direction = direction_from_string(opt.direction);
        seg = opt.pieces ? discover_abcod_pieces(d.sequence, spec)
                         : discover_abcod(d.sequence, spec);
      }
      std::vector<int> predicted = bench::segment_labels(seg, d.sequence.size());
      std::vector<int> truth_labels;
      for (int i = 1; i <= d.sequence.size(); ++i) {
        const auto it = truth_by_row.find(d.sequence.at(i).row_id);
        if (it == truth_by_row.end()) {
          throw DataError("row " + std::to_string(d.sequence.at(i).row_id) +
                          " missing from truth");
        }
        truth_labels.push_back(it->second);
      }
      const bench::Prf prf = bench::pairwise_prf(predicted, truth_labels);
      ordered_json j;
      j["method"] = eval_method;
      j["segments"] = seg.segments.size();
      j["precision"] = prf.precision;
      j["recall"] = prf.recall;
      j["f1"] = prf.f1;
      detail::emit(out, j);
      return kExitOk;
    }

    if (gap->parsed()) {
      const detail::Dataset d = detail::load_dataset(load, /*need_y=*/false);
      const Segmentation seg = bench::gap_baseline(d.sequence, d.x_combined, gap_k_sigma);
      ordered_json j;
      j["segments"] = ordered_json::array();
      for (const auto& s : seg.segments) {
        j["segments"].push_back({{"start_row", detail::row_of(d.sequence, s.start)},
                                 {"end_row", detail::row_of(d.sequence, s.end)}});
      }
      detail::emit(out, j);
      return kExitOk;
    }

    if (oracle_cmd->parsed()) {
      const detail::Dataset d = detail::load_dataset(load);
      const Direction dir = direction_from_string(oracle_direction);
      ordered_json j;
      if (what == "lmb") {
        j["length"] = oracle::brute_lmb(d.sequence, oracle_delta, dir).length;
      } else if (what == "segmentation") {
        j["gain"] = oracle::brute_segmentation(d.sequence, oracle_delta, oracle_epsilon, dir);
      } else {
        j["segments"] = oracle::brute_min_bcod_segments(d.sequence, oracle_delta, dir);
      }
      detail::emit(out, j);
      return kExitOk;
    }

    if (rank->parsed()) {
      ordered_json j;
      j["candidates"] = ordered_json::array();
      std::vector<std::pair<double, ordered_json>> scored;
      for (const auto& cand : rank_candidates) {
        const auto parts = detail::split(cand, ':');
        if (parts.size() < 2 || parts.size() > 3) {
          throw DataError("bad --candidate '" + cand + "', expected xcols:ycols[:dir]");
        }
        detail::LoadArgs sub;
        sub.input = rank_input;
        sub.x_list = parts[0];
        sub.y_list = parts[1];
        for (auto& c : sub.x_list) c = c == '+' ? ',' : c;
        for (auto& c : sub.y_list) c = c == '+' ? ',' : c;
        sub.order_decls = rank_orders;
        const Direction dir = direction_from_string(parts.size() == 3 ? parts[2] : rank_direction);
        const detail::Dataset d = detail::load_dataset(sub);
        const double score = candidate_score(d.sequence, rank_delta_max, rank_ratio, dir);
        ordered_json cj;
        cj["x"] = parts[0];
        cj["y"] = parts[1];
        cj["direction"] = to_string(dir);
        cj["score"] = score;
        scored.emplace_back(score, std::move(cj));
      }
      std::stable_sort(scored.begin(), scored.end(),
                       [](const auto& a, const auto& b) { return a.first > b.first; });
      for (auto& [score, cj] : scored) j["candidates"].push_back(std::move(cj));
      detail::emit(out, j);
      return kExitOk;
    }
  } catch (const oracle::SizeLimitError& e) {
    err << "error: " << e.what() << "\n";
    return kExitSizeLimit;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace bandod::cli
