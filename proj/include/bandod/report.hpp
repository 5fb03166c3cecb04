// report.hpp - the machine-readable discovery report: stable JSON with
// fixed key order, a TSV rendering for spreadsheets, and a parser so
// reports round-trip.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bandod/core.hpp"

namespace bandod::report {

using ordered_json = nlohmann::ordered_json;

struct SegmentReport {
  std::int64_t start_row = 0, end_row = 0;  // source row ids
  std::string direction = "asc";
  std::int64_t gain = 0;
  std::int64_t cost = 0;
  std::vector<std::int64_t> outlier_rows;

  friend bool operator==(const SegmentReport&, const SegmentReport&) = default;
};

struct DiscoveryReport {
  // spec echo
  std::string mode = "abcod";
  std::vector<std::string> x_columns;
  std::vector<std::string> y_columns;
  std::string direction = "asc";
  std::int64_t delta = 0;
  bool delta_auto = false;
  std::int64_t epsilon = 1;
  bool pieces = true;
  std::optional<std::uint64_t> seed;

  std::vector<SegmentReport> segments;

  // totals
  std::int64_t total_gain = 0;
  Ratio error_ratio;
  std::int64_t segment_count = 0;

  // per-phase wall clock, only emitted on request so byte-identical runs
  // stay byte-identical
  std::optional<std::vector<std::pair<std::string, double>>> timings_ms;

  friend bool operator==(const DiscoveryReport& a, const DiscoveryReport& b) {
    return a.mode == b.mode && a.x_columns == b.x_columns && a.y_columns == b.y_columns &&
           a.direction == b.direction && a.delta == b.delta && a.delta_auto == b.delta_auto &&
           a.epsilon == b.epsilon && a.pieces == b.pieces && a.seed == b.seed &&
           a.segments == b.segments && a.total_gain == b.total_gain &&
           a.error_ratio == b.error_ratio && a.segment_count == b.segment_count;
  }
};

inline ordered_json to_json(const DiscoveryReport& r) {
  ordered_json j;
  j["mode"] = r.mode;
  j["x"] = r.x_columns;
  j["y"] = r.y_columns;
  j["direction"] = r.direction;
  j["delta"] = r.delta;
  j["delta_auto"] = r.delta_auto;
  j["epsilon"] = r.epsilon;
  j["pieces"] = r.pieces;
  if (r.seed) j["seed"] = *r.seed;
  j["segments"] = ordered_json::array();
  for (const auto& s : r.segments) {
    ordered_json seg;
    seg["start_row"] = s.start_row;
    seg["end_row"] = s.end_row;
    seg["direction"] = s.direction;
    seg["gain"] = s.gain;
    seg["cost"] = s.cost;
    seg["outlier_rows"] = s.outlier_rows;
    j["segments"].push_back(std::move(seg));
  }
  ordered_json totals;
  totals["gain"] = r.total_gain;
  totals["error_ratio"] = {{"num", r.error_ratio.num}, {"den", r.error_ratio.den}};
  totals["segment_count"] = r.segment_count;
  j["totals"] = std::move(totals);
  if (r.timings_ms) {
    ordered_json t;
    for (const auto& [phase, ms] : *r.timings_ms) t[phase] = ms;
    j["timings_ms"] = std::move(t);
  }
  return j;
}

inline DiscoveryReport from_json(const ordered_json& j) {
  DiscoveryReport r;
  r.mode = j.at("mode").get<std::string>();
  r.x_columns = j.at("x").get<std::vector<std::string>>();
  r.y_columns = j.at("y").get<std::vector<std::string>>();
  r.direction = j.at("direction").get<std::string>();
  r.delta = j.at("delta").get<std::int64_t>();
  r.delta_auto = j.at("delta_auto").get<bool>();
  r.epsilon = j.at("epsilon").get<std::int64_t>();
  r.pieces = j.at("pieces").get<bool>();
  if (j.contains("seed")) r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& seg : j.at("segments")) {
    SegmentReport s;
    s.start_row = seg.at("start_row").get<std::int64_t>();
    s.end_row = seg.at("end_row").get<std::int64_t>();
    s.direction = seg.at("direction").get<std::string>();
    s.gain = seg.at("gain").get<std::int64_t>();
    s.cost = seg.at("cost").get<std::int64_t>();
    s.outlier_rows = seg.at("outlier_rows").get<std::vector<std::int64_t>>();
    r.segments.push_back(std::move(s));
  }
  r.total_gain = j.at("totals").at("gain").get<std::int64_t>();
  r.error_ratio.num = j.at("totals").at("error_ratio").at("num").get<std::int64_t>();
  r.error_ratio.den = j.at("totals").at("error_ratio").at("den").get<std::int64_t>();
  r.segment_count = j.at("totals").at("segment_count").get<std::int64_t>();
  return r;
}

inline std::string to_tsv(const DiscoveryReport& r) {
  std::string out = "start_row\tend_row\tdirection\tgain\tcost\toutliers\n";
  for (const auto& s : r.segments) {
    out += std::to_string(s.start_row) + "\t" + std::to_string(s.end_row) + "\t" + s.direction +
           "\t" + std::to_string(s.gain) + "\t" + std::to_string(s.cost) + "\t";
    for (std::size_t i = 0; i < s.outlier_rows.size(); ++i) {
      if (i) out += " ";
      out += std::to_string(s.outlier_rows[i]);
    }
    out += "\n";
  }
  return out;
}

}  // namespace bandod::report
