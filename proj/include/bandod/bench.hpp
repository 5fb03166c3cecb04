// bench.hpp - synthetic series generation, controlled-error perturbation,
// pairwise precision/recall scoring, and the gap-based baseline segmenter.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "bandod/core.hpp"
#include "bandod/discovery.hpp"

namespace bandod::bench {

// Bounded draws are hand-rolled on top of the engine so outputs are
// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

struct SeriesDatasetConfig {
  int series_count = 10;
  int size_min = 5;
  int size_max = 50;
  double size_mean = 0.0;  // informational; sizes draw uniformly from [min, max]
  double asc_fraction = 1.0;
  std::int64_t y_start_min = 0;
  std::int64_t y_start_max = 2000;
  std::int64_t step_max = 3;
  std::int64_t jitter = 0;  // maximum pairwise dip against the running extreme
  double null_rate = 0.0;
  std::uint64_t seed = 1;
};

inline void validate(const SeriesDatasetConfig& c) {
  if (c.series_count < 0 || c.size_min < 1 || c.size_max < c.size_min || c.step_max < 1 ||
      c.jitter < 0 || c.asc_fraction < 0.0 || c.asc_fraction > 1.0 || c.null_rate < 0.0 ||
      c.null_rate > 1.0 || c.y_start_max < c.y_start_min) {
    throw std::invalid_argument("invalid dataset config");
  }
  if (c.size_mean != 0.0 && (c.size_mean < c.size_min || c.size_mean > c.size_max)) {
    throw std::invalid_argument("size_mean outside [size_min, size_max]");
  }
}

struct GroundTruth {
  std::vector<int> series_id;     // aligned with records
  std::vector<bool> is_error;
};

// Each series follows its direction with pairwise dips bounded by `jitter`
// (relative to the running extreme), so a band of width >= jitter covers the
// whole series. X keys ascend globally; series ids are contiguous in X.
//
// Consecutive series must not be extendable into one band, or the gain
// objective would (correctly) fuse them: ascending series step down a value
// staircase below everything generated so far, descending series step up
// above it. With a single direction the true boundaries are then the unique
// optimum; mixed directions still share boundary tuples that fit both
// neighboring series, so exact recovery is only guaranteed unidirectionally.
inline std::pair<std::vector<TupleRecord>, GroundTruth> generate_dataset(
    const SeriesDatasetConfig& config) {
  validate(config);
  Rng rng(config.seed);
  std::vector<TupleRecord> records;
  GroundTruth truth;
  std::int64_t x = 0;
  std::int64_t global_min = 0, global_max = 0;
  bool placed = false;
  for (int s = 0; s < config.series_count; ++s) {
    const int size = static_cast<int>(rng.uniform(config.size_min, config.size_max));
    const bool asc = rng.unit() < config.asc_fraction;
    const std::int64_t reach = config.step_max * size + config.jitter + 1;
    std::int64_t start;
    if (!placed) {
      start = rng.uniform(config.y_start_min, config.y_start_max);
    } else if (asc) {
      start = global_min - reach;  // whole series stays below everything so far
    } else {
      start = global_max + reach;
    }
    std::int64_t extreme = start;
    for (int k = 0; k < size; ++k) {
      x += rng.uniform(1, 4);
      TupleRecord r;
      r.row_id = static_cast<std::int64_t>(records.size()) + 1;
      r.x_key = {x};
      if (rng.unit() < config.null_rate) {
        r.y = OrderedValue::null();
      } else {
        std::int64_t y;
        if (asc) {
          y = extreme + rng.uniform(-config.jitter, config.step_max);
          extreme = std::max(extreme, y);
        } else {
          y = extreme + rng.uniform(-config.step_max, config.jitter);
          extreme = std::min(extreme, y);
        }
        r.y = OrderedValue::of(y);
        global_min = placed ? std::min(global_min, y) : y;
        global_max = placed ? std::max(global_max, y) : y;
        placed = true;
      }
      records.push_back(std::move(r));
      truth.series_id.push_back(s);
      truth.is_error.push_back(false);
    }
  }
  return {std::move(records), std::move(truth)};
}

// Replaces exactly round(rate * n) sampled rows with draws from the global
// y range (or null, for a fixed 0.3 share of the errors) and flags them.
inline std::pair<std::vector<TupleRecord>, GroundTruth> perturb_cer(
    std::vector<TupleRecord> records, GroundTruth truth, double error_rate, std::uint64_t seed) {
  if (error_rate < 0.0 || error_rate > 1.0) {
    throw std::invalid_argument("error_rate must be in [0, 1]");
  }
  const int n = static_cast<int>(records.size());
  const int k = static_cast<int>(std::llround(error_rate * n));
  Rng rng(seed);

  std::int64_t lo = 0, hi = 0;
  bool have_range = false;
  for (const auto& r : records) {
    if (r.y.is_null) continue;
    if (!have_range) {
      lo = hi = r.y.encoded;
      have_range = true;
    } else {
      lo = std::min(lo, r.y.encoded);
      hi = std::max(hi, r.y.encoded);
    }
  }

  std::vector<int> index(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) index[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < k; ++i) {  // partial Fisher-Yates: first k entries are the sample
    const int j = static_cast<int>(rng.uniform(i, n - 1));
    std::swap(index[static_cast<std::size_t>(i)], index[static_cast<std::size_t>(j)]);
  }
  for (int i = 0; i < k; ++i) {
    const int row = index[static_cast<std::size_t>(i)];
    if (rng.unit() < 0.3 || !have_range) {
      records[static_cast<std::size_t>(row)].y = OrderedValue::null();
    } else {
      records[static_cast<std::size_t>(row)].y = OrderedValue::of(rng.uniform(lo, hi));
    }
    truth.is_error[static_cast<std::size_t>(row)] = true;
  }
  return {std::move(records), std::move(truth)};
}

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Pairwise co-membership scoring over all unordered row pairs: a pair is
// positive when both rows share a group. Degenerate partitions with no
// positive pairs on one side score that side as perfect-vacuous.
inline Prf pairwise_prf(const std::vector<int>& predicted, const std::vector<int>& truth) {
  if (predicted.size() != truth.size()) {
    throw std::invalid_argument("pairwise_prf: row universes differ");
  }
  auto pair_count = [](const std::map<std::int64_t, std::int64_t>& sizes) {
    std::int64_t c = 0;
    for (const auto& kv : sizes) c += kv.second * (kv.second - 1) / 2;
    return c;
  };
  std::map<std::int64_t, std::int64_t> p_sizes, t_sizes, joint_sizes;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    ++p_sizes[predicted[i]];
    ++t_sizes[truth[i]];
    ++joint_sizes[static_cast<std::int64_t>(predicted[i]) * 1000003 + truth[i]];
  }
  const std::int64_t p = pair_count(p_sizes);
  const std::int64_t t = pair_count(t_sizes);
  const std::int64_t both = pair_count(joint_sizes);
  Prf out;
  out.precision = p == 0 ? 1.0 : static_cast<double>(both) / static_cast<double>(p);
  out.recall = t == 0 ? 1.0 : static_cast<double>(both) / static_cast<double>(t);
  out.f1 = out.precision + out.recall == 0.0
               ? 0.0
               : 2.0 * out.precision * out.recall / (out.precision + out.recall);
  return out;
}

// Per-row group ids induced by a segmentation of the sorted sequence.
inline std::vector<int> segment_labels(const Segmentation& s, int n) {
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  int id = 0;
  for (const auto& seg : s.segments) {
    for (int i = seg.start; i <= seg.end; ++i) labels[static_cast<std::size_t>(i) - 1] = id;
    ++id;
  }
  return labels;
}

// Baseline segmenter: split the sorted sequence wherever the x gap exceeds
// mean + k_sigma standard deviations of all consecutive gaps.
inline Segmentation gap_baseline(const SequenceView& seq, const std::vector<std::int64_t>& xs,
                                 double k_sigma) {
  const int n = seq.size();
  if (static_cast<int>(xs.size()) != n) {
    throw std::invalid_argument("gap_baseline: xs size mismatch");
  }
  Segmentation out;
  auto emit = [&](int lo, int hi) {
    Segment s;
    s.start = lo;
    s.end = hi;
    out.segments.push_back(std::move(s));
  };
  if (n == 0) return out;
  if (n < 3) {
    emit(1, n);
    return out;
  }
  std::vector<double> gaps;
  gaps.reserve(static_cast<std::size_t>(n) - 1);
  for (int i = 1; i < n; ++i) {
    gaps.push_back(static_cast<double>(xs[static_cast<std::size_t>(i)] -
                                       xs[static_cast<std::size_t>(i) - 1]));
  }
  double mean = 0.0;
  for (double g : gaps) mean += g;
  mean /= static_cast<double>(gaps.size());
  double var = 0.0;
  for (double g : gaps) var += (g - mean) * (g - mean);
  var /= static_cast<double>(gaps.size());
  const double threshold = mean + k_sigma * std::sqrt(var);

  int start = 1;
  for (int i = 1; i < n; ++i) {
    if (gaps[static_cast<std::size_t>(i) - 1] > threshold) {
      emit(start, i);
      start = i + 1;
    }
  }
  emit(start, n);
  return out;
}

}  // namespace bandod::bench
