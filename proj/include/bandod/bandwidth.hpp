// bandwidth.hpp - automatic band-width selection: outlier repair midpoints,
// average repair distance per candidate width, distinctive degree, and the
// divide-and-conquer sweep that averages the per-segment winners.
#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bandod/core.hpp"
#include "bandod/discovery.hpp"
#include "bandod/lmb.hpp"

namespace bandod {

struct UndefinedRepairError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Midpoint repair for an outlier: the extremal band member on each side,
// direction-aware (for a descending band the roles flip). One-sided outliers
// take the existing side's value; integer midpoint truncates toward zero.
inline OrderedValue estimate_repair(const SequenceView& seq, const LmbResult& lmb, int j) {
  const bool asc = lmb.direction != Direction::desc;
  bool have_left = false, have_right = false;
  std::int64_t left = 0, right = 0;
  for (int m : lmb.member_indices) {
    const std::int64_t v = seq.y(m).encoded;
    if (m < j) {
      if (!have_left || (asc ? v > left : v < left)) left = v;
      have_left = true;
    } else if (m > j) {
      if (!have_right || (asc ? v < right : v > right)) right = v;
      have_right = true;
    }
  }
  if (!have_left && !have_right) {
    throw UndefinedRepairError("no band members to interpolate a repair from");
  }
  if (!have_left) return OrderedValue::of(right);
  if (!have_right) return OrderedValue::of(left);
  const __int128 sum = static_cast<__int128>(left) + right;
  return OrderedValue::of(static_cast<std::int64_t>(sum / 2));
}

// Average absolute distance between outliers and their repairs; nullopt when
// the band has no outliers (the width explains everything).
inline std::optional<Ratio> outlier_distance(const SequenceView& seq, std::int64_t delta,
                                             Direction dir) {
  const LmbResult lmb = compute_lmb_any(seq, delta, dir);
  if (lmb.outlier_indices.empty()) return std::nullopt;
  std::int64_t sum = 0;
  for (int j : lmb.outlier_indices) {
    const OrderedValue repair = estimate_repair(seq, lmb, j);
    sum += std::llabs(seq.y(j).encoded - repair.encoded);
  }
  return Ratio{sum, static_cast<std::int64_t>(lmb.outlier_indices.size())};
}

// Relative jump of the average outlier distance when the width grows by one.
// Width zero anchors the scale at zero; undefined distances contribute zero
// so clean segments settle on the smallest width.
inline double distinctive_degree(const std::optional<Ratio>& d_curr,
                                 const std::optional<Ratio>& d_prev, std::int64_t delta) {
  if (delta == 0) return 0.0;
  if (!d_curr || !d_prev) return 0.0;
  if (d_curr->num == 0) return 0.0;
  return (d_curr->value() - d_prev->value()) / d_curr->value();
}

struct DeltaSweepEntry {
  std::int64_t delta = 0;
  std::optional<Ratio> d;  // average outlier distance, absent when no outliers
  double a = 0.0;          // distinctive degree
};

struct BandwidthSweep {
  std::vector<DeltaSweepEntry> per_delta;
  std::int64_t chosen = 0;  // argmax of a, ties to the smaller width
};

// Sweeps candidate widths and keeps the argmax of the distinctive degree
// (ties go to the smaller width). The sweep stops at half the segment's
// value spread: wider bands cover most of the segment's dynamic range, and
// the degree there measures which of several tied bands the reconstruction
// happens to keep rather than anything about the data.
inline BandwidthSweep sweep_bandwidth(const SequenceView& seq, std::int64_t delta_max,
                                      Direction dir) {
  if (delta_max < 1) throw std::invalid_argument("sweep_bandwidth: delta_max must be >= 1");
  std::int64_t lo = 0, hi = 0;
  bool any = false;
  for (int i = 1; i <= seq.size(); ++i) {
    if (seq.y(i).is_null) continue;
    const std::int64_t v = seq.y(i).encoded;
    lo = any ? std::min(lo, v) : v;
    hi = any ? std::max(hi, v) : v;
    any = true;
  }
  const std::int64_t cap = std::min(delta_max, (hi - lo) / 2);

  BandwidthSweep sweep;
  std::optional<Ratio> prev;
  double best_a = 0.0;
  for (std::int64_t delta = 0; delta <= cap; ++delta) {
    DeltaSweepEntry e;
    e.delta = delta;
    e.d = outlier_distance(seq, delta, dir);
    e.a = distinctive_degree(e.d, prev, delta);
    if (e.a > best_a) {
      best_a = e.a;
      sweep.chosen = delta;
    }
    prev = e.d;
    sweep.per_delta.push_back(std::move(e));
  }
  return sweep;
}

struct CandidateSegment {
  int start = 0, end = 0;  // 1-based inclusive
  Ratio approx_od_error;   // traditional (width 0) removal ratio of the segment
};

// Recursive midpoint bisection until each segment satisfies a traditional OD
// within the approximation ratio or can no longer be split. A candidate
// segment may turn out ascending or descending, so the check uses the
// bidirectional width-0 band; tuples outside it, nulls included, count as
// removals (a segment dominated by missing values is no better a sweep
// candidate than one dominated by violations).
inline std::vector<CandidateSegment> divide_into_candidate_segments(const SequenceView& seq,
                                                                    double approx_ratio) {
  if (!(approx_ratio > 0.0 && approx_ratio < 1.0)) {
    throw std::invalid_argument("divide_into_candidate_segments: ratio must be in (0, 1)");
  }
  std::vector<CandidateSegment> out;
  if (seq.size() == 0) return out;
  const std::function<void(int, int)> recurse = [&](int lo, int hi) {
    const int len = hi - lo + 1;
    const int band = compute_lmb_bidirectional(seq.slice(lo, hi), 0).length;
    const Ratio err{len - band, len};
    if (len <= 2 || err.value() <= approx_ratio) {
      out.push_back(CandidateSegment{lo, hi, err});
      return;
    }
    const int mid = lo + (len + 1) / 2 - 1;  // left half takes the extra tuple
    recurse(lo, mid);
    recurse(mid + 1, hi);
  };
  recurse(1, seq.size());
  return out;
}

struct BandwidthEstimate {
  std::int64_t delta = 0;  // rounded mean of per-segment winners
  std::vector<CandidateSegment> segments;
  std::vector<BandwidthSweep> sweeps;  // aligned with segments
};

inline BandwidthEstimate estimate_bandwidth_detailed(const SequenceView& seq,
                                                     std::int64_t delta_max, double approx_ratio,
                                                     Direction dir) {
  if (delta_max < 1) throw std::invalid_argument("estimate_bandwidth: delta_max must be >= 1");
  BandwidthEstimate est;
  est.segments = divide_into_candidate_segments(seq, approx_ratio);
  if (est.segments.empty()) return est;
  std::int64_t sum = 0;
  for (const auto& seg : est.segments) {
    BandwidthSweep sweep = sweep_bandwidth(seq.slice(seg.start, seg.end), delta_max, dir);
    sum += sweep.chosen;
    est.sweeps.push_back(std::move(sweep));
  }
  est.delta = std::llround(static_cast<double>(sum) / static_cast<double>(est.segments.size()));
  return est;
}

inline std::int64_t estimate_bandwidth(const SequenceView& seq, std::int64_t delta_max,
                                       double approx_ratio, Direction dir) {
  return estimate_bandwidth_detailed(seq, delta_max, approx_ratio, dir).delta;
}

// Interestingness stand-in used to rank user-provided candidate
// dependencies: the mean over candidate segments of the winning width's
// distinctive degree.
inline double candidate_score(const SequenceView& seq, std::int64_t delta_max, double approx_ratio,
                              Direction dir) {
  const BandwidthEstimate est = estimate_bandwidth_detailed(seq, delta_max, approx_ratio, dir);
  if (est.sweeps.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& sweep : est.sweeps) {
    double best = 0.0;
    for (const auto& e : sweep.per_delta) best = std::max(best, e.a);
    sum += best;
  }
  return sum / static_cast<double>(est.sweeps.size());
}

}  // namespace bandod
