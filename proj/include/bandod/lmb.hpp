// lmb.hpp - longest monotonic band in O(n log n): sorted best-tuple array,
// per-tuple length ranges, and reverse-scan path reconstruction.
#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "bandod/core.hpp"

namespace bandod {

// Frontier of the best-tuple recurrence. Index k holds the best tuple of
// monotonic bands of length k seen so far: the minimal maximal tuple for
// ascending bands. Descending mode runs the same machinery on negated
// encoded values, so `best_` is always non-decreasing in k.
class BestTupleState {
 public:
  static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

  BestTupleState(int n, Direction dir)
      : sign_(dir == Direction::desc ? -1 : 1),
        best_(static_cast<std::size_t>(n) + 2, kInf),
        inserted_(static_cast<std::size_t>(n) + 1, {1, 0}) {}

  // Smallest k with best_[k] strictly beyond y + slack. Sentinels make the
  // search always succeed; O(log n). Wide arithmetic so extreme encodings
  // cannot overflow the comparison key.
  int left_most_position(const OrderedValue& y, std::int64_t slack) const {
    const __int128 key = static_cast<__int128>(y.encoded) * sign_ + slack;
    int lo = 1, hi = k_max_ + 1;  // best_[k_max_+1] is still the sentinel
    while (lo < hi) {
      const int mid = (lo + hi) / 2;
      if (static_cast<__int128>(best_[static_cast<std::size_t>(mid)]) > key) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return lo;
  }

  // Applies tuple i (non-null). Updates best_[k] for k in [k1, k2] in
  // descending order so best_[k-1] is read before its own update, and
  // records the contributed length range.
  void update(const OrderedValue& y, std::int64_t delta, int i) {
    const std::int64_t v = sign_ * y.encoded;
    const int k1 = left_most_position(y, 0);
    const int k2 = left_most_position(y, delta);
    for (int k = k2; k >= k1; --k) {
      const std::int64_t below = k > 1 ? best_[static_cast<std::size_t>(k) - 1]
                                       : std::numeric_limits<std::int64_t>::min();
      best_[static_cast<std::size_t>(k)] = below > v ? below : v;
    }
    inserted_[static_cast<std::size_t>(i)] = {k1, k2};
    if (k2 > k_max_) k_max_ = k2;
  }

  int k_max() const { return k_max_; }

  // [k1, k2] contributed by position i; k1 > k2 means "none" (null tuple).
  std::pair<int, int> inserted_range(int i) const {
    return inserted_[static_cast<std::size_t>(i)];
  }

  bool contains(int i, int k) const {
    const auto& r = inserted_[static_cast<std::size_t>(i)];
    return r.first <= k && k <= r.second;
  }

  // Best tuple of bands of length k, in original (un-negated) units.
  OrderedValue best(int k) const {
    const std::int64_t v = best_[static_cast<std::size_t>(k)];
    if (v == kInf) return OrderedValue::null();
    return OrderedValue::of(sign_ * v);
  }

  bool is_sorted() const {
    for (int k = 1; k < k_max_; ++k) {
      if (best_[static_cast<std::size_t>(k)] > best_[static_cast<std::size_t>(k) + 1]) return false;
    }
    return true;
  }

 private:
  std::int64_t sign_;
  std::vector<std::int64_t> best_;           // 1-based, sentinel kInf
  std::vector<std::pair<int, int>> inserted_;  // 1-based
  int k_max_ = 0;
};

struct LmbResult {
  std::vector<int> member_indices;   // 1-based positions, ascending
  std::vector<int> outlier_indices;  // non-null positions not in the band
  int length = 0;
  Direction direction = Direction::asc;

  bool is_member(int i) const {
    return std::binary_search(member_indices.begin(), member_indices.end(), i);
  }
};

namespace detail {

// Shared core: runs the state over the sequence and reconstructs one band by
// scanning the recorded ranges right to left, taking the rightmost carrier
// of each remaining length.
inline LmbResult compute_lmb_directed(const SequenceView& seq, std::int64_t delta,
                                      Direction dir, BestTupleState* state_out = nullptr) {
  const int n = seq.size();
  BestTupleState state(n, dir);
  for (int i = 1; i <= n; ++i) {
    const OrderedValue& y = seq.y(i);
    if (y.is_null) continue;  // nulls contribute no lengths
    state.update(y, delta, i);
  }

  LmbResult result;
  result.direction = dir;
  result.length = state.k_max();
  result.member_indices.reserve(static_cast<std::size_t>(result.length));
  int want = result.length;
  for (int i = n; i >= 1 && want >= 1; --i) {
    if (state.contains(i, want)) {
      result.member_indices.push_back(i);
      --want;
    }
  }
  std::reverse(result.member_indices.begin(), result.member_indices.end());

  std::size_t next = 0;
  for (int i = 1; i <= n; ++i) {
    if (next < result.member_indices.size() && result.member_indices[next] == i) {
      ++next;
    } else if (!seq.y(i).is_null) {
      result.outlier_indices.push_back(i);
    }
  }
  if (state_out) *state_out = state;
  return result;
}

}  // namespace detail

// One longest monotonic band for a fixed direction. Empty sequences and
// all-null sequences give length 0.
inline LmbResult compute_lmb(const SequenceView& seq, std::int64_t delta, Direction dir) {
  if (dir == Direction::bidirectional) {
    throw std::invalid_argument("compute_lmb: direction must be asc or desc");
  }
  return detail::compute_lmb_directed(seq, delta, dir);
}

// Runs both passes and keeps the longer band; ties prefer ascending.
inline LmbResult compute_lmb_bidirectional(const SequenceView& seq, std::int64_t delta) {
  LmbResult inc = detail::compute_lmb_directed(seq, delta, Direction::asc);
  LmbResult dec = detail::compute_lmb_directed(seq, delta, Direction::desc);
  return dec.length > inc.length ? dec : inc;
}

// Dispatch helper used by callers that accept all three modes.
inline LmbResult compute_lmb_any(const SequenceView& seq, std::int64_t delta, Direction dir) {
  return dir == Direction::bidirectional ? compute_lmb_bidirectional(seq, delta)
                                         : compute_lmb(seq, delta, dir);
}

// Maximum-length band whose outlier runs (consecutive non-null non-members,
// including the stretches before the first and after the last member) are
// all at most `cap`, or nullopt when no such band exists. Maximum bands are
// not unique and different choices leave different outlier runs; this
// searches chains through the recorded per-length carriers with the running
// maximum as state, which keeps every produced chain a valid band.
inline std::optional<LmbResult> compute_lmb_capped(const SequenceView& seq, std::int64_t delta,
                                                   Direction dir, std::int64_t cap) {
  if (dir == Direction::bidirectional) {
    throw std::invalid_argument("compute_lmb_capped: direction must be asc or desc");
  }
  const int n = seq.size();
  const std::int64_t sign = dir == Direction::desc ? -1 : 1;
  BestTupleState state(n, dir);
  for (int i = 1; i <= n; ++i) {
    if (!seq.y(i).is_null) state.update(seq.y(i), delta, i);
  }
  const int length = state.k_max();

  LmbResult result;
  result.direction = dir;
  result.length = length;
  if (length == 0) return result;  // no non-null tuples, nothing to cap

  // head[i]: longest non-null run strictly before i; tail[i]: strictly after.
  std::vector<int> head(static_cast<std::size_t>(n) + 2, 0);
  std::vector<int> tail(static_cast<std::size_t>(n) + 2, 0);
  {
    int run = 0, worst = 0;
    for (int i = 1; i <= n + 1; ++i) {
      head[static_cast<std::size_t>(i)] = worst;
      if (i <= n) {
        run = seq.y(i).is_null ? 0 : run + 1;
        worst = std::max(worst, run);
      }
    }
    run = worst = 0;
    for (int i = n; i >= 0; --i) {
      tail[static_cast<std::size_t>(i)] = worst;
      if (i >= 1) {
        run = seq.y(i).is_null ? 0 : run + 1;
        worst = std::max(worst, run);
      }
    }
  }

  std::vector<std::vector<int>> carriers(static_cast<std::size_t>(length) + 1);
  for (int i = 1; i <= n; ++i) {
    const auto [k1, k2] = state.inserted_range(i);
    for (int k = k1; k <= std::min(k2, length); ++k) {
      carriers[static_cast<std::size_t>(k)].push_back(i);
    }
  }

  // per-level reachable states, sparse and sorted by position
  struct Node {
    int pos;
    int pred;  // index into the previous level's node vector
    std::int64_t running_max;
  };
  std::vector<std::vector<Node>> levels(static_cast<std::size_t>(length) + 1);
  for (int i : carriers[1]) {
    if (head[static_cast<std::size_t>(i)] <= cap) {
      levels[1].push_back(Node{i, -1, sign * seq.y(i).encoded});
    }
  }
  for (int level = 2; level <= length; ++level) {
    const auto& prev = levels[static_cast<std::size_t>(level) - 1];
    auto& cur = levels[static_cast<std::size_t>(level)];
    if (prev.empty()) break;
    for (int j : carriers[static_cast<std::size_t>(level)]) {
      const std::int64_t vj = sign * seq.y(j).encoded;
      // walk candidates right to left; the largest run inside the open gap
      // (i, j) only grows as the gap widens, so the scan stops early
      Node best{j, -1, 0};
      bool found = false;
      int gap_run = 0, left_run = 0;
      auto it = std::lower_bound(prev.begin(), prev.end(), j,
                                 [](const Node& nd, int p) { return nd.pos < p; });
      int idx = static_cast<int>(it - prev.begin()) - 1;
      for (int i = j - 1; i >= 1 && idx >= 0 && gap_run <= cap; --i) {
        if (prev[static_cast<std::size_t>(idx)].pos == i) {
          const std::int64_t rm = prev[static_cast<std::size_t>(idx)].running_max;
          if (vj >= rm - delta && (!found || std::max(rm, vj) < best.running_max)) {
            best = Node{j, idx, std::max(rm, vj)};
            found = true;
          }
          --idx;
        }
        left_run = seq.y(i).is_null ? 0 : left_run + 1;
        gap_run = std::max(gap_run, left_run);
      }
      if (found) cur.push_back(best);
    }
  }

  const auto& final_level = levels[static_cast<std::size_t>(length)];
  int end_idx = -1;
  for (int k = static_cast<int>(final_level.size()) - 1; k >= 0; --k) {
    if (tail[static_cast<std::size_t>(final_level[static_cast<std::size_t>(k)].pos)] <= cap) {
      end_idx = k;
      break;
    }
  }
  if (end_idx < 0) return std::nullopt;

  result.member_indices.resize(static_cast<std::size_t>(length));
  for (int level = length; level >= 1; --level) {
    const Node& node = levels[static_cast<std::size_t>(level)][static_cast<std::size_t>(end_idx)];
    result.member_indices[static_cast<std::size_t>(level) - 1] = node.pos;
    end_idx = node.pred;
  }
  std::size_t next = 0;
  for (int i = 1; i <= n; ++i) {
    if (next < result.member_indices.size() && result.member_indices[next] == i) {
      ++next;
    } else if (!seq.y(i).is_null) {
      result.outlier_indices.push_back(i);
    }
  }
  return result;
}

}  // namespace bandod
