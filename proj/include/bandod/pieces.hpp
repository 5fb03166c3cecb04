// pieces.hpp - pre-piece/piece decomposition in O((delta+1) n) and the
// piece-pruned segmentation DP that never splits inside a piece.
#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "bandod/core.hpp"
#include "bandod/discovery.hpp"

namespace bandod {

struct PrePiece {
  int start = 0, end = 0;  // 1-based inclusive
  Direction kind = Direction::asc;
};

struct Piece {
  int start = 0, end = 0;
};

struct PieceScanStats {
  std::size_t run_updates = 0;  // map entries touched across the whole scan
};

namespace detail {

// One direction's set of alive runs ending at the previous position. A run
// is a contiguous suffix that pairwise satisfies the band OD in this
// direction; it is keyed by its extremal tuple (max for asc, min for desc)
// and carries the longest length among runs sharing that key. Keys collapse
// into [y_j, y_j + delta] after every non-null tuple, so the vector stays at
// most delta + 2 entries (one extra for a run of nulls only).
class RunSet {
 public:
  RunSet(Direction dir, PieceScanStats* stats)
      : sign_(dir == Direction::desc ? -1 : 1), stats_(stats) {}

  // Longest alive run (ending at position j - 1).
  int longest() const {
    int l = 0;
    for (const auto& e : entries_) l = std::max(l, e.len);
    return l;
  }

  // Advance over tuple j. Returns true when the longest alive run dies.
  bool step(const OrderedValue& y) {
    if (stats_) stats_->run_updates += entries_.size() + 1;
    if (y.is_null) {
      for (auto& e : entries_) ++e.len;     // nulls extend every run
      upsert(kFresh, 1);                    // and start a null-only run
      return false;
    }
    const std::int64_t v = sign_ * y.encoded;
    bool died = false;
    std::vector<Entry> next;
    next.reserve(entries_.size() + 1);
    for (const auto& e : entries_) {
      if (e.key == kFresh || v >= e.key - delta_) {
        upsert_into(next, std::max(e.key == kFresh ? v : e.key, v), e.len + 1);
      } else {
        died = true;
      }
    }
    upsert_into(next, v, 1);
    entries_ = std::move(next);
    return died;
  }

  void set_delta(std::int64_t delta) { delta_ = delta; }

  bool empty() const { return entries_.empty(); }

 private:
  struct Entry {
    std::int64_t key;
    int len;
  };
  static constexpr std::int64_t kFresh = std::numeric_limits<std::int64_t>::min();

  void upsert(std::int64_t key, int len) { upsert_into(entries_, key, len); }

  static void upsert_into(std::vector<Entry>& es, std::int64_t key, int len) {
    for (auto& e : es) {
      if (e.key == key) {
        e.len = std::max(e.len, len);
        return;
      }
    }
    es.push_back(Entry{key, len});
  }

  std::int64_t sign_;
  std::int64_t delta_ = 0;
  std::vector<Entry> entries_;
  PieceScanStats* stats_;
};

}  // namespace detail

// Forward scan producing the maximal single-direction runs that dominate the
// concurrent opposite-direction maximum. Their start/end+1 indices become
// the sorted, deduplicated boundary list; 1 and n+1 act as sentinels.
inline std::vector<PrePiece> compute_pre_pieces(const SequenceView& seq, std::int64_t delta,
                                                PieceScanStats* stats = nullptr) {
  std::vector<PrePiece> out;
  const int n = seq.size();
  if (n == 0) return out;
  detail::RunSet inc(Direction::asc, stats);
  detail::RunSet dec(Direction::desc, stats);
  inc.set_delta(delta);
  dec.set_delta(delta);

  for (int j = 1; j <= n + 1; ++j) {
    const int l_inc = inc.longest();
    const int l_dec = dec.longest();
    const OrderedValue y = j <= n ? seq.y(j) : OrderedValue();  // terminator kills all runs
    const bool inc_died = j > n ? l_inc > 0 : inc.step(y);
    const bool dec_died = j > n ? l_dec > 0 : dec.step(y);
    if (inc_died && l_inc > l_dec) {
      out.push_back(PrePiece{j - l_inc, j - 1, Direction::asc});
    }
    if (dec_died && l_dec > l_inc) {
      out.push_back(PrePiece{j - l_dec, j - 1, Direction::desc});
    }
  }
  return out;
}

inline std::vector<Piece> pieces_from_pre_pieces(const std::vector<PrePiece>& pre, int n) {
  std::vector<Piece> out;
  if (n == 0) return out;
  std::vector<int> bounds = {1, n + 1};
  for (const auto& p : pre) {
    bounds.push_back(p.start);
    bounds.push_back(p.end + 1);
  }
  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());
  for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
    out.push_back(Piece{bounds[k], bounds[k + 1] - 1});
  }
  return out;
}

inline std::vector<Piece> compute_pieces(const SequenceView& seq, std::int64_t delta,
                                         std::vector<PrePiece>* pre_out = nullptr,
                                         PieceScanStats* stats = nullptr) {
  std::vector<PrePiece> pre = compute_pre_pieces(seq, delta, stats);
  std::vector<Piece> pieces = pieces_from_pre_pieces(pre, seq.size());
  if (pre_out) *pre_out = std::move(pre);
  return pieces;
}

// A unidirectional spec can make every piece-aligned segmentation violate
// the outlier cap (an all-descending piece under an ascending-only spec);
// the full tuple-level DP never has this problem because singletons are
// always feasible. Bidirectional specs are immune as well: each piece is
// monotonic in at least one direction.
struct PiecesInfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Same DP as discover_abcod, with split points restricted to piece
// boundaries. Optimal on unidirectional data; on mixed-direction data the
// result is a lower bound on the full DP's gain.
inline Segmentation discover_abcod_pieces(const SequenceView& seq, const BandOdSpec& spec) {
  if (spec.epsilon < 0) throw std::invalid_argument("discover_abcod_pieces: epsilon must be >= 0");
  const std::vector<Piece> pieces = compute_pieces(seq, spec.delta);
  const int m = static_cast<int>(pieces.size());
  constexpr std::int64_t kInfeasible = std::numeric_limits<std::int64_t>::min();

  std::vector<std::int64_t> opt(static_cast<std::size_t>(m) + 1, 0);
  std::vector<int> split(static_cast<std::size_t>(m) + 1, -1);
  std::vector<int> nseg(static_cast<std::size_t>(m) + 1, 0);
  split[0] = 0;
  for (int j = 1; j <= m; ++j) {
    detail::DpCandidate best;
    for (int i = 0; i <= j - 1; ++i) {
      if (opt[static_cast<std::size_t>(i)] == kInfeasible) continue;
      const int lo = pieces[static_cast<std::size_t>(i)].start;
      const int hi = pieces[static_cast<std::size_t>(j) - 1].end;
      auto metrics = detail::segment_metrics(seq.slice(lo, hi), spec);
      if (!metrics) continue;
      detail::DpCandidate c{opt[static_cast<std::size_t>(i)] + metrics->gain * metrics->non_null,
                            nseg[static_cast<std::size_t>(i)] + 1, i};
      if (c.better_than(best)) best = c;
    }
    opt[static_cast<std::size_t>(j)] = best.split < 0 ? kInfeasible : best.value;
    split[static_cast<std::size_t>(j)] = best.split;
    nseg[static_cast<std::size_t>(j)] = best.nseg;
  }
  if (m > 0 && opt[static_cast<std::size_t>(m)] == kInfeasible) {
    throw PiecesInfeasibleError(
        "no piece-aligned segmentation satisfies the consecutive-outlier cap "
        "(a piece runs against the requested direction; bidirectional mode or "
        "the full DP can segment this data)");
  }

  Segmentation out;
  out.spec = spec;
  out.total_gain = m == 0 ? 0 : opt[static_cast<std::size_t>(m)];
  out.prefix_gains.assign(opt.begin() + 1, opt.end());
  for (int j = 1; j <= m; ++j) {
    const int s = split[static_cast<std::size_t>(j)];
    out.prefix_starts.push_back(s < 0 ? 0 : pieces[static_cast<std::size_t>(s)].start);
  }
  int j = m;
  std::vector<Segment> rev;
  while (j >= 1) {
    const int i = split[static_cast<std::size_t>(j)];
    const int lo = pieces[static_cast<std::size_t>(i)].start;
    const int hi = pieces[static_cast<std::size_t>(j) - 1].end;
    auto metrics = detail::segment_metrics(seq.slice(lo, hi), spec);
    if (!metrics) throw std::logic_error("pieces DP backtrack hit an infeasible segment");
    Segment s;
    s.start = lo;
    s.end = hi;
    s.direction = metrics->direction;
    s.gain = metrics->gain;
    s.cost = metrics->cost;
    for (int p : metrics->lmb.member_indices) s.lmb_member_indices.push_back(p + lo - 1);
    for (int p : metrics->lmb.outlier_indices) s.outlier_indices.push_back(p + lo - 1);
    rev.push_back(std::move(s));
    j = i;
  }
  out.segments.assign(rev.rbegin(), rev.rend());
  return out;
}

}  // namespace bandod
