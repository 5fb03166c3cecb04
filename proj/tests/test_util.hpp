// Shared helpers for building small sequences in tests.
#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "bandod/core.hpp"

namespace testutil {

// Placeholder for a null y value inside literal sequences.
constexpr std::int64_t kNull = std::numeric_limits<std::int64_t>::min();

inline bandod::SequenceView seq_of(const std::vector<std::int64_t>& ys) {
  std::vector<bandod::TupleRecord> records;
  records.reserve(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    bandod::TupleRecord r;
    r.row_id = static_cast<std::int64_t>(i) + 1;
    r.x_key = {static_cast<std::int64_t>(i) + 1};
    r.y = ys[i] == kNull ? bandod::OrderedValue::null() : bandod::OrderedValue::of(ys[i]);
    records.push_back(std::move(r));
  }
  return bandod::SequenceView(std::move(records));
}

// Table 1 years by tuple id (1-based); id 18 is the missing year.
inline std::vector<std::int64_t> music_years() {
  return {1992, 2012, 1996, 1995, 1999, 2000, 1999, 2001, 2002,  // t1-t9
          2000, 1998, 1997, 1996, 1994,                          // t10-t14
          1982, 1987, 1989, kNull, 1991, 1990, 1991, 1992};      // t15-t22
}

inline std::vector<std::int64_t> music_slice(int lo, int hi) {
  const auto all = music_years();
  return std::vector<std::int64_t>(all.begin() + lo - 1, all.begin() + hi);
}

// t1-t9 followed by t15-t22: the 17-tuple worked example.
inline std::vector<std::int64_t> music_two_series() {
  auto out = music_slice(1, 9);
  const auto tail = music_slice(15, 22);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

// Uniform random sequence with optional nulls; values in [0, max_value].
inline std::vector<std::int64_t> random_values(std::mt19937_64& rng, int n, int max_value,
                                               double null_rate = 0.0) {
  std::vector<std::int64_t> ys;
  ys.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (null_rate > 0 && static_cast<double>(rng() % 1000) / 1000.0 < null_rate) {
      ys.push_back(kNull);
    } else {
      ys.push_back(static_cast<std::int64_t>(rng() % (static_cast<std::uint64_t>(max_value) + 1)));
    }
  }
  return ys;
}

}  // namespace testutil
