#include "bandod/discovery.hpp"

#include <gtest/gtest.h>

#include <random>

#include "bandod/oracle.hpp"
#include "test_util.hpp"

using namespace bandod;
using testutil::kNull;
using testutil::seq_of;

namespace {

BandOdSpec make_spec(std::int64_t delta, std::int64_t epsilon, Direction dir) {
  BandOdSpec s;
  s.delta = delta;
  s.epsilon = epsilon;
  s.direction = dir;
  return s;
}

void expect_partition(const Segmentation& s, int n) {
  int expect_start = 1;
  for (const auto& seg : s.segments) {
    EXPECT_EQ(seg.start, expect_start);
    EXPECT_LE(seg.start, seg.end);
    expect_start = seg.end + 1;
  }
  EXPECT_EQ(expect_start, n + 1);
}

}  // namespace

TEST(AbodErrorRatio, MusicAscendingSeries) {
  const auto r = abod_error_ratio(seq_of(testutil::music_slice(1, 9)), 1, Direction::asc);
  EXPECT_EQ(r.error_ratio, (Ratio{1, 9}));
  EXPECT_EQ(r.outlier_indices, (std::vector<int>{2}));
}

TEST(AbodErrorRatio, CleanAndDescendingSeries) {
  EXPECT_EQ(abod_error_ratio(seq_of({1, 2, 3, 4}), 0, Direction::asc).error_ratio, (Ratio{0, 4}));
  EXPECT_EQ(abod_error_ratio(seq_of(testutil::music_slice(10, 14)), 1, Direction::desc).error_ratio,
            (Ratio{0, 5}));
}

TEST(AbodErrorRatio, EmptySequence) {
  EXPECT_EQ(abod_error_ratio(seq_of({}), 1, Direction::asc).error_ratio, (Ratio{0, 1}));
}

TEST(BcodSegment, MusicSeriesSplitsAtViolation) {
  const auto s = bcod_segment(seq_of(testutil::music_slice(1, 9)), 1, Direction::asc);
  ASSERT_EQ(s.segments.size(), 2u);
  EXPECT_EQ(s.segments[0].start, 1);
  EXPECT_EQ(s.segments[0].end, 2);
  EXPECT_EQ(s.segments[1].start, 3);
  EXPECT_EQ(s.segments[1].end, 9);
}

TEST(BcodSegment, BandMonotoneSequenceIsOneSegment) {
  const auto s = bcod_segment(seq_of({5, 4, 6, 7, 6, 8}), 1, Direction::asc);
  EXPECT_EQ(s.segments.size(), 1u);
}

TEST(BcodSegment, MatchesBruteMinimum) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 600; ++trial) {
    const int n = static_cast<int>(rng() % 13);
    const auto ys = testutil::random_values(rng, n, 9, trial % 5 == 0 ? 0.2 : 0.0);
    const std::int64_t delta = static_cast<std::int64_t>(rng() % 3);
    const auto seq = seq_of(ys);
    for (Direction dir : {Direction::asc, Direction::desc}) {
      const auto s = bcod_segment(seq, delta, dir);
      const int expected = oracle::brute_min_bcod_segments(seq, delta, dir);
      EXPECT_EQ(static_cast<int>(s.segments.size()), n == 0 ? 0 : expected);
      expect_partition(s, n);
      // every returned segment holds the band OD exactly
      for (const auto& seg : s.segments) {
        for (int a = seg.start; a <= seg.end; ++a) {
          for (int b = a + 1; b <= seg.end; ++b) {
            EXPECT_TRUE(band_leq(seq.y(a), seq.y(b), delta, dir));
          }
        }
      }
    }
  }
}

TEST(GainOfRange, WorkedValues) {
  const auto two = seq_of(testutil::music_two_series());
  EXPECT_EQ(gain_of_range(two, 1, 9, 1, Direction::asc), 7);    // 8 members - 1 outlier
  EXPECT_EQ(gain_of_range(two, 10, 17, 1, Direction::asc), 7);  // null excluded from both counts
  EXPECT_EQ(gain_of_range(two, 1, 1, 1, Direction::asc), 1);
}

TEST(CostOfRange, WorkedValues) {
  const auto two = seq_of(testutil::music_two_series());
  EXPECT_EQ(cost_of_range(two, 1, 9, 1, Direction::asc), 1);
  EXPECT_EQ(cost_of_range(two, 10, 17, 1, Direction::asc), 0);
  // adjacent outliers: 9 and 8 both break an ascending delta-0 run
  EXPECT_EQ(cost_of_range(seq_of({1, 2, 9, 8, 3, 4}), 1, 6, 0, Direction::asc), 2);
}

TEST(DiscoverAbcod, MusicTwoSeriesGolden) {
  const auto two = seq_of(testutil::music_two_series());
  for (DpMode mode : {DpMode::full, DpMode::incremental}) {
    for (Direction dir : {Direction::asc, Direction::bidirectional}) {
      const auto s = discover_abcod(two, make_spec(1, 1, dir), mode);
      EXPECT_EQ(s.total_gain, 112);
      ASSERT_EQ(s.segments.size(), 2u);
      EXPECT_EQ(s.segments[0].start, 1);
      EXPECT_EQ(s.segments[0].end, 9);
      EXPECT_EQ(s.segments[1].start, 10);
      EXPECT_EQ(s.segments[1].end, 17);
      expect_partition(s, 17);
    }
  }
}

TEST(DiscoverAbcod, TableOfPrefixGainsBidirectional) {
  const auto two = seq_of(testutil::music_two_series());
  const auto s = discover_abcod(two, make_spec(1, 1, Direction::bidirectional));
  const std::vector<std::int64_t> expected_g = {1,  4,  5,  10, 15, 24, 35, 48, 63,
                                                64, 67, 72, 72, 79, 88, 99, 112};
  EXPECT_EQ(s.prefix_gains, expected_g);
  // starts of the last segment per prefix; the worked example's X column
  const std::vector<int> expected_x = {1, 1, 2, 2, 1, 1, 1, 1, 1, 10, 10, 10, 10, 10, 10, 10, 10};
  EXPECT_EQ(s.prefix_starts, expected_x);
}

TEST(DiscoverAbcod, PrefixGainsAscendingMode) {
  const auto two = seq_of(testutil::music_two_series());
  const auto s = discover_abcod(two, make_spec(1, 1, Direction::asc));
  ASSERT_EQ(s.prefix_gains.size(), 17u);
  EXPECT_EQ(s.prefix_gains[4], 15);  // G[5]
  EXPECT_EQ(s.prefix_gains[5], 24);
  EXPECT_EQ(s.prefix_gains[6], 35);
  EXPECT_EQ(s.prefix_gains[7], 48);
  EXPECT_EQ(s.prefix_gains[8], 63);  // G[9]
  EXPECT_EQ(s.prefix_starts[4], 1);  // X[5]
  EXPECT_EQ(s.prefix_gains[16], 112);
}

TEST(DiscoverAbcod, PrefixOfFiveTuples) {
  const auto five = seq_of(testutil::music_slice(1, 5));
  const auto s = discover_abcod(five, make_spec(1, 1, Direction::bidirectional));
  EXPECT_EQ(s.total_gain, 15);
  EXPECT_EQ(s.prefix_starts[4], 1);
}

TEST(DiscoverAbcod, FullyMonotoneIsOneSegment) {
  const auto s = discover_abcod(seq_of({1, 2, 3, 4, 5, 6}), make_spec(0, 1, Direction::asc));
  EXPECT_EQ(s.total_gain, 36);
  EXPECT_EQ(s.segments.size(), 1u);
}

TEST(DiscoverAbcod, EmptySequence) {
  const auto s = discover_abcod(seq_of({}), make_spec(1, 1, Direction::asc));
  EXPECT_EQ(s.total_gain, 0);
  EXPECT_TRUE(s.segments.empty());
}

TEST(DiscoverAbcod, MatchesBruteForceOracle) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 250; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const auto ys = testutil::random_values(rng, n, 9, trial % 5 == 0 ? 0.2 : 0.0);
    const std::int64_t delta = static_cast<std::int64_t>(rng() % 3);
    const std::int64_t epsilon = static_cast<std::int64_t>(rng() % 3);
    const auto seq = seq_of(ys);
    for (Direction dir : {Direction::asc, Direction::desc, Direction::bidirectional}) {
      const auto spec = make_spec(delta, epsilon, dir);
      const auto s = discover_abcod(seq, spec);
      EXPECT_EQ(s.total_gain, oracle::brute_segmentation(seq, delta, epsilon, dir))
          << "n=" << n << " delta=" << delta << " eps=" << epsilon << " dir=" << to_string(dir);
      expect_partition(s, n);
      for (const auto& seg : s.segments) EXPECT_LE(seg.cost, epsilon);
    }
  }
}

TEST(DiscoverAbcod, IncrementalModeMatchesFull) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 20);
    const auto ys = testutil::random_values(rng, n, 9, 0.1);
    const auto seq = seq_of(ys);
    const std::int64_t delta = static_cast<std::int64_t>(rng() % 3);
    const std::int64_t epsilon = static_cast<std::int64_t>(rng() % 3);
    for (Direction dir : {Direction::asc, Direction::desc, Direction::bidirectional}) {
      const auto spec = make_spec(delta, epsilon, dir);
      const auto full = discover_abcod(seq, spec, DpMode::full);
      const auto inc = discover_abcod(seq, spec, DpMode::incremental);
      EXPECT_EQ(full.total_gain, inc.total_gain);
      EXPECT_EQ(full.prefix_gains, inc.prefix_gains);
      EXPECT_EQ(full.prefix_starts, inc.prefix_starts);
    }
  }
}

TEST(DiscoverAbcod, BellmanConsistency) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const auto ys = testutil::random_values(rng, n, 9);
    const auto seq = seq_of(ys);
    const auto spec = make_spec(1, 1, Direction::asc);
    const auto s = discover_abcod(seq, spec);
    for (int j = 1; j <= n; ++j) {
      for (int i = 0; i < j; ++i) {
        if (cost_of_range(seq, i + 1, j, spec.delta, spec.direction) > spec.epsilon) continue;
        const std::int64_t prev = i == 0 ? 0 : s.prefix_gains[static_cast<std::size_t>(i) - 1];
        const std::int64_t g = gain_of_range(seq, i + 1, j, spec.delta, spec.direction) *
                               seq.count_non_null(i + 1, j);
        EXPECT_GE(s.prefix_gains[static_cast<std::size_t>(j) - 1], prev + g);
      }
      // equality at the recorded split
      const int start = s.prefix_starts[static_cast<std::size_t>(j) - 1];
      const std::int64_t prev = start == 1 ? 0 : s.prefix_gains[static_cast<std::size_t>(start) - 2];
      const std::int64_t g = gain_of_range(seq, start, j, spec.delta, spec.direction) *
                             seq.count_non_null(start, j);
      EXPECT_EQ(s.prefix_gains[static_cast<std::size_t>(j) - 1], prev + g);
    }
  }
}

TEST(DiscoverAbcod, AppendingExtendableTupleNeverLowersGain) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    auto ys = testutil::random_values(rng, n, 8);
    const auto base = discover_abcod(seq_of(ys), make_spec(1, 1, Direction::asc));
    ys.push_back(ys.back() + static_cast<std::int64_t>(rng() % 2));  // within delta of the max? at least of the tail
    const auto extended = discover_abcod(seq_of(ys), make_spec(1, 1, Direction::asc));
    EXPECT_GE(extended.total_gain, base.total_gain);
  }
}

TEST(DiscoverAbcod, NullOnlyRangeIsAllowedSegment) {
  const auto s = discover_abcod(seq_of({kNull, kNull, kNull}), make_spec(1, 1, Direction::asc));
  EXPECT_EQ(s.total_gain, 0);
  expect_partition(s, 3);
}
