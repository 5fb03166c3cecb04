#include "bandod/core.hpp"

#include <gtest/gtest.h>

#include <random>

#include "bandod/encoding.hpp"
#include "test_util.hpp"

using namespace bandod;

TEST(Distance, SignedDifference) {
  EXPECT_EQ(distance(OrderedValue::of(1992), OrderedValue::of(2012)), 20);
  EXPECT_EQ(distance(OrderedValue::of(1996), OrderedValue::of(1995)), -1);
  EXPECT_EQ(distance(OrderedValue::of(7), OrderedValue::of(7)), 0);
}

TEST(Distance, NullOperandIsContractViolation) {
  EXPECT_THROW(distance(OrderedValue::null(), OrderedValue::of(1)), std::logic_error);
  EXPECT_THROW(distance(OrderedValue::of(1), OrderedValue::null()), std::logic_error);
}

TEST(Distance, AntiSymmetryAndAdditivity) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a = OrderedValue::of(static_cast<std::int64_t>(rng() % 2001) - 1000);
    const auto b = OrderedValue::of(static_cast<std::int64_t>(rng() % 2001) - 1000);
    const auto c = OrderedValue::of(static_cast<std::int64_t>(rng() % 2001) - 1000);
    EXPECT_EQ(distance(a, b), -distance(b, a));
    EXPECT_EQ(distance(a, c), distance(a, b) + distance(b, c));
  }
}

TEST(BandLeq, AscWithinBand) {
  // A later tuple may dip at most delta below an earlier one.
  EXPECT_TRUE(band_leq(OrderedValue::of(1996), OrderedValue::of(1995), 1, Direction::asc));
  EXPECT_FALSE(band_leq(OrderedValue::of(1996), OrderedValue::of(1994), 1, Direction::asc));
}

TEST(BandLeq, DescWithinBand) {
  // A later tuple may rise at most delta above an earlier one.
  EXPECT_TRUE(band_leq(OrderedValue::of(2000), OrderedValue::of(1998), 1, Direction::desc));
  EXPECT_TRUE(band_leq(OrderedValue::of(1999), OrderedValue::of(2000), 1, Direction::desc));
  EXPECT_FALSE(band_leq(OrderedValue::of(1998), OrderedValue::of(2000), 1, Direction::desc));
}

TEST(BandLeq, NullsNeverViolate) {
  EXPECT_TRUE(band_leq(OrderedValue::null(), OrderedValue::of(5), 0, Direction::asc));
  EXPECT_TRUE(band_leq(OrderedValue::of(5), OrderedValue::null(), 0, Direction::desc));
}

TEST(BandLeq, DeltaZeroAscIsNonDecreasing) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::int64_t a = static_cast<std::int64_t>(rng() % 100);
    const std::int64_t b = static_cast<std::int64_t>(rng() % 100);
    EXPECT_EQ(band_leq(OrderedValue::of(a), OrderedValue::of(b), 0, Direction::asc), a <= b);
  }
}

TEST(BandLt, StrictlyBeyondBand) {
  EXPECT_TRUE(band_lt(OrderedValue::of(1992), OrderedValue::of(1994), 1, Direction::asc));
  EXPECT_FALSE(band_lt(OrderedValue::of(1992), OrderedValue::of(1993), 1, Direction::asc));
  EXPECT_FALSE(band_lt(OrderedValue::of(1992), OrderedValue::of(1992), 0, Direction::asc));
  EXPECT_TRUE(band_lt(OrderedValue::of(1994), OrderedValue::of(1992), 1, Direction::desc));
}

TEST(BuildSequence, SortsByXKeyAndKeepsRowIds) {
  std::vector<TupleRecord> records;
  for (int i = 0; i < 4; ++i) {
    TupleRecord r;
    r.row_id = i + 1;
    r.x_key = {10 - i};
    r.y = OrderedValue::of(i);
    records.push_back(r);
  }
  const SequenceView seq = build_sequence(records);
  ASSERT_EQ(seq.size(), 4);
  EXPECT_EQ(seq.at(1).row_id, 4);
  EXPECT_EQ(seq.at(4).row_id, 1);
}

TEST(BuildSequence, StableOnDuplicateKeys) {
  std::vector<TupleRecord> records;
  for (int i = 0; i < 5; ++i) {
    TupleRecord r;
    r.row_id = i + 1;
    r.x_key = {7};
    r.y = OrderedValue::of(i);
    records.push_back(r);
  }
  const SequenceView seq = build_sequence(records);
  for (int i = 1; i <= 5; ++i) EXPECT_EQ(seq.at(i).row_id, i);
}

TEST(BuildSequence, EmptyInput) {
  EXPECT_EQ(build_sequence({}).size(), 0);
}

TEST(SequenceView, SliceSharesAndAddressesOneBased) {
  const auto seq = testutil::seq_of({10, 20, 30, 40, 50});
  const auto mid = seq.slice(2, 4);
  ASSERT_EQ(mid.size(), 3);
  EXPECT_EQ(mid.y(1).encoded, 20);
  EXPECT_EQ(mid.y(3).encoded, 40);
  EXPECT_EQ(mid.slice(2, 2).y(1).encoded, 30);
}

TEST(Encoding, MixedRadixYearMonth) {
  std::vector<ColumnSchema> schemas(2);
  schemas[0] = {"year", ColumnKind::numeric, {}};
  schemas[1] = {"month", ColumnKind::categorical,
                {"Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"}};
  const auto v = encode_value({"1995", "Oct"}, schemas);
  EXPECT_FALSE(v.is_null);
  EXPECT_EQ(v.encoded, 1995 * 12 + 10);
}

TEST(Encoding, NullTokens) {
  std::vector<ColumnSchema> schemas(1);
  schemas[0] = {"year", ColumnKind::numeric, {}};
  EXPECT_TRUE(encode_value({"Null"}, schemas).is_null);
  EXPECT_TRUE(encode_value({"null"}, schemas).is_null);
  EXPECT_TRUE(encode_value({""}, schemas).is_null);
  EXPECT_FALSE(encode_value({"1992"}, schemas).is_null);
}

TEST(Encoding, UnknownCategoryNamesColumn) {
  std::vector<ColumnSchema> schemas(1);
  schemas[0] = {"month", ColumnKind::categorical, {"Jan", "Feb"}};
  try {
    encode_value({"Oct"}, schemas);
    FAIL() << "expected EncodingError";
  } catch (const EncodingError& e) {
    EXPECT_NE(std::string(e.what()).find("month"), std::string::npos);
  }
}

TEST(Encoding, BadNumericNamesRow) {
  std::vector<ColumnSchema> schemas(1);
  schemas[0] = {"year", ColumnKind::numeric, {}};
  std::vector<std::vector<std::string>> rows = {{"1990"}, {"199x"}};
  try {
    encode_values(rows, schemas);
    FAIL() << "expected EncodingError";
  } catch (const EncodingError& e) {
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos);
  }
}

TEST(Encoding, FixedPointDecimalsShareOneScale) {
  std::vector<ColumnSchema> schemas(1);
  schemas[0] = {"price", ColumnKind::numeric, {}};
  const auto vs = encode_values({{"1.5"}, {"1.25"}, {"2"}}, schemas);
  EXPECT_EQ(vs[0].encoded, 150);
  EXPECT_EQ(vs[1].encoded, 125);
  EXPECT_EQ(vs[2].encoded, 200);
}

TEST(Encoding, TextRankIsLexicographic) {
  std::vector<ColumnSchema> schemas(1);
  schemas[0] = {"cat", ColumnKind::text_rank, {}};
  const auto vs = encode_values({{"CDW45934"}, {"CDW45024"}, {"W9 16889-4"}}, schemas);
  EXPECT_LT(vs[1].encoded, vs[0].encoded);
  EXPECT_LT(vs[0].encoded, vs[2].encoded);
}

// Property: random raw pairs compare the same before and after encoding.
TEST(Encoding, OrderPreservation) {
  std::mt19937_64 rng(23);
  std::vector<ColumnSchema> schemas(2);
  schemas[0] = {"a", ColumnKind::numeric, {}};
  schemas[1] = {"b", ColumnKind::numeric, {}};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<std::int64_t, std::int64_t>> raw;
    const int n = 2 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) {
      const auto a = static_cast<std::int64_t>(rng() % 50) - 25;
      const auto b = static_cast<std::int64_t>(rng() % 50) - 25;
      raw.emplace_back(a, b);
      rows.push_back({std::to_string(a), std::to_string(b)});
    }
    const auto encoded = encode_values(rows, schemas);
    for (std::size_t i = 0; i < raw.size(); ++i) {
      for (std::size_t j = 0; j < raw.size(); ++j) {
        EXPECT_EQ(raw[i] < raw[j], encoded[i].encoded < encoded[j].encoded);
      }
    }
  }
}
