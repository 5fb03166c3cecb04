// core.hpp - ordered-value model, band order operators, and the sorted
// sequence abstraction shared by every algorithm in the library.
#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace bandod {

enum class Direction { asc, desc, bidirectional };

inline const char* to_string(Direction d) {
  switch (d) {
    case Direction::asc: return "asc";
    case Direction::desc: return "desc";
    case Direction::bidirectional: return "bi";
  }
  return "?";
}

inline Direction direction_from_string(const std::string& s) {
  if (s == "asc") return Direction::asc;
  if (s == "desc") return Direction::desc;
  if (s == "bi" || s == "bidirectional") return Direction::bidirectional;
  throw std::invalid_argument("unknown direction: " + s);
}

// A totally ordered scalar obtained by order-preserving integer encoding of
// one or more raw attribute values. Null participates in no comparison.
struct OrderedValue {
  std::int64_t encoded = 0;
  bool is_null = false;

  static OrderedValue null() { return OrderedValue{0, true}; }
  static OrderedValue of(std::int64_t v) { return OrderedValue{v, false}; }

  friend bool operator==(const OrderedValue& a, const OrderedValue& b) {
    return a.is_null == b.is_null && (a.is_null || a.encoded == b.encoded);
  }
};

// Signed distance between two non-null values: d(a, b) = b - a.
inline std::int64_t distance(const OrderedValue& a, const OrderedValue& b) {
  if (a.is_null || b.is_null) {
    throw std::logic_error("distance() called with a null operand");
  }
  return b.encoded - a.encoded;
}

struct TupleRecord {
  std::int64_t row_id = 0;                 // source row, survives sorting
  std::vector<std::int64_t> x_key;         // composite lexicographic sort key
  OrderedValue y;
};

// t is band-below-or-equal s for the given width and direction. Null values
// never violate an ordering, so any comparison involving one holds.
inline bool band_leq(const OrderedValue& t, const OrderedValue& s,
                     std::int64_t delta, Direction dir) {
  if (t.is_null || s.is_null) return true;
  const std::int64_t d = s.encoded - t.encoded;
  return dir == Direction::asc ? d >= -delta : d <= delta;
}

inline bool band_leq(const TupleRecord& t, const TupleRecord& s,
                     std::int64_t delta, Direction dir) {
  return band_leq(t.y, s.y, delta, dir);
}

// Strict version: t precedes s beyond the band in the given direction.
inline bool band_lt(const OrderedValue& t, const OrderedValue& s,
                    std::int64_t delta, Direction dir) {
  if (t.is_null || s.is_null) {
    throw std::logic_error("band_lt() called with a null operand");
  }
  const std::int64_t d = s.encoded - t.encoded;
  return dir == Direction::asc ? d > delta : d < -delta;
}

inline bool band_lt(const TupleRecord& t, const TupleRecord& s,
                    std::int64_t delta, Direction dir) {
  return band_lt(t.y, s.y, delta, dir);
}

// The dependency under test: sort by X, check marked Y within band width
// delta, allowing at most epsilon consecutive outliers per segment.
struct BandOdSpec {
  std::vector<std::string> x_columns;
  std::vector<std::string> y_columns;
  Direction direction = Direction::asc;
  std::int64_t delta = 0;
  std::int64_t epsilon = 1;
};

// Immutable view over tuples ordered lexicographically ascending by x_key.
// Addressing is 1-based and inclusive; slice(i, j) shares storage.
class SequenceView {
 public:
  SequenceView() : tuples_(std::make_shared<std::vector<TupleRecord>>()) {}

  explicit SequenceView(std::vector<TupleRecord> tuples)
      : tuples_(std::make_shared<std::vector<TupleRecord>>(std::move(tuples))),
        begin_(0),
        len_(static_cast<int>(tuples_->size())) {}

  int size() const { return len_; }
  bool empty() const { return len_ == 0; }

  const TupleRecord& at(int i) const {
    if (i < 1 || i > len_) throw std::out_of_range("SequenceView::at");
    return (*tuples_)[static_cast<std::size_t>(begin_ + i - 1)];
  }

  const OrderedValue& y(int i) const { return at(i).y; }

  SequenceView slice(int i, int j) const {
    if (i < 1 || j > len_ || i > j + 1) throw std::out_of_range("SequenceView::slice");
    SequenceView v(*this);
    v.begin_ = begin_ + i - 1;
    v.len_ = j - i + 1;
    return v;
  }

  int count_non_null(int i, int j) const {
    int c = 0;
    for (int k = i; k <= j; ++k) c += !y(k).is_null;
    return c;
  }

  int count_non_null() const { return len_ == 0 ? 0 : count_non_null(1, len_); }

 private:
  std::shared_ptr<const std::vector<TupleRecord>> tuples_;
  int begin_ = 0;
  int len_ = 0;
};

// Stable sort by x_key; ties keep input order (X-ties are legal and the
// relative order of duplicates is preserved).
inline SequenceView build_sequence(std::vector<TupleRecord> records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const TupleRecord& a, const TupleRecord& b) {
                     return std::lexicographical_compare(
                         a.x_key.begin(), a.x_key.end(), b.x_key.begin(), b.x_key.end());
                   });
  return SequenceView(std::move(records));
}

// Exact ratio kept alongside its double rendering so reports stay bit-stable.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Ratio& a, const Ratio& b) {
    return a.num == b.num && a.den == b.den;
  }
};

}  // namespace bandod
