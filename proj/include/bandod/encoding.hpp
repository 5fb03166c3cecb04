// encoding.hpp - order-preserving integer encoding of raw attribute values
// and mixed-radix linearization of multi-attribute lists onto one scalar.
#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bandod/core.hpp"

namespace bandod {

struct EncodingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool is_null_token(const std::string& raw) {
  if (raw.empty()) return true;
  if (raw.size() != 4) return false;
  return std::tolower(static_cast<unsigned char>(raw[0])) == 'n' &&
         std::tolower(static_cast<unsigned char>(raw[1])) == 'u' &&
         std::tolower(static_cast<unsigned char>(raw[2])) == 'l' &&
         std::tolower(static_cast<unsigned char>(raw[3])) == 'l';
}

enum class ColumnKind {
  numeric,      // integers or fixed-point decimals, scaled to integers
  categorical,  // declared total order, rank 1..k
  text_rank,    // lexicographic rank over the observed distinct values
};

struct ColumnSchema {
  std::string name;
  ColumnKind kind = ColumnKind::numeric;
  std::vector<std::string> category_order;  // for ColumnKind::categorical
};

// Parses an integer or fixed-point decimal at a given scale (digits after the
// point are padded/validated against `scale`). Throws EncodingError on junk.
inline std::int64_t parse_scaled_decimal(const std::string& raw, int scale,
                                         const std::string& context) {
  std::size_t i = 0;
  bool neg = false;
  if (i < raw.size() && (raw[i] == '+' || raw[i] == '-')) neg = raw[i++] == '-';
  std::int64_t ip = 0;
  std::size_t digits = 0;
  for (; i < raw.size() && std::isdigit(static_cast<unsigned char>(raw[i])); ++i, ++digits) {
    ip = ip * 10 + (raw[i] - '0');
  }
  std::int64_t fp = 0;
  int fdigits = 0;
  if (i < raw.size() && raw[i] == '.') {
    ++i;
    for (; i < raw.size() && std::isdigit(static_cast<unsigned char>(raw[i])); ++i, ++fdigits) {
      if (fdigits < scale) fp = fp * 10 + (raw[i] - '0');
    }
  }
  if (i != raw.size() || digits == 0 || fdigits > scale) {
    throw EncodingError("not a numeric value" + std::string(fdigits > scale ? " (scale)" : "") +
                        ": '" + raw + "' at " + context);
  }
  for (int k = fdigits; k < scale; ++k) fp *= 10;
  std::int64_t pow10 = 1;
  for (int k = 0; k < scale; ++k) pow10 *= 10;
  const std::int64_t v = ip * pow10 + fp;
  return neg ? -v : v;
}

inline int decimal_scale_of(const std::string& raw) {
  const auto dot = raw.find('.');
  if (dot == std::string::npos) return 0;
  return static_cast<int>(raw.size() - dot - 1);
}

// Per-column encoder. text_rank and numeric columns need a pass over the data
// (rank table, decimal scale, value range) before rows can be encoded.
class ColumnEncoder {
 public:
  explicit ColumnEncoder(ColumnSchema schema) : schema_(std::move(schema)) {
    if (schema_.kind == ColumnKind::categorical) {
      std::int64_t rank = 1;
      for (const auto& v : schema_.category_order) rank_[v] = rank++;
    }
  }

  void observe(const std::string& raw) {
    if (is_null_token(raw)) return;
    if (schema_.kind == ColumnKind::text_rank) {
      rank_.emplace(raw, 0);
    } else if (schema_.kind == ColumnKind::numeric) {
      scale_ = std::max(scale_, decimal_scale_of(raw));
    }
  }

  void finalize() {
    if (schema_.kind == ColumnKind::text_rank) {
      std::int64_t rank = 1;
      for (auto& kv : rank_) kv.second = rank++;  // std::map iterates in order
    }
    finalized_ = true;
  }

  // nullopt encodes null; errors carry the column name and caller context.
  std::optional<std::int64_t> encode(const std::string& raw, const std::string& context) const {
    if (is_null_token(raw)) return std::nullopt;
    switch (schema_.kind) {
      case ColumnKind::numeric:
        return parse_scaled_decimal(raw, scale_, "column '" + schema_.name + "', " + context);
      case ColumnKind::categorical:
      case ColumnKind::text_rank: {
        auto it = rank_.find(raw);
        if (it == rank_.end()) {
          throw EncodingError("value '" + raw + "' not in declared order of column '" +
                              schema_.name + "', " + context);
        }
        return it->second;
      }
    }
    throw EncodingError("unreachable");
  }

  // Radix for mixed-radix linearization when this column is a lower digit.
  // Categorical/text columns contribute rank values in [1, k] with radix k;
  // numeric columns are shifted to [0, range-1] with radix = range.
  std::int64_t radix() const {
    if (schema_.kind == ColumnKind::numeric) {
      return has_range_ ? (max_ - min_ + 1) : 1;
    }
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(rank_.size()));
  }

  std::int64_t term(std::int64_t encoded) const {
    return schema_.kind == ColumnKind::numeric && has_range_ ? encoded - min_ : encoded;
  }

  void observe_encoded_range(std::int64_t v) {
    if (!has_range_) {
      min_ = max_ = v;
      has_range_ = true;
    } else {
      min_ = std::min(min_, v);
      max_ = std::max(max_, v);
    }
  }

  const ColumnSchema& schema() const { return schema_; }
  bool finalized() const { return finalized_; }

 private:
  ColumnSchema schema_;
  std::map<std::string, std::int64_t> rank_;
  int scale_ = 0;
  std::int64_t min_ = 0, max_ = 0;
  bool has_range_ = false;
  bool finalized_ = false;
};

// Encodes a list of raw attribute values onto a single OrderedValue. Columns
// are most-significant first; any null component makes the whole value null.
class RowEncoder {
 public:
  explicit RowEncoder(std::vector<ColumnSchema> schemas) {
    for (auto& s : schemas) columns_.emplace_back(std::move(s));
  }

  // Two-pass setup: observe every raw row, then finalize before encoding.
  void observe(const std::vector<std::string>& raw) {
    check_arity(raw);
    for (std::size_t c = 0; c < columns_.size(); ++c) columns_[c].observe(raw[c]);
  }

  void finalize() {
    for (auto& col : columns_) col.finalize();
  }

  void observe_encoded(const std::vector<std::string>& raw, const std::string& context) {
    check_arity(raw);
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      auto v = columns_[c].encode(raw[c], context);
      if (v) columns_[c].observe_encoded_range(*v);
    }
  }

  OrderedValue encode(const std::vector<std::string>& raw, const std::string& context) const {
    check_arity(raw);
    __int128 acc = 0;
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      auto v = columns_[c].encode(raw[c], context);
      if (!v) return OrderedValue::null();
      if (c == 0) {
        acc = *v;
      } else {
        acc = acc * columns_[c].radix() + columns_[c].term(*v);
      }
      if (acc > INT64_MAX || acc < INT64_MIN) {
        throw EncodingError("encoded value overflows 64 bits at " + context);
      }
    }
    return OrderedValue::of(static_cast<std::int64_t>(acc));
  }

  std::size_t arity() const { return columns_.size(); }

 private:
  void check_arity(const std::vector<std::string>& raw) const {
    if (raw.size() != columns_.size()) {
      throw EncodingError("attribute list arity mismatch");
    }
  }

  std::vector<ColumnEncoder> columns_;
};

// One-shot helper used by tests and small callers: builds the encoder from
// the full data, then encodes every row.
inline std::vector<OrderedValue> encode_values(const std::vector<std::vector<std::string>>& rows,
                                               std::vector<ColumnSchema> schemas) {
  RowEncoder enc(std::move(schemas));
  for (const auto& r : rows) enc.observe(r);
  enc.finalize();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    enc.observe_encoded(rows[i], "row " + std::to_string(i + 1));
  }
  std::vector<OrderedValue> out;
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.push_back(enc.encode(rows[i], "row " + std::to_string(i + 1)));
  }
  return out;
}

// Spec-level single-value entry point.
inline OrderedValue encode_value(const std::vector<std::string>& raw,
                                 std::vector<ColumnSchema> schemas) {
  return encode_values({raw}, std::move(schemas)).front();
}

}  // namespace bandod
