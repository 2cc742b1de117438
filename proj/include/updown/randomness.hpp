#pragma once

// Up-down signature of a numeric series and its exact probability under the
// i.i.d. continuous null, with the island-length upper bound.

#include "updown/bounds.hpp"
#include "updown/exact_numbers.hpp"
#include "updown/signatures.hpp"
#include "updown/updown_compute.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace updown {

/// Bad input data (unparseable values, ties under the error policy, ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TiePolicy {
  error,   // equal consecutive values abort
  drop,    // the later of two equal consecutive values is removed
  jitter,  // ties broken by a deterministic rank over original indices
};

inline TiePolicy parse_tie_policy(const std::string& name) {
  if (name == "error") return TiePolicy::error;
  if (name == "drop") return TiePolicy::drop;
  if (name == "jitter") return TiePolicy::jitter;
  throw std::invalid_argument("unknown tie policy: " + name);
}

struct SeriesInput {
  std::string label;
  std::vector<double> values;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field.push_back('"');
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (ch != '\r') {
      field.push_back(ch);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

inline double parse_finite(const std::string& text, std::size_t line_no) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw DataError("line " + std::to_string(line_no) + ": not a number: \"" + t + "\"");
  }
  if (used != t.size() || !std::isfinite(v))
    throw DataError("line " + std::to_string(line_no) + ": not a finite number: \"" + t + "\"");
  return v;
}

}  // namespace detail

/// Reads one column from CSV text with a header row.  `column` names a header
/// field; failing that, a 0-based index.
inline SeriesInput read_csv_column(std::istream& in, const std::string& column) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty CSV input (header row required)");
  const auto header = detail::split_csv_line(line);
  std::optional<std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i)
    if (detail::trim(header[i]) == column) col = i;
  if (!col && !column.empty() && column.find_first_not_of("0123456789") == std::string::npos) {
    const auto idx = std::stoul(column);
    if (idx < header.size()) col = idx;
  }
  if (!col) throw DataError("no such column: \"" + column + "\"");

  SeriesInput series;
  series.label = detail::trim(header[*col]);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split_csv_line(line);
    if (*col >= fields.size()) throw DataError("line " + std::to_string(line_no) + ": missing column");
    series.values.push_back(detail::parse_finite(fields[*col], line_no));
  }
  return series;
}

struct ExtractedSignature {
  Signature signature;
  std::size_t points_used = 0;
  std::vector<std::string> notes;
};

/// Signs of consecutive differences after applying the tie policy.  With the
/// jitter policy, equal values are ordered by original index, or by a seeded
/// random rank when `seed` is given.
inline ExtractedSignature extract_signature(const std::vector<double>& values, TiePolicy policy,
                                            std::optional<std::uint64_t> seed = std::nullopt) {
  for (double v : values)
    if (!std::isfinite(v)) throw DataError("series contains a non-finite value");
  ExtractedSignature out;
  std::vector<std::size_t> kept;
  kept.reserve(values.size());
  std::size_t ties = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!kept.empty() && values[i] == values[kept.back()]) {
      ++ties;
      if (policy == TiePolicy::error)
        throw DataError("tie between points " + std::to_string(kept.back()) + " and " +
                        std::to_string(i) + " (tie policy: error)");
      if (policy == TiePolicy::drop) continue;
    }
    kept.push_back(i);
  }

  std::vector<std::uint64_t> rank(values.size());
  std::iota(rank.begin(), rank.end(), std::uint64_t{0});
  if (policy == TiePolicy::jitter && seed) {
    std::mt19937_64 rng(*seed);
    std::shuffle(rank.begin(), rank.end(), rng);
  }

  std::vector<Sign> seq;
  for (std::size_t k = 1; k < kept.size(); ++k) {
    const std::size_t a = kept[k - 1], b = kept[k];
    const bool up = values[b] != values[a] ? values[b] > values[a] : rank[b] > rank[a];
    seq.push_back(up ? Sign::plus : Sign::minus);
  }
  out.signature = Signature(std::move(seq));
  out.points_used = kept.size();
  if (ties) {
    const char* verb = policy == TiePolicy::drop ? "dropped" : "jittered";
    out.notes.push_back(std::to_string(ties) + " tie(s) " + verb);
  }
  return out;
}

/// Above this length the positive-summand DP replaces the memoized recursion
/// for ingested series; both give the same exact count.
inline constexpr unsigned kRecursionIngestLimit = 24;

struct RandomnessReport {
  std::string label;
  Signature signature;
  unsigned N = 0;
  Composition islands;
  BigInt count;
  BigRational exact_p;
  long double log2_p = 0;
  BigRational theorem2_bound;
  long double log2_bound = 0;
  std::optional<double> threshold_log2;
  bool p_below_threshold = false;
  bool bound_certifies = false;  // log2(bound) < threshold, hence log2(p) < threshold
  std::vector<std::string> notes;
};

inline RandomnessReport randomness_test(const SeriesInput& series, TiePolicy policy,
                                        std::optional<double> threshold_log2 = std::nullopt,
                                        std::optional<std::uint64_t> seed = std::nullopt) {
  if (series.values.size() < 2) throw DataError("series needs at least two values");
  auto extracted = extract_signature(series.values, policy, seed);
  if (extracted.points_used < 2) throw DataError("fewer than two points remain after tie handling");

  RandomnessReport r;
  r.label = series.label;
  r.signature = extracted.signature;
  r.N = static_cast<unsigned>(r.signature.size());
  r.islands = to_composition(r.signature);
  r.notes = std::move(extracted.notes);
  if (r.N <= kRecursionIngestLimit) {
    r.count = c_recursion(r.islands);
  } else {
    r.count = c_triangle(r.signature);
    r.notes.push_back("count from positive-summand DP (N > " +
                      std::to_string(kRecursionIngestLimit) + ")");
  }
  r.exact_p = BigRational(r.count, factorial(r.N + 1));
  r.log2_p = log2_of(r.exact_p);
  r.theorem2_bound = upper_bound(r.islands);
  r.log2_bound = log2_of(r.theorem2_bound);
  r.threshold_log2 = threshold_log2;
  if (threshold_log2) {
    r.p_below_threshold = r.log2_p < *threshold_log2;
    r.bound_certifies = r.log2_bound < *threshold_log2;
  }
  return r;
}

}  // namespace updown
