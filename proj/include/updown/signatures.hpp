#pragma once

// Up-down signatures, their island (composition) form, run-types of position
// sets, and the binary index used by distribution dumps.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace updown {

enum class Sign : std::int8_t { minus = -1, plus = 1 };

constexpr Sign operator-(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }
constexpr int value_of(Sign s) { return static_cast<int>(s); }
constexpr char to_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

/// A sequence over {+1, -1}; the empty signature describes the single
/// permutation of {1}.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Sign> seq) : seq_(std::move(seq)) {}

  /// Parses '+'/'-' characters with no separators.
  static Signature parse(std::string_view text) {
    std::vector<Sign> seq;
    seq.reserve(text.size());
    for (char ch : text) {
      if (ch == '+') {
        seq.push_back(Sign::plus);
      } else if (ch == '-') {
        seq.push_back(Sign::minus);
      } else {
        throw std::invalid_argument("signature may contain only '+' and '-': \"" +
                                    std::string(text) + "\"");
      }
    }
    return Signature(std::move(seq));
  }

  std::size_t size() const { return seq_.size(); }
  bool empty() const { return seq_.empty(); }
  Sign operator[](std::size_t i) const { return seq_[i]; }
  const std::vector<Sign>& signs() const { return seq_; }
  auto begin() const { return seq_.begin(); }
  auto end() const { return seq_.end(); }

  /// Product sigma_1 ... sigma_N (1 for the empty signature).
  int product() const {
    int p = 1;
    for (Sign s : seq_) p *= value_of(s);
    return p;
  }

  std::string str() const {
    std::string out;
    out.reserve(seq_.size());
    for (Sign s : seq_) out.push_back(to_char(s));
    return out;
  }

  friend auto operator<=>(const Signature&, const Signature&) = default;

 private:
  std::vector<Sign> seq_;
};

inline Signature flip(const Signature& s) {
  std::vector<Sign> out;
  out.reserve(s.size());
  for (Sign x : s) out.push_back(-x);
  return Signature(std::move(out));
}

inline Signature reversed(const Signature& s) {
  std::vector<Sign> out(s.begin(), s.end());
  std::reverse(out.begin(), out.end());
  return Signature(std::move(out));
}

/// sigma, joint, mu concatenated.
inline Signature join(const Signature& sigma, Sign joint, const Signature& mu) {
  std::vector<Sign> out(sigma.begin(), sigma.end());
  out.push_back(joint);
  out.insert(out.end(), mu.begin(), mu.end());
  return Signature(std::move(out));
}

/// Island form: runs of equal signs, starting with `leading`.
struct Composition {
  Sign leading = Sign::plus;
  std::vector<unsigned> islands;

  unsigned length() const {
    unsigned n = 0;
    for (unsigned i : islands) n += i;
    return n;
  }

  /// "+:2,3,1"; the empty composition renders as "+:".
  std::string str() const {
    std::string out(1, to_char(leading));
    out.push_back(':');
    for (std::size_t k = 0; k < islands.size(); ++k) {
      if (k) out.push_back(',');
      out += std::to_string(islands[k]);
    }
    return out;
  }

  /// Inverse of str(); a missing sign prefix means '+'.
  static Composition parse(std::string_view text) {
    Composition c;
    std::string_view body = text;
    const auto colon = text.find(':');
    if (colon != std::string_view::npos) {
      const std::string_view head = text.substr(0, colon);
      if (head == "+") {
        c.leading = Sign::plus;
      } else if (head == "-") {
        c.leading = Sign::minus;
      } else {
        throw std::invalid_argument("composition sign must be '+' or '-'");
      }
      body = text.substr(colon + 1);
    }
    std::size_t pos = 0;
    while (pos < body.size()) {
      auto comma = body.find(',', pos);
      if (comma == std::string_view::npos) comma = body.size();
      const std::string_view item = body.substr(pos, comma - pos);
      if (item.empty() || item.find_first_not_of("0123456789") != std::string_view::npos)
        throw std::invalid_argument("malformed island length in \"" + std::string(text) + "\"");
      c.islands.push_back(static_cast<unsigned>(std::stoul(std::string(item))));
      pos = comma + 1;
    }
    return c;
  }

  friend bool operator==(const Composition&, const Composition&) = default;
};

inline Composition to_composition(const Signature& s) {
  Composition c;
  if (s.empty()) return c;
  c.leading = s[0];
  Sign current = s[0];
  unsigned run = 0;
  for (Sign x : s) {
    if (x == current) {
      ++run;
    } else {
      c.islands.push_back(run);
      current = x;
      run = 1;
    }
  }
  c.islands.push_back(run);
  return c;
}

inline Signature from_composition(const Composition& c) {
  std::vector<Sign> seq;
  Sign current = c.leading;
  for (unsigned len : c.islands) {
    if (len == 0) throw std::invalid_argument("composition islands must be positive");
    seq.insert(seq.end(), len, current);
    current = -current;
  }
  return Signature(std::move(seq));
}

/// Lengths of the maximal runs of consecutive integers.
struct RunType {
  std::vector<unsigned> parts;

  unsigned weight() const {
    unsigned w = 0;
    for (unsigned p : parts) w += p;
    return w;
  }
  /// Minimal span of a set with this run-type: the parts plus one gap between runs.
  unsigned footprint() const {
    return parts.empty() ? 0 : weight() + static_cast<unsigned>(parts.size()) - 1;
  }

  friend auto operator<=>(const RunType&, const RunType&) = default;
};

inline RunType run_type_of_set(const std::set<unsigned>& positions) {
  if (positions.empty()) throw std::invalid_argument("run-type of an empty set");
  RunType rt;
  unsigned prev = 0;
  bool first = true;
  for (unsigned a : positions) {
    if (!first && a == prev + 1) {
      ++rt.parts.back();
    } else {
      rt.parts.push_back(1);
    }
    prev = a;
    first = false;
  }
  return rt;
}

/// Bit j of idx, counted from the most significant of N bits, gives sigma_{j+1};
/// a 1 bit is '+'.
inline Signature signature_from_index(unsigned N, std::uint64_t idx) {
  if (N > 63) throw std::out_of_range("signature index supports N <= 63");
  if (idx >> N) throw std::out_of_range("signature index out of range for N");
  std::vector<Sign> seq(N);
  for (unsigned j = 0; j < N; ++j)
    seq[j] = ((idx >> (N - 1 - j)) & 1U) ? Sign::plus : Sign::minus;
  return Signature(std::move(seq));
}

/// Calls f(islands) for every composition of N (2^{N-1} of them for N >= 1, one
/// empty composition for N = 0), largest first island first.
template <typename F>
void for_each_composition(unsigned N, F&& f) {
  std::vector<unsigned> parts;
  auto rec = [&](auto&& self, unsigned remaining) -> void {
    if (remaining == 0) {
      f(static_cast<const std::vector<unsigned>&>(parts));
      return;
    }
    for (unsigned len = remaining; len >= 1; --len) {
      parts.push_back(len);
      self(self, remaining - len);
      parts.pop_back();
    }
  };
  rec(rec, N);
}

inline std::uint64_t index_of(const Signature& s) {
  if (s.size() > 63) throw std::out_of_range("signature index supports N <= 63");
  std::uint64_t idx = 0;
  for (Sign x : s) idx = (idx << 1) | (x == Sign::plus ? 1U : 0U);
  return idx;
}

}  // namespace updown
