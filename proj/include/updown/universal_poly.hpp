#pragma once

// Linear (square-free) polynomials in s_1, s_2, ... with exact coefficients:
// gamma-series, the universal polynomial Phi_N built from tanh coefficients,
// the gap-separated star product and its exponential.

#include "updown/exact_numbers.hpp"
#include "updown/signatures.hpp"

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace updown {

/// Largest truncation level supported by the 64-bit monomial encoding.
inline constexpr unsigned kMaxPolyLevel = 64;

/// s_A for a set A of positions in 1..64; position p is bit p-1.
struct Monomial {
  std::uint64_t bits = 0;

  static constexpr Monomial unit() { return {}; }

  static Monomial of(std::initializer_list<unsigned> positions) {
    Monomial m;
    for (unsigned p : positions) m.bits |= bit_for(p);
    return m;
  }

  /// s_first ... s_{first+len-1}
  static Monomial block(unsigned first, unsigned len) {
    Monomial m;
    for (unsigned p = first; p < first + len; ++p) m.bits |= bit_for(p);
    return m;
  }

  static std::uint64_t bit_for(unsigned position) {
    if (position == 0 || position > kMaxPolyLevel)
      throw std::out_of_range("monomial positions must lie in 1..64");
    return std::uint64_t{1} << (position - 1);
  }

  bool is_unit() const { return bits == 0; }
  unsigned degree() const { return static_cast<unsigned>(std::popcount(bits)); }
  unsigned min_position() const { return static_cast<unsigned>(std::countr_zero(bits)) + 1; }
  unsigned max_position() const { return 64U - static_cast<unsigned>(std::countl_zero(bits)); }
  bool contains(unsigned position) const { return (bits & bit_for(position)) != 0; }

  std::vector<unsigned> positions() const {
    std::vector<unsigned> out;
    for (std::uint64_t b = bits; b; b &= b - 1) out.push_back(static_cast<unsigned>(std::countr_zero(b)) + 1);
    return out;
  }

  friend bool operator==(Monomial, Monomial) = default;
};

/// Degree first, then ascending position lists compared lexicographically.
struct MonomialOrder {
  bool operator()(Monomial a, Monomial b) const {
    const int da = std::popcount(a.bits), db = std::popcount(b.bits);
    if (da != db) return da < db;
    const std::uint64_t diff = a.bits ^ b.bits;
    if (!diff) return false;
    // the smallest position in exactly one of the sets decides
    return (a.bits & (diff & (~diff + 1))) != 0;
  }
};

class LinearPolynomial {
 public:
  using Terms = std::map<Monomial, BigRational, MonomialOrder>;

  LinearPolynomial() = default;
  explicit LinearPolynomial(BigRational constant) { add(Monomial::unit(), std::move(constant)); }

  void add(Monomial m, const BigRational& coef) {
    if (coef == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, coef);
    if (!inserted) {
      it->second += coef;
      if (it->second == 0) terms_.erase(it);
    }
  }

  BigRational coefficient(Monomial m) const {
    const auto it = terms_.find(m);
    return it == terms_.end() ? BigRational(0) : it->second;
  }
  BigRational constant_term() const { return coefficient(Monomial::unit()); }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Largest position occurring in any monomial (0 for constants).
  unsigned support() const {
    unsigned s = 0;
    for (const auto& [m, c] : terms_)
      if (!m.is_unit()) s = std::max(s, m.max_position());
    return s;
  }

  LinearPolynomial& operator+=(const LinearPolynomial& other) {
    for (const auto& [m, c] : other.terms_) add(m, c);
    return *this;
  }
  LinearPolynomial& operator-=(const LinearPolynomial& other) {
    for (const auto& [m, c] : other.terms_) add(m, -c);
    return *this;
  }
  LinearPolynomial& operator*=(const BigRational& k) {
    if (k == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= k;
    return *this;
  }

  friend LinearPolynomial operator+(LinearPolynomial a, const LinearPolynomial& b) { return a += b; }
  friend LinearPolynomial operator-(LinearPolynomial a, const LinearPolynomial& b) { return a -= b; }
  friend LinearPolynomial operator*(LinearPolynomial a, const BigRational& k) { return a *= k; }

  /// Ordinary product of functions on sign vectors: s_i^2 = 1, so monomials
  /// multiply by symmetric difference.
  friend LinearPolynomial operator*(const LinearPolynomial& a, const LinearPolynomial& b) {
    LinearPolynomial out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add(Monomial{ma.bits ^ mb.bits}, ca * cb);
    return out;
  }

  friend bool operator==(const LinearPolynomial& a, const LinearPolynomial& b) {
    return a.terms_ == b.terms_;
  }

 private:
  Terms terms_;
};

/// Sum of s_A over all A in {1..N} with the given run-type, each with
/// coefficient 1.  Empty when the run-type does not fit.
inline LinearPolynomial gamma(const RunType& run_type, unsigned N) {
  if (N > kMaxPolyLevel) throw std::out_of_range("truncation level above 64");
  for (unsigned p : run_type.parts)
    if (p == 0) throw std::invalid_argument("run-type parts must be positive");
  LinearPolynomial out;
  if (run_type.parts.empty()) return out;
  const auto& parts = run_type.parts;
  std::function<void(std::size_t, unsigned, std::uint64_t)> place =
      [&](std::size_t k, unsigned first_free, std::uint64_t bits) {
        if (k == parts.size()) {
          out.add(Monomial{bits}, 1);
          return;
        }
        for (unsigned start = first_free; start + parts[k] - 1 <= N; ++start)
          place(k + 1, start + parts[k] + 1, bits | Monomial::block(start, parts[k]).bits);
      };
  place(0, 1, 0);
  return out;
}

/// Run-types with all parts even whose minimal footprint fits in N: exactly
/// the gamma-series that carry a nonzero coefficient in Phi_N.
inline std::vector<RunType> even_run_types(unsigned N) {
  std::vector<RunType> out;
  std::vector<unsigned> parts;
  std::function<void(unsigned)> extend = [&](unsigned used) {
    // `used` counts the footprint so far, including the gap before the next part
    for (unsigned len = 2; used + len <= N; len += 2) {
      parts.push_back(len);
      out.push_back(RunType{parts});
      extend(used + len + 1);
      parts.pop_back();
    }
  };
  extend(0);
  return out;
}

/// Number of gamma-series in c_N with nonzero coefficient.  Counted by
/// footprint: a run-type with footprint m corresponds to a composition of m+1
/// into odd parts >= 3 (each part plus its trailing gap).
inline std::uint64_t gamma_term_count(unsigned N) {
  if (N == 0) throw std::invalid_argument("gamma_term_count needs N >= 1");
  // odd_ways[t] = compositions of t into odd parts >= 3
  std::vector<std::uint64_t> odd_ways(N + 2, 0);
  odd_ways[0] = 1;
  for (unsigned t = 1; t <= N + 1; ++t)
    for (unsigned part = 3; part <= t; part += 2) odd_ways[t] += odd_ways[t - part];
  std::uint64_t total = 0;
  for (unsigned m = 1; m <= N; ++m) total += odd_ways[m + 1];
  return total;
}

/// Phi_N = 1 + sum over sets A in {1..N} of T_{i_1} ... T_{i_k} s_A, where
/// (i_1..i_k) is the run-type of A.  Only even runs contribute.  phi(0) = 1.
inline LinearPolynomial phi(unsigned N) {
  if (N > kMaxPolyLevel) throw std::out_of_range("truncation level above 64");
  std::vector<BigRational> t(N + 1);
  for (unsigned k = 0; k <= N; ++k) t[k] = tangent_coeff(k);

  LinearPolynomial out(1);
  std::function<void(unsigned, const BigRational&, std::uint64_t)> grow =
      [&](unsigned first_free, const BigRational& coef, std::uint64_t bits) {
        for (unsigned start = first_free; start + 1 <= N; ++start) {
          for (unsigned len = 2; start + len - 1 <= N; len += 2) {
            const BigRational c = coef * t[len];
            const std::uint64_t b = bits | Monomial::block(start, len).bits;
            out.add(Monomial{b}, c);
            grow(start + len + 1, c, b);
          }
        }
      };
  grow(1, BigRational(1), 0);
  return out;
}

/// c_N = (N+1)! 2^{-N} Phi_N, interpolating C(sigma) over all signatures of length N.
inline LinearPolynomial c_polynomial(unsigned N) {
  return phi(N) * BigRational(factorial(N + 1), BigInt(1) << N);
}

/// p_N = 2^{-N} Phi_N.
inline LinearPolynomial p_polynomial(unsigned N) {
  return phi(N) * BigRational(BigInt(1), BigInt(1) << N);
}

/// Value at sigma: each monomial contributes its coefficient with the sign
/// (-1)^{|A & minus-positions|}.
inline BigRational evaluate(const LinearPolynomial& p, const Signature& s) {
  if (p.support() > s.size())
    throw std::invalid_argument("signature shorter than the polynomial's support");
  if (s.size() > kMaxPolyLevel) throw std::out_of_range("signature longer than 64");
  std::uint64_t minus = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] == Sign::minus) minus |= std::uint64_t{1} << i;
  BigRational total = 0;
  for (const auto& [m, c] : p.terms()) {
    if (std::popcount(m.bits & minus) % 2) {
      total -= c;
    } else {
      total += c;
    }
  }
  return total;
}

/// s_A * s_B = s_{A u B} when no index of A equals or neighbours an index of
/// B, else 0.  1 is the unit.
inline bool star_compatible(Monomial a, Monomial b) {
  return (a.bits & (b.bits | (b.bits << 1) | (b.bits >> 1))) == 0;
}

inline LinearPolynomial star_product(const LinearPolynomial& a, const LinearPolynomial& b) {
  LinearPolynomial out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms())
      if (star_compatible(ma, mb)) out.add(Monomial{ma.bits | mb.bits}, ca * cb);
  return out;
}

/// 1 + a + a*a/2! + ..., dropping monomials of degree above `degree_cap`.  The
/// series stops once a star power vanishes; every power raises the minimum
/// degree, so it does within degree_cap steps.
inline LinearPolynomial exp_star(const LinearPolynomial& a, unsigned degree_cap) {
  if (a.constant_term() != 0) throw std::invalid_argument("exp_star needs a zero constant term");
  LinearPolynomial result(1);
  LinearPolynomial power(1);
  for (unsigned k = 1;; ++k) {
    LinearPolynomial next;
    const LinearPolynomial product = star_product(power, a);
    for (const auto& [m, c] : product.terms())
      if (m.degree() <= degree_cap) next.add(m, c / BigRational(k));
    if (next.is_zero()) break;
    result += next;
    power = std::move(next);
  }
  return result;
}

/// sum_i T_i gamma(i) truncated at N, the exponent of Phi_N.
inline LinearPolynomial tangent_gamma_sum(unsigned N) {
  LinearPolynomial out;
  for (unsigned len = 2; len <= N; len += 2) {
    LinearPolynomial g = gamma(RunType{{len}}, N);
    out += g * tangent_coeff(len);
  }
  return out;
}

/// Sets s_n = 0: drops every monomial containing n.
inline LinearPolynomial zero_substitution(const LinearPolynomial& p, unsigned n) {
  if (n == 0 || n > kMaxPolyLevel) throw std::out_of_range("position out of range");
  LinearPolynomial out;
  for (const auto& [m, c] : p.terms())
    if (!m.contains(n)) out.add(m, c);
  return out;
}

/// Renames s_i to s_{i+offset}.
inline LinearPolynomial shifted(const LinearPolynomial& p, unsigned offset) {
  LinearPolynomial out;
  for (const auto& [m, c] : p.terms()) {
    if (!m.is_unit() && m.max_position() + offset > kMaxPolyLevel)
      throw std::out_of_range("shift beyond position 64");
    out.add(Monomial{m.bits << offset}, c);
  }
  return out;
}

/// The common coefficient of every monomial of gamma_N(run_type) in p.  Throws
/// if p does not treat the gamma-series as a block or it has no terms at N.
inline BigRational gamma_coefficient(const LinearPolynomial& p, const RunType& run_type, unsigned N) {
  const LinearPolynomial g = gamma(run_type, N);
  if (g.is_zero()) throw std::invalid_argument("run-type does not fit at this level");
  bool first = true;
  BigRational value;
  for (const auto& [m, c] : g.terms()) {
    const BigRational here = p.coefficient(m);
    if (first) {
      value = here;
      first = false;
    } else if (here != value) {
      throw std::logic_error("coefficients differ across one gamma-series");
    }
  }
  return value;
}

/// One line per term, "coef<TAB>positions", coefficient as num/den and
/// positions ascending, comma-separated; constant term has an empty list.
inline std::string dump(const LinearPolynomial& p) {
  std::string out;
  for (const auto& [m, c] : p.terms()) {
    out += to_fraction_string(c);
    out.push_back('\t');
    const auto pos = m.positions();
    for (std::size_t i = 0; i < pos.size(); ++i) {
      if (i) out.push_back(',');
      out += std::to_string(pos[i]);
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace updown
