#pragma once

// Residues of C(sigma) modulo small integers: reduction of the interpolating
// polynomial c_N, the odd-prime predictors at N = p-1 and N = p, and
// exhaustive sweeps comparing predicted against exact residues.

#include "updown/exact_numbers.hpp"
#include "updown/parallel.hpp"
#include "updown/signatures.hpp"
#include "updown/universal_poly.hpp"
#include "updown/updown_compute.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace updown {

/// Raised when a coefficient denominator shares a factor with the modulus.
class InadmissibleModulus : public std::invalid_argument {
 public:
  InadmissibleModulus(std::int64_t modulus, BigInt denominator)
      : std::invalid_argument("modulus " + std::to_string(modulus) +
                              " is not coprime to coefficient denominator " + denominator.str()),
        modulus_(modulus),
        denominator_(std::move(denominator)) {}

  std::int64_t modulus() const { return modulus_; }
  const BigInt& denominator() const { return denominator_; }

 private:
  std::int64_t modulus_;
  BigInt denominator_;
};

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Inverse of a modulo m, or -1 when gcd(a, m) != 1.
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = ((a % m) + m) % m, r = m, old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) return -1;
  return ((old_s % m) + m) % m;
}

/// Residue of an exact rational modulo m; the denominator must be invertible.
inline std::int64_t reduce_mod(const BigRational& r, std::int64_t m) {
  const BigInt den = denominator_of(r);
  const std::int64_t inv = mod_inverse(mod_floor(den, m), m);
  if (inv < 0) throw InadmissibleModulus(m, den);
  return mod_floor(numerator_of(r), m) * inv % m;
}

class ResiduePolynomial {
 public:
  using Terms = std::map<Monomial, std::int64_t, MonomialOrder>;

  ResiduePolynomial(std::int64_t modulus, bool doubled, Terms terms)
      : modulus_(modulus), doubled_(doubled), terms_(std::move(terms)) {}

  std::int64_t modulus() const { return modulus_; }
  /// True when the terms represent 2 c_N rather than c_N.
  bool doubled() const { return doubled_; }
  const Terms& terms() const { return terms_; }

  std::int64_t coefficient(Monomial m) const {
    const auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
  }

  /// Residue of the represented polynomial (2 c_N when doubled) at sigma.
  std::int64_t evaluate(const Signature& s) const {
    std::uint64_t minus = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] == Sign::minus) minus |= std::uint64_t{1} << i;
    std::int64_t total = 0;
    for (const auto& [m, r] : terms_) {
      const bool negative = std::popcount(m.bits & minus) % 2 != 0;
      total = (total + (negative ? modulus_ - r : r)) % modulus_;
    }
    return total;
  }

  /// Predicted residue of C(sigma) itself.
  std::int64_t predict_count(const Signature& s) const {
    const std::int64_t v = evaluate(s);
    if (!doubled_) return v;
    const std::int64_t half = mod_inverse(2, modulus_);
    if (half < 0) throw InadmissibleModulus(modulus_, 2);
    return v * half % modulus_;
  }

 private:
  std::int64_t modulus_;
  bool doubled_;
  Terms terms_;
};

/// Coefficient-wise reduction of c_N (or 2 c_N) modulo m.  Zero residues are
/// not stored.
inline ResiduePolynomial reduce_polynomial(const LinearPolynomial& p, std::int64_t m, bool doubled) {
  if (m < 2) throw std::invalid_argument("modulus must be at least 2");
  ResiduePolynomial::Terms terms;
  for (const auto& [mono, coef] : p.terms()) {
    const std::int64_t r = reduce_mod(doubled ? BigRational(coef * 2) : coef, m);
    if (r != 0) terms.emplace(mono, r);
  }
  return ResiduePolynomial(m, doubled, std::move(terms));
}

inline ResiduePolynomial reduce_c_polynomial(unsigned N, std::int64_t m, bool doubled) {
  return reduce_polynomial(c_polynomial(N), m, doubled);
}

namespace detail {
inline void check_odd_prime(std::int64_t p) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not an odd prime");
}
inline std::int64_t signed_residue(int v, std::int64_t m) { return ((v % m) + m) % m; }
}  // namespace detail

/// N = p-1: C(sigma) = sigma_1 ... sigma_{p-1} (mod p).
inline std::int64_t predict_residue_prime_minus_one(const Signature& s, std::int64_t p) {
  detail::check_odd_prime(p);
  if (static_cast<std::int64_t>(s.size()) != p - 1)
    throw std::invalid_argument("signature length must be p-1");
  return detail::signed_residue(s.product(), p);
}

/// N = p: 2 C(sigma) = (sigma_1 + sigma_p) sigma_1 ... sigma_p (mod p).
inline std::int64_t predict_residue_prime(const Signature& s, std::int64_t p) {
  detail::check_odd_prime(p);
  if (static_cast<std::int64_t>(s.size()) != p) throw std::invalid_argument("signature length must be p");
  const int doubled = (value_of(s[0]) + value_of(s[s.size() - 1])) * s.product();
  return detail::signed_residue(doubled, p) * mod_inverse(2, p) % p;
}

/// C(sigma) = (6 s3 s6 + 4) s1...s8 (mod 9), N = 8.
inline std::int64_t predict_residue_mod9_level8(const Signature& s) {
  if (s.size() != 8) throw std::invalid_argument("mod-9 formula needs N = 8");
  return detail::signed_residue((6 * value_of(s[2]) * value_of(s[5]) + 4) * s.product(), 9);
}

/// C(sigma) = (4(s1 s2 + s1 s8 + s7 s8) + 3) s1...s8 (mod 7), N = 8.
inline std::int64_t predict_residue_mod7_level8(const Signature& s) {
  if (s.size() != 8) throw std::invalid_argument("mod-7 formula needs N = 8");
  const int pairs = value_of(s[0]) * value_of(s[1]) + value_of(s[0]) * value_of(s[7]) +
                    value_of(s[6]) * value_of(s[7]);
  return detail::signed_residue((4 * pairs + 3) * s.product(), 7);
}

using ResiduePredictor = std::function<std::int64_t(const Signature&)>;

struct CongruenceRow {
  std::uint64_t index;
  Signature signature;
  std::int64_t actual;
  std::int64_t predicted;
};

struct CongruenceReport {
  unsigned N = 0;
  std::int64_t modulus = 0;
  std::vector<CongruenceRow> rows;          // binary-index order
  std::vector<std::uint64_t> violations;    // indices where actual != predicted
  std::map<std::int64_t, std::uint64_t> histogram;  // actual residue -> count

  bool ok() const { return violations.empty(); }
};

/// Compares predicted against exact residues for every signature of length N.
/// Exact values come from the linear recursion, one counter per worker.
inline CongruenceReport verify_congruence_sweep(unsigned N, std::int64_t m,
                                                const ResiduePredictor& predictor,
                                                unsigned threads = 1) {
  if (m < 2) throw std::invalid_argument("modulus must be at least 2");
  if (N > 24) throw std::invalid_argument("congruence sweep limited to N <= 24");
  const std::size_t count = std::size_t{1} << N;
  CongruenceReport report;
  report.N = N;
  report.modulus = m;
  report.rows.resize(count);
  parallel_slices(count, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    UpDownCounter counter;
    for (std::size_t idx = begin; idx < end; ++idx) {
      Signature s = signature_from_index(N, idx);
      const std::int64_t actual = mod_floor(counter.count(s), m);
      const std::int64_t predicted = predictor(s);
      report.rows[idx] = CongruenceRow{idx, std::move(s), actual, predicted};
    }
  });
  for (const auto& row : report.rows) {
    ++report.histogram[row.actual];
    if (row.actual != row.predicted) report.violations.push_back(row.index);
  }
  return report;
}

}  // namespace updown
