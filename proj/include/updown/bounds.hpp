#pragma once

// Upper bounds for P(i_1..i_n) in terms of island lengths, the complementary
// bound, and the monotonicity inequalities between neighbouring compositions.
// All verdicts use exact arithmetic.

#include "updown/exact_numbers.hpp"
#include "updown/signatures.hpp"
#include "updown/updown_compute.hpp"

#include <stdexcept>
#include <vector>

namespace updown {

/// P(i) = 1/(i+1)!
inline BigRational p_single(unsigned i) { return BigRational(BigInt(1), factorial(i + 1)); }

/// P(i, j) = 1/(i+j+1) * 1/i! * 1/j!
inline BigRational p_pair(unsigned i, unsigned j) {
  return BigRational(BigInt(1), BigInt(i + j + 1) * factorial(i) * factorial(j));
}

namespace detail {
inline void check_islands(const std::vector<unsigned>& islands) {
  if (islands.empty()) throw std::invalid_argument("composition needs at least one island");
  for (unsigned len : islands)
    if (len == 0) throw std::invalid_argument("composition islands must be positive");
}
}  // namespace detail

/// (i_2+1)...(i_{n-1}+1) / ((i_1+i_2+1)...(i_{n-1}+i_n+1)) * 1/(i_1!...i_n!).
/// Empty products are 1, so a single island gives 1/i_1!.
inline BigRational upper_bound(const Composition& c) {
  const auto& is = c.islands;
  detail::check_islands(is);
  BigInt num = 1, den = 1;
  for (std::size_t k = 1; k + 1 < is.size(); ++k) num *= is[k] + 1;
  for (std::size_t k = 0; k + 1 < is.size(); ++k) den *= is[k] + is[k + 1] + 1;
  for (unsigned len : is) den *= factorial(len);
  return BigRational(num, den);
}

/// prod P(i_k, i_{k+1}) / prod_{k=2}^{n-1} P(i_k): the chained near-separable
/// approximation.
inline BigRational separability_approx(const Composition& c) {
  const auto& is = c.islands;
  detail::check_islands(is);
  if (is.size() < 2) throw std::invalid_argument("separability approximation needs n >= 2");
  BigRational value = 1;
  for (std::size_t k = 0; k + 1 < is.size(); ++k) value *= p_pair(is[k], is[k + 1]);
  for (std::size_t k = 1; k + 1 < is.size(); ++k) value /= p_single(is[k]);
  return value;
}

struct BoundReport {
  Composition composition;
  BigRational exact_p;
  BigRational bound;
  BigRational ratio;  // exact_p / bound
  bool satisfied = false;
};

inline BoundReport bound_report(const Composition& c) {
  BoundReport r;
  r.composition = c;
  r.exact_p = p_value(c);
  r.bound = upper_bound(c);
  r.ratio = r.exact_p / r.bound;
  r.satisfied = r.exact_p <= r.bound;
  return r;
}

struct ComplementarySides {
  Signature joined;   // rho, single island, tau
  BigRational left;   // P(rho, 1, tau)
  BigRational right;  // P(rho) P(tau)
  bool satisfied = false;
};

/// P(rho, 1, tau) <= P(rho) P(tau).  The inserted single-sign island is the
/// opposite of rho's last sign, and tau is read in island form, so it is
/// flipped if needed to start opposite the inserted sign.
inline ComplementarySides complementary_bound_check(const Signature& rho, const Signature& tau) {
  const Sign inserted = rho.empty() ? Sign::minus : -rho[rho.size() - 1];
  const Signature tail = (!tau.empty() && tau[0] == inserted) ? flip(tau) : tau;
  ComplementarySides out;
  out.joined = join(rho, inserted, tail);
  out.left = p_value(out.joined);
  out.right = p_value(rho) * p_value(tau);
  out.satisfied = out.left <= out.right;
  return out;
}

namespace detail {
inline std::vector<unsigned> with_tail(const std::vector<unsigned>& alpha,
                                       std::initializer_list<unsigned> tail) {
  std::vector<unsigned> out = alpha;
  out.insert(out.end(), tail);
  return out;
}
}  // namespace detail

/// C(alpha, a, b, c) >= C(alpha, a+1, b, c-1) for a >= c >= 1.  Zero-length
/// islands are normalized before counting.
inline bool monotonicity_check(const std::vector<unsigned>& alpha, unsigned a, unsigned b, unsigned c) {
  if (c < 1 || a < c) throw std::invalid_argument("monotonicity check needs a >= c >= 1");
  UpDownCounter& counter = detail::thread_counter();
  return counter.count(detail::with_tail(alpha, {a, b, c})) >=
         counter.count(detail::with_tail(alpha, {a + 1, b, c - 1}));
}

/// C(alpha, a-n, b, c) >= C(alpha, a+1, b, c-n-1) for a >= c >= 1 and
/// 0 <= n <= c-1.
inline bool claim_inequality_check(const std::vector<unsigned>& alpha, unsigned a, unsigned b,
                                   unsigned c, unsigned n) {
  if (c < 1 || a < c) throw std::invalid_argument("claim inequality needs a >= c >= 1");
  if (n > c - 1) throw std::invalid_argument("claim inequality needs n <= c - 1");
  UpDownCounter& counter = detail::thread_counter();
  return counter.count(detail::with_tail(alpha, {a - n, b, c})) >=
         counter.count(detail::with_tail(alpha, {a + 1, b, c - n - 1}));
}

}  // namespace updown
