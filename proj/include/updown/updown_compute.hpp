#pragma once

// Production algorithms for the up-down numbers C(sigma) and probabilities
// P(sigma) = C(sigma) / (N+1)!.

#include "updown/exact_numbers.hpp"
#include "updown/signatures.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace updown {

/// Canonical island list: zero-length islands at either end are dropped and an
/// interior zero merges its neighbours, C(a, i, 0, j, b) = C(a, i+j, b).
inline std::vector<unsigned> normalize_islands(std::vector<unsigned> raw) {
  std::vector<unsigned> out;
  out.reserve(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (raw[k] != 0) {
      out.push_back(raw[k]);
      continue;
    }
    // a zero between two kept islands joins them; edge zeros vanish
    if (!out.empty() && k + 1 < raw.size()) {
      out.back() += raw[k + 1];
      ++k;
    }
  }
  return out;
}

/// Memoized evaluation of the linear recursion
///   C(i_1..i_n) = sum_k C(i_1, .., i_k - 1, .., i_n),  C() = 1,
/// keyed on island lengths only (C is invariant under flipping every sign).
///
/// Not synchronized: confine one instance per thread.
class UpDownCounter {
 public:
  BigInt count(std::span<const unsigned> islands) {
    return count_normalized(normalize_islands({islands.begin(), islands.end()}));
  }
  BigInt count(const Composition& c) { return count(c.islands); }
  BigInt count(const Signature& s) { return count(to_composition(s).islands); }

  std::size_t memo_size() const { return memo_.size(); }
  void clear() { memo_.clear(); }

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<unsigned>& v) const noexcept {
      std::size_t h = v.size();
      for (unsigned x : v) h ^= std::hash<unsigned>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      return h;
    }
  };

  BigInt count_normalized(const std::vector<unsigned>& islands) {
    if (islands.size() <= 1) return 1;  // C() = C(i) = 1
    if (auto it = memo_.find(islands); it != memo_.end()) return it->second;
    BigInt total = 0;
    std::vector<unsigned> next = islands;
    for (std::size_t k = 0; k < islands.size(); ++k) {
      --next[k];
      total += count_normalized(next[k] == 0 ? normalize_islands(next) : next);
      ++next[k];
    }
    memo_.emplace(islands, total);
    return total;
  }

  std::unordered_map<std::vector<unsigned>, BigInt, KeyHash> memo_;
};

namespace detail {
inline UpDownCounter& thread_counter() {
  thread_local UpDownCounter counter;
  return counter;
}
}  // namespace detail

inline BigInt c_recursion(const Composition& c) { return detail::thread_counter().count(c); }
inline BigInt c_recursion(const Signature& s) { return detail::thread_counter().count(s); }

inline BigRational p_value(const Composition& c) {
  return BigRational(c_recursion(c), factorial(c.length() + 1));
}
inline BigRational p_value(const Signature& s) { return p_value(to_composition(s)); }

/// P(i_1..i_n) as the alternating nested sum over r_2..r_n.  The innermost sum
/// depends only on the running island length, so it is tabulated island by
/// island: g_1(j) = 1/(j+1)!,
///   g_k(j) = sum_{r=0}^{j} (-1)^r g_{k-1}(i_{k-1} + r) / (j - r)!,
/// and P = g_n(i_n).
inline BigRational p_closed_form(std::span<const unsigned> islands) {
  if (islands.empty()) throw std::invalid_argument("closed form needs at least one island");
  for (unsigned len : islands)
    if (len == 0) throw std::invalid_argument("composition islands must be positive");
  const std::size_t n = islands.size();
  unsigned total = 0;
  for (unsigned len : islands) total += len;

  std::vector<BigRational> inv_fact(total + 2);
  for (unsigned m = 0; m < inv_fact.size(); ++m) inv_fact[m] = BigRational(BigInt(1), factorial(m));

  // g over the range of j needed by the next island: j <= i_k + (sum of later islands)
  std::vector<BigRational> g(total + 1);
  for (unsigned j = 0; j <= total; ++j) g[j] = inv_fact[j + 1];
  unsigned later = total - islands[0];
  for (std::size_t k = 1; k < n; ++k) {
    const unsigned prev_len = islands[k - 1];
    std::vector<BigRational> next(later + 1, 0);
    for (unsigned j = 0; j <= later; ++j) {
      BigRational acc = 0;
      for (unsigned r = 0; r <= j; ++r) {
        const BigRational term = g[prev_len + r] * inv_fact[j - r];
        if (r % 2) {
          acc -= term;
        } else {
          acc += term;
        }
      }
      next[j] = acc;
    }
    g = std::move(next);
    later -= islands[k];
  }
  return g[islands[n - 1]];
}

inline BigInt c_closed_form(const Composition& c) {
  const BigRational p = p_closed_form(c.islands);
  const BigRational scaled = p * BigRational(factorial(c.length() + 1));
  if (!is_integer(scaled) || scaled < 0)
    throw std::logic_error("closed form produced a non-integral or negative count for " + c.str());
  return numerator_of(scaled);
}

/// Positive-summand DP: after reading sigma_1..sigma_m, ways[r] counts
/// arrangements of m+1 values matching the prefix whose last value has rank r.
/// A rise sends rank r to every new rank above it, a fall to every rank at or
/// below it; both are prefix sums of non-negative numbers.
inline BigInt c_triangle(const Signature& s) {
  std::vector<BigInt> ways{1};
  for (Sign step : s) {
    const std::size_t m = ways.size();
    std::vector<BigInt> next(m + 1, 0);
    if (step == Sign::plus) {
      BigInt run = 0;
      for (std::size_t r = 1; r <= m; ++r) {
        run += ways[r - 1];
        next[r] = run;
      }
    } else {
      BigInt run = 0;
      for (std::size_t r = m; r-- > 0;) {
        run += ways[r];
        next[r] = run;
      }
    }
    ways = std::move(next);
  }
  BigInt total = 0;
  for (const auto& w : ways) total += w;
  return total;
}

struct QuadraticSides {
  BigRational left;   // P(sigma) P(mu)
  BigRational right;  // P(sigma + mu) + P(sigma - mu)
};

inline QuadraticSides quadratic_check(const Signature& sigma, const Signature& mu) {
  return {p_value(sigma) * p_value(mu),
          p_value(join(sigma, Sign::plus, mu)) + p_value(join(sigma, Sign::minus, mu))};
}

/// E_{N+1}: permutations of N+1 letters with an even number of rises,
/// (N+1)!/2 (1 + T_N).
inline BigInt even_rise_count(unsigned N) {
  if (N == 0) throw std::invalid_argument("even_rise_count needs N >= 1");
  const BigRational e = BigRational(factorial(N + 1)) / 2 * (1 + tangent_coeff(N));
  if (!is_integer(e)) throw std::logic_error("even_rise_count is not integral");
  return numerator_of(e);
}

}  // namespace updown
