#pragma once

// Exact integers and rationals, factorials, binomials, Bernoulli numbers and
// the Taylor coefficients of tanh(z)/z.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace updown {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const BigRational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const BigRational& r) { return boost::multiprecision::denominator(r); }

inline BigInt factorial(unsigned n) {
  BigInt result = 1;
  for (unsigned k = 2; k <= n; ++k) result *= k;
  return result;
}

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) throw std::invalid_argument("binomial: k > n");
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (unsigned j = 1; j <= k; ++j) {
    result *= n - k + j;
    result /= j;  // exact: the running product is C(n-k+j, j)
  }
  return result;
}

namespace detail {

// Append-only cache filled by a generator; guarded so concurrent readers
// always see a fully built prefix.
template <typename Generator>
class CoefficientCache {
 public:
  explicit CoefficientCache(Generator gen) : gen_(std::move(gen)) {}

  BigRational at(unsigned k) {
    std::lock_guard lock(mutex_);
    while (values_.size() <= k) values_.push_back(gen_(values_));
    return values_[k];
  }

 private:
  Generator gen_;
  std::vector<BigRational> values_;
  std::mutex mutex_;
};

inline BigRational next_bernoulli(const std::vector<BigRational>& previous) {
  const auto m = static_cast<unsigned>(previous.size());
  if (m == 0) return 1;
  // sum_{k=0}^{m} binom(m+1, k) B_k = 0
  BigRational acc = 0;
  for (unsigned k = 0; k < m; ++k) acc += BigRational(binomial(m + 1, k)) * previous[k];
  return -acc / BigRational(m + 1);
}

}  // namespace detail

/// Bernoulli number B_n with the convention B_1 = -1/2.
inline BigRational bernoulli(unsigned n) {
  static detail::CoefficientCache cache(&detail::next_bernoulli);
  if (n > 1 && n % 2 == 1) return 0;
  return cache.at(n);
}

/// T_k from 2^n (2^n - 1) B_n / n! with n = k + 2.  T_0 = 1, odd k give 0.
inline BigRational tangent_coeff_from_bernoulli(unsigned k) {
  if (k == 0) return 1;
  if (k % 2 == 1) return 0;
  const unsigned n = k + 2;
  const BigInt two_n = BigInt(1) << n;
  return BigRational(two_n * (two_n - 1)) * bernoulli(n) / BigRational(factorial(n));
}

/// Coefficients of tanh(z)/z = (sinh z / z) / cosh z up to degree `max_degree`,
/// by exact power-series division.
inline std::vector<BigRational> tangent_series_by_division(unsigned max_degree) {
  std::vector<BigRational> sinh_over_z(max_degree + 1, 0), cosh(max_degree + 1, 0);
  for (unsigned j = 0; j <= max_degree; j += 2) {
    sinh_over_z[j] = BigRational(1) / BigRational(factorial(j + 1));
    cosh[j] = BigRational(1) / BigRational(factorial(j));
  }
  std::vector<BigRational> quotient(max_degree + 1, 0);
  for (unsigned k = 0; k <= max_degree; ++k) {
    BigRational q = sinh_over_z[k];
    for (unsigned j = 1; j <= k; ++j) q -= cosh[j] * quotient[k - j];
    quotient[k] = q;  // cosh[0] == 1
  }
  return quotient;
}

/// Cached T_k, the coefficient of z^k in tanh(z)/z.
inline BigRational tangent_coeff(unsigned k) {
  static detail::CoefficientCache cache(
      [](const std::vector<BigRational>& prev) {
        return tangent_coeff_from_bernoulli(static_cast<unsigned>(prev.size()));
      });
  if (k % 2 == 1) return 0;
  return cache.at(k);
}

inline bool is_integer(const BigRational& r) { return denominator_of(r) == 1; }

/// "num/den" with den > 0; integers keep the "/1".
inline std::string to_fraction_string(const BigRational& r) {
  return numerator_of(r).str() + "/" + denominator_of(r).str();
}

/// Parses "num/den" or a plain integer.
inline BigRational parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return BigRational(BigInt(text));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return BigRational(BigInt(text.substr(0, slash)), den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed fraction: " + text);
  }
}

namespace detail {

inline BigInt pow10(unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 10;
  return r;
}

inline long decimal_digits(const BigInt& x) { return static_cast<long>(BigInt(abs(x)).str().size()); }

}  // namespace detail

/// Decimal rendering with `digits` significant digits, rounded half-to-even from
/// the exact value.  Layout follows printf's %g: trailing zeros trimmed,
/// exponent form when the decimal exponent is < -4 or >= digits.
inline std::string to_decimal_string(const BigRational& value, unsigned digits = 15) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  const BigRational mag = negative ? BigRational(-value) : value;
  const BigInt num = numerator_of(mag), den = denominator_of(mag);

  // decimal exponent e with 10^e <= mag < 10^(e+1)
  long e = detail::decimal_digits(num) - detail::decimal_digits(den);
  auto scaled_pow = [](long p) {
    return p >= 0 ? BigRational(detail::pow10(static_cast<unsigned>(p)))
                  : BigRational(BigInt(1), detail::pow10(static_cast<unsigned>(-p)));
  };
  while (mag < scaled_pow(e)) --e;
  while (mag >= scaled_pow(e + 1)) ++e;

  // mantissa = mag * 10^(digits-1-e), rounded half-even to an integer
  BigRational scaled = mag * scaled_pow(static_cast<long>(digits) - 1 - e);
  BigInt floor_part = numerator_of(scaled) / denominator_of(scaled);
  const BigRational frac = scaled - BigRational(floor_part);
  const BigRational half(1, 2);
  if (frac > half || (frac == half && (floor_part % 2) != 0)) floor_part += 1;
  if (floor_part == detail::pow10(digits)) {
    floor_part = detail::pow10(digits - 1);
    ++e;
  }

  std::string mantissa = floor_part.str();  // exactly `digits` characters
  std::string out = negative ? "-" : "";
  auto trim = [](std::string s) {
    if (s.find('.') == std::string::npos) return s;
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  };
  if (e < -4 || e >= static_cast<long>(digits)) {
    std::string m = mantissa.substr(0, 1) + "." + mantissa.substr(1);
    const long ae = e < 0 ? -e : e;
    std::string exp = std::to_string(ae);
    if (exp.size() < 2) exp = "0" + exp;
    return out + trim(m) + "e" + (e < 0 ? "-" : "+") + exp;
  }
  if (e >= 0) {
    const auto int_len = static_cast<std::size_t>(e + 1);
    return out + trim(mantissa.substr(0, int_len) + "." + mantissa.substr(int_len));
  }
  return out + trim("0." + std::string(static_cast<std::size_t>(-e - 1), '0') + mantissa);
}

/// log2 of a positive integer, accurate to long double precision.
inline long double log2_of(const BigInt& x) {
  if (x <= 0) throw std::domain_error("log2 of non-positive value");
  const auto msb = static_cast<long>(boost::multiprecision::msb(x));
  if (msb < 62) return std::log2(static_cast<long double>(static_cast<std::uint64_t>(x)));
  const auto top = static_cast<std::uint64_t>(x >> static_cast<unsigned>(msb - 62));
  return std::log2(static_cast<long double>(top)) + static_cast<long double>(msb - 62);
}

inline long double log2_of(const BigRational& r) {
  return log2_of(numerator_of(r)) - log2_of(denominator_of(r));
}

/// Nearest long double to an exact rational (used only for reporting).
inline long double to_long_double(const BigRational& r) {
  if (r == 0) return 0.0L;
  const long double sign = r < 0 ? -1.0L : 1.0L;
  return sign * std::exp2(log2_of(r < 0 ? BigRational(-r) : r));
}

inline std::int64_t mod_floor(const BigInt& x, std::int64_t m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

}  // namespace updown
