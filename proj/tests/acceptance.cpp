// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include "updown/updown.hpp"
#include "updown/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace updown;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

struct Criterion {
  int number;
  std::string title;
  double time_limit;  // seconds; 0 for none
  std::function<Outcome()> body;
};

Outcome small_table() {
  Outcome o;
  std::size_t n = 0;
  for (const auto& [text, want] : table1_entries()) {
    const Signature s = Signature::parse(text);
    const Composition c = to_composition(s);
    const BigInt w(want);
    o.require(c_recursion(c) == w, "recursion differs at " + text);
    o.require(c_closed_form(c) == w, "closed form differs at " + text);
    o.require(c_triangle(s) == w, "triangle differs at " + text);
    o.require(evaluate(c_polynomial(static_cast<unsigned>(s.size())), s) == BigRational(w),
              "phi differs at " + text);
    ++n;
  }
  o.require(n == 62, "expected 62 entries, have " + std::to_string(n));
  o.detail = o.pass ? std::to_string(n) + " values x 4 algorithms" : o.detail;
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::size_t n = 0;
  for (unsigned N = 1; N <= 9; ++N) {
    const SignatureCensus truth = census(N, {false, 1});
    const LinearPolynomial cN = c_polynomial(N);
    UpDownCounter counter;
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << N); ++idx, ++n) {
      const Signature s = signature_from_index(N, idx);
      const Composition c = to_composition(s);
      const BigInt want = truth.count_at(idx);
      o.require(counter.count(c) == want, "recursion differs at " + s.str());
      o.require(c_closed_form(c) == want, "closed form differs at " + s.str());
      o.require(c_triangle(s) == want, "triangle differs at " + s.str());
      o.require(evaluate(cN, s) == BigRational(want), "phi differs at " + s.str());
    }
  }
  o.require(n == 1022, "expected 1022 signatures");
  if (o.pass) o.detail = std::to_string(n) + " signatures, exact equality with enumeration";
  return o;
}

Outcome phi8_golden() {
  Outcome o;
  struct Row {
    std::vector<unsigned> parts;
    long doubled;
    BigRational phi_coeff;
  };
  const std::vector<Row> rows = {
      {{2}, -945, BigRational(-1, 3)},      {{4}, 378, BigRational(2, 15)},
      {{2, 2}, 315, BigRational(1, 9)},     {{6}, -153, BigRational(-17, 315)},
      {{4, 2}, -126, BigRational(-2, 45)},  {{2, 4}, -126, BigRational(-2, 45)},
      {{2, 2, 2}, -105, BigRational(-1, 27)}, {{8}, 62, BigRational(62, 2835)},
  };
  LinearPolynomial doubled = c_polynomial(8);
  doubled *= BigRational(2);
  const LinearPolynomial p = phi(8);
  o.require(doubled.constant_term() == 2835, "constant of 2 c_8 is not 2835");
  o.require(p.constant_term() == 1, "constant of Phi_8 is not 1");
  std::size_t monomials = 1;
  for (const auto& r : rows) {
    const RunType rt{r.parts};
    o.require(gamma_coefficient(doubled, rt, 8) == r.doubled, "2 c_8 coefficient mismatch");
    o.require(gamma_coefficient(p, rt, 8) == r.phi_coeff, "Phi_8 coefficient mismatch");
    monomials += gamma(rt, 8).size();
  }
  o.require(even_run_types(8).size() == rows.size(), "unexpected gamma-series at N = 8");
  o.require(p.size() == monomials && doubled.size() == monomials, "Phi_8 has extra monomials");
  if (o.pass) o.detail = "constant 2835 and 8 gamma coefficients, " + std::to_string(monomials) + " monomials";
  return o;
}

Outcome tangent_bernoulli() {
  Outcome o;
  o.require(tangent_coeff(2) == BigRational(-1, 3), "T_2");
  o.require(tangent_coeff(4) == BigRational(2, 15), "T_4");
  o.require(tangent_coeff(6) == BigRational(-17, 315), "T_6");
  o.require(tangent_coeff(8) == BigRational(62, 2835), "T_8");
  const auto series = tangent_series_by_division(38);
  for (unsigned k = 0; k <= 38; k += 2)
    o.require(tangent_coeff_from_bernoulli(k) == series[k], "routes differ at k = " + std::to_string(k));
  for (unsigned k = 1; 2 * k <= 40; ++k) {
    BigRational sum = bernoulli(2 * k);
    for (unsigned p = 2; p <= 2 * k + 1; ++p)
      if (is_prime(p) && (2 * k) % (p - 1) == 0) sum += BigRational(1, p);
    o.require(is_integer(sum), "Clausen-von Staudt fails at 2k = " + std::to_string(2 * k));
  }
  if (o.pass) o.detail = "T_2..T_8, two routes to k = 38, integrality to 2k = 40";
  return o;
}

Outcome prime_sweeps() {
  Outcome o;
  std::size_t computed = 0;
  for (std::int64_t p : {3, 5, 7, 11, 13}) {
    const auto below = verify_congruence_sweep(static_cast<unsigned>(p - 1), p,
                                               [p](const Signature& s) { return predict_residue_prime_minus_one(s, p); });
    const auto at = verify_congruence_sweep(static_cast<unsigned>(p), p,
                                            [p](const Signature& s) { return predict_residue_prime(s, p); });
    computed += below.rows.size() + at.rows.size();
    o.require(below.ok() && at.ok(), "violations at p = " + std::to_string(p));
    std::set<std::int64_t> rb, ra;
    for (const auto& [res, n] : below.histogram) rb.insert(res);
    for (const auto& [res, n] : at.histogram) ra.insert(res);
    o.require(rb == std::set<std::int64_t>{1, p - 1}, "residue set at N = p-1, p = " + std::to_string(p));
    o.require(ra == std::set<std::int64_t>{0, 1, p - 1}, "residue set at N = p, p = " + std::to_string(p));
  }
  if (o.pass) o.detail = std::to_string(computed) + " counts, 0 violations";
  return o;
}

Outcome level8_formulas() {
  Outcome o;
  const auto m9 = verify_congruence_sweep(8, 9, predict_residue_mod9_level8);
  const auto m7 = verify_congruence_sweep(8, 7, predict_residue_mod7_level8);
  o.require(m9.rows.size() == 256 && m9.ok(), "mod 9 formula fails");
  o.require(m7.rows.size() == 256 && m7.ok(), "mod 7 formula fails");
  for (const auto& [res, n] : m9.histogram)
    o.require(res == 1 || res == 2 || res == 7 || res == 8, "mod 9 residue outside {±1, ±2}");
  if (o.pass) o.detail = "256 + 256 signatures match";
  return o;
}

Outcome island_bound() {
  Outcome o;
  std::size_t compositions = 0;
  for (unsigned N = 1; N <= 14; ++N)
    for_each_composition(N, [&](const std::vector<unsigned>& islands) {
      const BoundReport r = bound_report(Composition{Sign::plus, islands});
      ++compositions;
      o.require(r.satisfied, "bound violated");
      o.require((r.exact_p == r.bound) == (islands.size() == 2), "equality pattern differs from n = 2");
    });
  std::size_t pairs = 0;
  for (unsigned len = 0; len <= 8; ++len)
    for (unsigned rl = 0; rl <= len; ++rl)
      for (std::uint64_t ri = 0; ri < (std::uint64_t{1} << rl); ++ri)
        for (std::uint64_t ti = 0; ti < (std::uint64_t{1} << (len - rl)); ++ti, ++pairs)
          o.require(complementary_bound_check(signature_from_index(rl, ri), signature_from_index(len - rl, ti)).satisfied,
                    "complementary bound violated");
  if (o.pass)
    o.detail = std::to_string(compositions) + " compositions, " + std::to_string(pairs) +
               " complementary pairs; equality iff n = 2";
  return o;
}

Outcome even_rises() {
  Outcome o;
  for (unsigned N = 1; N <= 12; ++N) {
    BigInt sum = 0;
    UpDownCounter counter;
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << N); ++idx) {
      const Signature s = signature_from_index(N, idx);
      if (s.product() == 1) sum += counter.count(s);
    }
    o.require(sum == even_rise_count(N), "identity fails at N = " + std::to_string(N));
  }
  if (o.pass) o.detail = "N = 1..12";
  return o;
}

Outcome polynomial_identities() {
  Outcome o;
  for (unsigned N = 1; N <= 9; ++N) {
    const LinearPolynomial here = phi(N), next = phi(N + 1);
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << N); ++idx) {
      const Signature s = signature_from_index(N, idx);
      const BigRational avg = (evaluate(next, join(s, Sign::plus, {})) + evaluate(next, join(s, Sign::minus, {}))) / 2;
      o.require(evaluate(here, s) == avg, "self-similarity fails at " + s.str());
    }
    for (unsigned n = 1; n <= N; ++n)
      o.require(zero_substitution(here, n) == phi(n - 1) * shifted(phi(N - n), n),
                "factorization fails at N = " + std::to_string(N));
  }
  for (unsigned N = 1; N <= 10; ++N)
    o.require(exp_star(tangent_gamma_sum(N), N) == phi(N), "star exponential differs at N = " + std::to_string(N));
  if (o.pass) o.detail = "self-similarity and factorization N <= 9, star exponential N <= 10";
  return o;
}

Outcome asymptotics() {
  Outcome o;
  std::vector<long double> deviation;
  for (unsigned N = 8; N <= 14; ++N) {
    std::vector<Sign> alt(N);
    for (unsigned k = 0; k < N; ++k) alt[k] = k % 2 == 0 ? Sign::plus : Sign::minus;
    const BigInt A = c_recursion(Signature(alt));
    const long double log2_ref = (N + 3) - (N + 2) * std::log2(std::numbers::pi_v<long double>) + log2_of(factorial(N + 1));
    deviation.push_back(std::fabs(std::exp2(log2_of(A) - log2_ref) - 1));
  }
  o.require(deviation.back() < 1e-3L, "N = 14 ratio not within 1e-3 of 1");
  for (std::size_t k = 1; k < deviation.size(); ++k)
    o.require(deviation[k] < deviation[k - 1], "deviation not decreasing at N = " + std::to_string(8 + k));
  o.require(gamma_term_count(8) == 8, "gamma_term_count(8) != 8");
  long double lo = 10, hi = 0;
  for (unsigned N = 20; N < 40; ++N) {
    const long double ratio = static_cast<long double>(gamma_term_count(N + 1)) / gamma_term_count(N);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  o.require(lo >= 1.25L && hi <= 1.40L, "growth ratio outside [1.25, 1.40]");
  if (o.pass) {
    std::ostringstream d;
    d << "deviation at N = 14: " << std::setprecision(3) << static_cast<double>(deviation.back())
      << ", term growth in [" << std::setprecision(4) << static_cast<double>(lo) << ", "
      << static_cast<double>(hi) << "]";
    o.detail = d.str();
  }
  return o;
}

Outcome spot_value() {
  Outcome o;
  const Signature s = Signature::parse("---++--+");
  const BigInt oracle = count_one(s);
  o.require(oracle == 1016, "enumeration gives " + oracle.str() + ", not 1016");
  o.require(c_recursion(s) == oracle, "recursion disagrees with enumeration");
  if (o.pass) o.detail = "C(---++--+) = 1016 (index " + std::to_string(index_of(s)) + ")";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "small-N table, four algorithms", 1.0, small_table},
      {2, "oracle equivalence N <= 9", 120.0, oracle_equivalence},
      {3, "Phi_8 golden coefficients", 0, phi8_golden},
      {4, "tangent and Bernoulli numbers", 0, tangent_bernoulli},
      {5, "prime congruence sweeps", 60.0, prime_sweeps},
      {6, "N = 8 congruences mod 9 and mod 7", 0, level8_formulas},
      {7, "island-length upper bound", 0, island_bound},
      {8, "even-rise identity", 0, even_rises},
      {9, "self-similarity, factorization, star exponential", 0, polynomial_identities},
      {10, "asymptotics and term growth", 0, asymptotics},
      {11, "spot value 1016", 0, spot_value},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0 && secs >= c.time_limit) {
      if (o.pass) o.detail = "over time limit of " + std::to_string(static_cast<int>(c.time_limit)) + " s";
      o.pass = false;
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << c.number << "  " << c.title
              << ": " << o.detail << " (" << std::fixed << std::setprecision(3) << secs << " s)" << std::defaultfloat
              << std::endl;
  }
  std::cout << (failures ? "FAILED: " + std::to_string(failures) + " criteria" : "all 11 criteria passed") << "\n";
  return failures ? 1 : 0;
}
