#pragma once

// Named verification suites run by `updown verify`.  Each returns counts of
// checks and failures plus timing; failures carry a short message.

#include "updown/bounds.hpp"
#include "updown/congruence.hpp"
#include "updown/exact_numbers.hpp"
#include "updown/oracle.hpp"
#include "updown/signatures.hpp"
#include "updown/universal_poly.hpp"
#include "updown/updown_compute.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace updown {

struct VerifyResult {
  std::string suite;
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  double seconds = 0;
  std::vector<std::string> messages;

  bool ok() const { return failures == 0; }

  void expect(bool condition, const std::string& what) {
    ++checked;
    if (!condition) {
      ++failures;
      if (messages.size() < 20) messages.push_back(what);
    }
  }
};

struct SmallTableEntry {
  const char* signature;
  unsigned count;
};

/// The published small-N table: the listed half of N = 5 plus its mirror
/// under interchanging + and -, giving 2 + 4 + 8 + 16 + 32 entries.
inline std::vector<std::pair<std::string, unsigned>> table1_entries() {
  static constexpr SmallTableEntry listed[] = {
      {"-", 1},      {"+", 1},
      {"--", 1},     {"-+", 2},     {"+-", 2},     {"++", 1},
      {"---", 1},    {"--+", 3},    {"-+-", 5},    {"-++", 3},
      {"+--", 3},    {"+-+", 5},    {"++-", 3},    {"+++", 1},
      {"----", 1},   {"---+", 4},   {"--+-", 9},   {"--++", 6},
      {"-+--", 9},   {"-+-+", 16},  {"-++-", 11},  {"-+++", 4},
      {"+---", 4},   {"+--+", 11},  {"+-+-", 16},  {"+-++", 9},
      {"++--", 6},   {"++-+", 9},   {"+++-", 4},   {"++++", 1},
      {"-----", 1},  {"----+", 5},  {"---+-", 14}, {"---++", 10},
      {"--+--", 19}, {"--+-+", 35}, {"--++-", 26}, {"--+++", 10},
      {"-+---", 14}, {"-+--+", 40}, {"-+-+-", 61}, {"-+-++", 35},
      {"-++--", 26}, {"-++-+", 40}, {"-+++-", 19}, {"-++++", 5},
  };
  std::vector<std::pair<std::string, unsigned>> out;
  for (const auto& e : listed) {
    out.emplace_back(e.signature, e.count);
    if (std::string(e.signature).size() == 5)
      out.emplace_back(flip(Signature::parse(e.signature)).str(), e.count);
  }
  return out;
}

namespace detail {

template <typename Body>
VerifyResult timed_suite(const std::string& name, Body&& body) {
  VerifyResult r;
  r.suite = name;
  const auto start = std::chrono::steady_clock::now();
  body(r);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace detail

/// Every table entry by recursion, closed form, triangle DP, c_N evaluation
/// and enumeration.
inline VerifyResult verify_table1() {
  return detail::timed_suite("table1", [](VerifyResult& r) {
    std::map<unsigned, LinearPolynomial> polys;
    std::map<unsigned, SignatureCensus> censuses;
    for (const auto& [text, expected] : table1_entries()) {
      const Signature s = Signature::parse(text);
      const auto N = static_cast<unsigned>(s.size());
      if (!polys.count(N)) polys.emplace(N, c_polynomial(N));
      if (!censuses.count(N)) censuses.emplace(N, census(N));
      const Composition c = to_composition(s);
      const BigInt want = expected;
      const bool all = c_recursion(c) == want && c_closed_form(c) == want && c_triangle(s) == want &&
                       evaluate(polys.at(N), s) == BigRational(want) &&
                       censuses.at(N).count(s) == want;
      r.expect(all, "C(" + text + ") != " + std::to_string(expected));
    }
  });
}

/// 2 c_8 against the published constant and gamma coefficients.
inline VerifyResult verify_phi8() {
  return detail::timed_suite("phi8", [](VerifyResult& r) {
    const LinearPolynomial doubled = c_polynomial(8) * BigRational(2);
    r.expect(doubled.constant_term() == 2835, "constant term of 2 c_8 != 2835");
    const std::vector<std::pair<RunType, int>> expected = {
        {RunType{{2}}, -945},    {RunType{{4}}, 378},     {RunType{{2, 2}}, 315},
        {RunType{{6}}, -153},    {RunType{{2, 4}}, -126}, {RunType{{4, 2}}, -126},
        {RunType{{2, 2, 2}}, -105}, {RunType{{8}}, 62},
    };
    std::size_t covered = 1;
    for (const auto& [rt, coef] : expected) {
      covered += gamma(rt, 8).size();
      BigRational got;
      try {
        got = gamma_coefficient(doubled, rt, 8);
      } catch (const std::exception& e) {
        r.expect(false, e.what());
        continue;
      }
      r.expect(got == coef, "gamma coefficient mismatch: got " + to_fraction_string(got) +
                                " want " + std::to_string(coef));
    }
    // nothing outside the eight gamma-series and the constant
    if (doubled.size() != covered) {
      ++r.failures;
      r.messages.push_back("2 c_8 has terms outside the listed gamma-series");
    }
  });
}

/// Odd-prime congruences at N = p-1 and N = p, and the mod-9 / mod-7 formulas at N = 8.
inline VerifyResult verify_congruences(unsigned threads = 1) {
  return detail::timed_suite("congruences", [threads](VerifyResult& r) {
    for (std::int64_t p : {3, 5, 7, 11, 13}) {
      const auto below = static_cast<unsigned>(p - 1);
      const auto at = static_cast<unsigned>(p);
      const auto rep1 = verify_congruence_sweep(
          below, p, [p](const Signature& s) { return predict_residue_prime_minus_one(s, p); }, threads);
      const auto rep2 = verify_congruence_sweep(
          at, p, [p](const Signature& s) { return predict_residue_prime(s, p); }, threads);
      for (const auto* rep : {&rep1, &rep2}) {
        r.checked += rep->rows.size();
        r.failures += rep->violations.size();
        if (!rep->ok())
          r.messages.push_back("N=" + std::to_string(rep->N) + " mod " + std::to_string(p) + ": " +
                               std::to_string(rep->violations.size()) + " violations");
      }
    }
    const auto mod9 = verify_congruence_sweep(8, 9, predict_residue_mod9_level8, threads);
    const auto mod7 = verify_congruence_sweep(8, 7, predict_residue_mod7_level8, threads);
    for (const auto* rep : {&mod9, &mod7}) {
      r.checked += rep->rows.size();
      r.failures += rep->violations.size();
      if (!rep->ok()) r.messages.push_back("N=8 mod " + std::to_string(rep->modulus) + " formula violated");
    }
  });
}

/// Island-length upper bound over all compositions of N <= max_n, the
/// complementary bound, and the monotonicity inequalities.
inline VerifyResult verify_bounds(unsigned max_n = 14) {
  return detail::timed_suite("bounds", [max_n](VerifyResult& r) {
    for (unsigned N = 1; N <= max_n; ++N) {
      for_each_composition(N, [&](const std::vector<unsigned>& islands) {
        const Composition c{Sign::plus, islands};
        const BigRational p = p_value(c), b = upper_bound(c);
        const bool equal_expected = islands.size() == 2;
        r.expect(p <= b && (p == b) == equal_expected, "bound fails at " + c.str());
      });
    }
    for (unsigned len = 0; len <= 8; ++len) {
      for (unsigned rl = 0; rl <= len; ++rl) {
        const unsigned tl = len - rl;
        for (std::uint64_t ri = 0; ri < (std::uint64_t{1} << rl); ++ri)
          for (std::uint64_t ti = 0; ti < (std::uint64_t{1} << tl); ++ti) {
            const Signature rho = signature_from_index(rl, ri), tau = signature_from_index(tl, ti);
            r.expect(complementary_bound_check(rho, tau).satisfied,
                     "complementary bound fails at " + rho.str() + " | " + tau.str());
          }
      }
    }
    for (unsigned alpha_len = 0; alpha_len + 2 <= max_n; ++alpha_len) {
      for_each_composition(alpha_len, [&](const std::vector<unsigned>& alpha) {
        const unsigned room = max_n - alpha_len;
        for (unsigned c = 1; c <= room; ++c)
          for (unsigned a = c; a + c <= room; ++a)
            for (unsigned b = 0; a + b + c <= room; ++b) {
              r.expect(monotonicity_check(alpha, a, b, c), "monotonicity fails");
              for (unsigned n = 0; n + 1 <= c; ++n)
                r.expect(claim_inequality_check(alpha, a, b, c, n), "claim inequality fails");
            }
      });
    }
  });
}

/// Quadratic relation, even-rise identity, self-similarity, zero-substitution
/// factorization, the star-exponential form, and four-way agreement with
/// enumeration.
inline VerifyResult verify_identity_sweeps(unsigned threads = 1) {
  return detail::timed_suite("identity-sweeps", [threads](VerifyResult& r) {
    for (unsigned len = 0; len <= 8; ++len)
      for (unsigned sl = 0; sl <= len; ++sl) {
        const unsigned ml = len - sl;
        for (std::uint64_t si = 0; si < (std::uint64_t{1} << sl); ++si)
          for (std::uint64_t mi = 0; mi < (std::uint64_t{1} << ml); ++mi) {
            const auto q = quadratic_check(signature_from_index(sl, si), signature_from_index(ml, mi));
            r.expect(q.left == q.right, "quadratic relation fails");
          }
      }

    for (unsigned N = 1; N <= 12; ++N) {
      BigInt sum = 0;
      for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << N); ++idx) {
        const Signature s = signature_from_index(N, idx);
        if (s.product() == 1) sum += c_recursion(s);
      }
      r.expect(sum == even_rise_count(N), "even-rise identity fails at N=" + std::to_string(N));
    }

    for (unsigned N = 1; N <= 9; ++N) {
      const LinearPolynomial here = phi(N), next = phi(N + 1);
      for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << N); ++idx) {
        const Signature s = signature_from_index(N, idx);
        const BigRational avg =
            (evaluate(next, join(s, Sign::plus, {})) + evaluate(next, join(s, Sign::minus, {}))) / 2;
        r.expect(evaluate(here, s) == avg, "self-similarity fails at " + s.str());
      }
    }

    for (unsigned N = 2; N <= 10; ++N) {
      const LinearPolynomial full = phi(N);
      for (unsigned n = 1; n <= N; ++n)
        r.expect(zero_substitution(full, n) == phi(n - 1) * shifted(phi(N - n), n),
                 "zero-substitution factorization fails at N=" + std::to_string(N) +
                     " n=" + std::to_string(n));
    }

    for (unsigned N = 1; N <= 10; ++N)
      r.expect(exp_star(tangent_gamma_sum(N), N) == phi(N),
               "star exponential differs from Phi at N=" + std::to_string(N));

    for (unsigned N = 1; N <= kCensusCap; ++N) {
      const SignatureCensus truth = census(N, {false, threads});
      const LinearPolynomial cN = c_polynomial(N);
      for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << N); ++idx) {
        const Signature s = signature_from_index(N, idx);
        const Composition c = to_composition(s);
        const BigInt want = truth.count_at(idx);
        r.expect(c_recursion(c) == want && c_closed_form(c) == want && c_triangle(s) == want &&
                     evaluate(cN, s) == BigRational(want),
                 "four-way disagreement at " + s.str());
      }
    }
  });
}

inline const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {"table1", "phi8", "congruences", "bounds",
                                                 "identity-sweeps"};
  return names;
}

inline VerifyResult run_verify_suite(const std::string& name, unsigned threads = 1) {
  if (name == "table1") return verify_table1();
  if (name == "phi8") return verify_phi8();
  if (name == "congruences") return verify_congruences(threads);
  if (name == "bounds") return verify_bounds();
  if (name == "identity-sweeps") return verify_identity_sweeps(threads);
  throw std::invalid_argument("unknown verify suite: " + name);
}

}  // namespace updown
