#include "updown/oracle.hpp"
#include "updown/updown_compute.hpp"

#include <catch_amalgamated.hpp>

#include <random>
#include <thread>

using namespace updown;

namespace {
Composition comp(Sign s, std::vector<unsigned> islands) { return Composition{s, std::move(islands)}; }
}  // namespace

TEST_CASE("island normalization", "[compute]") {
  using V = std::vector<unsigned>;
  CHECK(normalize_islands({0, 2, 3}) == V{2, 3});
  CHECK(normalize_islands({2, 3, 0}) == V{2, 3});
  CHECK(normalize_islands({2, 0, 3, 1}) == V{5, 1});
  CHECK(normalize_islands({1, 0, 0, 2}) == V{1, 2});
  CHECK(normalize_islands({4, 0, 0}) == V{4});
  CHECK(normalize_islands({0}) == V{});
  CHECK(normalize_islands({}) == V{});
  CHECK(normalize_islands({1, 2, 3}) == V{1, 2, 3});
}

TEST_CASE("linear recursion", "[compute]") {
  CHECK(c_recursion(comp(Sign::plus, {3})) == 1);
  CHECK(c_recursion(comp(Sign::plus, {2, 3})) == 10);
  CHECK(c_recursion(comp(Sign::minus, {1, 1, 1, 1, 1})) == 61);
  CHECK(c_recursion(comp(Sign::plus, {})) == 1);
  CHECK(c_recursion(Signature::parse("--+-+")) == 35);

  SECTION("C(i, j) is a binomial coefficient") {
    for (unsigned i = 1; i <= 12; ++i)
      for (unsigned j = 1; j <= 12; ++j) CHECK(c_recursion(comp(Sign::plus, {i, j})) == binomial(i + j, i));
  }

  SECTION("independent of the leading sign") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<unsigned> islands(1 + rng() % 6);
      for (auto& x : islands) x = 1 + rng() % 4;
      CHECK(c_recursion(comp(Sign::plus, islands)) == c_recursion(comp(Sign::minus, islands)));
    }
  }

  SECTION("memo hits never change results") {
    UpDownCounter counter;
    const BigInt first = counter.count(Signature::parse("+-+--++-+"));
    CHECK(counter.memo_size() > 0);
    CHECK(counter.count(Signature::parse("+-+--++-+")) == first);
    counter.clear();
    CHECK(counter.count(Signature::parse("+-+--++-+")) == first);
  }
}

TEST_CASE("probabilities", "[compute]") {
  CHECK(p_value(comp(Sign::plus, {2})) == BigRational(1, 6));
  CHECK(p_value(comp(Sign::plus, {2, 2})) == BigRational(1, 20));
  CHECK(p_value(comp(Sign::plus, {})) == 1);
}

TEST_CASE("closed form", "[compute]") {
  CHECK(c_closed_form(comp(Sign::plus, {2, 1})) == 3);
  CHECK(c_closed_form(comp(Sign::plus, {1, 1, 1})) == 5);
  CHECK(c_closed_form(comp(Sign::plus, {3, 2, 2, 1})) == c_recursion(comp(Sign::plus, {3, 2, 2, 1})));
  CHECK(c_closed_form(comp(Sign::minus, {7})) == 1);
  CHECK(p_closed_form(std::vector<unsigned>{1, 1}) == BigRational(1, 3));
  CHECK_THROWS_AS(c_closed_form(comp(Sign::plus, {})), std::invalid_argument);
  CHECK_THROWS_AS(c_closed_form(comp(Sign::plus, {1, 0})), std::invalid_argument);
}

TEST_CASE("triangle DP", "[compute]") {
  CHECK(c_triangle(Signature::parse("+-+-")) == 16);
  CHECK(c_triangle(Signature::parse("----+")) == 5);
  CHECK(c_triangle(Signature::parse("")) == 1);
}

TEST_CASE("four-way agreement with enumeration for N <= 9", "[compute][property]") {
  for (unsigned N = 1; N <= 9; ++N) {
    const auto truth = census(N);
    UpDownCounter counter;
    for (std::uint64_t idx = 0; idx < truth.size(); ++idx) {
      const Signature s = signature_from_index(N, idx);
      const Composition c = to_composition(s);
      const BigInt want = truth.count_at(idx);
      REQUIRE(counter.count(c) == want);
      REQUIRE(c_closed_form(c) == want);
      REQUIRE(c_triangle(s) == want);
    }
  }
}

TEST_CASE("algorithms agree on longer signatures", "[compute][property]") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const unsigned n = 10 + rng() % 12;
    std::vector<Sign> seq(n);
    for (auto& x : seq) x = rng() % 2 ? Sign::plus : Sign::minus;
    const Signature s(seq);
    const BigInt tri = c_triangle(s);
    CHECK(c_recursion(s) == tri);
    CHECK(c_closed_form(to_composition(s)) == tri);
  }
}

TEST_CASE("quadratic relation", "[compute]") {
  auto q = quadratic_check(Signature::parse("+"), Signature::parse("+"));
  CHECK(q.left == BigRational(1, 4));
  CHECK(q.right == BigRational(1, 4));
  q = quadratic_check({}, {});
  CHECK(q.left == 1);
  CHECK(q.right == 1);
  q = quadratic_check(Signature::parse("+-"), Signature::parse("-"));
  CHECK(q.left == q.right);

  SECTION("exhaustive for |sigma| + |mu| <= 8") {
    for (unsigned len = 0; len <= 8; ++len)
      for (unsigned sl = 0; sl <= len; ++sl)
        for (std::uint64_t si = 0; si < (std::uint64_t{1} << sl); ++si)
          for (std::uint64_t mi = 0; mi < (std::uint64_t{1} << (len - sl)); ++mi) {
            const auto r = quadratic_check(signature_from_index(sl, si), signature_from_index(len - sl, mi));
            REQUIRE(r.left == r.right);
          }
  }
}

TEST_CASE("even rise count", "[compute]") {
  CHECK(even_rise_count(1) == 1);
  CHECK(even_rise_count(2) == 2);
  CHECK(even_rise_count(4) == 68);
  CHECK_THROWS_AS(even_rise_count(0), std::invalid_argument);

  SECTION("matches the census sum over sigma with product 1") {
    for (unsigned N = 1; N <= 8; ++N) {
      const auto truth = census(N);
      BigInt sum = 0;
      for (std::uint64_t idx = 0; idx < truth.size(); ++idx)
        if (signature_from_index(N, idx).product() == 1) sum += truth.count_at(idx);
      CHECK(sum == even_rise_count(N));
    }
  }

  SECTION("matches the recursion sum for N <= 12") {
    for (unsigned N = 1; N <= 12; ++N) {
      BigInt sum = 0;
      for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << N); ++idx) {
        const Signature s = signature_from_index(N, idx);
        if (s.product() == 1) sum += c_recursion(s);
      }
      CHECK(sum == even_rise_count(N));
    }
  }
}

TEST_CASE("per-thread counters give interleaving-independent results", "[compute]") {
  std::vector<BigInt> a(64), b(64);
  auto work = [](std::vector<BigInt>& out, bool reverse) {
    for (std::size_t k = 0; k < out.size(); ++k) {
      const std::size_t idx = reverse ? out.size() - 1 - k : k;
      out[idx] = c_recursion(signature_from_index(12, idx * 61));
    }
  };
  std::thread t1(work, std::ref(a), false), t2(work, std::ref(b), true);
  t1.join();
  t2.join();
  CHECK(a == b);
}
