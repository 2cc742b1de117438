#pragma once

// Brute-force ground truth: enumerate every permutation of {1..N+1} and tally
// its up-down signature.  Test support and small-N verification only.

#include "updown/exact_numbers.hpp"
#include "updown/parallel.hpp"
#include "updown/signatures.hpp"

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace updown {

/// Largest N enumerated without an explicit override (10! permutations).
inline constexpr unsigned kCensusCap = 9;

struct CensusOptions {
  bool force = false;
  unsigned threads = 1;
};

class SignatureCensus {
 public:
  SignatureCensus(unsigned N, std::vector<std::uint64_t> counts)
      : N_(N), counts_(std::move(counts)) {}

  unsigned N() const { return N_; }
  std::size_t size() const { return counts_.size(); }

  BigInt count(const Signature& s) const {
    if (s.size() != N_) throw std::invalid_argument("signature length does not match census");
    return counts_[index_of(s)];
  }
  BigInt count_at(std::uint64_t idx) const { return counts_.at(idx); }

  BigInt total() const {
    BigInt t = 0;
    for (auto c : counts_) t += c;
    return t;
  }

 private:
  unsigned N_;
  std::vector<std::uint64_t> counts_;  // by binary index
};

namespace detail {

inline void check_census_cap(unsigned N, const CensusOptions& opts) {
  if (N > 20) throw std::invalid_argument("census: N > 20 overflows 64-bit tallies");
  if (N > kCensusCap && !opts.force)
    throw std::invalid_argument("census: N = " + std::to_string(N) + " exceeds cap " +
                                std::to_string(kCensusCap) + " (override with force)");
}

/// Advances `perm[from..]` to the next lexicographic arrangement.  Returns the
/// pivot position (first changed index) or perm.size() when exhausted.
inline std::size_t next_arrangement(std::vector<unsigned>& perm, std::size_t from) {
  const std::size_t n = perm.size();
  if (n - from < 2) return n;
  std::size_t i = n - 1;
  while (i > from && perm[i - 1] >= perm[i]) --i;
  if (i == from) return n;
  std::size_t j = n - 1;
  while (perm[j] <= perm[i - 1]) --j;
  std::swap(perm[i - 1], perm[j]);
  std::reverse(perm.begin() + static_cast<std::ptrdiff_t>(i), perm.end());
  return i - 1;
}

/// Tallies signatures of all permutations whose first element is `first`.
inline void tally_first_element(unsigned N, unsigned first, std::vector<std::uint64_t>& counts) {
  std::vector<unsigned> perm;
  perm.reserve(N + 1);
  perm.push_back(first);
  for (unsigned v = 0; v <= N; ++v)
    if (v != first) perm.push_back(v);

  // bit (N-1-j) of idx holds sigma_{j+1} = [perm[j+1] > perm[j]]
  auto rise_bit = [&](std::size_t j) -> std::uint64_t {
    return perm[j + 1] > perm[j] ? std::uint64_t{1} << (N - 1 - j) : 0;
  };
  std::uint64_t idx = 0;
  for (std::size_t j = 0; j < N; ++j) idx |= rise_bit(j);

  while (true) {
    ++counts[idx];
    const std::size_t pivot = next_arrangement(perm, 1);
    if (pivot == perm.size()) break;
    // positions pivot..N changed, so differences pivot-1..N-1 may change
    for (std::size_t j = pivot - 1; j < N; ++j) {
      idx &= ~(std::uint64_t{1} << (N - 1 - j));
      idx |= rise_bit(j);
    }
  }
}

}  // namespace detail

/// Exact signature counts for every signature of length N by full enumeration,
/// partitioned across workers by the first element of the permutation.
inline SignatureCensus census(unsigned N, const CensusOptions& opts = {}) {
  detail::check_census_cap(N, opts);
  const std::size_t size = std::size_t{1} << N;
  if (N == 0) return SignatureCensus(0, {1});
  std::vector<std::vector<std::uint64_t>> partial(
      std::max(1U, std::min(opts.threads, N + 1)), std::vector<std::uint64_t>(size, 0));
  parallel_slices(N + 1, opts.threads, [&](std::size_t worker, std::size_t begin, std::size_t end) {
    for (std::size_t first = begin; first < end; ++first)
      detail::tally_first_element(N, static_cast<unsigned>(first), partial[worker]);
  });
  std::vector<std::uint64_t> counts(size, 0);
  for (const auto& p : partial)
    for (std::size_t i = 0; i < size; ++i) counts[i] += p[i];
  return SignatureCensus(N, std::move(counts));
}

/// C(sigma) by direct enumeration.
inline BigInt count_one(const Signature& s, const CensusOptions& opts = {}) {
  return census(static_cast<unsigned>(s.size()), opts).count(s);
}

}  // namespace updown
