#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace osarr {

/// Subsets of the hyperplane index set {0, ..., 63}.
using Mask = std::uint64_t;

constexpr std::size_t kMaxHyperplanes = 64;

inline constexpr Mask bit(std::size_t i) noexcept { return Mask{1} << i; }
inline constexpr std::size_t popcount(Mask m) noexcept { return static_cast<std::size_t>(std::popcount(m)); }
inline constexpr Mask low_bit(Mask m) noexcept { return m & (~m + 1); }
inline constexpr std::size_t low_index(Mask m) noexcept { return static_cast<std::size_t>(std::countr_zero(m)); }
inline constexpr std::size_t high_index(Mask m) noexcept { return 63 - static_cast<std::size_t>(std::countl_zero(m)); }
inline constexpr Mask full_mask(std::size_t n) noexcept { return n >= 64 ? ~Mask{0} : bit(n) - 1; }
/// Indices strictly greater than i.
inline constexpr Mask above(std::size_t i) noexcept { return i >= 63 ? Mask{0} : ~(bit(i + 1) - 1); }

std::vector<std::size_t> mask_indices(Mask m);
Mask indices_mask(const std::vector<std::size_t>& indices);

/// Lexicographic order of ascending index tuples, for masks of equal size.
inline constexpr bool lex_less(Mask a, Mask b) noexcept {
  const Mask d = a ^ b;
  return d != 0 && (a & low_bit(d)) != 0;
}

/// Sign of e_S ^ e_T relative to e_{S u T} for disjoint S, T:
/// (-1)^(number of pairs s in S, t in T with s > t).
inline int wedge_sign(Mask s, Mask t) noexcept {
  std::size_t inversions = 0;
  while (t) {
    const std::size_t i = low_index(t);
    t &= t - 1;
    inversions += popcount(s >> i >> 1);
  }
  return (inversions & 1) ? -1 : 1;
}

std::uint64_t binomial(std::size_t n, std::size_t k);

/// Position of a q-subset of {0..n-1} in the lexicographic list of all q-subsets.
std::uint64_t lex_rank(Mask m, std::size_t n);

/// Visits all q-subsets of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t q, F&& f) {
  if (q > n) return;
  if (q == 0) {
    f(Mask{0});
    return;
  }
  std::vector<std::size_t> idx(q);
  for (std::size_t i = 0; i < q; ++i) idx[i] = i;
  for (;;) {
    Mask m = 0;
    for (auto i : idx) m |= bit(i);
    f(m);
    std::size_t k = q;
    while (k > 0 && idx[k - 1] == n - q + k - 1) --k;
    if (k == 0) return;
    ++idx[k - 1];
    for (std::size_t j = k; j < q; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace osarr
