#include "osarr/bits.hpp"

#include <algorithm>
#include <stdexcept>

namespace osarr {

std::vector<std::size_t> mask_indices(Mask m) {
  std::vector<std::size_t> out;
  out.reserve(popcount(m));
  for (; m; m &= m - 1) out.push_back(low_index(m));
  return out;
}

Mask indices_mask(const std::vector<std::size_t>& indices) {
  Mask m = 0;
  for (auto i : indices) {
    if (i >= kMaxHyperplanes) throw std::out_of_range("index exceeds mask width");
    m |= bit(i);
  }
  return m;
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::uint64_t lex_rank(Mask m, std::size_t n) {
  // lexicographic order on C is reverse colexicographic order on {n-1-c}
  const std::size_t q = popcount(m);
  std::uint64_t colex = 0;
  std::size_t j = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (m & bit(n - 1 - v)) colex += binomial(v, ++j);
  }
  return binomial(n, q) - 1 - colex;
}

}  // namespace osarr
