#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "osarr/arrangement.hpp"
#include "osarr/os_algebra.hpp"

namespace osarr {

/// Rank-2 closures of all pairs: line(a, b) is the flat spanned by a and b.
class LineTable {
 public:
  explicit LineTable(const Arrangement& a);
  Mask line(std::size_t a, std::size_t b) const { return lines_[a * n_ + b]; }
  std::size_t size() const noexcept { return n_; }

 private:
  std::size_t n_;
  std::vector<Mask> lines_;
};

struct ExtensionCheck {
  bool ok = true;
  int condition = 0;                 // 1 closedness, 2 completeness, 3 solvability
  std::vector<std::size_t> witness;  // hyperplanes exhibiting the violation
  std::string message;
};

/// Checks that b is a solvable extension base inside the sub-arrangement s,
/// with the hyperplanes of s outside b forming the extension.
ExtensionCheck solvable_extension_check(const Arrangement& a, const LineTable& lines, Mask s, Mask b);
/// Same, inside the whole arrangement. Throws InputError if b is empty or everything.
ExtensionCheck solvable_extension_check(const Arrangement& a, Mask b);

struct CompositionSeries {
  std::vector<Mask> chain;             // ascending, first is a singleton, last is everything
  std::vector<std::size_t> exponents;  // 1 for the singleton, then the block sizes
};

/// Backtracking search; empty iff the arrangement is not hypersolvable.
std::optional<CompositionSeries> composition_series(const Arrangement& a);

/// prod (1 + d_i t), coefficients by degree.
std::vector<Integer> exponent_polynomial(const std::vector<std::size_t>& exponents);

/// Largest s with rank A^t = rank Abar^t for all t <= s; empty means infinite.
std::optional<std::size_t> p_order(const OsAlgebra& os);
std::optional<std::size_t> p_order(const Arrangement& a);

struct Classification {
  bool hypersolvable = false;
  bool supersolvable = false;
  std::optional<CompositionSeries> series;
  std::optional<std::size_t> p;  // empty = infinite
  std::size_t r = 0;
  Genericity genericity;
  bool modular_chain = false;
  std::vector<std::string> warnings;
};

/// Throws InternalInvariantViolation when the independent oracles disagree.
Classification classify(const OsAlgebra& os);
Classification classify(const Arrangement& a);

bool is_supersolvable(const OsAlgebra& os);
bool is_supersolvable(const Arrangement& a);

}  // namespace osarr
