#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "osarr/matrix.hpp"

namespace osarr {

/// The quotient Z^ambient / L of a free module by the lattice L spanned by a
/// family of sparse generators, with explicit coordinates.
///
/// Construction eliminates unit pivots sparsely (the generator matrices of
/// exterior-algebra ideals are almost entirely reducible this way) and runs a
/// dense Smith reduction on whatever is left. The result gives the invariants
/// of the quotient, a projection onto its free part, lifts back to Z^ambient,
/// a basis of L and coordinates of lattice vectors in that basis.
class LatticeQuotient {
 public:
  LatticeQuotient() = default;
  LatticeQuotient(std::size_t ambient, std::vector<SparseVector> generators);

  std::size_t ambient() const noexcept { return ambient_; }
  /// Rank of L (over Q).
  std::size_t rank() const noexcept { return pivots_.size() + divisors_.size(); }
  const AbelianInvariants& invariants() const noexcept { return invariants_; }
  bool torsion_free() const noexcept { return invariants_.torsion.empty(); }

  /// Image of x in the free part Z^free_rank of the quotient.
  std::vector<Integer> project(const SparseVector& x) const;
  /// Exact lattice membership x in L.
  bool contains(const SparseVector& x) const;
  /// Coefficients of x with respect to basis(), or nullopt when x is not in L.
  std::optional<std::vector<Integer>> coordinates(const SparseVector& x) const;
  /// A Z-basis of L (rank() vectors).
  std::vector<SparseVector> basis() const;
  /// A preimage of a free-part vector. Requires a torsion-free quotient.
  SparseVector lift(std::span<const Integer> free_coordinates) const;

 private:
  struct Pivot {
    std::uint32_t col;
    Integer unit;  // the pivot entry, +1 or -1
    SparseVector row;
  };

  // Reduces x by the pivot rows in elimination order; records the multiples.
  std::vector<Integer> reduce(const SparseVector& x, std::vector<Integer>* multiples) const;
  std::vector<Integer> residual_image(const std::vector<Integer>& reduced) const;

  std::size_t ambient_ = 0;
  std::vector<Pivot> pivots_;
  std::vector<std::uint32_t> passive_;  // free columns untouched by the residual
  std::vector<std::uint32_t> active_;   // columns carried by the residual block
  std::vector<Integer> divisors_;       // Smith divisors of the residual block
  IntegerMatrix right_;                 // residual right transform (active x active)
  IntegerMatrix right_inverse_;
  AbelianInvariants invariants_;
};

/// Rank over F_p of a family of sparse integer vectors.
std::size_t sparse_rank_mod_p(const std::vector<SparseVector>& rows, std::size_t ambient,
                              std::uint32_t p);

}  // namespace osarr
