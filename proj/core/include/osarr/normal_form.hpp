#pragma once

#include <cstddef>
#include <vector>

#include "osarr/matrix.hpp"

namespace osarr {

/// Result of a Smith normal form computation: left * m * right is the
/// diagonal matrix whose leading entries are `divisors` (then zeros).
struct SmithForm {
  std::vector<Integer> divisors;  // positive, each divides the next
  IntegerMatrix left;             // unimodular, rows x rows
  IntegerMatrix right;            // unimodular, cols x cols
};

SmithForm smith_normal_form(const IntegerMatrix& m);

/// Divisors only; cheaper than smith_normal_form for large sparse inputs.
std::vector<Integer> smith_divisors(const IntegerMatrix& m);

/// Canonical row-style Hermite normal form of the row lattice: strictly
/// increasing pivot columns, positive pivots, entries above each pivot reduced
/// into [0, pivot). Zero rows are dropped, so the row count is the rank.
IntegerMatrix hermite_basis(const IntegerMatrix& generators);

/// Rank of m after reducing its entries into the given field.
std::size_t rank_over_field(const IntegerMatrix& m, FieldSpec field);

/// Invariants of Z^ambient_rank modulo the row span of `generators`.
AbelianInvariants quotient_invariants(std::size_t ambient_rank, const IntegerMatrix& generators);

namespace detail {

/// In-place Smith reduction. Any of the transform pointers may be null. When
/// `right_inverse` is given it is kept equal to the inverse of `right`.
std::vector<Integer> smith_in_place(IntegerMatrix& a, IntegerMatrix* left, IntegerMatrix* right,
                                    IntegerMatrix* right_inverse);

/// Rank over Q by fraction-free (Bareiss) elimination.
std::size_t bareiss_rank(IntegerMatrix a);

}  // namespace detail

}  // namespace osarr
