#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "osarr/bits.hpp"
#include "osarr/integer.hpp"
#include "osarr/matrix.hpp"

namespace osarr {

/// The canonical exterior monomial e_C: indices in ascending order.
class Monomial {
 public:
  constexpr Monomial() = default;
  constexpr explicit Monomial(Mask m) : mask_(m) {}

  /// e_{i_1} ^ ... ^ e_{i_k} for an arbitrary index sequence, as sign * e_C.
  /// The sign is 0 when an index repeats.
  static std::pair<int, Monomial> from_sequence(const std::vector<std::size_t>& indices);

  constexpr Mask mask() const noexcept { return mask_; }
  std::size_t degree() const noexcept { return popcount(mask_); }
  std::vector<std::size_t> indices() const { return mask_indices(mask_); }

  friend constexpr bool operator==(Monomial a, Monomial b) noexcept { return a.mask_ == b.mask_; }
  /// Degree first, then lexicographic on the index tuple.
  friend std::strong_ordering operator<=>(Monomial a, Monomial b) noexcept;

 private:
  Mask mask_ = 0;
};

/// All C(n, q) monomials of degree q in lexicographic order. This order fixes
/// the columns of every matrix built from Lambda^q.
std::vector<Monomial> basis(std::size_t n, std::size_t q);

/// Homogeneous element of the integral exterior algebra.
class ExteriorElement {
 public:
  explicit ExteriorElement(std::size_t degree = 0) : degree_(degree) {}

  static ExteriorElement one() { return monomial(0); }
  static ExteriorElement generator(std::size_t i) { return monomial(bit(i)); }
  static ExteriorElement monomial(Mask m, const Integer& coefficient = Integer(1));

  std::size_t degree() const noexcept { return degree_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }
  const std::map<Monomial, Integer>& terms() const noexcept { return terms_; }
  Integer coefficient(Monomial m) const;

  /// Adds c * e_m; m must have this element's degree.
  void add_term(Monomial m, const Integer& c);

  ExteriorElement& operator+=(const ExteriorElement& o);
  ExteriorElement& operator-=(const ExteriorElement& o);
  ExteriorElement& operator*=(const Integer& c);
  friend ExteriorElement operator+(ExteriorElement a, const ExteriorElement& b) { return a += b; }
  friend ExteriorElement operator-(ExteriorElement a, const ExteriorElement& b) { return a -= b; }
  friend ExteriorElement operator*(const Integer& c, ExteriorElement a) { return a *= c; }
  ExteriorElement operator-() const;
  /// Zero elements compare equal whatever their nominal degree.
  friend bool operator==(const ExteriorElement& a, const ExteriorElement& b) { return a.terms_ == b.terms_; }

  /// Coordinates in basis(n, degree()).
  SparseVector coordinates(std::size_t n) const;
  static ExteriorElement from_coordinates(const SparseVector& v, std::size_t n, std::size_t degree);

  /// e.g. "e_{0,1} - 2 e_{1,2}"; "0" for the zero element.
  std::string to_string() const;

 private:
  std::size_t degree_;
  std::map<Monomial, Integer> terms_;
};

ExteriorElement wedge(const ExteriorElement& u, const ExteriorElement& v);

/// The degree -1 derivation with delta(e_i) = 1.
ExteriorElement delta(const ExteriorElement& u);

/// delta(e_C) for a single monomial.
ExteriorElement delta_monomial(Mask c);

}  // namespace osarr
