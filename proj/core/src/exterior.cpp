#include "osarr/exterior.hpp"

#include <sstream>
#include <stdexcept>

namespace osarr {

std::pair<int, Monomial> Monomial::from_sequence(const std::vector<std::size_t>& indices) {
  Mask m = 0;
  int sign = 1;
  for (auto i : indices) {
    if (i >= kMaxHyperplanes) throw std::out_of_range("monomial index exceeds mask width");
    if (m & bit(i)) return {0, Monomial()};
    // moving e_i left past every larger index already placed
    if (popcount(m >> i) & 1) sign = -sign;
    m |= bit(i);
  }
  return {sign, Monomial(m)};
}

std::strong_ordering operator<=>(Monomial a, Monomial b) noexcept {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  if (a.mask_ == b.mask_) return std::strong_ordering::equal;
  return lex_less(a.mask_, b.mask_) ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::vector<Monomial> basis(std::size_t n, std::size_t q) {
  if (q > n) throw std::invalid_argument("basis degree exceeds index count");
  std::vector<Monomial> out;
  out.reserve(binomial(n, q));
  for_each_subset(n, q, [&](Mask m) { out.emplace_back(m); });
  return out;
}

ExteriorElement ExteriorElement::monomial(Mask m, const Integer& coefficient) {
  ExteriorElement e(popcount(m));
  e.add_term(Monomial(m), coefficient);
  return e;
}

Integer ExteriorElement::coefficient(Monomial m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Integer(0) : it->second;
}

void ExteriorElement::add_term(Monomial m, const Integer& c) {
  if (m.degree() != degree_) throw std::invalid_argument("term degree does not match element degree");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ExteriorElement& ExteriorElement::operator+=(const ExteriorElement& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) degree_ = o.degree_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

ExteriorElement& ExteriorElement::operator-=(const ExteriorElement& o) { return *this += -o; }

ExteriorElement& ExteriorElement::operator*=(const Integer& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

ExteriorElement ExteriorElement::operator-() const {
  ExteriorElement r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

SparseVector ExteriorElement::coordinates(std::size_t n) const {
  SparseVector out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    if (m.mask() & ~full_mask(n)) throw std::invalid_argument("monomial index outside the ambient range");
    out.emplace_back(static_cast<std::uint32_t>(lex_rank(m.mask(), n)), c);
  }
  // the map order is lexicographic, which is exactly the basis order
  return out;
}

ExteriorElement ExteriorElement::from_coordinates(const SparseVector& v, std::size_t n,
                                                  std::size_t degree) {
  auto monomials = basis(n, degree);
  ExteriorElement e(degree);
  for (const auto& [i, c] : v) e.add_term(monomials.at(i), c);
  return e;
}

std::string ExteriorElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Integer a = abs(c);
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (!a.is_one() || m.degree() == 0) os << a;
    if (m.degree() == 0) continue;
    if (!a.is_one()) os << " ";
    os << "e_{";
    bool sep = false;
    for (auto i : m.indices()) {
      os << (sep ? "," : "") << i;
      sep = true;
    }
    os << "}";
  }
  return os.str();
}

ExteriorElement wedge(const ExteriorElement& u, const ExteriorElement& v) {
  ExteriorElement out(u.degree() + v.degree());
  for (const auto& [a, x] : u.terms()) {
    for (const auto& [b, y] : v.terms()) {
      if (a.mask() & b.mask()) continue;
      Integer c = x * y;
      if (wedge_sign(a.mask(), b.mask()) < 0) c = -c;
      out.add_term(Monomial(a.mask() | b.mask()), c);
    }
  }
  return out;
}

ExteriorElement delta_monomial(Mask c) {
  if (c == 0) return ExteriorElement(0);
  ExteriorElement out(popcount(c) - 1);
  int sign = 1;
  for (Mask rest = c; rest; rest &= rest - 1) {
    out.add_term(Monomial(c & ~low_bit(rest)), Integer(sign));
    sign = -sign;
  }
  return out;
}

ExteriorElement delta(const ExteriorElement& u) {
  if (u.degree() == 0) return ExteriorElement(0);
  ExteriorElement out(u.degree() - 1);
  for (const auto& [m, c] : u.terms()) {
    int sign = 1;
    for (Mask rest = m.mask(); rest; rest &= rest - 1) {
      out.add_term(Monomial(m.mask() & ~low_bit(rest)), sign > 0 ? c : -c);
      sign = -sign;
    }
  }
  return out;
}

}  // namespace osarr
