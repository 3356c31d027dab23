#include "osarr/normal_form.hpp"

#include <algorithm>
#include <map>

#include "osarr/errors.hpp"
#include "osarr/lattice.hpp"

namespace osarr {
namespace detail {
namespace {

struct SmithWork {
  IntegerMatrix& a;
  IntegerMatrix* left;
  IntegerMatrix* right;
  IntegerMatrix* right_inverse;

  // row dst -= q * row src
  void row_axpy(std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (!a(src, c).is_zero()) a(dst, c).sub_mul(q, a(src, c));
    if (left) {
      for (std::size_t c = 0; c < left->cols(); ++c)
        if (!(*left)(src, c).is_zero()) (*left)(dst, c).sub_mul(q, (*left)(src, c));
    }
  }
  // col dst -= q * col src
  void col_axpy(std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t r = 0; r < a.rows(); ++r)
      if (!a(r, src).is_zero()) a(r, dst).sub_mul(q, a(r, src));
    if (right) {
      for (std::size_t r = 0; r < right->rows(); ++r)
        if (!(*right)(r, src).is_zero()) (*right)(r, dst).sub_mul(q, (*right)(r, src));
    }
    if (right_inverse) {
      // inverse update: row src += q * row dst
      auto& w = *right_inverse;
      for (std::size_t c = 0; c < w.cols(); ++c)
        if (!w(dst, c).is_zero()) w(src, c).add_mul(q, w(dst, c));
    }
  }
  void swap_rows(std::size_t x, std::size_t y) {
    a.swap_rows(x, y);
    if (left) left->swap_rows(x, y);
  }
  void swap_cols(std::size_t x, std::size_t y) {
    a.swap_cols(x, y);
    if (right) right->swap_cols(x, y);
    if (right_inverse) right_inverse->swap_rows(x, y);
  }
  void negate_row(std::size_t r) {
    for (auto& v : a.row(r)) v = -v;
    if (left)
      for (auto& v : left->row(r)) v = -v;
  }
};

}  // namespace

std::vector<Integer> smith_in_place(IntegerMatrix& a, IntegerMatrix* left, IntegerMatrix* right,
                                    IntegerMatrix* right_inverse) {
  SmithWork w{a, left, right, right_inverse};
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<Integer> divisors;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // smallest nonzero entry of the trailing block becomes the pivot
    std::size_t pi = rows, pj = cols;
    Integer best;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (a(i, j).is_zero()) continue;
        Integer m = abs(a(i, j));
        if (pi == rows || m < best) {
          best = std::move(m);
          pi = i;
          pj = j;
          if (best.is_one()) break;
        }
      }
      if (pi != rows && best.is_one()) break;
    }
    if (pi == rows) break;
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t).is_zero()) continue;
        Integer q = a(i, t) / a(t, t);
        if (!q.is_zero()) w.row_axpy(i, t, q);
        if (!a(i, t).is_zero()) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j).is_zero()) continue;
        Integer q = a(t, j) / a(t, t);
        if (!q.is_zero()) w.col_axpy(j, t, q);
        if (!a(t, j).is_zero()) clean = false;
      }
      if (!clean) {
        // a remainder smaller than the pivot survived; move it into place
        std::size_t bi = t, bj = t;
        Integer m = abs(a(t, t));
        for (std::size_t i = t + 1; i < rows; ++i)
          if (!a(i, t).is_zero() && abs(a(i, t)) < m) {
            m = abs(a(i, t));
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!a(t, j).is_zero() && abs(a(t, j)) < m) {
            m = abs(a(t, j));
            bi = t;
            bj = j;
          }
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);
        continue;
      }
      bool fixed = false;
      if (!a(t, t).is_unit()) {
        for (std::size_t i = t + 1; i < rows && !fixed; ++i)
          for (std::size_t j = t + 1; j < cols; ++j)
            if (!a(i, j).is_zero() && !divides(a(t, t), a(i, j))) {
              w.row_axpy(t, i, Integer(-1));
              fixed = true;
              break;
            }
      }
      if (!fixed) break;
    }
    if (a(t, t).sign() < 0) w.negate_row(t);
    divisors.push_back(a(t, t));
  }
  return divisors;
}

std::size_t bareiss_rank(IntegerMatrix a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t rank = 0;
  Integer prev(1);
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a(p, c).is_zero()) ++p;
    if (p == rows) continue;
    a.swap_rows(rank, p);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer v = a(rank, c) * a(i, j);
        v.sub_mul(a(i, c), a(rank, j));
        a(i, j) = div_exact(v, prev);
      }
      a(i, c) = 0;
    }
    prev = a(rank, c);
    ++rank;
  }
  return rank;
}

}  // namespace detail

SmithForm smith_normal_form(const IntegerMatrix& m) {
  SmithForm out;
  IntegerMatrix a = m;
  out.left = IntegerMatrix::identity(m.rows());
  out.right = IntegerMatrix::identity(m.cols());
  out.divisors = detail::smith_in_place(a, &out.left, &out.right, nullptr);
  return out;
}

std::vector<Integer> smith_divisors(const IntegerMatrix& m) {
  std::vector<SparseVector> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(to_sparse(m.row(r)));
  LatticeQuotient q(m.cols(), std::move(rows));
  std::vector<Integer> out(q.rank() - q.invariants().torsion.size(), Integer(1));
  for (const auto& d : q.invariants().torsion) out.push_back(d);
  return out;
}

IntegerMatrix hermite_basis(const IntegerMatrix& generators) {
  const std::size_t cols = generators.cols();
  std::map<std::size_t, std::vector<Integer>> by_pivot;

  for (std::size_t r = 0; r < generators.rows(); ++r) {
    std::vector<Integer> v(generators.row(r).begin(), generators.row(r).end());
    for (std::size_t j = 0; j < cols; ++j) {
      if (v[j].is_zero()) continue;
      auto it = by_pivot.find(j);
      if (it == by_pivot.end()) {
        if (v[j].sign() < 0)
          for (auto& x : v) x = -x;
        by_pivot.emplace(j, std::move(v));
        break;
      }
      auto& b = it->second;
      if (divides(b[j], v[j])) {
        Integer q = div_exact(v[j], b[j]);
        for (std::size_t k = j; k < cols; ++k)
          if (!b[k].is_zero()) v[k].sub_mul(q, b[k]);
        continue;
      }
      auto [g, s, t] = extended_gcd(b[j], v[j]);
      Integer bj = div_exact(b[j], g), vj = div_exact(v[j], g);
      for (std::size_t k = j; k < cols; ++k) {
        Integer nb = s * b[k];
        nb.add_mul(t, v[k]);
        Integer nv = bj * v[k];
        nv.sub_mul(vj, b[k]);
        b[k] = std::move(nb);
        v[k] = std::move(nv);
      }
    }
  }

  std::vector<std::pair<std::size_t, std::vector<Integer>>> rows(by_pivot.begin(), by_pivot.end());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& [pc, pr] = rows[i];
    for (std::size_t k = 0; k < i; ++k) {
      auto& above = rows[k].second;
      if (above[pc].is_zero()) continue;
      Integer q = floor_div(above[pc], pr[pc]);
      if (q.is_zero()) continue;
      for (std::size_t c = pc; c < cols; ++c)
        if (!pr[c].is_zero()) above[c].sub_mul(q, pr[c]);
    }
  }
  IntegerMatrix out(0, cols);
  for (const auto& [pc, r] : rows) out.append_row(r);
  return out;
}

std::size_t rank_over_field(const IntegerMatrix& m, FieldSpec field) {
  if (field.is_rational()) return detail::bareiss_rank(m);
  const auto p = field.characteristic();
  if (p != 0 && !is_prime(p)) throw InputError("invalid field characteristic " + std::to_string(p));
  std::vector<SparseVector> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(to_sparse(m.row(r)));
  return sparse_rank_mod_p(rows, m.cols(), static_cast<std::uint32_t>(p));
}

AbelianInvariants quotient_invariants(std::size_t ambient_rank, const IntegerMatrix& generators) {
  if (generators.rows() > 0 && generators.cols() != ambient_rank) {
    throw InputError("generator matrix has " + std::to_string(generators.cols()) +
                     " columns, expected " + std::to_string(ambient_rank));
  }
  std::vector<SparseVector> rows;
  rows.reserve(generators.rows());
  for (std::size_t r = 0; r < generators.rows(); ++r) rows.push_back(to_sparse(generators.row(r)));
  return LatticeQuotient(ambient_rank, std::move(rows)).invariants();
}

}  // namespace osarr
