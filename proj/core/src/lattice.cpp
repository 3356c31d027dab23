#include "osarr/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "osarr/errors.hpp"
#include "osarr/normal_form.hpp"

namespace osarr {
namespace {

struct IntegerRing {
  using Value = Integer;
  static bool is_unit(const Value& v) { return v.is_unit(); }
  // pivots are units, so the multiplier for a row entry x is x * pivot
  static Value multiplier(const Value& x, const Value& pivot) { return x * pivot; }
  // returns x - f * y
  static Value sub_mul(const Value& x, const Value& f, const Value& y) {
    Value r = x;
    r.sub_mul(f, y);
    return r;
  }
  static Value negate_mul(const Value& f, const Value& y) { return -(f * y); }
  static bool is_zero(const Value& v) { return v.is_zero(); }
};

struct PrimeField {
  using Value = std::uint32_t;
  std::uint64_t p;

  static bool is_unit(Value v) { return v != 0; }
  Value inverse(Value a) const {
    std::uint64_t result = 1, base = a, e = p - 2;
    while (e) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return static_cast<Value>(result);
  }
  Value multiplier(Value x, Value pivot) const {
    return static_cast<Value>(std::uint64_t{x} * inverse(pivot) % p);
  }
  Value sub_mul(Value x, Value f, Value y) const {
    std::uint64_t t = std::uint64_t{f} * y % p;
    return static_cast<Value>((x + p - t) % p);
  }
  Value negate_mul(Value f, Value y) const {
    std::uint64_t t = std::uint64_t{f} * y % p;
    return static_cast<Value>((p - t) % p);
  }
  static bool is_zero(Value v) { return v == 0; }
};

// Greedy sparse elimination on unit pivots. Pivot rows are recorded in the
// order used; every later row is zero in every earlier pivot column.
template <class Ring>
class UnitEliminator {
 public:
  using Value = typename Ring::Value;
  using Row = std::vector<std::pair<std::uint32_t, Value>>;

  struct Pivot {
    std::uint32_t col;
    Value value;
    Row row;
  };

  UnitEliminator(Ring ring, std::vector<Row> rows, std::size_t ambient)
      : ring_(std::move(ring)), rows_(std::move(rows)), col_rows_(ambient),
        active_(rows_.size(), true) {
    for (std::uint32_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r].empty()) active_[r] = false;
      for (const auto& e : rows_[r]) col_rows_[e.first].push_back(r);
    }
  }

  void run() {
    bool progress = true;
    while (progress) {
      progress = false;
      std::vector<std::uint32_t> order;
      for (std::uint32_t r = 0; r < rows_.size(); ++r)
        if (active_[r]) order.push_back(r);
      std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return rows_[a].size() < rows_[b].size();
      });
      for (std::uint32_t r : order) {
        if (!active_[r]) continue;
        std::size_t best = rows_[r].size();
        std::size_t best_count = 0;
        for (std::size_t k = 0; k < rows_[r].size(); ++k) {
          if (!Ring::is_unit(rows_[r][k].second)) continue;
          std::size_t count = col_rows_[rows_[r][k].first].size();
          if (best == rows_[r].size() || count < best_count) {
            best = k;
            best_count = count;
          }
        }
        if (best == rows_[r].size()) continue;
        pivot_on(r, best);
        progress = true;
      }
    }
  }

  std::vector<Pivot>& pivots() { return pivots_; }

  std::vector<Row> residual() {
    std::vector<Row> out;
    for (std::uint32_t r = 0; r < rows_.size(); ++r)
      if (active_[r]) out.push_back(std::move(rows_[r]));
    return out;
  }

 private:
  void pivot_on(std::uint32_t r, std::size_t k) {
    const std::uint32_t col = rows_[r][k].first;
    active_[r] = false;
    Pivot piv{col, rows_[r][k].second, std::move(rows_[r])};
    std::vector<std::uint32_t> users;
    users.swap(col_rows_[col]);
    for (std::uint32_t u : users) {
      if (u == r || !active_[u]) continue;
      auto& row = rows_[u];
      auto it = std::lower_bound(row.begin(), row.end(), col,
                                 [](const auto& e, std::uint32_t c) { return e.first < c; });
      if (it == row.end() || it->first != col) continue;  // stale entry
      Value f = ring_.multiplier(it->second, piv.value);
      row = combine(row, f, piv.row, u);
      if (row.empty()) active_[u] = false;
    }
    pivots_.push_back(std::move(piv));
  }

  // x - f * y, registering fill-in columns for row id `owner`
  Row combine(const Row& x, const Value& f, const Row& y, std::uint32_t owner) {
    Row out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
      if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
        out.push_back(x[i++]);
      } else if (i == x.size() || y[j].first < x[i].first) {
        Value v = ring_.negate_mul(f, y[j].second);
        if (!Ring::is_zero(v)) {
          out.emplace_back(y[j].first, std::move(v));
          col_rows_[y[j].first].push_back(owner);
        }
        ++j;
      } else {
        Value v = ring_.sub_mul(x[i].second, f, y[j].second);
        if (!Ring::is_zero(v)) out.emplace_back(x[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    return out;
  }

  Ring ring_;
  std::vector<Row> rows_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::vector<bool> active_;
  std::vector<Pivot> pivots_;
};

void check_columns(const SparseVector& v, std::size_t ambient) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].first >= ambient || (k > 0 && v[k - 1].first >= v[k].first) || v[k].second.is_zero()) {
      throw std::invalid_argument("malformed sparse vector for ambient rank " +
                                  std::to_string(ambient));
    }
  }
}

}  // namespace

LatticeQuotient::LatticeQuotient(std::size_t ambient, std::vector<SparseVector> generators)
    : ambient_(ambient) {
  for (const auto& g : generators) check_columns(g, ambient);
  UnitEliminator<IntegerRing> elim(IntegerRing{}, std::move(generators), ambient);
  elim.run();
  std::vector<bool> is_pivot(ambient, false);
  for (auto& p : elim.pivots()) {
    is_pivot[p.col] = true;
    pivots_.push_back(Pivot{p.col, std::move(p.value), std::move(p.row)});
  }
  auto residual = elim.residual();

  std::vector<bool> is_active(ambient, false);
  for (const auto& row : residual)
    for (const auto& e : row) is_active[e.first] = true;
  std::vector<std::uint32_t> active_index(ambient, 0);
  for (std::uint32_t c = 0; c < ambient; ++c) {
    if (is_active[c]) {
      active_index[c] = static_cast<std::uint32_t>(active_.size());
      active_.push_back(c);
    } else if (!is_pivot[c]) {
      passive_.push_back(c);
    }
  }

  if (!residual.empty()) {
    IntegerMatrix block(residual.size(), active_.size());
    for (std::size_t r = 0; r < residual.size(); ++r)
      for (const auto& [c, v] : residual[r]) block(r, active_index[c]) = v;
    right_ = IntegerMatrix::identity(active_.size());
    right_inverse_ = IntegerMatrix::identity(active_.size());
    divisors_ = detail::smith_in_place(block, nullptr, &right_, &right_inverse_);
  }

  invariants_.free_rank = passive_.size() + active_.size() - divisors_.size();
  for (const auto& d : divisors_)
    if (!d.is_one()) invariants_.torsion.push_back(d);
}

std::vector<Integer> LatticeQuotient::reduce(const SparseVector& x,
                                             std::vector<Integer>* multiples) const {
  check_columns(x, ambient_);
  std::vector<Integer> v = to_dense(x, ambient_);
  if (multiples) multiples->assign(pivots_.size(), Integer(0));
  for (std::size_t k = 0; k < pivots_.size(); ++k) {
    const auto& p = pivots_[k];
    if (v[p.col].is_zero()) continue;
    Integer f = v[p.col] * p.unit;
    for (const auto& [c, val] : p.row) v[c].sub_mul(f, val);
    if (multiples) (*multiples)[k] = std::move(f);
  }
  return v;
}

std::vector<Integer> LatticeQuotient::residual_image(const std::vector<Integer>& reduced) const {
  std::vector<Integer> y(active_.size());
  for (std::size_t i = 0; i < active_.size(); ++i) {
    const Integer& xi = reduced[active_[i]];
    if (xi.is_zero()) continue;
    for (std::size_t j = 0; j < active_.size(); ++j)
      if (!right_(i, j).is_zero()) y[j].add_mul(xi, right_(i, j));
  }
  return y;
}

std::vector<Integer> LatticeQuotient::project(const SparseVector& x) const {
  auto v = reduce(x, nullptr);
  std::vector<Integer> out;
  out.reserve(invariants_.free_rank);
  for (auto c : passive_) out.push_back(v[c]);
  auto y = residual_image(v);
  for (std::size_t i = divisors_.size(); i < y.size(); ++i) out.push_back(y[i]);
  return out;
}

bool LatticeQuotient::contains(const SparseVector& x) const { return coordinates(x).has_value(); }

std::optional<std::vector<Integer>> LatticeQuotient::coordinates(const SparseVector& x) const {
  std::vector<Integer> multiples;
  auto v = reduce(x, &multiples);
  for (auto c : passive_)
    if (!v[c].is_zero()) return std::nullopt;
  auto y = residual_image(v);
  for (std::size_t i = divisors_.size(); i < y.size(); ++i)
    if (!y[i].is_zero()) return std::nullopt;
  for (std::size_t i = 0; i < divisors_.size(); ++i) {
    if (!divides(divisors_[i], y[i])) return std::nullopt;
    multiples.push_back(div_exact(y[i], divisors_[i]));
  }
  return multiples;
}

std::vector<SparseVector> LatticeQuotient::basis() const {
  std::vector<SparseVector> out;
  out.reserve(rank());
  for (const auto& p : pivots_) out.push_back(p.row);
  for (std::size_t i = 0; i < divisors_.size(); ++i) {
    SparseVector row;
    for (std::size_t j = 0; j < active_.size(); ++j) {
      if (right_inverse_(i, j).is_zero()) continue;
      row.emplace_back(active_[j], divisors_[i] * right_inverse_(i, j));
    }
    out.push_back(std::move(row));
  }
  return out;
}

SparseVector LatticeQuotient::lift(std::span<const Integer> z) const {
  if (!torsion_free()) throw std::logic_error("lift requires a torsion-free quotient");
  if (z.size() != invariants_.free_rank) throw std::invalid_argument("lift: wrong coordinate count");
  std::vector<Integer> v(ambient_);
  for (std::size_t i = 0; i < passive_.size(); ++i) v[passive_[i]] = z[i];
  const std::size_t s = divisors_.size();
  for (std::size_t i = s; i < active_.size(); ++i) {
    const Integer& zi = z[passive_.size() + i - s];
    if (zi.is_zero()) continue;
    for (std::size_t j = 0; j < active_.size(); ++j)
      if (!right_inverse_(i, j).is_zero()) v[active_[j]].add_mul(zi, right_inverse_(i, j));
  }
  return to_sparse(v);
}

std::size_t sparse_rank_mod_p(const std::vector<SparseVector>& rows, std::size_t ambient,
                              std::uint32_t p) {
  using Row = UnitEliminator<PrimeField>::Row;
  std::vector<Row> reduced;
  reduced.reserve(rows.size());
  for (const auto& r : rows) {
    Row out;
    for (const auto& [c, v] : r) {
      if (c >= ambient) throw std::invalid_argument("sparse vector column out of range");
      auto m = static_cast<std::uint32_t>(v.mod_u64(p));
      if (m != 0) out.emplace_back(c, m);
    }
    reduced.push_back(std::move(out));
  }
  UnitEliminator<PrimeField> elim(PrimeField{p}, std::move(reduced), ambient);
  elim.run();
  return elim.pivots().size();
}

}  // namespace osarr
