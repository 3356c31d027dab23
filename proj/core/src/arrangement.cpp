#include "osarr/arrangement.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "osarr/errors.hpp"

namespace osarr {
namespace {

// Incremental row echelon form over Z with primitive rows.
class Echelon {
 public:
  explicit Echelon(std::size_t dim) : dim_(dim) {}

  std::size_t rank() const noexcept { return rows_.size(); }

  bool insert(const std::vector<Integer>& v) {
    auto r = reduce(v);
    auto it = std::find_if(r.begin(), r.end(), [](const Integer& x) { return !x.is_zero(); });
    if (it == r.end()) return false;
    pivots_.push_back(static_cast<std::size_t>(it - r.begin()));
    rows_.push_back(std::move(r));
    return true;
  }

  bool spans(const std::vector<Integer>& v) const {
    auto r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](const Integer& x) { return x.is_zero(); });
  }

 private:
  std::vector<Integer> reduce(std::vector<Integer> v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::size_t c = pivots_[k];
      if (v[c].is_zero()) continue;
      const Integer f = v[c];
      const Integer& p = rows_[k][c];
      for (std::size_t j = 0; j < dim_; ++j) {
        Integer x = p * v[j];
        x.sub_mul(f, rows_[k][j]);
        v[j] = std::move(x);
      }
      Integer g(0);
      for (const auto& x : v) g = gcd(g, x);
      if (!g.is_zero() && !g.is_one())
        for (auto& x : v) x = div_exact(x, g);
    }
    return v;
  }

  std::size_t dim_;
  std::vector<std::vector<Integer>> rows_;
  std::vector<std::size_t> pivots_;
};

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

bool proportional(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  // a and b are nonzero; they are proportional iff every 2x2 minor vanishes
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return true;
}

}  // namespace

Graph::Graph(std::size_t vertex_count, std::vector<std::pair<std::size_t, std::size_t>> edges)
    : n_(vertex_count) {
  std::map<std::pair<std::size_t, std::size_t>, int> seen;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    auto [u, v] = edges[k];
    const int item = static_cast<int>(k);
    if (u >= n_ || v >= n_) {
      throw InputError("edge " + std::to_string(k) + " has a vertex outside 0.." +
                           std::to_string(n_ == 0 ? 0 : n_ - 1),
                       {item});
    }
    if (u == v) throw InputError("edge " + std::to_string(k) + " is a loop", {item});
    if (u > v) std::swap(u, v);
    auto [it, fresh] = seen.emplace(std::make_pair(u, v), item);
    if (!fresh) {
      throw InputError("edges " + std::to_string(it->second) + " and " + std::to_string(k) +
                           " are the same edge",
                       {it->second, item});
    }
    edges_.emplace_back(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
}

bool Graph::adjacent(std::size_t u, std::size_t v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(u, v));
}

std::vector<std::uint64_t> Graph::adjacency() const {
  if (n_ > 64) throw std::invalid_argument("adjacency bit sets need at most 64 vertices");
  std::vector<std::uint64_t> adj(n_, 0);
  for (auto [u, v] : edges_) {
    adj[u] |= bit(v);
    adj[v] |= bit(u);
  }
  return adj;
}

Arrangement Arrangement::build(std::size_t ambient_dim, std::vector<std::vector<Integer>> normals,
                               std::vector<std::string> labels) {
  if (ambient_dim == 0) throw InputError("ambient dimension must be positive");
  if (normals.size() > kMaxHyperplanes) {
    throw InputError("at most " + std::to_string(kMaxHyperplanes) + " hyperplanes are supported, got " +
                     std::to_string(normals.size()));
  }
  if (!labels.empty() && labels.size() != normals.size())
    throw InputError("label count does not match hyperplane count");
  for (std::size_t i = 0; i < normals.size(); ++i) {
    const int item = static_cast<int>(i);
    if (normals[i].size() != ambient_dim) {
      throw InputError("normal " + std::to_string(i) + " has " + std::to_string(normals[i].size()) +
                           " entries, expected " + std::to_string(ambient_dim),
                       {item});
    }
    if (std::all_of(normals[i].begin(), normals[i].end(), [](const Integer& x) { return x.is_zero(); }))
      throw InputError("normal " + std::to_string(i) + " is zero", {item});
    for (std::size_t j = 0; j < i; ++j) {
      if (proportional(normals[j], normals[i])) {
        throw InputError("normals " + std::to_string(j) + " and " + std::to_string(i) +
                             " are proportional",
                         {static_cast<int>(j), item});
      }
    }
  }
  Arrangement a;
  a.dim_ = ambient_dim;
  a.normals_ = std::move(normals);
  if (labels.empty()) {
    for (std::size_t i = 0; i < a.normals_.size(); ++i) labels.push_back("h" + std::to_string(i));
  }
  a.labels_ = std::move(labels);
  return a;
}

Arrangement Arrangement::from_graph(const Graph& g) {
  if (g.edge_count() > kMaxHyperplanes) {
    throw InputError("at most " + std::to_string(kMaxHyperplanes) + " edges are supported, got " +
                     std::to_string(g.edge_count()));
  }
  std::vector<std::vector<Integer>> normals;
  std::vector<std::string> labels;
  for (auto [u, v] : g.edges()) {
    std::vector<Integer> row(g.vertex_count());
    row[u] = 1;
    row[v] = -1;
    normals.push_back(std::move(row));
    labels.push_back(std::to_string(u + 1) + "-" + std::to_string(v + 1));
  }
  Arrangement a;
  a.dim_ = g.vertex_count();
  a.normals_ = std::move(normals);
  a.labels_ = std::move(labels);
  a.source_ = g;
  return a;
}

std::size_t Arrangement::rank(Mask s) const {
  s &= all();
  if (source_) {
    UnionFind uf(source_->vertex_count());
    std::size_t r = 0;
    for (; s; s &= s - 1) {
      auto [u, v] = source_->edges()[low_index(s)];
      r += uf.unite(u, v);
    }
    return r;
  }
  Echelon e(dim_);
  for (; s; s &= s - 1) e.insert(normals_[low_index(s)]);
  return e.rank();
}

Mask Arrangement::closure(Mask s) const {
  s &= all();
  Mask out = s;
  if (source_) {
    UnionFind uf(source_->vertex_count());
    for (Mask t = s; t; t &= t - 1) {
      auto [u, v] = source_->edges()[low_index(t)];
      uf.unite(u, v);
    }
    for (std::size_t i = 0; i < size(); ++i) {
      auto [u, v] = source_->edges()[i];
      if (uf.find(u) == uf.find(v)) out |= bit(i);
    }
    return out;
  }
  Echelon e(dim_);
  for (Mask t = s; t; t &= t - 1) e.insert(normals_[low_index(t)]);
  for (std::size_t i = 0; i < size(); ++i)
    if (!(s & bit(i)) && e.spans(normals_[i])) out |= bit(i);
  return out;
}

std::size_t subset_rank(const Arrangement& a, const std::vector<std::size_t>& s) {
  Mask m = 0;
  for (auto i : s) {
    if (i >= a.size()) {
      throw InputError("hyperplane index " + std::to_string(i) + " out of range (arrangement has " +
                           std::to_string(a.size()) + ")",
                       {static_cast<int>(i)});
    }
    m |= bit(i);
  }
  return a.rank(m);
}

std::vector<Circuit> circuits(const Arrangement& a, std::size_t max_size) {
  const std::size_t n = a.size();
  max_size = std::min(max_size, a.rank() + 1);
  std::vector<Circuit> out;
  if (max_size < 3) return out;

  // C = I + e with I independent and e > max(I) in cl(I); each circuit arises
  // once, from I = C minus its largest element.
  auto visit = [&](auto&& self, Mask indep, std::size_t start) -> void {
    const std::size_t k = popcount(indep);
    const Mask cl = a.closure(indep);
    for (std::size_t e = start; e < n; ++e) {
      if (cl & bit(e)) {
        if (k + 1 < 3) continue;
        const Mask c = indep | bit(e);
        bool minimal = true;
        for (Mask rest = indep; rest && minimal; rest &= rest - 1)
          minimal = a.rank(c & ~low_bit(rest)) == k;
        if (minimal) out.push_back(Circuit{mask_indices(c)});
      } else if (k + 2 <= max_size) {
        self(self, indep | bit(e), e + 1);
      }
    }
  };
  visit(visit, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

bool has_chord(const Arrangement& a, Mask circuit) {
  const Mask first = low_bit(circuit);
  const Mask rest = circuit & ~first;
  for (std::size_t c = 0; c < a.size(); ++c) {
    if (circuit & bit(c)) continue;
    // enumerate parts containing the smallest element; the complement is the other part
    for (Mask sub = rest;; sub = (sub - 1) & rest) {
      const Mask part = first | sub;
      const Mask other = circuit & ~part;
      if (other != 0) {
        const Mask x = part | bit(c), y = other | bit(c);
        if (!a.independent(x) && !a.independent(y)) return true;
      }
      if (sub == 0) break;
    }
  }
  return false;
}

std::vector<Circuit> chordless_circuits(const Arrangement& a, std::size_t size) {
  if (size < 3) throw InputError("chordless circuits are defined for size >= 3");
  std::vector<Circuit> out;
  for (auto& c : circuits(a, size)) {
    if (c.size() == size && !has_chord(a, c.mask())) out.push_back(std::move(c));
  }
  return out;
}

IntersectionLattice::IntersectionLattice(const Arrangement& a) : arrangement_(a) {
  std::deque<Mask> queue{a.closure(0)};
  std::unordered_map<Mask, std::size_t> seen{{queue.front(), 0}};
  while (!queue.empty()) {
    const Mask f = queue.front();
    queue.pop_front();
    for (std::size_t e = 0; e < a.size(); ++e) {
      if (f & bit(e)) continue;
      const Mask g = a.closure(f | bit(e));
      if (seen.emplace(g, 0).second) queue.push_back(g);
    }
  }
  for (const auto& [m, unused] : seen) flats_.push_back(Flat{m, a.rank(m), Integer(0)});
  std::sort(flats_.begin(), flats_.end(), [](const Flat& x, const Flat& y) {
    if (x.rank != y.rank) return x.rank < y.rank;
    if (popcount(x.indices) != popcount(y.indices)) return popcount(x.indices) < popcount(y.indices);
    return lex_less(x.indices, y.indices);
  });
  for (std::size_t i = 0; i < flats_.size(); ++i) index_.emplace(flats_[i].indices, i);

  flats_[0].mobius = 1;
  for (std::size_t i = 1; i < flats_.size(); ++i) {
    Integer sum(0);
    for (std::size_t j = 0; j < i && flats_[j].rank < flats_[i].rank; ++j)
      if ((flats_[j].indices & ~flats_[i].indices) == 0) sum += flats_[j].mobius;
    flats_[i].mobius = -sum;
  }
}

std::optional<std::size_t> IntersectionLattice::find(Mask flat) const {
  auto it = index_.find(flat);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Mask IntersectionLattice::join(Mask x, Mask y) const { return arrangement_.closure(x | y); }

Mask IntersectionLattice::meet(Mask x, Mask y) const { return x & y; }

std::size_t IntersectionLattice::rank_of(Mask flat) const {
  auto i = find(flat);
  return i ? flats_[*i].rank : arrangement_.rank(flat);
}

bool IntersectionLattice::is_modular(Mask x) const {
  const std::size_t rx = rank_of(x);
  for (const auto& f : flats_) {
    if ((f.indices & ~x) == 0 || (x & ~f.indices) == 0) continue;  // comparable pairs are modular
    if (rx + f.rank != arrangement_.rank(x | f.indices) + rank_of(x & f.indices)) return false;
  }
  return true;
}

std::optional<std::vector<Mask>> IntersectionLattice::modular_chain() const {
  if (flats_.empty()) return std::nullopt;
  const std::size_t r = rank();
  // reach[i] = predecessor in a modular chain ending at flat i
  std::vector<std::optional<std::size_t>> reach(flats_.size());
  reach[0] = 0;
  std::vector<std::size_t> previous{0};
  for (std::size_t level = 1; level <= r; ++level) {
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < flats_.size(); ++i) {
      if (flats_[i].rank != level) continue;
      std::optional<std::size_t> from;
      for (auto j : previous)
        if ((flats_[j].indices & ~flats_[i].indices) == 0) {
          from = j;
          break;
        }
      if (!from || !is_modular(flats_[i].indices)) continue;
      reach[i] = from;
      current.push_back(i);
    }
    if (current.empty()) return std::nullopt;
    previous = std::move(current);
  }
  std::vector<Mask> chain;
  for (std::size_t i = previous.front();; i = *reach[i]) {
    chain.push_back(flats_[i].indices);
    if (i == 0) break;
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

IntersectionLattice flats(const Arrangement& a) { return IntersectionLattice(a); }

std::vector<Integer> betti_mobius(const Arrangement& a) {
  IntersectionLattice lattice(a);
  std::vector<Integer> b(lattice.rank() + 1);
  for (const auto& f : lattice.flats()) b[f.rank] += abs(f.mobius);
  return b;
}

Genericity c_and_genericity(const Arrangement& a) {
  Genericity g;
  if (a.rank() == a.size()) return g;
  std::size_t c = a.size() + 1;
  for (const auto& circ : circuits(a, a.rank() + 1)) c = std::min(c, circ.size());
  g.c = c;
  g.two_generic = c > 3;
  return g;
}

}  // namespace osarr
