#include "osarr/graphs.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "osarr/errors.hpp"

namespace osarr {
namespace {

using Adjacency = std::vector<std::uint64_t>;

std::size_t slot(std::size_t i, std::size_t j) { return j * (j - 1) / 2 + i; }  // i < j

// Colour refinement; returns vertex classes in an isomorphism-invariant order.
std::vector<std::vector<std::size_t>> refine(const Adjacency& adj) {
  const std::size_t n = adj.size();
  std::vector<std::size_t> color(n);
  for (std::size_t v = 0; v < n; ++v) color[v] = popcount(adj[v]);
  std::size_t classes = 0;
  for (;;) {
    std::vector<std::pair<std::vector<std::size_t>, std::size_t>> sig(n);
    for (std::size_t v = 0; v < n; ++v) {
      sig[v].first.push_back(color[v]);
      std::vector<std::size_t> nb;
      for (std::uint64_t m = adj[v]; m; m &= m - 1) nb.push_back(color[low_index(m)]);
      std::sort(nb.begin(), nb.end());
      sig[v].first.insert(sig[v].first.end(), nb.begin(), nb.end());
      sig[v].second = v;
    }
    std::map<std::vector<std::size_t>, std::size_t> ids;
    for (const auto& s : sig) ids.emplace(s.first, 0);
    std::size_t next = 0;
    for (auto& [k, id] : ids) id = next++;
    for (std::size_t v = 0; v < n; ++v) color[v] = ids[sig[v].first];
    if (ids.size() == classes) break;
    classes = ids.size();
  }
  std::vector<std::vector<std::size_t>> cells(classes);
  for (std::size_t v = 0; v < n; ++v) cells[color[v]].push_back(v);
  return cells;
}

// Bit string value with slot 0 as the most significant of `width` positions,
// so that integer order is lexicographic order of the string.
std::uint64_t as_string_value(std::uint64_t bits, std::size_t width) {
  std::uint64_t r = 0;
  for (std::size_t t = 0; t < width; ++t)
    if (bits & bit(t)) r |= bit(width - 1 - t);
  return r;
}

struct CanonicalSearch {
  const Adjacency& adj;
  std::vector<std::size_t> cell_of_position;
  std::vector<std::vector<std::size_t>> cells;
  std::vector<std::size_t> order;  // order[j] = vertex at position j
  std::uint64_t used = 0;
  bool found = false;
  std::uint64_t best = 0;
  std::vector<std::size_t> best_order;

  std::uint64_t column(std::size_t j, std::size_t v) const {
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < j; ++i)
      if (adj[order[i]] & bit(v)) bits |= bit(i);
    return bits;
  }

  void run(std::size_t j, std::uint64_t bits) {
    const std::size_t n = adj.size();
    if (j == n) {
      const std::size_t w = n * (n - 1) / 2;
      if (!found || as_string_value(bits, w) < as_string_value(best, w)) {
        found = true;
        best = bits;
        best_order = order;
      }
      return;
    }
    const std::size_t w = j * (j + 1) / 2;
    const std::uint64_t prefix_mask = (std::uint64_t{1} << w) - 1;
    for (std::size_t v : cells[cell_of_position[j]]) {
      if (used & bit(v)) continue;
      const std::uint64_t next = bits | (column(j, v) << slot(0, j));
      if (found && as_string_value(next, w) > as_string_value(best & prefix_mask, w)) continue;
      order[j] = v;
      used |= bit(v);
      run(j + 1, next);
      used &= ~bit(v);
    }
  }
};

CanonicalForm canonical_of(const Adjacency& adj) {
  const std::size_t n = adj.size();
  CanonicalForm out;
  out.vertex_count = n;
  if (n == 0) return out;
  auto cells = refine(adj);
  CanonicalSearch s{adj, {}, cells, std::vector<std::size_t>(n), 0, false, 0, {}};
  for (std::size_t c = 0; c < cells.size(); ++c)
    for (std::size_t k = 0; k < cells[c].size(); ++k) s.cell_of_position.push_back(c);

  s.run(0, 0);
  out.bits = s.best;
  out.position.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) out.position[s.best_order[j]] = j;
  return out;
}

Adjacency remove_vertex(const Adjacency& adj, std::size_t v) {
  Adjacency out;
  out.reserve(adj.size() - 1);
  const std::uint64_t low = bit(v) - 1;
  for (std::size_t u = 0; u < adj.size(); ++u) {
    if (u == v) continue;
    const std::uint64_t m = adj[u];
    out.push_back((m & low) | ((m >> 1) & ~low));
  }
  return out;
}

using Poly = std::vector<Integer>;

Poly shift(const Poly& p, std::size_t k) {
  Poly out(p.size() + k);
  for (std::size_t i = 0; i < p.size(); ++i) out[i + k] = p[i];
  return out;
}

class Chromatic {
 public:
  Poly eval(Adjacency adj) {
    std::size_t isolated = 0;
    for (std::size_t v = adj.size(); v-- > 0;) {
      if (adj[v] == 0) {
        adj = remove_vertex(adj, v);
        ++isolated;
      }
    }
    if (adj.empty()) return shift(Poly{Integer(1)}, isolated);

    std::string key = memo_key(adj);
    auto it = memo_.find(key);
    if (it != memo_.end()) return shift(it->second, isolated);

    Poly result;
    std::size_t edges = 0;
    for (auto m : adj) edges += popcount(m);
    edges /= 2;
    const std::size_t n = adj.size();
    if (edges == n * (n - 1) / 2) {
      // falling factorial k(k-1)...(k-n+1)
      result = {Integer(1)};
      for (std::size_t i = 0; i < n; ++i) {
        Poly next(result.size() + 1);
        for (std::size_t d = 0; d < result.size(); ++d) {
          next[d + 1] += result[d];
          next[d].sub_mul(Integer(static_cast<long long>(i)), result[d]);
        }
        result = std::move(next);
      }
    } else {
      // pick an edge at a vertex of maximum degree
      std::size_t u = 0;
      for (std::size_t v = 1; v < n; ++v)
        if (popcount(adj[v]) > popcount(adj[u])) u = v;
      const std::size_t v = low_index(adj[u]);
      Adjacency deleted = adj;
      deleted[u] &= ~bit(v);
      deleted[v] &= ~bit(u);
      Adjacency merged = adj;
      merged[u] = (merged[u] | merged[v]) & ~bit(u) & ~bit(v);
      for (std::size_t w = 0; w < n; ++w)
        if (merged[v] & bit(w) && w != u) merged[w] |= bit(u);
      for (auto& m : merged) m &= ~bit(v);
      merged = remove_vertex(merged, v);
      Poly a = eval(std::move(deleted));
      Poly b = eval(std::move(merged));
      result = a;
      for (std::size_t d = 0; d < b.size(); ++d) result[d] -= b[d];
    }
    memo_.emplace(std::move(key), result);
    return shift(result, isolated);
  }

 private:
  static std::string memo_key(const Adjacency& adj) {
    if (adj.size() <= kMaxCanonicalVertices) {
      auto c = canonical_of(adj);
      return "c" + std::to_string(adj.size()) + ":" + std::to_string(c.bits);
    }
    std::string k = "l" + std::to_string(adj.size());
    for (auto m : adj) k += ":" + std::to_string(m);
    return k;
  }

  std::map<std::string, Poly> memo_;
};

}  // namespace

std::string CanonicalForm::key() const {
  static const char* hex = "0123456789abcdef";
  std::string s = std::to_string(vertex_count) + ":";
  const std::size_t width = vertex_count < 2 ? 0 : vertex_count * (vertex_count - 1) / 2;
  const std::size_t digits = std::max<std::size_t>(1, (width + 3) / 4);
  const std::uint64_t v = vertex_count < 2 ? 0 : as_string_value(bits, width);
  for (std::size_t d = digits; d-- > 0;) s += hex[(v >> (4 * d)) & 0xf];
  return s;
}

Graph CanonicalForm::graph() const {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t j = 1; j < vertex_count; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (bits & bit(slot(i, j))) edges.emplace_back(i, j);
  return Graph(vertex_count, std::move(edges));
}

CanonicalForm canonical_form(const Graph& g) {
  if (g.vertex_count() > kMaxCanonicalVertices) {
    throw InputError("canonical forms are limited to " + std::to_string(kMaxCanonicalVertices) +
                     " vertices");
  }
  return canonical_of(g.adjacency());
}

std::vector<Integer> chromatic_polynomial(const Graph& g) {
  if (g.vertex_count() > 64) throw InputError("chromatic polynomial needs at most 64 vertices");
  Chromatic c;
  auto p = c.eval(g.adjacency());
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

bool is_connected(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return true;
  auto adj = g.adjacency();
  std::uint64_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint64_t next = 0;
    for (auto m = frontier; m; m &= m - 1) next |= adj[low_index(m)];
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == full_mask(n);
}

bool is_chordal(const Graph& g) {
  const std::size_t n = g.vertex_count();
  auto adj = g.adjacency();
  // maximum cardinality search; the reverse visiting order is a perfect
  // elimination ordering iff the graph is chordal
  std::vector<std::size_t> weight(n, 0), order;
  std::uint64_t visited = 0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!(visited & bit(v)) && (pick == n || weight[v] > weight[pick])) pick = v;
    order.push_back(pick);
    visited |= bit(pick);
    for (auto m = adj[pick] & ~visited; m; m &= m - 1) ++weight[low_index(m)];
  }
  // for each v, its earlier-visited neighbours must form a clique
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t v = order[i];
    std::uint64_t earlier = 0;
    for (auto m = adj[v]; m; m &= m - 1)
      if (pos[low_index(m)] < i) earlier |= bit(low_index(m));
    if (!earlier) continue;
    // the latest of them must be adjacent to all the others
    std::size_t parent = low_index(earlier);
    for (auto m = earlier; m; m &= m - 1)
      if (pos[low_index(m)] > pos[parent]) parent = low_index(m);
    const std::uint64_t others = earlier & ~bit(parent);
    if ((adj[parent] & others) != others) return false;
  }
  return true;
}

std::vector<CanonicalForm> connected_graphs(std::size_t min_vertices, std::size_t max_vertices) {
  if (max_vertices > kMaxCanonicalVertices) {
    throw InputError("graph enumeration is limited to " + std::to_string(kMaxCanonicalVertices) +
                     " vertices");
  }
  std::vector<CanonicalForm> out;
  if (max_vertices == 0) return out;
  std::set<CanonicalForm> level{canonical_of(Adjacency(1, 0))};
  for (std::size_t n = 1;; ++n) {
    for (const auto& c : level) {
      if (n >= std::max<std::size_t>(min_vertices, 2) && c.bits != 0 && is_connected(c.graph()))
        out.push_back(c);
    }
    if (n == max_vertices) break;
    std::set<CanonicalForm> next;
    for (const auto& c : level) {
      Adjacency base = c.graph().adjacency();
      for (std::uint64_t nb = 0; nb < bit(n); ++nb) {
        Adjacency adj = base;
        adj.push_back(nb);
        for (auto m = nb; m; m &= m - 1) adj[low_index(m)] |= bit(n);
        next.insert(canonical_of(adj));
      }
    }
    level = std::move(next);
  }
  return out;
}

}  // namespace osarr
