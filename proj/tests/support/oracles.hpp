#pragma once

// Slow reference implementations. They share no code with the library and
// only work for small inputs.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace osarr::test {

using i128 = __int128;
using Dense = std::vector<std::vector<long long>>;

inline long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

inline i128 determinant(std::vector<std::vector<i128>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  i128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline void choose(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (idx.size() == k) {
      f(idx);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      idx.push_back(i);
      rec(i + 1);
      idx.pop_back();
    }
  };
  rec(0);
}

inline i128 minor(const Dense& m, const std::vector<std::size_t>& r, const std::vector<std::size_t>& c) {
  std::vector<std::vector<i128>> a(r.size(), std::vector<i128>(c.size()));
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) a[i][j] = m[r[i]][c[j]];
  return determinant(std::move(a));
}

// Rank over Q: largest nonvanishing minor.
inline std::size_t rank(const Dense& m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  for (std::size_t k = std::min(rows, cols); k > 0; --k) {
    bool found = false;
    choose(rows, k, [&](const auto& r) {
      if (found) return;
      choose(cols, k, [&](const auto& c) {
        if (!found && minor(m, r, c) != 0) found = true;
      });
    });
    if (found) return k;
  }
  return 0;
}

// Invariant factors from determinantal divisors: s_k = d_k / d_{k-1}.
inline std::vector<long long> determinantal_factors(const Dense& m) {
  std::vector<long long> out;
  if (m.empty()) return out;
  const std::size_t rows = m.size(), cols = m[0].size();
  i128 prev = 1;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    i128 g = 0;
    choose(rows, k, [&](const auto& r) {
      choose(cols, k, [&](const auto& c) {
        i128 d = minor(m, r, c);
        if (d < 0) d = -d;
        while (d != 0) {
          i128 t = g % d;
          g = d;
          d = t;
        }
      });
    });
    if (g == 0) break;
    out.push_back(static_cast<long long>(g / prev));
    prev = g;
  }
  return out;
}

// |(Z/N)^ambient / (L + N Z^ambient)| by closing the generators under addition.
inline std::size_t cokernel_size_mod(const Dense& gens, std::size_t ambient, long long n) {
  auto encode = [&](const std::vector<long long>& v) {
    std::size_t code = 0;
    for (auto x : v) code = code * static_cast<std::size_t>(n) + static_cast<std::size_t>(((x % n) + n) % n);
    return code;
  };
  std::size_t total = 1;
  for (std::size_t i = 0; i < ambient; ++i) total *= static_cast<std::size_t>(n);
  std::vector<char> seen(total, 0);
  std::vector<std::vector<long long>> frontier{std::vector<long long>(ambient, 0)};
  seen[0] = 1;
  std::size_t count = 1;
  while (!frontier.empty()) {
    auto v = frontier.back();
    frontier.pop_back();
    for (const auto& g : gens) {
      std::vector<long long> w(ambient);
      for (std::size_t i = 0; i < ambient; ++i) w[i] = ((v[i] + g[i]) % n + n) % n;
      auto code = encode(w);
      if (!seen[code]) {
        seen[code] = 1;
        ++count;
        frontier.push_back(std::move(w));
      }
    }
  }
  return total / count;
}

// Independent sets / circuits of a vector configuration.
inline std::size_t subset_rank(const Dense& normals, const std::vector<std::size_t>& s) {
  Dense m;
  for (auto i : s) m.push_back(normals[i]);
  return rank(m);
}

inline std::vector<std::vector<std::size_t>> brute_circuits(const Dense& normals) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t n = normals.size();
  for (std::size_t k = 1; k <= n; ++k) {
    choose(n, k, [&](const auto& s) {
      if (subset_rank(normals, s) != k - 1) return;
      for (std::size_t drop = 0; drop < k; ++drop) {
        auto t = s;
        t.erase(t.begin() + static_cast<long>(drop));
        if (subset_rank(normals, t) != k - 1) return;
      }
      out.push_back(s);
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Edge sets of simple cycles, by DFS from each smallest vertex.
inline std::set<std::vector<std::size_t>> graph_cycles(std::size_t n,
                                                       const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    index[{std::min(u, v), std::max(u, v)}] = i;
  }
  auto edge_id = [&](std::size_t u, std::size_t v) { return index.at({std::min(u, v), std::max(u, v)}); };
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::set<std::vector<std::size_t>> cycles;
  std::vector<std::size_t> path;
  std::vector<char> on(n, 0);
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t start, std::size_t v) {
    for (auto w : adj[v]) {
      if (w == start && path.size() >= 3) {
        std::vector<std::size_t> es;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) es.push_back(edge_id(path[i], path[i + 1]));
        es.push_back(edge_id(path.back(), start));
        std::sort(es.begin(), es.end());
        cycles.insert(es);
      } else if (w > start && !on[w]) {
        on[w] = 1;
        path.push_back(w);
        dfs(start, w);
        path.pop_back();
        on[w] = 0;
      }
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    path = {s};
    on[s] = 1;
    dfs(s, s);
    on[s] = 0;
  }
  return cycles;
}

inline long long count_colorings(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                 long long k) {
  std::vector<long long> col(n, 0);
  long long count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t v) {
    if (v == n) {
      ++count;
      return;
    }
    for (long long c = 0; c < k; ++c) {
      bool ok = true;
      for (auto [a, b] : edges)
        if ((a == v && b < v && col[b] == c) || (b == v && a < v && col[a] == c)) ok = false;
      if (!ok) continue;
      col[v] = c;
      rec(v + 1);
    }
  };
  rec(0);
  return count;
}

// Chordal iff no induced cycle of length >= 4.
inline bool chordal_by_induced_cycles(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (auto [u, v] : edges) adj[u][v] = adj[v][u] = 1;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    std::vector<std::size_t> vs;
    for (std::size_t i = 0; i < n; ++i)
      if (s >> i & 1) vs.push_back(i);
    if (vs.size() < 4) continue;
    bool two_regular = true;
    for (auto v : vs) {
      int d = 0;
      for (auto w : vs) d += adj[v][w];
      if (d != 2) two_regular = false;
    }
    if (!two_regular) continue;
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{vs[0]};
    seen[vs[0]] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : vs)
        if (adj[v][w] && !seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
    }
    if (reached == vs.size()) return false;
  }
  return true;
}

// Flats as closed subsets and |mu(0, X)| summed by rank.
inline std::vector<long long> brute_betti(const Dense& normals) {
  const std::size_t n = normals.size();
  std::vector<std::pair<std::uint32_t, std::size_t>> flats;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (s >> i & 1) idx.push_back(i);
    const auto r = subset_rank(normals, idx);
    bool closed = true;
    for (std::size_t x = 0; x < n && closed; ++x) {
      if (s >> x & 1) continue;
      auto t = idx;
      t.push_back(x);
      if (subset_rank(normals, t) == r) closed = false;
    }
    if (closed) flats.emplace_back(s, r);
  }
  std::sort(flats.begin(), flats.end(), [](auto a, auto b) { return a.second < b.second; });
  std::map<std::uint32_t, long long> mu;
  std::vector<long long> betti;
  for (auto [s, r] : flats) {
    long long m = 0;
    if (s != 0)
      for (auto [t, rt] : flats)
        if (rt < r && (t & s) == t) m -= mu[t];
    if (s == 0) m = 1;
    mu[s] = m;
    if (betti.size() <= r) betti.resize(r + 1, 0);
    betti[r] += std::llabs(m);
  }
  return betti;
}

}  // namespace osarr::test
