#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "osarr/arrangement.hpp"
#include "osarr/integer.hpp"

namespace osarr {

constexpr std::size_t kMaxCanonicalVertices = 8;

/// Canonical labelling of a small graph: the relabelling that minimizes the
/// upper-triangle adjacency bit string (read column by column).
struct CanonicalForm {
  std::size_t vertex_count = 0;
  std::uint64_t bits = 0;             // bit t is the pair of the t-th column-major slot
  std::vector<std::size_t> position;  // position[v] = canonical label of vertex v

  /// Stable text key, e.g. "6:0a3f".
  std::string key() const;
  Graph graph() const;
  friend auto operator<=>(const CanonicalForm& a, const CanonicalForm& b) {
    if (auto c = a.vertex_count <=> b.vertex_count; c != 0) return c;
    return a.bits <=> b.bits;
  }
  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
    return a.vertex_count == b.vertex_count && a.bits == b.bits;
  }
};

/// Requires vertex_count <= kMaxCanonicalVertices.
CanonicalForm canonical_form(const Graph& g);

/// Coefficients of the chromatic polynomial, index = power of k.
std::vector<Integer> chromatic_polynomial(const Graph& g);

bool is_connected(const Graph& g);
bool is_chordal(const Graph& g);

/// Connected simple graphs with min_vertices..max_vertices vertices and at
/// least one edge, one per isomorphism class, ordered by canonical form.
std::vector<CanonicalForm> connected_graphs(std::size_t min_vertices, std::size_t max_vertices);

}  // namespace osarr
