#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "osarr/bits.hpp"
#include "osarr/integer.hpp"

namespace osarr {

/// Finite simple graph on vertices 0..vertex_count-1. Edges are stored with
/// u < v in lexicographic order.
class Graph {
 public:
  Graph() = default;
  /// Throws InputError on loops, repeated edges or out-of-range vertices; the
  /// error's items() are positions in `edges`.
  Graph(std::size_t vertex_count, std::vector<std::pair<std::size_t, std::size_t>> edges);

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }
  bool adjacent(std::size_t u, std::size_t v) const;
  /// Neighbourhood bit sets, one per vertex (requires vertex_count <= 64).
  std::vector<std::uint64_t> adjacency() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

/// A central arrangement given by integer normals, with the matroid queries
/// everything else is built on.
class Arrangement {
 public:
  Arrangement() = default;

  /// Throws InputError for zero normals, wrong lengths or proportional pairs;
  /// items() names the offending normal indices.
  static Arrangement build(std::size_t ambient_dim, std::vector<std::vector<Integer>> normals,
                           std::vector<std::string> labels = {});
  /// Edge {i,j}, i < j, becomes the normal e_i - e_j; hyperplane order is the
  /// lexicographic edge order.
  static Arrangement from_graph(const Graph& g);

  std::size_t size() const noexcept { return normals_.size(); }
  std::size_t ambient_dim() const noexcept { return dim_; }
  const std::vector<std::vector<Integer>>& normals() const noexcept { return normals_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::optional<Graph>& source() const noexcept { return source_; }
  bool is_graphic() const noexcept { return source_.has_value(); }
  Mask all() const noexcept { return full_mask(size()); }

  std::size_t rank(Mask s) const;
  std::size_t rank() const { return rank(all()); }
  bool independent(Mask s) const { return rank(s) == popcount(s); }
  /// Smallest flat containing s.
  Mask closure(Mask s) const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::vector<Integer>> normals_;
  std::vector<std::string> labels_;
  std::optional<Graph> source_;
};

struct Circuit {
  std::vector<std::size_t> indices;

  Mask mask() const { return indices_mask(indices); }
  std::size_t size() const noexcept { return indices.size(); }
  friend auto operator<=>(const Circuit&, const Circuit&) = default;
};

/// Rank of the normals indexed by s. Throws InputError on a bad index.
std::size_t subset_rank(const Arrangement& a, const std::vector<std::size_t>& s);

/// All circuits with at most max_size elements, sorted lexicographically.
std::vector<Circuit> circuits(const Arrangement& a, std::size_t max_size);

/// True when some hyperplane outside the circuit is a chord of it.
bool has_chord(const Arrangement& a, Mask circuit);

/// Circuits of exactly `size` elements that have no chord.
std::vector<Circuit> chordless_circuits(const Arrangement& a, std::size_t size);

/// Every flat of the arrangement, with ranks and the Mobius function mu(0, X).
class IntersectionLattice {
 public:
  struct Flat {
    Mask indices;
    std::size_t rank;
    Integer mobius;
  };

  explicit IntersectionLattice(const Arrangement& a);

  /// Flats sorted by rank, then lexicographically by index set.
  const std::vector<Flat>& flats() const noexcept { return flats_; }
  std::size_t size() const noexcept { return flats_.size(); }
  std::size_t rank() const noexcept { return flats_.empty() ? 0 : flats_.back().rank; }
  std::optional<std::size_t> find(Mask flat) const;
  bool is_flat(Mask s) const { return find(s).has_value(); }

  Mask join(Mask x, Mask y) const;
  Mask meet(Mask x, Mask y) const;
  std::size_t rank_of(Mask flat) const;
  bool is_modular(Mask flat) const;
  /// A chain of modular flats with ranks 0, 1, ..., r if one exists.
  std::optional<std::vector<Mask>> modular_chain() const;

 private:
  Arrangement arrangement_;
  std::vector<Flat> flats_;
  std::unordered_map<Mask, std::size_t> index_;
};

IntersectionLattice flats(const Arrangement& a);

/// b_q = sum of |mu(0, X)| over flats of rank q.
std::vector<Integer> betti_mobius(const Arrangement& a);

struct Genericity {
  std::optional<std::size_t> c;          // empty for an independent arrangement
  std::optional<bool> two_generic;       // empty when c is
};

Genericity c_and_genericity(const Arrangement& a);

}  // namespace osarr
