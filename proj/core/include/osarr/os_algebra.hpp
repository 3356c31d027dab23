#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "osarr/arrangement.hpp"
#include "osarr/exterior.hpp"
#include "osarr/lattice.hpp"
#include "osarr/matrix.hpp"

namespace osarr {

enum class IdealKind { Full, Quadratic, Decomposable };

/// A = Lambda/I, ABar = Lambda/I_2, APlus = Lambda/Lambda^+ I, Ind = I/Lambda^+ I.
enum class QuotientKind { A, ABar, APlus, Ind };

std::string to_string(IdealKind k);
std::string to_string(QuotientKind k);
/// Accepts "A", "Abar", "A+", "IND" (case-insensitive) and the enum names.
QuotientKind parse_quotient(const std::string& name);

struct GradedIdealPresentation {
  IdealKind kind;
  std::size_t degree;
  IntegerMatrix generator_matrix;  // rows in basis(n, degree) coordinates
};

/// An ideal in one degree, with every monomial the ideal contains outright
/// removed: the ideal equals span(killed monomials) + span(generators).
struct ReducedPresentation {
  std::vector<Mask> survivors;  // lexicographic
  std::unordered_map<Mask, std::uint32_t> position;
  std::vector<SparseVector> generators;  // coordinates over survivors

  /// Coordinates of u over the survivors, dropping killed monomials.
  SparseVector reduce(const ExteriorElement& u) const;
};

struct HilbertData {
  QuotientKind quotient;
  FieldSpec field;
  std::vector<std::size_t> coefficients;  // degrees 0..n
};

struct RmTable {
  std::vector<FieldSpec> fields;
  std::vector<std::vector<std::size_t>> values;  // values[m][f]
  std::vector<bool> field_independent;           // per degree m
};

struct ChordlessSpanReport {
  std::size_t degree = 0;
  FieldSpec field;
  std::size_t source_dim = 0;  // number of chordless (q+1)-circuits
  std::size_t span_dim = 0;    // dimension of their image in (I / Lambda^+ I)^q
  std::size_t target_dim = 0;  // r_q over the field
  bool onto = false;
  bool injective = false;
  std::optional<bool> graphic_bijective;
};

struct ChordlessDeltaKernel {
  std::size_t degree = 0;  // q: delta maps Lambda^{q+1} to Lambda^q
  std::vector<Circuit> source;
  std::size_t image_rank = 0;
  std::size_t kernel_dim = 0;

  /// u is supported on the source monomials and delta(u) = 0.
  bool contains(const ExteriorElement& u) const;
};

/// Cached Orlik-Solomon data of one arrangement. Thread-safe; results are
/// computed on first use and never change.
class OsAlgebra {
 public:
  explicit OsAlgebra(Arrangement a);
  OsAlgebra(const OsAlgebra&) = delete;
  OsAlgebra& operator=(const OsAlgebra&) = delete;

  const Arrangement& arrangement() const noexcept { return a_; }
  std::size_t size() const noexcept { return a_.size(); }
  std::size_t rank() const noexcept { return rank_; }

  /// All circuits, sorted lexicographically.
  const std::vector<Circuit>& circuits() const;
  const std::vector<Circuit>& chordless(std::size_t size) const;

  const ReducedPresentation& presentation(IdealKind kind, std::size_t q) const;
  const LatticeQuotient& lattice(IdealKind kind, std::size_t q) const;
  /// Rank of the reduced generators over the survivors (killed monomials excluded).
  std::size_t generator_rank(IdealKind kind, std::size_t q, FieldSpec field) const;

  std::size_t hilbert_coefficient(QuotientKind quotient, std::size_t q, FieldSpec field) const;
  HilbertData hilbert(QuotientKind quotient, FieldSpec field) const;
  AbelianInvariants invariants(QuotientKind quotient, std::size_t q) const;
  bool contains(IdealKind kind, const ExteriorElement& u) const;

 private:
  void check_degree(std::size_t q) const;
  ReducedPresentation build(IdealKind kind, std::size_t q) const;

  Arrangement a_;
  std::size_t rank_;
  mutable std::recursive_mutex mutex_;
  mutable std::optional<std::vector<Circuit>> circuits_;
  mutable std::map<std::size_t, std::vector<Circuit>> chordless_;
  mutable std::map<std::pair<IdealKind, std::size_t>, std::unique_ptr<ReducedPresentation>> presentations_;
  mutable std::map<std::pair<IdealKind, std::size_t>, std::unique_ptr<LatticeQuotient>> lattices_;
  mutable std::map<std::tuple<IdealKind, std::size_t, std::uint64_t>, std::size_t> ranks_;
  mutable std::map<std::size_t, AbelianInvariants> ind_invariants_;
};

/// The full spanning family e_S ^ delta(e_C) of the ideal in degree q.
GradedIdealPresentation ideal_generators(const Arrangement& a, IdealKind kind, std::size_t q);

HilbertData hilbert(const Arrangement& a, QuotientKind quotient, FieldSpec field);
HilbertData hilbert(const OsAlgebra& os, QuotientKind quotient, FieldSpec field);

AbelianInvariants quotient_invariants_graded(const Arrangement& a, QuotientKind quotient, std::size_t q);

/// {Q, F2, F3, F5} plus every prime dividing a torsion factor of A_+ or of
/// I / Lambda^+ I in some degree.
std::vector<FieldSpec> default_r_table_fields(const OsAlgebra& os,
                                              std::optional<std::size_t> max_degree = {});

/// Rows for degrees 0..min(n, max_degree).
RmTable r_table(const OsAlgebra& os, const std::vector<FieldSpec>& fields,
                std::optional<std::size_t> max_degree = {});
RmTable r_table(const Arrangement& a, const std::vector<FieldSpec>& fields);

ChordlessSpanReport chordless_span_check(const OsAlgebra& os, std::size_t q, FieldSpec field);
ChordlessSpanReport chordless_span_check(const Arrangement& a, std::size_t q, FieldSpec field);

/// delta restricted to the span of the chordless (q+1)-circuit monomials.
ChordlessDeltaKernel chordless_delta_kernel(const OsAlgebra& os, std::size_t q);

/// Exact lattice membership of u in the ideal (not merely rational span).
bool ideal_membership(const Arrangement& a, const ExteriorElement& u, IdealKind kind);

}  // namespace osarr
