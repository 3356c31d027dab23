#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "osarr/arrangement.hpp"
#include "osarr/exterior.hpp"
#include "osarr/hypersolvable.hpp"
#include "osarr/matrix.hpp"
#include "osarr/os_algebra.hpp"

namespace osarr {

/// Matrix of the multiplication map (I/I_2)^{p+1} (x) Lambda^1 -> (Lambda/I_2)^{p+2}.
struct MuPresentation {
  std::size_t p = 0;
  /// Lattice basis of (I/I_2)^{p+1}, one representative per basis element.
  std::vector<ExteriorElement> generators;
  /// Row labels: (index into generators, hyperplane), generator-major.
  std::vector<std::pair<std::size_t, std::size_t>> rows;
  /// Representatives of the column basis of (Lambda/I_2)^{p+2}.
  std::vector<ExteriorElement> columns;
  IntegerMatrix matrix;
};

struct NilpotentQuotient2 {
  std::size_t gr0_rank = 0;
  AbelianInvariants gr1;
  MuPresentation mu;  // its transpose presents gr1; the action on the degree-0 layer
  static constexpr const char* ring_note =
      "R2 = Z.1 + H1 with I.R2 = H1 and I^2.R2 = 0; the map vanishes on H_{p+2}Y (x) H1";
};

struct TorsionReport {
  bool gr1_torsion_free = true;
  bool a_plus_free_p2 = true;
  bool ind_free_p2 = true;
  AbelianInvariants gr1;
  AbelianInvariants a_plus;
  AbelianInvariants ind;
};

struct RankBookkeeping {
  std::size_t hyperplanes = 0;
  std::size_t gr0_rank = 0;
  std::size_t mu_rank = 0;  // over Q, by fraction-free elimination
  std::size_t gr1_free_rank = 0;
  std::size_t abar_p1 = 0, a_p1 = 0, abar_p2 = 0, a_p2 = 0;
  std::size_t r_p2 = 0;  // over Q
  long long formula = 0;
  std::optional<std::size_t> chordless_p3;       // graphic inputs only
  std::optional<long long> graphic_formula;      // from chromatic data and exponents
};

struct HomotopyReport {
  std::size_t p = 0;
  std::size_t r = 0;
  NilpotentQuotient2 quotient;
  TorsionReport torsion;
  RankBookkeeping ranks;
};

/// All of these require a hypersolvable, non-supersolvable arrangement and
/// throw PreconditionError otherwise.
std::size_t gr0_rank(const OsAlgebra& os, const Classification& c);
MuPresentation mu_presentation(const OsAlgebra& os, const Classification& c);
AbelianInvariants gr1_invariants(const MuPresentation& mu);
NilpotentQuotient2 second_nilpotent_quotient(const OsAlgebra& os, const Classification& c);
/// Throws InternalInvariantViolation if the three torsion tests or the two
/// rank evaluations disagree.
HomotopyReport torsion_and_rank_report(const OsAlgebra& os, const Classification& c);

std::size_t gr0_rank(const Arrangement& a);
MuPresentation mu_presentation(const Arrangement& a);
AbelianInvariants gr1_invariants(const Arrangement& a);
NilpotentQuotient2 second_nilpotent_quotient(const Arrangement& a);
HomotopyReport torsion_and_rank_report(const Arrangement& a);

}  // namespace osarr
