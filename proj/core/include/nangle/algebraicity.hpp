#pragma once

// The null-homotopy obstruction for odd n: if d * 1_R = u p is nonzero in m,
// an algebraic angulation would make d * id null-homotopic on the chain
//
//   R --p--> R --p--> ... --p--> R      (n - 2 terms)
//
// i.e. the scalar system  up = p q_1,  up = q_{i} p + p q_{i+1},  up = q_{n-3} p
// would be solvable in R.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nangle/matrix.hpp"

namespace nangle {

/// Smallest d > 0 with d * 1_R in m \ {0}.
std::optional<std::uint64_t> find_obstruction_d(const Ring& ring);

/// The (n-2) x (n-3) coefficient matrix and right-hand side of the system
/// in q_1, ..., q_{n-3}. Throws PreconditionError unless d * 1_R lies in
/// m \ {0}, DimensionError for n < 3.
std::pair<RMatrix, RMatrix> null_homotopy_system(const RingPtr& ring, std::size_t n, std::uint64_t d);

/// A solution (q_1, ..., q_{n-3}) with every q_i a residue lift, or the
/// unsolvability certificate of the system.
std::variant<std::vector<RingElement>, Infeasibility> null_homotopy_d_certified(const RingPtr& ring,
                                                                               std::size_t n, std::uint64_t d);
std::optional<std::vector<RingElement>> null_homotopy_d(const RingPtr& ring, std::size_t n, std::uint64_t d);

/// Checks every equation of the system for (q_1, ..., q_{n-3}).
bool verify_null_homotopy(const Ring& ring, std::size_t n, std::uint64_t d, const std::vector<RingElement>& q);

/// (u, 0, u, 0, ..., u) of length n - 3, for even n.
std::vector<RingElement> alternating_witness(const Ring& ring, std::size_t n, std::uint64_t d);

/// General open chain C_0 -> C_1 -> ... -> C_m with maps c_j : C_j -> C_{j+1}
/// and an endomorphism f_j of each C_j: finds h_j : C_{j+1} -> C_j with
/// f_j = h_j c_j + c_{j-1} h_{j-1} at every object, where the terms with
/// h_{-1} and h_m are absent.
std::optional<std::vector<RMatrix>> find_open_chain_null_homotopy(const std::vector<RMatrix>& maps,
                                                                  const std::vector<RMatrix>& f);

struct ObstructionReport {
  enum class Verdict { NotAlgebraic, Inconclusive };
  Verdict verdict = Verdict::Inconclusive;
  std::optional<std::uint64_t> d;
  /// Empty, "no-valid-d", "parity" or "even-n".
  std::string reason;
  std::optional<std::vector<RingElement>> witness;
  /// For NotAlgebraic: the system and its unsolvability certificate.
  std::optional<RMatrix> system;
  std::optional<RMatrix> rhs;
  std::optional<Infeasibility> certificate;
};

/// Throws DimensionError for n < 3.
ObstructionReport algebraicity_verdict(const RingPtr& ring, std::size_t n);

/// Re-verifies the witness or certificate carried by a report.
bool verify_report(const RingPtr& ring, std::size_t n, const ObstructionReport& report);

}  // namespace nangle
