#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nangle/sequence.hpp"

namespace nangle {

/// Diagonal maps theta_i : A_{i+1} -> B_i between two morphisms X -> Y,
/// satisfying
///
///   phi_i - psi_i = theta_i * alpha_i + beta_{i-1} * theta_{i-1}
///
/// for every i, indices mod n (the i = 0 equation uses theta_{n-1} : A_0 -> B_{n-1}).
struct Homotopy {
  std::vector<RMatrix> thetas;
};

/// Checks shapes and every homotopy equation exactly.
bool verify_homotopy(const SeqMorphism& phi, const SeqMorphism& psi, const Homotopy& h);

/// Solves all n equations as one linear system; the unknown vector lists
/// theta_0 row-major, then theta_1, and so on. Absence proves phi and psi
/// are not homotopic.
std::optional<Homotopy> find_homotopy(const SeqMorphism& phi, const SeqMorphism& psi);

/// As find_homotopy, returning the unsolvability certificate of the
/// flattened system when there is no homotopy.
std::variant<Homotopy, Infeasibility> find_homotopy_certified(const SeqMorphism& phi,
                                                              const SeqMorphism& psi);

/// The coefficient matrix and right-hand side of the flattened system.
std::pair<RMatrix, RMatrix> homotopy_system(const SeqMorphism& phi, const SeqMorphism& psi);

/// A homotopy from id_X to 0, if one exists.
std::optional<Homotopy> is_contractible(const NSequence& x);

struct ConeIsomorphism {
  SeqMorphism fwd;  // cone(phi) -> cone(psi), components [[1, 0], [theta_i, 1]]
  SeqMorphism bwd;  // cone(psi) -> cone(phi), components [[1, 0], [-theta_i, 1]]
};

/// Throws PreconditionError when h is not a homotopy from phi to psi.
ConeIsomorphism cone_iso_from_homotopy(const SeqMorphism& phi, const SeqMorphism& psi, const Homotopy& h);

/// Contracting homotopy M_i = [[0, phi_{i+1}^{-1}], [0, 0]] of cone(phi) for
/// an isomorphism phi. Throws PreconditionError when some phi_i is singular.
Homotopy contraction_of_cone_of_iso(const SeqMorphism& phi);

}  // namespace nangle
