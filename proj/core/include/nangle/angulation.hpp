#pragma once

// Membership in the collections N_u: n-Sigma-sequences isomorphic to
// C + F(up)^r with C contractible, and the constructions behind the
// angulation axioms for them.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nangle/sequence.hpp"

namespace nangle {

/// X = core + trivials up to the isomorphism `iso`: apply_iso(X, iso) is
/// exactly assemble(core, trivials). Every core map has all entries in m.
struct SplitResult {
  NSequence core;
  std::vector<TrivialSpec> trivials;
  std::vector<RMatrix> iso;
};

/// core + trivial(t_1) + trivial(t_2) + ..., summed left to right.
NSequence assemble(const NSequence& core, const std::vector<TrivialSpec>& trivials);

/// Throws PreconditionError when X is not a candidate.
SplitResult split_trivials(const NSequence& x);

enum class Verdict { InNu, Contractible, NotInAny };
enum class NotInAnyReason { NotCandidate, NotExact, RanksUnequal, ProductNotScalar };

std::string to_string(Verdict v);
std::string to_string(NotInAnyReason r);

struct MembershipCertificate {
  Verdict verdict = Verdict::NotInAny;
  /// Residue of u for InNu.
  KElement unit_class = 0;
  std::optional<NotInAnyReason> reason;
  /// Absent only for NotCandidate.
  std::optional<SplitResult> split;
  /// B_{n-1} ... B_0 mod m, where the core maps are p * B_i. Present once
  /// the core is known to have constant nonzero rank with invertible B_i.
  std::optional<KMatrix> product_residue;
  /// For InNu: an isomorphism core -> standard_angle(u, rank).
  std::vector<RMatrix> standardizing_iso;
};

MembershipCertificate classify(const NSequence& x);
/// Re-checks every claim of a certificate for X by exact arithmetic.
bool verify_certificate(const NSequence& x, const MembershipCertificate& cert);

/// X lies in N_u: contractible, or classified InNu with the residue of u.
bool membership(const NSequence& x, const RingElement& u);

/// Member of N_u with map(0) == alpha exactly.
NSequence complete_to_angle(const RMatrix& alpha, std::size_t n, const RingElement& u);

/// Extends (phi0, phi1) with Y.map(0) phi0 = phi1 X.map(0) to a morphism
/// X -> Y whose mapping cone lies in the same N_u as X and Y. Throws
/// PreconditionError when X and Y are not members of a common N_u, when
/// the square does not commute, or for odd n with 2p != 0.
SeqMorphism complete_morphism(const NSequence& x, const NSequence& y, const RMatrix& phi0,
                              const RMatrix& phi1);

struct AngulationClass {
  RingElement u_rep;
  NSequence generator;  // standard_angle(u_rep, rank 1)
};

/// Whether rotate_left(standard_angle(u)) lies in N_v.
struct RotationWitness {
  RingElement u;
  RingElement v;
  NSequence rotated;
  bool member = false;
};

struct AngulationEnumeration {
  enum class Kind { Classes, NoneExist, InfiniteFamily };
  Kind kind = Kind::Classes;
  std::vector<AngulationClass> classes;
  std::string reason;
  /// For NoneExist: the full table over all pairs of unit classes.
  std::vector<RotationWitness> witness;
};

/// Throws DimensionError for n < 3.
AngulationEnumeration enumerate_angulations(const RingPtr& ring, std::size_t n);

/// Text-level variant which also accepts a square-zero extension of an
/// infinite field, written `Q[x]/(x^2)`, `R[x]/(x^2)` or `C[x]/(x^2)`,
/// answered symbolically. Finite rings defer to Ring::parse.
AngulationEnumeration enumerate_angulations(std::string_view ring_spec, std::size_t n);

}  // namespace nangle
