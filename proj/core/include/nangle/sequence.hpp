#pragma once

// n-Sigma-sequences A_0 -> A_1 -> ... -> A_{n-1} -> Sigma A_0 of finitely
// generated free R-modules, with Sigma the identity functor. Indices are
// 0-based and cyclic: map(i) goes from A_i to A_{(i+1) mod n}, so map(n-1)
// lands in Sigma A_0 = A_0.

#include <cstddef>
#include <vector>

#include "nangle/matrix.hpp"

namespace nangle {

class NSequence {
 public:
  /// Validates n >= 3 and map(i) being ranks[i+1] x ranks[i].
  NSequence(RingPtr ring, std::vector<std::size_t> ranks, std::vector<RMatrix> maps);

  /// The sequence whose maps are all zero.
  static NSequence zero(RingPtr ring, std::vector<std::size_t> ranks);

  const RingPtr& ring() const { return ring_; }
  std::size_t n() const { return ranks_.size(); }
  std::size_t rank(std::size_t i) const { return ranks_[i % n()]; }
  const std::vector<std::size_t>& ranks() const { return ranks_; }
  std::size_t total_rank() const;
  const RMatrix& map(std::size_t i) const { return maps_[i % n()]; }
  const std::vector<RMatrix>& maps() const { return maps_; }

  friend bool operator==(const NSequence& a, const NSequence& b) {
    return *a.ring_ == *b.ring_ && a.ranks_ == b.ranks_ && a.maps_ == b.maps_;
  }

 private:
  RingPtr ring_;
  std::vector<std::size_t> ranks_;
  std::vector<RMatrix> maps_;
};

/// (phi_0, ..., phi_{n-1}) with phi_i : A_i -> B_i and every square
/// (including the wrap square through Sigma phi_0 = phi_0) commuting.
class SeqMorphism {
 public:
  /// Throws DimensionError / PreconditionError when a component has the
  /// wrong shape or a square fails to commute.
  SeqMorphism(NSequence source, NSequence target, std::vector<RMatrix> components);

  static SeqMorphism identity(const NSequence& x);
  static SeqMorphism zero(const NSequence& source, const NSequence& target);

  const NSequence& source() const { return source_; }
  const NSequence& target() const { return target_; }
  std::size_t n() const { return source_.n(); }
  const RMatrix& component(std::size_t i) const { return components_[i % n()]; }
  const std::vector<RMatrix>& components() const { return components_; }

  bool is_isomorphism() const;
  /// Returns the first square index that fails to commute, or n().
  static std::size_t first_noncommuting_square(const NSequence& source, const NSequence& target,
                                               const std::vector<RMatrix>& components);

  SeqMorphism operator+(const SeqMorphism& o) const;
  SeqMorphism operator-(const SeqMorphism& o) const;
  SeqMorphism operator-() const;
  /// this after o: (this o o)_i = this_i * o_i.
  SeqMorphism after(const SeqMorphism& o) const;

  friend bool operator==(const SeqMorphism& a, const SeqMorphism& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.components_ == b.components_;
  }

 private:
  NSequence source_;
  NSequence target_;
  std::vector<RMatrix> components_;
};

/// Identity of rank `rank` sitting at map(index): objects index and
/// index+1 carry R^rank, every other object is zero. Serialised with the
/// 1-based "position" = index + 1.
struct TrivialSpec {
  std::size_t rank = 1;
  std::size_t index = 0;

  friend bool operator==(const TrivialSpec&, const TrivialSpec&) = default;
};

/// consecutive compositions vanish, including map(0) * map(n-1).
bool is_candidate(const NSequence& x);

/// Candidate and, at each object, length(Im map(i-1)) = length(Ker map(i)).
/// For a complex of free modules this is exactness of Hom(B, -) for every
/// free B, since Hom(R^m, X) = X^m.
bool is_exact(const NSequence& x);

/// (a_1, ..., a_{n-1}, (-1)^n a_0) over (A_1, ..., A_{n-1}, A_0).
NSequence rotate_left(const NSequence& x);
/// ((-1)^n a_{n-1}, a_0, ..., a_{n-2}) over (A_{n-1}, A_0, ..., A_{n-2}).
NSequence rotate_right(const NSequence& x);

NSequence direct_sum(const NSequence& x, const NSequence& y);

/// Objects A_{i+1} + B_i, maps [[-a_{i+1}, 0], [phi_{i+1}, b_i]].
NSequence mapping_cone(const SeqMorphism& phi);

/// F(u p): maps (u p I_r, p I_r, ..., p I_r). Throws if u is not a unit.
NSequence standard_angle(RingPtr ring, std::size_t n, RingElement u, std::size_t rank);
NSequence trivial(RingPtr ring, std::size_t n, TrivialSpec spec);

/// Y with map_Y(i) = psi_{i+1} map_X(i) psi_i^{-1}; psi : X -> Y is then an
/// isomorphism. Throws PreconditionError when some psi_i is not invertible.
NSequence apply_iso(const NSequence& x, const std::vector<RMatrix>& psi);
/// apply_iso packaged as the morphism X -> Y.
SeqMorphism iso_morphism(const NSequence& x, const std::vector<RMatrix>& psi);

}  // namespace nangle
