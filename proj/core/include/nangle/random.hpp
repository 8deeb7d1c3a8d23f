#pragma once

// Seeded generators for randomized checks. Every trial draws from its own
// engine seeded by trial_seed(seed, index), so results do not depend on
// the order or thread in which trials run.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "nangle/sequence.hpp"

namespace nangle {

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform-ish in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  /// Uniform-ish in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool coin() { return (engine_() & 1) != 0; }

 private:
  std::mt19937_64 engine_;
};

RingElement random_element(const Ring& ring, Rng& rng);
RingElement random_unit(const Ring& ring, Rng& rng);
RMatrix random_matrix(const RingPtr& ring, std::size_t rows, std::size_t cols, Rng& rng);
/// Rejection sampling on the residue matrix.
RMatrix random_invertible(const RingPtr& ring, std::size_t n, Rng& rng);
/// One random invertible matrix per object of x.
std::vector<RMatrix> random_iso(const NSequence& x, Rng& rng);

/// F(up)^r plus random trivial summands, conjugated by a random isomorphism;
/// r <= max_rank and at most max_rank trivial summands.
NSequence random_member(const RingPtr& ring, std::size_t n, const RingElement& u, std::size_t max_rank, Rng& rng);

/// A random candidate drawn from a mix of members of random N_v,
/// contractible sequences, and minimal sequences that fail exactness,
/// have unequal ranks or a non-scalar residue product.
NSequence random_candidate(const RingPtr& ring, std::size_t n, std::size_t max_rank, Rng& rng);

/// Random (phi0, phi1) with y.map(0) phi0 = phi1 x.map(0), drawn from the
/// solution module of that equation.
std::pair<RMatrix, RMatrix> random_commuting_square(const NSequence& x, const NSequence& y, Rng& rng);

}  // namespace nangle
