#include "nangle/random.hpp"

#include <algorithm>
#include <stdexcept>

namespace nangle {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) { return splitmix64(seed ^ splitmix64(index)); }

RingElement random_element(const Ring& ring, Rng& rng) {
  return {static_cast<KElement>(rng.below(ring.q())), static_cast<KElement>(rng.below(ring.q()))};
}

RingElement random_unit(const Ring& ring, Rng& rng) {
  return {static_cast<KElement>(1 + rng.below(ring.q() - 1)), static_cast<KElement>(rng.below(ring.q()))};
}

RMatrix random_matrix(const RingPtr& ring, std::size_t rows, std::size_t cols, Rng& rng) {
  RMatrix m(ring, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = random_element(*ring, rng);
  }
  return m;
}

RMatrix random_invertible(const RingPtr& ring, std::size_t n, Rng& rng) {
  for (;;) {
    RMatrix m = random_matrix(ring, n, n, rng);
    if (m.is_invertible()) return m;
  }
}

std::vector<RMatrix> random_iso(const NSequence& x, Rng& rng) {
  std::vector<RMatrix> psi;
  for (std::size_t i = 0; i < x.n(); ++i) psi.push_back(random_invertible(x.ring(), x.rank(i), rng));
  return psi;
}

namespace {

NSequence add_random_trivials(NSequence x, std::size_t max_count, Rng& rng) {
  const std::size_t count = rng.between(0, max_count);
  for (std::size_t k = 0; k < count; ++k) {
    x = direct_sum(x, trivial(x.ring(), x.n(), {1, static_cast<std::size_t>(rng.below(x.n()))}));
  }
  return x;
}

// Maps p * B_i with B_i drawn by `draw(rows, cols)`.
template <class Draw>
NSequence minimal_sequence(const RingPtr& ring, const std::vector<std::size_t>& ranks, Draw draw) {
  std::vector<RMatrix> maps;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    maps.push_back(draw(ranks[(i + 1) % ranks.size()], ranks[i]).scaled(ring->p()));
  }
  return NSequence(ring, ranks, std::move(maps));
}

}  // namespace

NSequence random_member(const RingPtr& ring, std::size_t n, const RingElement& u, std::size_t max_rank, Rng& rng) {
  NSequence x = standard_angle(ring, n, u, rng.between(0, max_rank));
  x = add_random_trivials(std::move(x), max_rank, rng);
  return apply_iso(x, random_iso(x, rng));
}

NSequence random_candidate(const RingPtr& ring, std::size_t n, std::size_t max_rank, Rng& rng) {
  const std::size_t top = std::max<std::size_t>(max_rank, 1);
  NSequence x = NSequence::zero(ring, std::vector<std::size_t>(n, 0));
  switch (rng.below(5)) {
    case 0: {
      const auto units = ring->unit_classes();
      x = standard_angle(ring, n, units[rng.below(units.size())], rng.between(1, top));
      break;
    }
    case 1: {
      const std::vector<std::size_t> ranks(n, rng.between(1, top));
      x = minimal_sequence(ring, ranks, [&](std::size_t r, std::size_t c) { return random_matrix(ring, r, c, rng); });
      break;
    }
    case 2: {
      std::vector<std::size_t> ranks;
      for (std::size_t i = 0; i < n; ++i) ranks.push_back(rng.between(0, top));
      x = minimal_sequence(ring, ranks, [&](std::size_t r, std::size_t c) { return random_matrix(ring, r, c, rng); });
      break;
    }
    case 3: {
      const std::vector<std::size_t> ranks(n, rng.between(1, top));
      x = minimal_sequence(ring, ranks, [&](std::size_t r, std::size_t) { return random_invertible(ring, r, rng); });
      break;
    }
    default:
      break;
  }
  x = add_random_trivials(std::move(x), max_rank, rng);
  return apply_iso(x, random_iso(x, rng));
}

std::pair<RMatrix, RMatrix> random_commuting_square(const NSequence& x, const NSequence& y, Rng& rng) {
  const Ring& ring = *x.ring();
  const RMatrix& alpha = x.map(0);
  const RMatrix& beta = y.map(0);
  const std::size_t a0 = x.rank(0), a1 = x.rank(1), b0 = y.rank(0), b1 = y.rank(1);
  // Unknowns: phi0 (b0 x a0) row-major, then phi1 (b1 x a1).
  // Equations: (beta phi0 - phi1 alpha)(r, c) = 0, r < b1, c < a0.
  RMatrix sys(x.ring(), b1 * a0, b0 * a0 + b1 * a1);
  for (std::size_t r = 0; r < b1; ++r) {
    for (std::size_t c = 0; c < a0; ++c) {
      const std::size_t eq = r * a0 + c;
      for (std::size_t k = 0; k < b0; ++k) sys(eq, k * a0 + c) = ring.add(sys(eq, k * a0 + c), beta(r, k));
      for (std::size_t k = 0; k < a1; ++k) {
        const std::size_t v = b0 * a0 + r * a1 + k;
        sys(eq, v) = ring.sub(sys(eq, v), alpha(k, c));
      }
    }
  }
  auto sol = solve_linear(sys, RMatrix(x.ring(), sys.rows(), 1));
  if (!sol) throw std::logic_error("random_commuting_square: homogeneous system reported unsolvable");
  RMatrix v(x.ring(), sys.cols(), 1);
  for (const auto& g : sol->kernel) v = v + g.scaled(random_element(ring, rng));
  RMatrix phi0(x.ring(), b0, a0), phi1(x.ring(), b1, a1);
  for (std::size_t r = 0; r < b0; ++r) {
    for (std::size_t c = 0; c < a0; ++c) phi0(r, c) = v(r * a0 + c, 0);
  }
  for (std::size_t r = 0; r < b1; ++r) {
    for (std::size_t c = 0; c < a1; ++c) phi1(r, c) = v(b0 * a0 + r * a1 + c, 0);
  }
  return {std::move(phi0), std::move(phi1)};
}

}  // namespace nangle
