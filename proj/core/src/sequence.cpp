#include "nangle/sequence.hpp"

#include <numeric>

#include "nangle/error.hpp"

namespace nangle {

namespace {

std::string shape(const RMatrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

RMatrix sign_power(const RMatrix& m, std::size_t n) { return n % 2 == 0 ? m : -m; }

}  // namespace

// ---------------------------------------------------------------- NSequence

NSequence::NSequence(RingPtr ring, std::vector<std::size_t> ranks, std::vector<RMatrix> maps)
    : ring_(std::move(ring)), ranks_(std::move(ranks)), maps_(std::move(maps)) {
  if (ranks_.size() < 3) throw DimensionError("an n-Sigma-sequence needs n >= 3");
  if (maps_.size() != ranks_.size()) {
    throw DimensionError("expected " + std::to_string(ranks_.size()) + " maps, got " +
                         std::to_string(maps_.size()));
  }
  for (std::size_t i = 0; i < n(); ++i) {
    require_same_ring(*ring_, *maps_[i].ring());
    if (maps_[i].cols() != rank(i) || maps_[i].rows() != rank(i + 1)) {
      throw DimensionError("map " + std::to_string(i + 1) + " has shape " + shape(maps_[i]) +
                           ", expected " + std::to_string(rank(i + 1)) + "x" + std::to_string(rank(i)));
    }
  }
}

NSequence NSequence::zero(RingPtr ring, std::vector<std::size_t> ranks) {
  std::vector<RMatrix> maps;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    maps.emplace_back(ring, ranks[(i + 1) % ranks.size()], ranks[i]);
  }
  return NSequence(ring, std::move(ranks), std::move(maps));
}

std::size_t NSequence::total_rank() const { return std::accumulate(ranks_.begin(), ranks_.end(), std::size_t{0}); }

// ---------------------------------------------------------------- SeqMorphism

std::size_t SeqMorphism::first_noncommuting_square(const NSequence& source, const NSequence& target,
                                                   const std::vector<RMatrix>& phi) {
  const std::size_t n = source.n();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(target.map(i) * phi[i] == phi[(i + 1) % n] * source.map(i))) return i;
  }
  return n;
}

SeqMorphism::SeqMorphism(NSequence source, NSequence target, std::vector<RMatrix> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  require_same_ring(*source_.ring(), *target_.ring());
  if (source_.n() != target_.n()) throw DimensionError("morphism between sequences of different n");
  if (components_.size() != n()) throw DimensionError("morphism needs exactly n components");
  for (std::size_t i = 0; i < n(); ++i) {
    if (components_[i].cols() != source_.rank(i) || components_[i].rows() != target_.rank(i)) {
      throw DimensionError("component " + std::to_string(i + 1) + " has shape " + shape(components_[i]));
    }
  }
  const std::size_t bad = first_noncommuting_square(source_, target_, components_);
  if (bad != n()) throw PreconditionError("square " + std::to_string(bad + 1) + " does not commute");
}

SeqMorphism SeqMorphism::identity(const NSequence& x) {
  std::vector<RMatrix> comps;
  for (std::size_t i = 0; i < x.n(); ++i) comps.push_back(RMatrix::identity(x.ring(), x.rank(i)));
  return SeqMorphism(x, x, std::move(comps));
}

SeqMorphism SeqMorphism::zero(const NSequence& source, const NSequence& target) {
  std::vector<RMatrix> comps;
  for (std::size_t i = 0; i < source.n(); ++i) comps.emplace_back(source.ring(), target.rank(i), source.rank(i));
  return SeqMorphism(source, target, std::move(comps));
}

bool SeqMorphism::is_isomorphism() const {
  for (const auto& c : components_) {
    if (!c.is_invertible()) return false;
  }
  return true;
}

SeqMorphism SeqMorphism::operator+(const SeqMorphism& o) const {
  std::vector<RMatrix> comps;
  for (std::size_t i = 0; i < n(); ++i) comps.push_back(components_[i] + o.components_[i]);
  return SeqMorphism(source_, target_, std::move(comps));
}

SeqMorphism SeqMorphism::operator-(const SeqMorphism& o) const {
  std::vector<RMatrix> comps;
  for (std::size_t i = 0; i < n(); ++i) comps.push_back(components_[i] - o.components_[i]);
  return SeqMorphism(source_, target_, std::move(comps));
}

SeqMorphism SeqMorphism::operator-() const {
  std::vector<RMatrix> comps;
  for (const auto& c : components_) comps.push_back(-c);
  return SeqMorphism(source_, target_, std::move(comps));
}

SeqMorphism SeqMorphism::after(const SeqMorphism& o) const {
  std::vector<RMatrix> comps;
  for (std::size_t i = 0; i < n(); ++i) comps.push_back(components_[i] * o.components_[i]);
  return SeqMorphism(o.source_, target_, std::move(comps));
}

// ---------------------------------------------------------------- operations

bool is_candidate(const NSequence& x) {
  for (std::size_t i = 0; i < x.n(); ++i) {
    if (!(x.map(i + 1) * x.map(i)).is_zero()) return false;
  }
  return true;
}

bool is_exact(const NSequence& x) {
  if (!is_candidate(x)) return false;
  std::vector<NormalForm> forms;
  forms.reserve(x.n());
  for (const auto& m : x.maps()) forms.push_back(normal_form(m));
  for (std::size_t i = 0; i < x.n(); ++i) {
    const NormalForm& incoming = forms[(i + x.n() - 1) % x.n()];
    if (image_length(incoming) != kernel_length(forms[i])) return false;
  }
  return true;
}

NSequence rotate_left(const NSequence& x) {
  const std::size_t n = x.n();
  std::vector<std::size_t> ranks;
  std::vector<RMatrix> maps;
  for (std::size_t i = 1; i <= n; ++i) {
    ranks.push_back(x.rank(i));
    maps.push_back(i == n ? sign_power(x.map(0), n) : x.map(i));
  }
  return NSequence(x.ring(), std::move(ranks), std::move(maps));
}

NSequence rotate_right(const NSequence& x) {
  const std::size_t n = x.n();
  std::vector<std::size_t> ranks{x.rank(n - 1)};
  std::vector<RMatrix> maps{sign_power(x.map(n - 1), n)};
  for (std::size_t i = 0; i + 1 < n; ++i) {
    ranks.push_back(x.rank(i));
    maps.push_back(x.map(i));
  }
  return NSequence(x.ring(), std::move(ranks), std::move(maps));
}

NSequence direct_sum(const NSequence& x, const NSequence& y) {
  require_same_ring(*x.ring(), *y.ring());
  if (x.n() != y.n()) throw DimensionError("direct sum of sequences with different n");
  std::vector<std::size_t> ranks;
  std::vector<RMatrix> maps;
  for (std::size_t i = 0; i < x.n(); ++i) {
    ranks.push_back(x.rank(i) + y.rank(i));
    maps.push_back(RMatrix::block_diagonal(x.map(i), y.map(i)));
  }
  return NSequence(x.ring(), std::move(ranks), std::move(maps));
}

NSequence mapping_cone(const SeqMorphism& phi) {
  const NSequence& a = phi.source();
  const NSequence& b = phi.target();
  const std::size_t n = phi.n();
  std::vector<std::size_t> ranks;
  std::vector<RMatrix> maps;
  for (std::size_t i = 0; i < n; ++i) {
    ranks.push_back(a.rank(i + 1) + b.rank(i));
    const RMatrix& alpha = a.map(i + 1);
    const RMatrix& beta = b.map(i);
    RMatrix upper_right(a.ring(), alpha.rows(), beta.cols());
    maps.push_back(RMatrix::blocks(-alpha, upper_right, phi.component(i + 1), beta));
  }
  return NSequence(a.ring(), std::move(ranks), std::move(maps));
}

NSequence standard_angle(RingPtr ring, std::size_t n, RingElement u, std::size_t rank) {
  if (!ring->contains(u) || !ring->is_unit(u)) {
    throw PreconditionError(ring->format(u) + " is not a unit of " + ring->spec());
  }
  std::vector<RMatrix> maps;
  maps.push_back(RMatrix::scalar(ring, rank, ring->mul(u, ring->p())));
  for (std::size_t i = 1; i < n; ++i) maps.push_back(RMatrix::scalar(ring, rank, ring->p()));
  return NSequence(ring, std::vector<std::size_t>(n, rank), std::move(maps));
}

NSequence trivial(RingPtr ring, std::size_t n, TrivialSpec spec) {
  if (n < 3) throw DimensionError("an n-Sigma-sequence needs n >= 3");
  if (spec.index >= n) throw DimensionError("trivial position out of range");
  std::vector<std::size_t> ranks(n, 0);
  ranks[spec.index] = spec.rank;
  ranks[(spec.index + 1) % n] = spec.rank;
  std::vector<RMatrix> maps;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == spec.index) {
      maps.push_back(RMatrix::identity(ring, spec.rank));
    } else {
      maps.emplace_back(ring, ranks[(i + 1) % n], ranks[i]);
    }
  }
  return NSequence(ring, std::move(ranks), std::move(maps));
}

NSequence apply_iso(const NSequence& x, const std::vector<RMatrix>& psi) {
  const std::size_t n = x.n();
  if (psi.size() != n) throw DimensionError("isomorphism needs exactly n components");
  std::vector<RMatrix> inverses;
  for (std::size_t i = 0; i < n; ++i) {
    if (!psi[i].square() || psi[i].rows() != x.rank(i)) {
      throw DimensionError("isomorphism component " + std::to_string(i + 1) + " has wrong shape");
    }
    inverses.push_back(psi[i].inverse_or_throw());
  }
  std::vector<RMatrix> maps;
  for (std::size_t i = 0; i < n; ++i) maps.push_back(psi[(i + 1) % n] * x.map(i) * inverses[i]);
  return NSequence(x.ring(), x.ranks(), std::move(maps));
}

SeqMorphism iso_morphism(const NSequence& x, const std::vector<RMatrix>& psi) {
  return SeqMorphism(x, apply_iso(x, psi), psi);
}

}  // namespace nangle
