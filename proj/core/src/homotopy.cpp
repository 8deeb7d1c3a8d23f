#include "nangle/homotopy.hpp"

#include "nangle/error.hpp"

namespace nangle {

namespace {

void require_parallel(const SeqMorphism& phi, const SeqMorphism& psi) {
  if (!(phi.source() == psi.source()) || !(phi.target() == psi.target())) {
    throw PreconditionError("homotopy requires morphisms with the same source and target");
  }
}

bool theta_shapes_ok(const SeqMorphism& phi, const Homotopy& h) {
  if (h.thetas.size() != phi.n()) return false;
  for (std::size_t i = 0; i < phi.n(); ++i) {
    const RMatrix& t = h.thetas[i];
    if (t.rows() != phi.target().rank(i) || t.cols() != phi.source().rank(i + 1)) return false;
    if (!(*t.ring() == *phi.source().ring())) return false;
  }
  return true;
}

// Offsets of each theta_i inside the flattened unknown vector.
std::vector<std::size_t> theta_offsets(const SeqMorphism& phi) {
  std::vector<std::size_t> offs{0};
  for (std::size_t i = 0; i < phi.n(); ++i) {
    offs.push_back(offs.back() + phi.target().rank(i) * phi.source().rank(i + 1));
  }
  return offs;
}

Homotopy unflatten(const SeqMorphism& phi, const RMatrix& x) {
  const auto offs = theta_offsets(phi);
  Homotopy h;
  for (std::size_t i = 0; i < phi.n(); ++i) {
    const std::size_t rows = phi.target().rank(i), cols = phi.source().rank(i + 1);
    RMatrix t(x.ring(), rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) t(r, c) = x(offs[i] + r * cols + c, 0);
    }
    h.thetas.push_back(std::move(t));
  }
  return h;
}

}  // namespace

bool verify_homotopy(const SeqMorphism& phi, const SeqMorphism& psi, const Homotopy& h) {
  if (!(phi.source() == psi.source()) || !(phi.target() == psi.target())) return false;
  if (!theta_shapes_ok(phi, h)) return false;
  const std::size_t n = phi.n();
  const NSequence& x = phi.source();
  const NSequence& y = phi.target();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t prev = (i + n - 1) % n;
    const RMatrix lhs = phi.component(i) - psi.component(i);
    const RMatrix rhs = h.thetas[i] * x.map(i) + y.map(prev) * h.thetas[prev];
    if (!(lhs == rhs)) return false;
  }
  return true;
}

std::pair<RMatrix, RMatrix> homotopy_system(const SeqMorphism& phi, const SeqMorphism& psi) {
  require_parallel(phi, psi);
  const Ring& ring = *phi.source().ring();
  const std::size_t n = phi.n();
  const NSequence& x = phi.source();
  const NSequence& y = phi.target();
  const auto offs = theta_offsets(phi);

  std::vector<std::size_t> eq_offs{0};
  for (std::size_t i = 0; i < n; ++i) eq_offs.push_back(eq_offs.back() + y.rank(i) * x.rank(i));

  RMatrix a(x.ring(), eq_offs.back(), offs.back());
  RMatrix b(x.ring(), eq_offs.back(), 1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t prev = (i + n - 1) % n;
    const RMatrix diff = phi.component(i) - psi.component(i);
    const RMatrix& alpha = x.map(i);     // A_i -> A_{i+1}
    const RMatrix& beta = y.map(prev);   // B_{i-1} -> B_i
    const std::size_t cols_i = x.rank(i + 1);   // columns of theta_i
    const std::size_t cols_prev = x.rank(i);    // columns of theta_{i-1}
    for (std::size_t r = 0; r < y.rank(i); ++r) {
      for (std::size_t c = 0; c < x.rank(i); ++c) {
        const std::size_t eq = eq_offs[i] + r * x.rank(i) + c;
        b(eq, 0) = diff(r, c);
        // (theta_i alpha_i)(r, c) = sum_k theta_i(r, k) alpha_i(k, c)
        for (std::size_t k = 0; k < cols_i; ++k) {
          RingElement& cell = a(eq, offs[i] + r * cols_i + k);
          cell = ring.add(cell, alpha(k, c));
        }
        // (beta_{i-1} theta_{i-1})(r, c) = sum_k beta(r, k) theta_{i-1}(k, c)
        for (std::size_t k = 0; k < y.rank(prev); ++k) {
          RingElement& cell = a(eq, offs[prev] + k * cols_prev + c);
          cell = ring.add(cell, beta(r, k));
        }
      }
    }
  }
  return {std::move(a), std::move(b)};
}

std::variant<Homotopy, Infeasibility> find_homotopy_certified(const SeqMorphism& phi,
                                                              const SeqMorphism& psi) {
  auto [a, b] = homotopy_system(phi, psi);
  auto outcome = solve_linear_certified(a, b);
  if (auto* cert = std::get_if<Infeasibility>(&outcome)) return *cert;
  Homotopy h = unflatten(phi, std::get<LinearSolution>(outcome).particular);
  if (!verify_homotopy(phi, psi, h)) throw std::logic_error("find_homotopy: solution fails verification");
  return h;
}

std::optional<Homotopy> find_homotopy(const SeqMorphism& phi, const SeqMorphism& psi) {
  auto outcome = find_homotopy_certified(phi, psi);
  if (auto* h = std::get_if<Homotopy>(&outcome)) return std::move(*h);
  return std::nullopt;
}

std::optional<Homotopy> is_contractible(const NSequence& x) {
  return find_homotopy(SeqMorphism::identity(x), SeqMorphism::zero(x, x));
}

ConeIsomorphism cone_iso_from_homotopy(const SeqMorphism& phi, const SeqMorphism& psi, const Homotopy& h) {
  if (!verify_homotopy(phi, psi, h)) throw PreconditionError("not a homotopy between the given morphisms");
  const NSequence cone_phi = mapping_cone(phi);
  const NSequence cone_psi = mapping_cone(psi);
  const RingPtr& ring = phi.source().ring();
  std::vector<RMatrix> fwd, bwd;
  for (std::size_t i = 0; i < phi.n(); ++i) {
    const RMatrix ia = RMatrix::identity(ring, phi.source().rank(i + 1));
    const RMatrix ib = RMatrix::identity(ring, phi.target().rank(i));
    const RMatrix zero(ring, ia.rows(), ib.cols());
    fwd.push_back(RMatrix::blocks(ia, zero, h.thetas[i], ib));
    bwd.push_back(RMatrix::blocks(ia, zero, -h.thetas[i], ib));
  }
  return {SeqMorphism(cone_phi, cone_psi, std::move(fwd)), SeqMorphism(cone_psi, cone_phi, std::move(bwd))};
}

Homotopy contraction_of_cone_of_iso(const SeqMorphism& phi) {
  const RingPtr& ring = phi.source().ring();
  const std::size_t n = phi.n();
  std::vector<RMatrix> inverses;
  for (std::size_t i = 0; i < n; ++i) {
    auto inv = phi.component(i).inverse();
    if (!inv) throw PreconditionError("component " + std::to_string(i + 1) + " is not invertible");
    inverses.push_back(*std::move(inv));
  }
  // M_i : C_{i+1} = A_{i+2} + B_{i+1} -> C_i = A_{i+1} + B_i
  Homotopy h;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a1 = phi.source().rank(i + 1), b0 = phi.target().rank(i);
    const std::size_t a2 = phi.source().rank(i + 2), b1 = phi.target().rank(i + 1);
    h.thetas.push_back(RMatrix::blocks(RMatrix(ring, a1, a2), inverses[(i + 1) % n], RMatrix(ring, b0, a2),
                                       RMatrix(ring, b0, b1)));
  }
  const NSequence cone = mapping_cone(phi);
  if (!verify_homotopy(SeqMorphism::identity(cone), SeqMorphism::zero(cone, cone), h)) {
    throw std::logic_error("contraction_of_cone_of_iso: contraction fails verification");
  }
  return h;
}

}  // namespace nangle
