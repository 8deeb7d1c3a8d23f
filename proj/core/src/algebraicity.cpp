#include "nangle/algebraicity.hpp"

#include "nangle/error.hpp"

namespace nangle {

namespace {

RingElement d_times_one(const Ring& ring, std::uint64_t d) {
  return ring.from_integer(static_cast<std::int64_t>(d % ring.size()));
}

// The unit u with d * 1_R = u p, as a residue lift.
RingElement unit_of(const Ring& ring, std::uint64_t d) {
  const RingElement x = d_times_one(ring, d);
  if (x.residue != 0 || x.p_part == 0) {
    throw PreconditionError("d = " + std::to_string(d) + " does not satisfy 0 != d*1 in m over " + ring.spec());
  }
  return ring.lift(x.p_part);
}

}  // namespace

std::optional<std::uint64_t> find_obstruction_d(const Ring& ring) {
  // d * 1 is periodic in d with period dividing the additive order of 1.
  for (std::uint64_t d = 1; d <= ring.size(); ++d) {
    const RingElement x = d_times_one(ring, d);
    if (x.residue == 0 && x.p_part != 0) return d;
    if (x == RingElement{}) break;
  }
  return std::nullopt;
}

std::pair<RMatrix, RMatrix> null_homotopy_system(const RingPtr& ring, std::size_t n, std::uint64_t d) {
  if (n < 3) throw DimensionError("null_homotopy_d: n must be at least 3");
  const RingElement up = ring->mul(unit_of(*ring, d), ring->p());
  const std::size_t eqs = n - 2, unknowns = n - 3;
  RMatrix a(ring, eqs, unknowns);
  RMatrix b(ring, eqs, 1);
  for (std::size_t j = 0; j < eqs; ++j) {
    b(j, 0) = up;
    if (j > 0) a(j, j - 1) = ring->p();        // q_{j} p
    if (j < unknowns) a(j, j) = ring->p();     // p q_{j+1}
  }
  return {std::move(a), std::move(b)};
}

std::variant<std::vector<RingElement>, Infeasibility> null_homotopy_d_certified(const RingPtr& ring,
                                                                               std::size_t n, std::uint64_t d) {
  auto [a, b] = null_homotopy_system(ring, n, d);
  auto outcome = solve_linear_certified(a, b);
  if (auto* cert = std::get_if<Infeasibility>(&outcome)) return *cert;
  const RMatrix& x = std::get<LinearSolution>(outcome).particular;
  std::vector<RingElement> q;
  // Only residues matter since every coefficient is p.
  for (std::size_t i = 0; i < x.rows(); ++i) q.push_back(ring->lift(x(i, 0).residue));
  if (!verify_null_homotopy(*ring, n, d, q)) throw std::logic_error("null_homotopy_d: solution fails verification");
  return q;
}

std::optional<std::vector<RingElement>> null_homotopy_d(const RingPtr& ring, std::size_t n, std::uint64_t d) {
  auto outcome = null_homotopy_d_certified(ring, n, d);
  if (auto* q = std::get_if<std::vector<RingElement>>(&outcome)) return std::move(*q);
  return std::nullopt;
}

bool verify_null_homotopy(const Ring& ring, std::size_t n, std::uint64_t d, const std::vector<RingElement>& q) {
  if (n < 3 || q.size() != n - 3) return false;
  const RingElement up = ring.mul(unit_of(ring, d), ring.p());
  for (std::size_t j = 0; j + 2 < n; ++j) {
    RingElement lhs{};
    if (j > 0) lhs = ring.add(lhs, ring.mul(q[j - 1], ring.p()));
    if (j < q.size()) lhs = ring.add(lhs, ring.mul(ring.p(), q[j]));
    if (lhs != up) return false;
  }
  return true;
}

std::vector<RingElement> alternating_witness(const Ring& ring, std::size_t n, std::uint64_t d) {
  const RingElement u = unit_of(ring, d);
  std::vector<RingElement> q;
  for (std::size_t i = 0; i + 3 < n; ++i) q.push_back(i % 2 == 0 ? u : ring.zero());
  return q;
}

std::optional<std::vector<RMatrix>> find_open_chain_null_homotopy(const std::vector<RMatrix>& maps,
                                                                  const std::vector<RMatrix>& f) {
  const std::size_t objects = f.size();
  if (objects == 0 || maps.size() + 1 != objects) throw DimensionError("open chain needs one more object than maps");
  const RingPtr& ring = f[0].ring();
  const Ring& r = *ring;
  std::vector<std::size_t> dim;
  for (const auto& m : f) {
    if (!m.square()) throw DimensionError("open chain endomorphisms must be square");
    dim.push_back(m.rows());
  }
  for (std::size_t j = 0; j < maps.size(); ++j) {
    if (maps[j].cols() != dim[j] || maps[j].rows() != dim[j + 1]) throw DimensionError("open chain map shape");
  }
  // h_j : C_{j+1} -> C_j is dim[j] x dim[j+1], flattened row-major in order.
  std::vector<std::size_t> off{0};
  for (std::size_t j = 0; j < maps.size(); ++j) off.push_back(off.back() + dim[j] * dim[j + 1]);
  std::vector<std::size_t> eq_off{0};
  for (std::size_t j = 0; j < objects; ++j) eq_off.push_back(eq_off.back() + dim[j] * dim[j]);

  RMatrix a(ring, eq_off.back(), off.back());
  RMatrix b(ring, eq_off.back(), 1);
  for (std::size_t j = 0; j < objects; ++j) {
    for (std::size_t row = 0; row < dim[j]; ++row) {
      for (std::size_t col = 0; col < dim[j]; ++col) {
        const std::size_t eq = eq_off[j] + row * dim[j] + col;
        b(eq, 0) = f[j](row, col);
        if (j < maps.size()) {  // (h_j c_j)(row, col) = sum_k h_j(row, k) c_j(k, col)
          for (std::size_t k = 0; k < dim[j + 1]; ++k) {
            RingElement& cell = a(eq, off[j] + row * dim[j + 1] + k);
            cell = r.add(cell, maps[j](k, col));
          }
        }
        if (j > 0) {  // (c_{j-1} h_{j-1})(row, col) = sum_k c_{j-1}(row, k) h_{j-1}(k, col)
          for (std::size_t k = 0; k < dim[j - 1]; ++k) {
            RingElement& cell = a(eq, off[j - 1] + k * dim[j] + col);
            cell = r.add(cell, maps[j - 1](row, k));
          }
        }
      }
    }
  }
  auto sol = solve_linear(a, b);
  if (!sol) return std::nullopt;
  std::vector<RMatrix> h;
  for (std::size_t j = 0; j < maps.size(); ++j) {
    RMatrix m(ring, dim[j], dim[j + 1]);
    for (std::size_t row = 0; row < dim[j]; ++row) {
      for (std::size_t col = 0; col < dim[j + 1]; ++col) m(row, col) = sol->particular(off[j] + row * dim[j + 1] + col, 0);
    }
    h.push_back(std::move(m));
  }
  for (std::size_t j = 0; j < objects; ++j) {
    RMatrix sum(ring, dim[j], dim[j]);
    if (j < maps.size()) sum = sum + h[j] * maps[j];
    if (j > 0) sum = sum + maps[j - 1] * h[j - 1];
    if (!(sum == f[j])) throw std::logic_error("open chain null-homotopy fails verification");
  }
  return h;
}

ObstructionReport algebraicity_verdict(const RingPtr& ring, std::size_t n) {
  if (n < 3) throw DimensionError("algebraicity: n must be at least 3");
  ObstructionReport report;
  report.d = find_obstruction_d(*ring);
  if (!report.d) {
    report.reason = "no-valid-d";
    return report;
  }
  if (n % 2 == 0) {
    report.reason = "even-n";
    report.witness = alternating_witness(*ring, n, *report.d);
    if (!verify_null_homotopy(*ring, n, *report.d, *report.witness)) {
      throw std::logic_error("algebraicity: alternating witness fails verification");
    }
    return report;
  }
  if (!ring->two_p_zero()) {
    report.reason = "parity";
    return report;
  }
  auto outcome = null_homotopy_d_certified(ring, n, *report.d);
  if (auto* q = std::get_if<std::vector<RingElement>>(&outcome)) {
    // Not expected for odd n; reported rather than hidden.
    report.reason = "solvable";
    report.witness = *q;
    return report;
  }
  auto [a, b] = null_homotopy_system(ring, n, *report.d);
  report.verdict = ObstructionReport::Verdict::NotAlgebraic;
  report.certificate = std::get<Infeasibility>(outcome);
  report.system = std::move(a);
  report.rhs = std::move(b);
  return report;
}

bool verify_report(const RingPtr& ring, std::size_t n, const ObstructionReport& report) {
  if (report.d && report.d != find_obstruction_d(*ring)) return false;
  if (report.witness && (!report.d || !verify_null_homotopy(*ring, n, *report.d, *report.witness))) return false;
  if (report.verdict == ObstructionReport::Verdict::NotAlgebraic) {
    if (!report.d || !report.certificate || n % 2 == 0 || !ring->two_p_zero()) return false;
    auto [a, b] = null_homotopy_system(ring, n, *report.d);
    return verify_infeasibility(a, b, *report.certificate);
  }
  if (report.reason == "no-valid-d") return !report.d;
  return true;
}

}  // namespace nangle
