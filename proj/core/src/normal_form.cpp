#include <stdexcept>

#include "nangle/error.hpp"
#include "nangle/matrix.hpp"

namespace nangle {

namespace {

// A together with the accumulated row transform P and column transform Q,
// maintaining P * M * Q = A throughout.
class Reducer {
 public:
  explicit Reducer(const RMatrix& m)
      : ring_(*m.ring()),
        a_(m),
        p_(RMatrix::identity(m.ring(), m.rows())),
        q_(RMatrix::identity(m.ring(), m.cols())) {}

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a_.cols(); ++c) std::swap(a_(i, c), a_(j, c));
    for (std::size_t c = 0; c < p_.cols(); ++c) std::swap(p_(i, c), p_(j, c));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a_.rows(); ++r) std::swap(a_(r, i), a_(r, j));
    for (std::size_t r = 0; r < q_.rows(); ++r) std::swap(q_(r, i), q_(r, j));
  }

  void scale_row(std::size_t i, const RingElement& s) {
    for (std::size_t c = 0; c < a_.cols(); ++c) a_(i, c) = ring_.mul(s, a_(i, c));
    for (std::size_t c = 0; c < p_.cols(); ++c) p_(i, c) = ring_.mul(s, p_(i, c));
  }

  // row dst += s * row src
  void add_row(std::size_t dst, std::size_t src, const RingElement& s) {
    for (std::size_t c = 0; c < a_.cols(); ++c) a_(dst, c) = ring_.add(a_(dst, c), ring_.mul(s, a_(src, c)));
    for (std::size_t c = 0; c < p_.cols(); ++c) p_(dst, c) = ring_.add(p_(dst, c), ring_.mul(s, p_(src, c)));
  }

  // col dst += s * col src
  void add_col(std::size_t dst, std::size_t src, const RingElement& s) {
    for (std::size_t r = 0; r < a_.rows(); ++r) a_(r, dst) = ring_.add(a_(r, dst), ring_.mul(a_(r, src), s));
    for (std::size_t r = 0; r < q_.rows(); ++r) q_(r, dst) = ring_.add(q_(r, dst), ring_.mul(q_(r, src), s));
  }

  // Smallest (row, col) at or beyond (k, k) whose entry satisfies pred.
  template <class Pred>
  bool find_pivot(std::size_t k, Pred pred, std::size_t& row, std::size_t& col) const {
    for (std::size_t r = k; r < a_.rows(); ++r) {
      for (std::size_t c = k; c < a_.cols(); ++c) {
        if (pred(a_(r, c))) {
          row = r;
          col = c;
          return true;
        }
      }
    }
    return false;
  }

  void clear_around(std::size_t k) {
    const RingElement pivot = a_(k, k);
    const bool unit = ring_.is_unit(pivot);
    for (std::size_t r = k + 1; r < a_.rows(); ++r) {
      const RingElement x = a_(r, k);
      if (x == RingElement{}) continue;
      // Unit pivot is 1; a p pivot only sees entries z*p, cleared by z.
      const RingElement f = unit ? x : ring_.lift(x.p_part);
      add_row(r, k, ring_.neg(f));
    }
    for (std::size_t c = k + 1; c < a_.cols(); ++c) {
      const RingElement x = a_(k, c);
      if (x == RingElement{}) continue;
      const RingElement f = unit ? x : ring_.lift(x.p_part);
      add_col(c, k, ring_.neg(f));
    }
  }

  const Ring& ring_;
  RMatrix a_;
  RMatrix p_;
  RMatrix q_;
};

}  // namespace

NormalForm normal_form(const RMatrix& m) {
  const Ring& ring = *m.ring();
  Reducer red(m);
  std::size_t k = 0;
  std::size_t row = 0, col = 0;

  while (red.find_pivot(k, [&](const RingElement& x) { return ring.is_unit(x); }, row, col)) {
    red.swap_rows(k, row);
    red.swap_cols(k, col);
    red.scale_row(k, ring.inverse(red.a_(k, k)));
    red.clear_around(k);
    ++k;
  }
  const std::size_t v = k;

  // Every remaining entry now lies in m.
  while (red.find_pivot(k, [](const RingElement& x) { return x != RingElement{}; }, row, col)) {
    red.swap_rows(k, row);
    red.swap_cols(k, col);
    red.scale_row(k, ring.inverse(ring.lift(red.a_(k, k).p_part)));
    red.clear_around(k);
    ++k;
  }
  const std::size_t u = k - v;

  // Current shape diag(I_v, p I_u, 0); move the p block to the front.
  std::vector<std::size_t> row_order(m.rows()), col_order(m.cols());
  for (std::size_t i = 0; i < u; ++i) row_order[i] = col_order[i] = v + i;
  for (std::size_t i = 0; i < v; ++i) row_order[u + i] = col_order[u + i] = i;
  for (std::size_t i = u + v; i < m.rows(); ++i) row_order[i] = i;
  for (std::size_t i = u + v; i < m.cols(); ++i) col_order[i] = i;

  std::vector<std::size_t> all_p(m.rows()), all_q(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) all_p[i] = i;
  for (std::size_t i = 0; i < m.cols(); ++i) all_q[i] = i;

  NormalForm nf{RMatrix(m.ring(), m.rows(), m.cols()), red.p_.submatrix(row_order, all_p),
                red.q_.submatrix(all_q, col_order), u, v};
  for (std::size_t i = 0; i < u; ++i) nf.d(i, i) = ring.p();
  for (std::size_t i = u; i < u + v; ++i) nf.d(i, i) = ring.one();

  if (!(nf.p * m * nf.q == nf.d) || !nf.p.is_invertible() || !nf.q.is_invertible()) {
    throw std::logic_error("normal_form: P*M*Q != D for " + m.format());
  }
  return nf;
}

std::size_t image_length(const NormalForm& nf) { return nf.p_block + 2 * nf.unit_block; }

std::size_t kernel_length(const NormalForm& nf) {
  return 2 * nf.d.cols() - nf.p_block - 2 * nf.unit_block;
}

SolveOutcome solve_linear_certified(const RMatrix& a, const RMatrix& b) {
  require_same_ring(*a.ring(), *b.ring());
  if (b.cols() != 1 || b.rows() != a.rows()) {
    throw DimensionError("solve_linear: right-hand side must be a " + std::to_string(a.rows()) +
                         "x1 column");
  }
  const Ring& ring = *a.ring();
  const NormalForm nf = normal_form(a);
  const RMatrix c = nf.p * b;
  const std::size_t u = nf.p_block, v = nf.unit_block;

  auto infeasible = [&](std::size_t i) {
    return Infeasibility{nf.p.block(i, 0, 1, nf.p.cols())};
  };

  RMatrix y(a.ring(), a.cols(), 1);
  for (std::size_t i = 0; i < u; ++i) {
    if (!ring.in_max_ideal(c(i, 0))) return infeasible(i);
    y(i, 0) = ring.lift(c(i, 0).p_part);
  }
  for (std::size_t i = u; i < u + v; ++i) y(i, 0) = c(i, 0);
  for (std::size_t i = u + v; i < a.rows(); ++i) {
    if (c(i, 0) != RingElement{}) return infeasible(i);
  }

  LinearSolution sol{nf.q * y, {}};
  for (std::size_t i = 0; i < u; ++i) {
    RMatrix g(a.ring(), a.cols(), 1);
    g(i, 0) = ring.p();
    sol.kernel.push_back(nf.q * g);
  }
  for (std::size_t i = u + v; i < a.cols(); ++i) {
    RMatrix g(a.ring(), a.cols(), 1);
    g(i, 0) = ring.one();
    sol.kernel.push_back(nf.q * g);
  }
  return sol;
}

std::optional<LinearSolution> solve_linear(const RMatrix& a, const RMatrix& b) {
  auto outcome = solve_linear_certified(a, b);
  if (auto* sol = std::get_if<LinearSolution>(&outcome)) return std::move(*sol);
  return std::nullopt;
}

bool verify_infeasibility(const RMatrix& a, const RMatrix& b, const Infeasibility& cert) {
  const RMatrix& y = cert.functional;
  if (y.rows() != 1 || y.cols() != a.rows() || b.rows() != a.rows() || b.cols() != 1) return false;
  const RMatrix ya = y * a;
  const RingElement yb = (y * b)(0, 0);
  if (ya.is_zero() && yb != RingElement{}) return true;
  return ya.is_minimal() && a.ring()->is_unit(yb);
}

}  // namespace nangle
