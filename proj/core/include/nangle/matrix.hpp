#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nangle/ring.hpp"

namespace nangle {

class KMatrix;

/// Dense row-major matrix over R. A t2 x t1 matrix is a map R^t1 -> R^t2.
class RMatrix {
 public:
  RMatrix(RingPtr ring, std::size_t rows, std::size_t cols);
  RMatrix(RingPtr ring, std::size_t rows, std::size_t cols, std::vector<RingElement> entries);

  static RMatrix identity(RingPtr ring, std::size_t n);
  static RMatrix scalar(RingPtr ring, std::size_t n, RingElement x);
  /// Entrywise lift of a residue matrix with zero p-parts.
  static RMatrix lift(RingPtr ring, const KMatrix& m);
  static RMatrix block_diagonal(const RMatrix& a, const RMatrix& b);
  /// [[a, b], [c, d]]; block shapes must agree.
  static RMatrix blocks(const RMatrix& a, const RMatrix& b, const RMatrix& c, const RMatrix& d);

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  std::span<const RingElement> entries() const { return entries_; }

  const RingElement& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  RingElement& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  RMatrix operator+(const RMatrix& o) const;
  RMatrix operator-(const RMatrix& o) const;
  RMatrix operator-() const;
  RMatrix operator*(const RMatrix& o) const;
  RMatrix scaled(const RingElement& x) const;
  RMatrix transpose() const;
  RMatrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
  RMatrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const;

  bool is_zero() const;
  /// Every entry lies in m, i.e. the matrix has the form p*B.
  bool is_minimal() const;
  /// Square with invertible residue matrix.
  bool is_invertible() const;
  std::optional<RMatrix> inverse() const;
  /// Throws PreconditionError when not invertible.
  RMatrix inverse_or_throw() const;
  KMatrix residue() const;
  /// Replaces every entry by its zero-p-part residue lift.
  RMatrix unit_part() const;

  std::string format() const;

  friend bool operator==(const RMatrix& a, const RMatrix& b);

 private:
  RingPtr ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<RingElement> entries_;
};

/// Dense matrix over the residue field k.
class KMatrix {
 public:
  KMatrix(RingPtr ring, std::size_t rows, std::size_t cols);
  static KMatrix identity(RingPtr ring, std::size_t n);

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::span<const KElement> entries() const { return entries_; }

  KElement operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  KElement& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  KMatrix operator*(const KMatrix& o) const;
  std::optional<KMatrix> inverse() const;
  /// The scalar s when the matrix equals s*I (square, non-empty).
  std::optional<KElement> scalar_value() const;

  friend bool operator==(const KMatrix& a, const KMatrix& b);

 private:
  RingPtr ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<KElement> entries_;
};

/// Rank over k by Gaussian elimination.
std::size_t krank(const KMatrix& m);

/// P * M * Q = D with D = diag(p I_u, I_v, 0).
struct NormalForm {
  RMatrix d;
  RMatrix p;
  RMatrix q;
  std::size_t p_block = 0;     // u
  std::size_t unit_block = 0;  // v
};

/// Row/column reduction to diag(p I_u, I_v, 0). Unit pivots are taken before
/// p-multiple pivots, each time at the lexicographically smallest (row, col).
NormalForm normal_form(const RMatrix& m);

/// Length of the image of M as an R-module: u + 2v.
std::size_t image_length(const NormalForm& nf);
/// Length of the kernel of M: 2 cols - u - 2v.
std::size_t kernel_length(const NormalForm& nf);

struct LinearSolution {
  RMatrix particular;           // column vector
  std::vector<RMatrix> kernel;  // column vectors generating {x : A x = 0}
};

/// Proof that A x = b has no solution: a row vector y with either
/// y A = 0 and y b != 0, or y A in m (entrywise) and y b not in m.
struct Infeasibility {
  RMatrix functional;
};

using SolveOutcome = std::variant<LinearSolution, Infeasibility>;

SolveOutcome solve_linear_certified(const RMatrix& a, const RMatrix& b);
std::optional<LinearSolution> solve_linear(const RMatrix& a, const RMatrix& b);
bool verify_infeasibility(const RMatrix& a, const RMatrix& b, const Infeasibility& cert);

}  // namespace nangle
