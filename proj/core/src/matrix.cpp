#include "nangle/matrix.hpp"

#include <sstream>

#include "nangle/error.hpp"

namespace nangle {

// ---------------------------------------------------------------- RMatrix

RMatrix::RMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(rows * cols) {}

RMatrix::RMatrix(RingPtr ring, std::size_t rows, std::size_t cols, std::vector<RingElement> entries)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw DimensionError("matrix entry count " + std::to_string(entries_.size()) + " != " +
                         std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  for (const auto& x : entries_) {
    if (!ring_->contains(x)) throw RingMismatch("matrix entry outside " + ring_->spec());
  }
}

RMatrix RMatrix::identity(RingPtr ring, std::size_t n) { return scalar(ring, n, ring->one()); }

RMatrix RMatrix::scalar(RingPtr ring, std::size_t n, RingElement x) {
  RMatrix m(std::move(ring), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = x;
  return m;
}

RMatrix RMatrix::lift(RingPtr ring, const KMatrix& k) {
  RMatrix m(std::move(ring), k.rows(), k.cols());
  for (std::size_t r = 0; r < k.rows(); ++r) {
    for (std::size_t c = 0; c < k.cols(); ++c) m(r, c) = {k(r, c), 0};
  }
  return m;
}

RMatrix RMatrix::block_diagonal(const RMatrix& a, const RMatrix& b) {
  require_same_ring(*a.ring_, *b.ring_);
  RMatrix m(a.ring_, a.rows_ + b.rows_, a.cols_ + b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t c = 0; c < a.cols_; ++c) m(r, c) = a(r, c);
  }
  for (std::size_t r = 0; r < b.rows_; ++r) {
    for (std::size_t c = 0; c < b.cols_; ++c) m(a.rows_ + r, a.cols_ + c) = b(r, c);
  }
  return m;
}

RMatrix RMatrix::blocks(const RMatrix& a, const RMatrix& b, const RMatrix& c, const RMatrix& d) {
  if (a.rows_ != b.rows_ || c.rows_ != d.rows_ || a.cols_ != c.cols_ || b.cols_ != d.cols_) {
    throw DimensionError("block matrix shapes do not agree");
  }
  RMatrix m(a.ring_, a.rows_ + c.rows_, a.cols_ + b.cols_);
  auto place = [&m](const RMatrix& src, std::size_t r0, std::size_t c0) {
    require_same_ring(*m.ring_, *src.ring_);
    for (std::size_t r = 0; r < src.rows_; ++r) {
      for (std::size_t col = 0; col < src.cols_; ++col) m(r0 + r, c0 + col) = src(r, col);
    }
  };
  place(a, 0, 0);
  place(b, 0, a.cols_);
  place(c, a.rows_, 0);
  place(d, a.rows_, a.cols_);
  return m;
}

RMatrix RMatrix::operator+(const RMatrix& o) const {
  require_same_ring(*ring_, *o.ring_);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix sum shape mismatch");
  RMatrix m(ring_, rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i) m.entries_[i] = ring_->add(entries_[i], o.entries_[i]);
  return m;
}

RMatrix RMatrix::operator-(const RMatrix& o) const {
  require_same_ring(*ring_, *o.ring_);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix difference shape mismatch");
  RMatrix m(ring_, rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i) m.entries_[i] = ring_->sub(entries_[i], o.entries_[i]);
  return m;
}

RMatrix RMatrix::operator-() const {
  RMatrix m(ring_, rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i) m.entries_[i] = ring_->neg(entries_[i]);
  return m;
}

RMatrix RMatrix::operator*(const RMatrix& o) const {
  require_same_ring(*ring_, *o.ring_);
  if (cols_ != o.rows_) {
    throw DimensionError("cannot multiply " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                         " by " + std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
  }
  RMatrix m(ring_, rows_, o.cols_);
  const Ring& ring = *ring_;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const RingElement x = (*this)(r, k);
      if (x == RingElement{}) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) {
        const RingElement y = o(k, c);
        if (y == RingElement{}) continue;
        m(r, c) = ring.add(m(r, c), ring.mul(x, y));
      }
    }
  }
  return m;
}

RMatrix RMatrix::scaled(const RingElement& x) const {
  RMatrix m(ring_, rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i) m.entries_[i] = ring_->mul(x, entries_[i]);
  return m;
}

RMatrix RMatrix::transpose() const {
  RMatrix m(ring_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  }
  return m;
}

RMatrix RMatrix::submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
  RMatrix m(ring_, rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) m(r, c) = (*this)(rows[r], cols[c]);
  }
  return m;
}

RMatrix RMatrix::block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const {
  if (r0 + rows > rows_ || c0 + cols > cols_) throw DimensionError("block out of range");
  RMatrix m(ring_, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = (*this)(r0 + r, c0 + c);
  }
  return m;
}

bool RMatrix::is_zero() const {
  for (const auto& x : entries_) {
    if (x != RingElement{}) return false;
  }
  return true;
}

bool RMatrix::is_minimal() const {
  for (const auto& x : entries_) {
    if (x.residue != 0) return false;
  }
  return true;
}

bool RMatrix::is_invertible() const { return square() && krank(residue()) == rows_; }

std::optional<RMatrix> RMatrix::inverse() const {
  if (!square()) return std::nullopt;
  const Ring& ring = *ring_;
  const std::size_t n = rows_;
  RMatrix a = *this;
  RMatrix inv = identity(ring_, n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && !ring.is_unit(a(pivot, col))) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(pivot, c), a(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    }
    const RingElement s = ring.inverse(a(col, col));
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) = ring.mul(s, a(col, c));
      inv(col, c) = ring.mul(s, inv(col, c));
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col) == RingElement{}) continue;
      const RingElement f = a(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) = ring.sub(a(r, c), ring.mul(f, a(col, c)));
        inv(r, c) = ring.sub(inv(r, c), ring.mul(f, inv(col, c)));
      }
    }
  }
  return inv;
}

RMatrix RMatrix::inverse_or_throw() const {
  auto inv = inverse();
  if (!inv) throw PreconditionError("matrix is not invertible:\n" + format());
  return *std::move(inv);
}

KMatrix RMatrix::residue() const {
  KMatrix k(ring_, rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) k(r, c) = (*this)(r, c).residue;
  }
  return k;
}

RMatrix RMatrix::unit_part() const {
  RMatrix m(ring_, rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i) m.entries_[i] = {entries_[i].residue, 0};
  return m;
}

std::string RMatrix::format() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << ring_->format((*this)(r, c));
    os << "]";
  }
  os << "]";
  if (rows_ == 0 || cols_ == 0) os << " (" << rows_ << "x" << cols_ << ")";
  return os.str();
}

bool operator==(const RMatrix& a, const RMatrix& b) {
  return *a.ring_ == *b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

// ---------------------------------------------------------------- KMatrix

KMatrix::KMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

KMatrix KMatrix::identity(RingPtr ring, std::size_t n) {
  KMatrix m(std::move(ring), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

KMatrix KMatrix::operator*(const KMatrix& o) const {
  if (cols_ != o.rows_) throw DimensionError("residue matrix product shape mismatch");
  const ResidueField& k = ring_->field();
  KMatrix m(ring_, rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t i = 0; i < cols_; ++i) {
      const KElement x = (*this)(r, i);
      if (x == 0) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) m(r, c) = k.add(m(r, c), k.mul(x, o(i, c)));
    }
  }
  return m;
}

std::optional<KMatrix> KMatrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  const ResidueField& k = ring_->field();
  const std::size_t n = rows_;
  KMatrix a = *this;
  KMatrix inv = identity(ring_, n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    for (std::size_t c = 0; c < n; ++c) {
      std::swap(a(pivot, c), a(col, c));
      std::swap(inv(pivot, c), inv(col, c));
    }
    const KElement s = k.inv(a(col, col));
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) = k.mul(s, a(col, c));
      inv(col, c) = k.mul(s, inv(col, c));
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      const KElement f = a(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) = k.sub(a(r, c), k.mul(f, a(col, c)));
        inv(r, c) = k.sub(inv(r, c), k.mul(f, inv(col, c)));
      }
    }
  }
  return inv;
}

std::optional<KElement> KMatrix::scalar_value() const {
  if (rows_ != cols_ || rows_ == 0) return std::nullopt;
  const KElement s = (*this)(0, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if ((*this)(r, c) != (r == c ? s : 0)) return std::nullopt;
    }
  }
  return s;
}

bool operator==(const KMatrix& a, const KMatrix& b) {
  return *a.ring_ == *b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

std::size_t krank(const KMatrix& m) {
  const ResidueField& k = m.ring()->field();
  KMatrix a = m;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(pivot, c), a(rank, c));
    const KElement s = k.inv(a(rank, col));
    for (std::size_t r = rank + 1; r < a.rows(); ++r) {
      if (a(r, col) == 0) continue;
      const KElement f = k.mul(a(r, col), s);
      for (std::size_t c = col; c < a.cols(); ++c) a(r, c) = k.sub(a(r, c), k.mul(f, a(rank, c)));
    }
    ++rank;
  }
  return rank;
}

}  // namespace nangle
