#include "oracles.hpp"

#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace oracle {

// ---------------------------------------------------------------- Field

Field::Field(std::uint32_t order) : q_(order), r_(0), e_(0) {
  for (std::uint32_t d = 2; d <= order; ++d) {
    if (order % d == 0) {
      r_ = d;
      break;
    }
  }
  for (std::uint32_t t = order; t > 1; t /= r_) ++e_;
  if (e_ == 1) {
    modulus_ = {0, 1};
    return;
  }
  // Mark every monic of degree e that factors as (deg a) * (deg e - a).
  auto monic = [&](std::uint32_t index, unsigned deg) {
    std::vector<std::uint32_t> f(deg + 1, 0);
    for (unsigned i = 0; i < deg; ++i) {
      f[i] = index % r_;
      index /= r_;
    }
    f[deg] = 1;
    return f;
  };
  auto count = [&](unsigned deg) {
    std::uint32_t c = 1;
    for (unsigned i = 0; i < deg; ++i) c *= r_;
    return c;
  };
  std::vector<bool> reducible(count(e_), false);
  for (unsigned a = 1; a < e_; ++a) {
    for (std::uint32_t i = 0; i < count(a); ++i) {
      for (std::uint32_t j = 0; j < count(e_ - a); ++j) {
        const auto f = monic(i, a), g = monic(j, e_ - a);
        std::vector<std::uint32_t> h(e_ + 1, 0);
        for (std::size_t s = 0; s < f.size(); ++s) {
          for (std::size_t t = 0; t < g.size(); ++t) h[s + t] = (h[s + t] + f[s] * g[t]) % r_;
        }
        std::uint32_t index = 0;
        for (unsigned k = e_; k-- > 0;) index = index * r_ + h[k];
        reducible[index] = true;
      }
    }
  }
  for (std::uint32_t i = 0; i < reducible.size(); ++i) {
    if (!reducible[i]) {
      modulus_ = monic(i, e_);
      return;
    }
  }
  throw std::logic_error("oracle field: no irreducible");
}

std::vector<std::uint32_t> Field::digits(Elem x) const {
  std::vector<std::uint32_t> d(e_);
  for (unsigned i = 0; i < e_; ++i) {
    d[i] = x % r_;
    x /= r_;
  }
  return d;
}

Elem Field::from_digits(const std::vector<std::uint32_t>& d) const {
  Elem x = 0;
  for (unsigned i = e_; i-- > 0;) x = x * r_ + d[i];
  return x;
}

Elem Field::add(Elem x, Elem y) const {
  auto a = digits(x), b = digits(y);
  for (unsigned i = 0; i < e_; ++i) a[i] = (a[i] + b[i]) % r_;
  return from_digits(a);
}

Elem Field::neg(Elem x) const {
  auto a = digits(x);
  for (auto& c : a) c = (r_ - c) % r_;
  return from_digits(a);
}

Elem Field::mul(Elem x, Elem y) const {
  const auto a = digits(x), b = digits(y);
  std::vector<std::uint32_t> h(2 * e_, 0);
  for (unsigned i = 0; i < e_; ++i) {
    for (unsigned j = 0; j < e_; ++j) h[i + j] = (h[i + j] + a[i] * b[j]) % r_;
  }
  // Reduce: t^k = -(lower part of the modulus) t^(k-e).
  for (std::size_t k = h.size(); k-- > e_;) {
    const std::uint32_t c = h[k];
    if (c == 0) continue;
    h[k] = 0;
    for (unsigned i = 0; i < e_; ++i) h[k - e_ + i] = (h[k - e_ + i] + (r_ - c) * modulus_[i]) % r_;
  }
  h.resize(e_);
  return from_digits(h);
}

// ---------------------------------------------------------------- Ring

Ring::Ring(bool dual, std::uint32_t q) : dual_(dual), q_(q) {
  if (dual) field_.emplace(q);
}

Ring Ring::int_mod(std::uint32_t q) { return Ring(false, q); }
Ring Ring::dual(std::uint32_t q) { return Ring(true, q); }
Ring Ring::like(const nangle::Ring& ring) {
  return Ring(ring.family() == nangle::RingFamily::DualNumbers, ring.q());
}

Elem Ring::add(Elem x, Elem y) const {
  if (!dual_) return (x + y) % size();
  return field_->add(x % q_, y % q_) + q_ * field_->add(x / q_, y / q_);
}

Elem Ring::neg(Elem x) const {
  if (!dual_) return (size() - x) % size();
  return field_->neg(x % q_) + q_ * field_->neg(x / q_);
}

Elem Ring::mul(Elem x, Elem y) const {
  if (!dual_) return static_cast<Elem>(std::uint64_t{x} * y % size());
  const Elem a = x % q_, b = x / q_, c = y % q_, d = y / q_;
  return field_->mul(a, c) + q_ * field_->add(field_->mul(a, d), field_->mul(b, c));
}

Elem Ring::from_int(std::int64_t d) const {
  Elem x = 0;
  const Elem one = 1;
  for (std::int64_t i = 0; i < d; ++i) x = add(x, one);
  return x;
}

// ---------------------------------------------------------------- matrices

Mat from_lib(const nangle::RMatrix& m) {
  Mat out(m.rows(), std::vector<Elem>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = Ring::from_lib(m(r, c), m.ring()->q());
  }
  return out;
}

nangle::RMatrix to_lib(const nangle::RingPtr& ring, const Mat& m) {
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  nangle::RMatrix out(ring, m.size(), cols);
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = {m[r][c] % ring->q(), m[r][c] / ring->q()};
  }
  return out;
}

Mat mul(const Ring& ring, const Mat& a, const Mat& b, std::size_t inner) {
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  Mat out(a.size(), std::vector<Elem>(cols, 0));
  // b may have zero rows while cols is still meaningful through `inner`.
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      Elem s = 0;
      for (std::size_t k = 0; k < inner; ++k) s = ring.add(s, ring.mul(a[r][k], b[k][c]));
      out[r][c] = s;
    }
  }
  return out;
}

std::vector<Elem> apply(const Ring& ring, const Mat& m, const std::vector<Elem>& v) {
  std::vector<Elem> out(m.size(), 0);
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < v.size(); ++c) out[r] = ring.add(out[r], ring.mul(m[r][c], v[c]));
  }
  return out;
}

std::vector<std::vector<Elem>> all_vectors(const Ring& ring, std::size_t n) {
  std::vector<std::vector<Elem>> out{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<Elem>> next;
    for (const auto& v : out) {
      for (Elem x = 0; x < ring.size(); ++x) {
        auto w = v;
        w.push_back(x);
        next.push_back(std::move(w));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::size_t image_size(const Ring& ring, const Mat& m, std::size_t cols) {
  std::set<std::vector<Elem>> image;
  for (const auto& v : all_vectors(ring, cols)) image.insert(apply(ring, m, v));
  return image.size();
}

std::size_t kernel_size(const Ring& ring, const Mat& m, std::size_t cols) {
  std::size_t count = 0;
  const std::vector<Elem> zero(m.size(), 0);
  for (const auto& v : all_vectors(ring, cols)) count += apply(ring, m, v) == zero;
  return count;
}

std::size_t length_of(const Ring& ring, std::size_t size) {
  std::size_t l = 0;
  while (size > 1) {
    if (size % ring.q() != 0) throw std::logic_error("module size is not a power of q");
    size /= ring.q();
    ++l;
  }
  return l;
}

std::vector<std::vector<Elem>> solutions(const Ring& ring, const Mat& a, std::size_t cols, const std::vector<Elem>& b) {
  std::vector<std::vector<Elem>> out;
  for (const auto& v : all_vectors(ring, cols)) {
    if (apply(ring, a, v) == b) out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------- sequences

Seq from_lib(const nangle::NSequence& x) {
  Seq s{x.ranks(), {}};
  for (const auto& m : x.maps()) s.maps.push_back(from_lib(m));
  return s;
}

namespace {

std::size_t n_of(const Seq& x) { return x.ranks.size(); }

Mat product(const Ring& ring, const Seq& x, std::size_t i) {
  // map(i+1) * map(i) : A_i -> A_{i+2}
  const std::size_t n = n_of(x);
  const Mat& a = x.maps[(i + 1) % n];
  const Mat& b = x.maps[i];
  return mul(ring, a, b, x.ranks[(i + 1) % n]);
}

// b's column count is lost when b has no rows; carry it explicitly.
Mat mul_shaped(const Ring& ring, const Mat& a, const Mat& b, std::size_t inner, std::size_t cols) {
  Mat out(a.size(), std::vector<Elem>(cols, 0));
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      Elem s = 0;
      for (std::size_t k = 0; k < inner; ++k) s = ring.add(s, ring.mul(a[r][k], b[k][c]));
      out[r][c] = s;
    }
  }
  return out;
}

bool is_zero(const Mat& m) {
  for (const auto& row : m) {
    for (Elem x : row) {
      if (x != 0) return false;
    }
  }
  return true;
}

}  // namespace

bool candidate(const Ring& ring, const Seq& x) {
  for (std::size_t i = 0; i < n_of(x); ++i) {
    if (!is_zero(product(ring, x, i))) return false;
  }
  return true;
}

bool exact(const Ring& ring, const Seq& x) {
  const std::size_t n = n_of(x);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t prev = (i + n - 1) % n;
    std::set<std::vector<Elem>> image, kernel;
    for (const auto& v : all_vectors(ring, x.ranks[prev])) image.insert(apply(ring, x.maps[prev], v));
    const std::vector<Elem> zero(x.ranks[(i + 1) % n], 0);
    for (const auto& v : all_vectors(ring, x.ranks[i])) {
      if (apply(ring, x.maps[i], v) == zero) kernel.insert(v);
    }
    if (image != kernel) return false;
  }
  return true;
}

const std::vector<Mat>& general_linear(const Ring& ring, std::size_t t) {
  // Invertibility only depends on residues, which both families encode alike.
  static thread_local std::map<std::pair<Elem, std::size_t>, std::vector<Mat>> cache;
  if (auto it = cache.find({ring.q(), t}); it != cache.end()) return it->second;
  if (t > 2) throw std::logic_error("general_linear: t <= 2 only");
  std::vector<Mat> mats;
  if (t == 0) {
    mats.push_back({});
  } else if (t == 1) {
    for (Elem a = 0; a < ring.size(); ++a) {
      if (ring.is_unit(a)) mats.push_back({{a}});
    }
  } else {
    for (Elem a = 0; a < ring.size(); ++a) {
      for (Elem b = 0; b < ring.size(); ++b) {
        for (Elem c = 0; c < ring.size(); ++c) {
          for (Elem d = 0; d < ring.size(); ++d) {
            if (ring.is_unit(ring.sub(ring.mul(a, d), ring.mul(b, c)))) mats.push_back({{a, b}, {c, d}});
          }
        }
      }
    }
  }
  return cache[{ring.q(), t}] = std::move(mats);
}

bool isomorphic(const Ring& ring, const Seq& x, const Seq& y) {
  const std::size_t n = n_of(x);
  if (x.ranks != y.ranks) return false;
  // Square i reads psi_{i+1} alpha_i == beta_i psi_i. Every invertible
  // psi_{i+1} is filed under its value of psi_{i+1} alpha_i, so the search
  // visits exactly the matrices satisfying each square.
  std::vector<std::map<Mat, std::vector<const Mat*>>> by_value(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    for (const Mat& g : general_linear(ring, x.ranks[j])) {
      by_value[i][mul_shaped(ring, g, x.maps[i], x.ranks[j], x.ranks[i])].push_back(&g);
    }
  }
  std::vector<const Mat*> psi(n, nullptr);
  std::function<bool(std::size_t)> search = [&](std::size_t i) {
    // psi_0 .. psi_i are fixed; squares 0 .. i-1 hold.
    const Mat rhs = mul_shaped(ring, y.maps[i], *psi[i], y.ranks[i], x.ranks[i]);
    const auto it = by_value[i].find(rhs);
    if (it == by_value[i].end()) return false;
    if (i + 1 == n) {
      for (const Mat* g : it->second) {
        if (*g == *psi[0]) return true;
      }
      return false;
    }
    for (const Mat* g : it->second) {
      psi[i + 1] = g;
      if (search(i + 1)) return true;
    }
    return false;
  };
  for (const Mat& g : general_linear(ring, x.ranks[0])) {
    psi[0] = &g;
    if (search(0)) return true;
  }
  return false;
}

Seq standard_plus_trivials(const Ring& ring, std::size_t n, Elem u, std::size_t r, const std::vector<std::size_t>& c) {
  // Coordinate labels per object: (kind, block, copy); kind 0 = F, 1 = trivial source side, 2 = trivial target side.
  struct Label {
    int kind;
    std::size_t block, copy;
  };
  std::vector<std::vector<Label>> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < r; ++k) labels[i].push_back({0, 0, k});
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < c[j]; ++k) {
        if (j == i) labels[i].push_back({1, j, k});
        else if ((j + 1) % n == i) labels[i].push_back({2, j, k});
      }
    }
  }
  Seq s;
  for (std::size_t i = 0; i < n; ++i) s.ranks.push_back(labels[i].size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& src = labels[i];
    const auto& dst = labels[(i + 1) % n];
    Mat m(dst.size(), std::vector<Elem>(src.size(), 0));
    for (std::size_t a = 0; a < dst.size(); ++a) {
      for (std::size_t b = 0; b < src.size(); ++b) {
        if (dst[a].kind == 0 && src[b].kind == 0 && dst[a].copy == src[b].copy) {
          m[a][b] = i == 0 ? ring.mul(u, ring.p()) : ring.p();
        }
        if (src[b].kind == 1 && dst[a].kind == 2 && src[b].block == i && dst[a].block == i &&
            src[b].copy == dst[a].copy) {
          m[a][b] = 1;
        }
      }
    }
    s.maps.push_back(std::move(m));
  }
  return s;
}

bool member(const Ring& ring, const Seq& x, Elem u) {
  const std::size_t n = n_of(x);
  const auto& t = x.ranks;
  std::size_t min_rank = t[0];
  for (auto v : t) min_rank = std::min(min_rank, v);
  for (std::size_t r = 0; r <= min_rank; ++r) {
    for (std::size_t c0 = 0; c0 + r <= t[0]; ++c0) {
      // t_i = r + c_i + c_{i-1}
      std::vector<std::size_t> c(n, 0);
      c[0] = c0;
      bool ok = true;
      for (std::size_t i = 1; i < n && ok; ++i) {
        if (t[i] < r + c[i - 1]) ok = false;
        else c[i] = t[i] - r - c[i - 1];
      }
      if (!ok || t[0] != r + c[0] + c[n - 1]) continue;
      if (isomorphic(ring, x, standard_plus_trivials(ring, n, u, r, c))) return true;
    }
  }
  return false;
}

bool homotopic(const Ring& ring, const Seq& x, const Seq& y, const std::vector<Mat>& phi, const std::vector<Mat>& psi) {
  const std::size_t n = n_of(x);
  // theta_i : A_{i+1} -> B_i, all entries enumerated jointly.
  std::size_t unknowns = 0;
  for (std::size_t i = 0; i < n; ++i) unknowns += y.ranks[i] * x.ranks[(i + 1) % n];
  if (unknowns > 8) throw std::logic_error("homotopy oracle: too many unknowns");
  for (const auto& v : all_vectors(ring, unknowns)) {
    std::vector<Mat> theta;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Mat m(y.ranks[i], std::vector<Elem>(x.ranks[(i + 1) % n]));
      for (auto& row : m) {
        for (auto& e : row) e = v[pos++];
      }
      theta.push_back(std::move(m));
    }
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      const std::size_t prev = (i + n - 1) % n;
      const Mat a = mul_shaped(ring, theta[i], x.maps[i], x.ranks[(i + 1) % n], x.ranks[i]);
      const Mat b = mul_shaped(ring, y.maps[prev], theta[prev], y.ranks[prev], x.ranks[i]);
      for (std::size_t r = 0; r < y.ranks[i] && ok; ++r) {
        for (std::size_t c = 0; c < x.ranks[i] && ok; ++c) {
          ok = ring.sub(phi[i][r][c], psi[i][r][c]) == ring.add(a[r][c], b[r][c]);
        }
      }
    }
    if (ok) return true;
  }
  return false;
}

std::optional<std::vector<Elem>> null_homotopy(const Ring& ring, std::size_t n, std::uint64_t d) {
  const Elem x = ring.from_int(static_cast<std::int64_t>(d));
  if (x % ring.q() != 0 || x == 0) throw std::logic_error("null_homotopy oracle: d*1 not in m \\ 0");
  const Elem up = x;
  const Elem p = ring.p();
  for (const auto& q : all_vectors(ring, n - 3)) {
    bool ok = true;
    for (std::size_t j = 0; j + 2 < n && ok; ++j) {
      Elem lhs = 0;
      if (j > 0) lhs = ring.add(lhs, ring.mul(q[j - 1], p));
      if (j < q.size()) lhs = ring.add(lhs, ring.mul(p, q[j]));
      ok = lhs == up;
    }
    if (ok) return q;
  }
  return std::nullopt;
}

}  // namespace oracle
