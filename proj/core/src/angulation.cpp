#include "nangle/angulation.hpp"

#include <stdexcept>

#include "nangle/error.hpp"

namespace nangle {

namespace {

std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

// Working copy of a sequence together with the accumulated base change
// psi, kept so that apply_iso(original, psi) equals the current maps.
class Splitter {
 public:
  explicit Splitter(const NSequence& x)
      : ring_(*x.ring()), n_(x.n()), maps_(x.maps()) {
    for (std::size_t j = 0; j < n_; ++j) {
      psi_.push_back(RMatrix::identity(x.ring(), x.rank(j)));
      active_.emplace_back(x.rank(j), true);
    }
  }

  // New basis vector k of object j is s times the old one.
  void scale(std::size_t j, std::size_t k, const RingElement& s) {
    const RingElement inv = ring_.inverse(s);
    RMatrix& in = maps_[prev(j)];
    RMatrix& out = maps_[j];
    for (std::size_t c = 0; c < psi_[j].cols(); ++c) psi_[j](k, c) = ring_.mul(s, psi_[j](k, c));
    for (std::size_t c = 0; c < in.cols(); ++c) in(k, c) = ring_.mul(s, in(k, c));
    for (std::size_t r = 0; r < out.rows(); ++r) out(r, k) = ring_.mul(out(r, k), inv);
  }

  // Elementary base change E = I + f e_k e_l^T on object j.
  void add(std::size_t j, std::size_t k, std::size_t l, const RingElement& f) {
    RMatrix& in = maps_[prev(j)];
    RMatrix& out = maps_[j];
    for (std::size_t c = 0; c < psi_[j].cols(); ++c) {
      psi_[j](k, c) = ring_.add(psi_[j](k, c), ring_.mul(f, psi_[j](l, c)));
    }
    for (std::size_t c = 0; c < in.cols(); ++c) in(k, c) = ring_.add(in(k, c), ring_.mul(f, in(l, c)));
    for (std::size_t r = 0; r < out.rows(); ++r) out(r, l) = ring_.sub(out(r, l), ring_.mul(out(r, k), f));
  }

  bool find_unit(std::size_t& index, std::size_t& row, std::size_t& col) const {
    for (std::size_t i = 0; i < n_; ++i) {
      const RMatrix& m = maps_[i];
      for (std::size_t r = 0; r < m.rows(); ++r) {
        if (!active_[next(i)][r]) continue;
        for (std::size_t c = 0; c < m.cols(); ++c) {
          if (active_[i][c] && ring_.is_unit(m(r, c))) {
            index = i;
            row = r;
            col = c;
            return true;
          }
        }
      }
    }
    return false;
  }

  void isolate(std::size_t i, std::size_t r, std::size_t c) {
    const std::size_t j = next(i);
    scale(j, r, ring_.inverse(maps_[i](r, c)));
    for (std::size_t r2 = 0; r2 < maps_[i].rows(); ++r2) {
      if (r2 == r || !active_[j][r2]) continue;
      const RingElement f = maps_[i](r2, c);
      if (f != RingElement{}) add(j, r2, r, ring_.neg(f));
    }
    for (std::size_t c2 = 0; c2 < maps_[i].cols(); ++c2) {
      if (c2 == c || !active_[i][c2]) continue;
      const RingElement g = maps_[i](r, c2);
      if (g != RingElement{}) add(i, c, c2, g);
    }
    active_[j][r] = false;
    active_[i][c] = false;
    pivots_.push_back({i, r, c});
  }

  SplitResult finish(const NSequence& x) {
    // Object j becomes [active coordinates | one coordinate per pivot touching j].
    std::vector<std::vector<std::size_t>> order(n_);
    std::vector<std::size_t> core_ranks(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t k = 0; k < active_[j].size(); ++k) {
        if (active_[j][k]) order[j].push_back(k);
      }
      core_ranks[j] = order[j].size();
      for (const Pivot& pv : pivots_) {
        if (pv.index == j) order[j].push_back(pv.col);
        else if (next(pv.index) == j) order[j].push_back(pv.row);
      }
    }
    SplitResult out{NSequence::zero(x.ring(), core_ranks), {}, {}};
    std::vector<RMatrix> core_maps;
    for (std::size_t j = 0; j < n_; ++j) {
      out.iso.push_back(psi_[j].submatrix(order[j], iota(psi_[j].cols())));
      core_maps.push_back(maps_[j].submatrix(std::span(order[next(j)]).first(core_ranks[next(j)]),
                                             std::span(order[j]).first(core_ranks[j])));
    }
    out.core = NSequence(x.ring(), core_ranks, std::move(core_maps));
    for (const Pivot& pv : pivots_) out.trivials.push_back({1, pv.index});
    return out;
  }

 private:
  struct Pivot {
    std::size_t index, row, col;
  };

  std::size_t next(std::size_t j) const { return (j + 1) % n_; }
  std::size_t prev(std::size_t j) const { return (j + n_ - 1) % n_; }

  const Ring& ring_;
  std::size_t n_;
  std::vector<RMatrix> maps_;
  std::vector<RMatrix> psi_;
  std::vector<std::vector<bool>> active_;
  std::vector<Pivot> pivots_;
};

KMatrix scalar_k(const RingPtr& ring, std::size_t r, KElement s) {
  KMatrix m(ring, r, r);
  for (std::size_t i = 0; i < r; ++i) m(i, i) = s;
  return m;
}

// Residues of B_i where the minimal map is p * B_i.
KMatrix quotient_by_p(const RMatrix& m) {
  KMatrix k(m.ring(), m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) k(r, c) = m(r, c).p_part;
  }
  return k;
}

// psi : core -> standard_angle(u, r), given invertible B_i and product u*I.
std::vector<RMatrix> standardizing_iso(const NSequence& core, const std::vector<KMatrix>& b, KElement u) {
  const RingPtr& ring = core.ring();
  const std::size_t r = core.rank(0);
  std::vector<KMatrix> psi{KMatrix::identity(ring, r)};
  psi.push_back(scalar_k(ring, r, u) * *b[0].inverse());
  for (std::size_t i = 1; i + 1 < core.n(); ++i) psi.push_back(psi[i] * *b[i].inverse());
  std::vector<RMatrix> out;
  for (const auto& k : psi) out.push_back(RMatrix::lift(ring, k));
  return out;
}

KMatrix residue_product(const std::vector<KMatrix>& b) {
  KMatrix prod = b[0];
  for (std::size_t i = 1; i < b.size(); ++i) prod = b[i] * prod;
  return prod;
}

void require_unit(const Ring& ring, const RingElement& u) {
  if (!ring.contains(u) || !ring.is_unit(u)) {
    throw PreconditionError(ring.format(u) + " is not a unit of " + ring.spec());
  }
}

// Components 2..n-1 of a morphism src -> tgt whose components 0 and 1 are
// fixed, by solving commutativity of squares 1..n-1 as one linear system.
std::vector<RMatrix> complete_from_two(const NSequence& src, const NSequence& tgt, const RMatrix& c0,
                                       const RMatrix& c1) {
  const Ring& ring = *src.ring();
  const std::size_t n = src.n();
  std::vector<std::size_t> var_off(n + 1, 0);
  for (std::size_t k = 2; k < n; ++k) var_off[k + 1] = var_off[k] + tgt.rank(k) * src.rank(k);
  std::vector<std::size_t> eq_off{0};
  for (std::size_t i = 1; i < n; ++i) eq_off.push_back(eq_off.back() + tgt.rank(i + 1) * src.rank(i));

  auto var = [&](std::size_t k, std::size_t r, std::size_t c) { return var_off[k] + r * src.rank(k) + c; };

  RMatrix a(src.ring(), eq_off.back(), var_off[n]);
  RMatrix b(src.ring(), eq_off.back(), 1);
  const RMatrix known_left = tgt.map(1) * c1;       // used by square 1
  const RMatrix known_right = c0 * src.map(n - 1);  // used by square n-1
  for (std::size_t i = 1; i < n; ++i) {
    const RMatrix& beta = tgt.map(i);
    const RMatrix& alpha = src.map(i);
    for (std::size_t r = 0; r < tgt.rank(i + 1); ++r) {
      for (std::size_t c = 0; c < src.rank(i); ++c) {
        const std::size_t eq = eq_off[i - 1] + r * src.rank(i) + c;
        // beta_i c_i - c_{i+1} alpha_i = 0
        if (i == 1) {
          b(eq, 0) = ring.sub(b(eq, 0), known_left(r, c));
        } else {
          for (std::size_t k = 0; k < tgt.rank(i); ++k) {
            RingElement& cell = a(eq, var(i, k, c));
            cell = ring.add(cell, beta(r, k));
          }
        }
        if (i + 1 == n) {
          b(eq, 0) = ring.add(b(eq, 0), known_right(r, c));
        } else {
          for (std::size_t k = 0; k < src.rank(i + 1); ++k) {
            RingElement& cell = a(eq, var(i + 1, r, k));
            cell = ring.sub(cell, alpha(k, c));
          }
        }
      }
    }
  }
  auto sol = solve_linear(a, b);
  if (!sol) throw std::logic_error("complete_morphism: no completion across a contractible summand");
  std::vector<RMatrix> comps{c0, c1};
  for (std::size_t k = 2; k < n; ++k) {
    RMatrix m(src.ring(), tgt.rank(k), src.rank(k));
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = sol->particular(var(k, r, c), 0);
    }
    comps.push_back(std::move(m));
  }
  return comps;
}

// Isomorphism X -> F(up)^r + trivials built from a member's certificate.
std::vector<RMatrix> full_iso(const MembershipCertificate& cert, const NSequence& trivial_part) {
  std::vector<RMatrix> iso = cert.split->iso;
  if (cert.verdict != Verdict::InNu) return iso;
  for (std::size_t i = 0; i < iso.size(); ++i) {
    const RMatrix id = RMatrix::identity(iso[i].ring(), trivial_part.rank(i));
    iso[i] = RMatrix::block_diagonal(cert.standardizing_iso[i], id) * iso[i];
  }
  return iso;
}

}  // namespace

// ---------------------------------------------------------------- splitting

NSequence assemble(const NSequence& core, const std::vector<TrivialSpec>& trivials) {
  NSequence out = core;
  for (const auto& t : trivials) out = direct_sum(out, trivial(core.ring(), core.n(), t));
  return out;
}

SplitResult split_trivials(const NSequence& x) {
  if (!is_candidate(x)) throw PreconditionError("split_trivials: sequence is not a candidate");
  Splitter s(x);
  std::size_t i = 0, r = 0, c = 0;
  while (s.find_unit(i, r, c)) s.isolate(i, r, c);
  SplitResult out = s.finish(x);
  if (!(apply_iso(x, out.iso) == assemble(out.core, out.trivials))) {
    throw std::logic_error("split_trivials: reconstruction mismatch");
  }
  for (const auto& m : out.core.maps()) {
    if (!m.is_minimal()) throw std::logic_error("split_trivials: core map not minimal");
  }
  return out;
}

// ---------------------------------------------------------------- membership

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::InNu: return "in_nu";
    case Verdict::Contractible: return "contractible";
    case Verdict::NotInAny: return "not_in_any";
  }
  return "?";
}

std::string to_string(NotInAnyReason r) {
  switch (r) {
    case NotInAnyReason::NotCandidate: return "not-candidate";
    case NotInAnyReason::NotExact: return "not-exact";
    case NotInAnyReason::RanksUnequal: return "ranks-unequal";
    case NotInAnyReason::ProductNotScalar: return "product-not-scalar";
  }
  return "?";
}

MembershipCertificate classify(const NSequence& x) {
  MembershipCertificate cert;
  if (!is_candidate(x)) {
    cert.reason = NotInAnyReason::NotCandidate;
    return cert;
  }
  cert.split = split_trivials(x);
  const NSequence& core = cert.split->core;
  if (core.total_rank() == 0) {
    cert.verdict = Verdict::Contractible;
    return cert;
  }
  for (std::size_t i = 1; i < core.n(); ++i) {
    if (core.rank(i) != core.rank(0)) {
      cert.reason = NotInAnyReason::RanksUnequal;
      return cert;
    }
  }
  std::vector<KMatrix> b;
  for (const auto& m : core.maps()) {
    b.push_back(quotient_by_p(m));
    if (!b.back().inverse()) {
      cert.reason = NotInAnyReason::NotExact;
      return cert;
    }
  }
  cert.product_residue = residue_product(b);
  if (auto s = cert.product_residue->scalar_value()) {
    cert.verdict = Verdict::InNu;
    cert.unit_class = *s;
    cert.standardizing_iso = standardizing_iso(core, b, *s);
    if (!(apply_iso(core, cert.standardizing_iso) ==
          standard_angle(core.ring(), core.n(), core.ring()->lift(*s), core.rank(0)))) {
      throw std::logic_error("classify: standardizing isomorphism mismatch");
    }
  } else {
    cert.reason = NotInAnyReason::ProductNotScalar;
  }
  return cert;
}

bool verify_certificate(const NSequence& x, const MembershipCertificate& cert) {
  if (cert.reason == NotInAnyReason::NotCandidate) return cert.verdict == Verdict::NotInAny && !is_candidate(x);
  if (!cert.split || !is_candidate(x)) return false;
  const SplitResult& s = *cert.split;
  const NSequence& core = s.core;
  if (s.iso.size() != x.n() || core.n() != x.n()) return false;
  for (std::size_t i = 0; i < x.n(); ++i) {
    if (!s.iso[i].square() || s.iso[i].rows() != x.rank(i) || !s.iso[i].is_invertible()) return false;
  }
  if (!(apply_iso(x, s.iso) == assemble(core, s.trivials))) return false;
  for (const auto& m : core.maps()) {
    if (!m.is_minimal()) return false;
  }
  switch (cert.verdict) {
    case Verdict::Contractible:
      return core.total_rank() == 0;
    case Verdict::InNu: {
      if (cert.standardizing_iso.size() != x.n()) return false;
      for (std::size_t i = 0; i < x.n(); ++i) {
        if (!cert.standardizing_iso[i].square() || cert.standardizing_iso[i].rows() != core.rank(i) ||
            !cert.standardizing_iso[i].is_invertible()) {
          return false;
        }
      }
      return cert.unit_class != 0 && cert.unit_class < x.ring()->q() &&
             apply_iso(core, cert.standardizing_iso) ==
                 standard_angle(x.ring(), x.n(), x.ring()->lift(cert.unit_class), core.rank(0));
    }
    case Verdict::NotInAny:
      break;
  }
  if (!cert.reason || core.total_rank() == 0) return false;
  bool equal_ranks = true;
  for (std::size_t i = 1; i < core.n(); ++i) equal_ranks = equal_ranks && core.rank(i) == core.rank(0);
  switch (*cert.reason) {
    case NotInAnyReason::RanksUnequal:
      return !equal_ranks;
    case NotInAnyReason::NotExact:
      return equal_ranks && !is_exact(core);
    case NotInAnyReason::ProductNotScalar: {
      if (!equal_ranks || !is_exact(core)) return false;
      std::vector<KMatrix> b;
      for (const auto& m : core.maps()) b.push_back(quotient_by_p(m));
      return !residue_product(b).scalar_value();
    }
    case NotInAnyReason::NotCandidate:
      break;
  }
  return false;
}

bool membership(const NSequence& x, const RingElement& u) {
  require_unit(*x.ring(), u);
  const MembershipCertificate cert = classify(x);
  if (cert.verdict == Verdict::Contractible) return true;
  return cert.verdict == Verdict::InNu && cert.unit_class == u.residue;
}

// ---------------------------------------------------------------- completions

NSequence complete_to_angle(const RMatrix& alpha, std::size_t n, const RingElement& u) {
  const RingPtr& ring = alpha.ring();
  require_unit(*ring, u);
  if (n < 3) throw DimensionError("an n-Sigma-sequence needs n >= 3");
  const NormalForm nf = normal_form(alpha);
  const std::size_t u0 = nf.p_block, v0 = nf.unit_block;

  // Minimal core with maps (p, up, p, ..., p): first map p*I, product u*I.
  std::vector<RMatrix> core_maps;
  for (std::size_t i = 0; i < n; ++i) {
    core_maps.push_back(RMatrix::scalar(ring, u0, i == 1 ? ring->mul(u, ring->p()) : ring->p()));
  }
  NSequence z(ring, std::vector<std::size_t>(n, u0), std::move(core_maps));
  if (v0 > 0) z = direct_sum(z, trivial(ring, n, {v0, 0}));
  if (alpha.cols() > u0 + v0) z = direct_sum(z, trivial(ring, n, {alpha.cols() - u0 - v0, n - 1}));
  if (alpha.rows() > u0 + v0) z = direct_sum(z, trivial(ring, n, {alpha.rows() - u0 - v0, 1}));
  if (!(z.map(0) == nf.d)) throw std::logic_error("complete_to_angle: block layout mismatch");

  std::vector<RMatrix> psi;
  for (std::size_t i = 0; i < n; ++i) psi.push_back(RMatrix::identity(ring, z.rank(i)));
  psi[0] = nf.q;
  psi[1] = nf.p.inverse_or_throw();
  NSequence out = apply_iso(z, psi);
  if (!(out.map(0) == alpha)) throw std::logic_error("complete_to_angle: first map mismatch");
  return out;
}

SeqMorphism complete_morphism(const NSequence& x, const NSequence& y, const RMatrix& phi0,
                              const RMatrix& phi1) {
  require_same_ring(*x.ring(), *y.ring());
  const RingPtr& ring = x.ring();
  const std::size_t n = x.n();
  if (y.n() != n) throw DimensionError("complete_morphism: sequences of different n");
  if (n % 2 == 1 && !ring->two_p_zero()) {
    throw PreconditionError("complete_morphism: n is odd and 2p != 0, so no N_u is an angulation");
  }
  if (phi0.rows() != y.rank(0) || phi0.cols() != x.rank(0) || phi1.rows() != y.rank(1) ||
      phi1.cols() != x.rank(1)) {
    throw DimensionError("complete_morphism: phi0/phi1 have the wrong shape");
  }
  if (!(y.map(0) * phi0 == phi1 * x.map(0))) {
    throw PreconditionError("complete_morphism: the first square does not commute");
  }
  const MembershipCertificate cx = classify(x);
  const MembershipCertificate cy = classify(y);
  if (cx.verdict == Verdict::NotInAny || cy.verdict == Verdict::NotInAny) {
    throw PreconditionError("complete_morphism: source or target lies in no N_u");
  }
  KElement u = 1;
  if (cx.verdict == Verdict::InNu) u = cx.unit_class;
  if (cy.verdict == Verdict::InNu) {
    if (cx.verdict == Verdict::InNu && cy.unit_class != u) {
      throw PreconditionError("complete_morphism: source and target lie in different N_u");
    }
    u = cy.unit_class;
  }

  const std::size_t rx = cx.split->core.rank(0), ry = cy.split->core.rank(0);
  const NSequence fx = standard_angle(ring, n, ring->lift(u), rx);
  const NSequence fy = standard_angle(ring, n, ring->lift(u), ry);
  const NSequence tx = assemble(NSequence::zero(ring, std::vector<std::size_t>(n, 0)), cx.split->trivials);
  const NSequence ty = assemble(NSequence::zero(ring, std::vector<std::size_t>(n, 0)), cy.split->trivials);
  const std::vector<RMatrix> xi = full_iso(cx, tx);
  const std::vector<RMatrix> eta = full_iso(cy, ty);

  // phi'' = eta phi xi^{-1} in block form [[a, b], [c, d]] w.r.t. F + T.
  std::vector<RMatrix> a, b, c, d;
  for (std::size_t k = 0; k < 2; ++k) {
    const RMatrix m = eta[k] * (k == 0 ? phi0 : phi1) * xi[k].inverse_or_throw();
    a.push_back(m.block(0, 0, ry, rx));
    b.push_back(m.block(0, rx, ry, tx.rank(k)));
    c.push_back(m.block(ry, 0, ty.rank(k), rx));
    d.push_back(m.block(ry, rx, ty.rank(k), tx.rank(k)));
  }

  // Core block: a_0 = a' + p theta with a' the unit-part lift; components
  // (a_0, a_1, a_1 - p theta, a', ..., a').
  const RMatrix unit = a[0].unit_part();
  const RMatrix p_theta = a[0] - unit;
  a.push_back(a[1] - p_theta);
  for (std::size_t k = 3; k < n; ++k) a.push_back(unit);

  b = complete_from_two(tx, fy, b[0], b[1]);
  c = complete_from_two(fx, ty, c[0], c[1]);
  d = complete_from_two(tx, ty, d[0], d[1]);

  std::vector<RMatrix> comps;
  for (std::size_t k = 0; k < n; ++k) {
    comps.push_back(eta[k].inverse_or_throw() * RMatrix::blocks(a[k], b[k], c[k], d[k]) * xi[k]);
  }
  if (!(comps[0] == phi0) || !(comps[1] == phi1)) {
    throw std::logic_error("complete_morphism: transported components differ from the input");
  }
  return SeqMorphism(x, y, std::move(comps));
}

// ---------------------------------------------------------------- enumeration

namespace {

constexpr std::size_t kMaxListedClasses = 1u << 16;
constexpr std::size_t kMaxWitnessPairs = 4096;

}  // namespace

AngulationEnumeration enumerate_angulations(const RingPtr& ring, std::size_t n) {
  if (n < 3) throw DimensionError("enumerate_angulations: n must be at least 3");
  AngulationEnumeration out;
  const std::vector<RingElement> units = ring->unit_classes();
  if (n % 2 == 1 && !ring->two_p_zero()) {
    out.kind = AngulationEnumeration::Kind::NoneExist;
    out.reason =
        "n is odd and 2p != 0: rotating F(up) to the left gives (p, ..., p, -up), whose residue product is -u "
        "!= u, so no N_u is closed under rotation; every angulation would have to be one of the N_u";
    const bool full_table = units.size() * units.size() <= kMaxWitnessPairs;
    for (const auto& u : units) {
      const NSequence rotated = rotate_left(standard_angle(ring, n, u, 1));
      if (full_table) {
        for (const auto& v : units) out.witness.push_back({u, v, rotated, membership(rotated, v)});
      } else {
        out.witness.push_back({u, u, rotated, membership(rotated, u)});
      }
    }
    return out;
  }
  if (units.size() > kMaxListedClasses) {
    throw PreconditionError("enumerate_angulations: " + std::to_string(units.size()) +
                            " classes are too many to list");
  }
  out.reason = "one angulation N_u per class of units modulo u p = v p";
  for (const auto& u : units) out.classes.push_back({u, standard_angle(ring, n, u, 1)});
  return out;
}

AngulationEnumeration enumerate_angulations(std::string_view ring_spec, std::size_t n) {
  static constexpr std::string_view kInfinite[] = {"Q[x]/(x^2)", "R[x]/(x^2)", "C[x]/(x^2)"};
  for (std::string_view name : kInfinite) {
    if (ring_spec != name) continue;
    if (n < 3) throw DimensionError("enumerate_angulations: n must be at least 3");
    AngulationEnumeration out;
    if (n % 2 == 1) {
      out.kind = AngulationEnumeration::Kind::NoneExist;
      out.reason = "n is odd and the residue field has characteristic 0, so 2p != 0 and no N_u is closed under "
                   "rotation";
    } else {
      out.kind = AngulationEnumeration::Kind::InfiniteFamily;
      out.reason = "one angulation N_u for every u in k^*, pairwise distinct: infinitely many";
    }
    return out;
  }
  return enumerate_angulations(Ring::parse(ring_spec), n);
}

}  // namespace nangle
