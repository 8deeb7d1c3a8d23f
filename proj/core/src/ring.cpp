#include "nangle/ring.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "nangle/error.hpp"

namespace nangle {

namespace {

__extension__ using u128 = unsigned __int128;

using Poly = std::vector<std::uint32_t>;  // low degree first, mod r

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f modulo the monic polynomial g.
Poly poly_mod(Poly f, const Poly& g, std::uint32_t r) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    const std::uint32_t lead = f.back();
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      const std::uint64_t sub = std::uint64_t{lead} * g[i] % r;
      f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + r - sub) % r);
    }
    trim(f);
  }
  return f;
}

Poly decode(std::uint32_t value, std::uint32_t r, unsigned degree) {
  Poly f(degree, 0);
  for (unsigned i = 0; i < degree; ++i) {
    f[i] = value % r;
    value /= r;
  }
  return f;
}

std::uint32_t encode(const Poly& f, std::uint32_t r) {
  std::uint32_t value = 0;
  for (std::size_t i = f.size(); i-- > 0;) value = value * r + f[i];
  return value;
}

// Monic polynomial of degree d whose lower coefficients are the base-r
// digits of `index`.
Poly monic_from_index(std::uint32_t index, std::uint32_t r, unsigned d) {
  Poly f = decode(index, r, d);
  f.push_back(1);
  return f;
}

std::uint32_t ipow(std::uint32_t base, unsigned e) {
  std::uint32_t out = 1;
  for (unsigned i = 0; i < e; ++i) out *= base;
  return out;
}

bool is_irreducible(const Poly& f, std::uint32_t r) {
  const unsigned degree = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; d <= degree / 2; ++d) {
    const std::uint32_t count = ipow(r, d);
    for (std::uint32_t idx = 0; idx < count; ++idx) {
      if (poly_mod(f, monic_from_index(idx, r, d), r).empty()) return false;
    }
  }
  return true;
}

Poly smallest_irreducible(std::uint32_t r, unsigned degree) {
  const std::uint32_t count = ipow(r, degree);
  for (std::uint32_t idx = 0; idx < count; ++idx) {
    Poly f = monic_from_index(idx, r, degree);
    if (is_irreducible(f, r)) return f;
  }
  throw Error("no irreducible polynomial found");  // unreachable
}

// Returns (r, e) with q = r^e, or (0, 0) when q is not a prime power.
std::pair<std::uint32_t, unsigned> prime_power(std::uint64_t q) {
  if (q < 2) return {0, 0};
  std::uint64_t r = 2;
  while (r * r <= q && q % r != 0) ++r;
  if (q % r != 0) r = q;
  unsigned e = 0;
  while (q % r == 0) {
    q /= r;
    ++e;
  }
  if (q != 1) return {0, 0};
  return {static_cast<std::uint32_t>(r), e};
}

std::uint64_t modinv_u64(std::uint64_t a, std::uint64_t m) {
  // m < 2^62, so every intermediate fits in 64 signed bits.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    const std::int64_t quotient = r / new_r;
    t -= quotient * new_t;
    std::swap(t, new_t);
    r -= quotient * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw PreconditionError("element is not invertible");
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

std::uint64_t parse_uint(std::string_view text, std::string_view spec) {
  std::uint64_t value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc{} || ptr != last) {
    throw ParseError("bad integer in ring spec '" + std::string(spec) + "'");
  }
  return value;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------- field

ResidueField::ResidueField(std::uint32_t order) : order_(order) {
  auto [r, e] = prime_power(order);
  if (r == 0) throw PreconditionError("field order is not a prime power");
  characteristic_ = r;
  degree_ = e;
  if (degree_ == 1) {
    modulus_ = {0, 1};
    return;
  }
  modulus_ = smallest_irreducible(r, degree_);
  const std::size_t n = order_;
  add_table_.resize(n * n);
  mul_table_.resize(n * n);
  inv_table_.assign(n, 0);
  for (std::uint32_t x = 0; x < order_; ++x) {
    const Poly fx = decode(x, r, degree_);
    for (std::uint32_t y = 0; y < order_; ++y) {
      const Poly fy = decode(y, r, degree_);
      Poly sum(degree_);
      for (unsigned i = 0; i < degree_; ++i) sum[i] = (fx[i] + fy[i]) % r;
      add_table_[x * n + y] = static_cast<std::uint16_t>(encode(sum, r));
      Poly prod(2 * degree_ - 1, 0);
      for (unsigned i = 0; i < degree_; ++i) {
        for (unsigned j = 0; j < degree_; ++j) {
          prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{fx[i]} * fy[j]) % r);
        }
      }
      const std::uint32_t z = encode(poly_mod(prod, modulus_, r), r);
      mul_table_[x * n + y] = static_cast<std::uint16_t>(z);
      if (z == 1) inv_table_[x] = static_cast<std::uint16_t>(y);
    }
  }
}

KElement ResidueField::add(KElement x, KElement y) const {
  if (degree_ == 1) return static_cast<KElement>((std::uint64_t{x} + y) % order_);
  return add_table_[std::size_t{x} * order_ + y];
}

KElement ResidueField::neg(KElement x) const {
  if (degree_ == 1) return x == 0 ? 0 : order_ - x;
  const Poly f = decode(x, characteristic_, degree_);
  Poly g(degree_);
  for (unsigned i = 0; i < degree_; ++i) g[i] = (characteristic_ - f[i]) % characteristic_;
  return encode(g, characteristic_);
}

KElement ResidueField::sub(KElement x, KElement y) const { return add(x, neg(y)); }

KElement ResidueField::mul(KElement x, KElement y) const {
  if (degree_ == 1) return static_cast<KElement>(std::uint64_t{x} * y % order_);
  return mul_table_[std::size_t{x} * order_ + y];
}

KElement ResidueField::inv(KElement x) const {
  if (x == 0) throw PreconditionError("zero has no inverse in the residue field");
  if (degree_ == 1) return static_cast<KElement>(modinv_u64(x, order_));
  return inv_table_[x];
}

KElement ResidueField::from_integer(std::int64_t d) const {
  std::int64_t m = d % static_cast<std::int64_t>(characteristic_);
  if (m < 0) m += characteristic_;
  return static_cast<KElement>(m);  // prime subfield: constant polynomial
}

KElement ResidueField::primitive_element() const {
  const std::uint64_t group = order_ - 1;
  std::vector<std::uint64_t> factors;
  std::uint64_t rest = group;
  for (std::uint64_t d = 2; d * d <= rest; ++d) {
    if (rest % d == 0) {
      factors.push_back(d);
      while (rest % d == 0) rest /= d;
    }
  }
  if (rest > 1) factors.push_back(rest);
  auto power = [this](KElement base, std::uint64_t e) {
    KElement out = 1;
    while (e > 0) {
      if (e & 1) out = mul(out, base);
      base = mul(base, base);
      e >>= 1;
    }
    return out;
  };
  for (KElement g = 1; g < order_; ++g) {
    bool generator = true;
    for (auto f : factors) {
      if (power(g, group / f) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return g;
  }
  return 1;  // order 2
}

// ---------------------------------------------------------------- ring

Ring::Ring(RingFamily family, std::uint32_t q)
    : family_(family), field_(std::make_shared<const ResidueField>(q)) {}

RingPtr Ring::int_mod_q_squared(std::uint64_t q) {
  if (!is_prime(q)) throw ParseError("Z/(q^2) needs q prime, got q = " + std::to_string(q));
  if (q >= (std::uint64_t{1} << 31)) throw ParseError("q too large for Z/(q^2)");
  return RingPtr(new Ring(RingFamily::IntModQSquared, static_cast<std::uint32_t>(q)));
}

RingPtr Ring::dual_numbers(std::uint32_t q) {
  if (prime_power(q).first == 0) {
    throw ParseError("GF(q) needs q a prime power, got q = " + std::to_string(q));
  }
  if (q > 512) throw ParseError("GF(q)[x]/(x^2) is limited to q <= 512");
  return RingPtr(new Ring(RingFamily::DualNumbers, q));
}

RingPtr Ring::parse(std::string_view spec) {
  const std::string_view s = strip(spec);
  if (s.starts_with("Z/")) {
    std::string_view digits = s.substr(2);
    if (digits.starts_with("(") && digits.ends_with(")")) digits = digits.substr(1, digits.size() - 2);
    const std::uint64_t m = parse_uint(digits, spec);
    std::uint64_t q = 0;
    while ((q + 1) * (q + 1) <= m) ++q;
    if (q * q != m || !is_prime(q)) {
      throw ParseError("Z/" + std::to_string(m) + " is not Z/(q^2) for a prime q");
    }
    return int_mod_q_squared(q);
  }
  constexpr std::string_view suffix = ")[x]/(x^2)";
  if (s.starts_with("GF(") && s.ends_with(suffix)) {
    const std::string_view digits = s.substr(3, s.size() - 3 - suffix.size());
    const std::uint64_t q = parse_uint(digits, spec);
    if (q > 512) throw ParseError("GF(q)[x]/(x^2) is limited to q <= 512");
    return dual_numbers(static_cast<std::uint32_t>(q));
  }
  throw ParseError("unrecognised ring spec '" + std::string(spec) +
                   "' (expected Z/<q^2> or GF(<q>)[x]/(x^2))");
}

std::string Ring::spec() const {
  if (family_ == RingFamily::IntModQSquared) return "Z/" + std::to_string(size());
  return "GF(" + std::to_string(q()) + ")[x]/(x^2)";
}

std::string Ring::uniformizer_name() const {
  return family_ == RingFamily::IntModQSquared ? std::to_string(q()) : "x";
}

std::uint64_t Ring::to_integer(const RingElement& x) const {
  return std::uint64_t{x.residue} + std::uint64_t{x.p_part} * q();
}

RingElement Ring::from_value(std::uint64_t v) const {
  v %= size();
  return {static_cast<KElement>(v % q()), static_cast<KElement>(v / q())};
}

RingElement Ring::from_integer(std::int64_t d) const {
  if (family_ == RingFamily::IntModQSquared) {
    const auto m = static_cast<std::int64_t>(size());
    std::int64_t v = d % m;
    if (v < 0) v += m;
    return from_value(static_cast<std::uint64_t>(v));
  }
  return lift(field_->from_integer(d));
}

RingElement Ring::add(const RingElement& x, const RingElement& y) const {
  if (family_ == RingFamily::IntModQSquared) {
    return from_value((to_integer(x) + to_integer(y)) % size());
  }
  return {field_->add(x.residue, y.residue), field_->add(x.p_part, y.p_part)};
}

RingElement Ring::neg(const RingElement& x) const {
  if (family_ == RingFamily::IntModQSquared) {
    const std::uint64_t v = to_integer(x);
    return from_value(v == 0 ? 0 : size() - v);
  }
  return {field_->neg(x.residue), field_->neg(x.p_part)};
}

RingElement Ring::sub(const RingElement& x, const RingElement& y) const { return add(x, neg(y)); }

RingElement Ring::mul(const RingElement& x, const RingElement& y) const {
  if (family_ == RingFamily::IntModQSquared) {
    const u128 prod = static_cast<u128>(to_integer(x)) * to_integer(y);
    return from_value(static_cast<std::uint64_t>(prod % size()));
  }
  const ResidueField& k = *field_;
  return {k.mul(x.residue, y.residue),
          k.add(k.mul(x.residue, y.p_part), k.mul(x.p_part, y.residue))};
}

RingElement Ring::inverse(const RingElement& x) const {
  if (!is_unit(x)) throw PreconditionError("element " + format(x) + " is not a unit");
  // Newton step y1 = y0 (2 - x y0) is exact because m^2 = 0.
  const RingElement y0 = lift(field_->inv(x.residue));
  const RingElement two = add(one(), one());
  return mul(y0, sub(two, mul(x, y0)));
}

RingElement Ring::arith(ArithOp op, const RingElement& x, const RingElement& y) const {
  if (!contains(x) || !contains(y)) throw RingMismatch("element does not belong to " + spec());
  switch (op) {
    case ArithOp::Add: return add(x, y);
    case ArithOp::Sub: return sub(x, y);
    case ArithOp::Mul: return mul(x, y);
    case ArithOp::Neg: return neg(x);
  }
  return {};
}

ElementClass Ring::classify(const RingElement& x) const {
  if (x.residue != 0) return {ElementClass::Kind::Unit, inverse(x)};
  if (x.p_part != 0) return {ElementClass::Kind::UnitTimesP, lift(x.p_part)};
  return {ElementClass::Kind::Zero, {}};
}

std::vector<RingElement> Ring::unit_classes() const {
  std::vector<RingElement> out;
  out.reserve(q() - 1);
  for (KElement a = 1; a < q(); ++a) out.push_back(lift(a));
  return out;
}

std::vector<RingElement> Ring::elements() const {
  std::vector<RingElement> out;
  out.reserve(size());
  for (KElement a = 0; a < q(); ++a) {
    for (KElement b = 0; b < q(); ++b) out.push_back({a, b});
  }
  return out;
}

std::string Ring::format(const RingElement& x) const {
  if (family_ == RingFamily::IntModQSquared) return std::to_string(to_integer(x));
  std::ostringstream os;
  if (x.p_part == 0) {
    os << x.residue;
  } else if (x.residue == 0) {
    os << x.p_part << "x";
  } else {
    os << x.residue << "+" << x.p_part << "x";
  }
  return os.str();
}

void require_same_ring(const Ring& a, const Ring& b) {
  if (!(a == b)) throw RingMismatch("ring mismatch: " + a.spec() + " vs " + b.spec());
}

}  // namespace nangle
