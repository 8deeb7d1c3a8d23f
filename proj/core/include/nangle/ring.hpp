#pragma once

// Exact arithmetic in local rings R with principal maximal ideal m = (p) and
// m^2 = 0. Two families are supported:
//
//   Z/(q^2)          q prime, p = q
//   GF(q)[x]/(x^2)   q = r^e a prime power (q <= 512), p = x
//
// Every element has a unique canonical form a + b*p with a, b drawn from a
// fixed set of representatives of the residue field k = R/m.

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace nangle {

/// Element of the residue field k. For q = r^e the value encodes the
/// polynomial sum c_i t^i as the base-r number sum c_i r^i.
using KElement = std::uint32_t;

/// Finite field GF(q), q = r^e. Extension fields use the lexicographically
/// smallest monic irreducible polynomial of degree e over GF(r).
class ResidueField {
 public:
  explicit ResidueField(std::uint32_t order);

  std::uint32_t order() const { return order_; }
  std::uint32_t characteristic() const { return characteristic_; }
  unsigned degree() const { return degree_; }
  /// Coefficients c_0..c_e (c_e = 1) of the defining polynomial.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  KElement add(KElement x, KElement y) const;
  KElement sub(KElement x, KElement y) const;
  KElement neg(KElement x) const;
  KElement mul(KElement x, KElement y) const;
  /// Throws PreconditionError for x == 0.
  KElement inv(KElement x) const;
  /// Image of the integer d under Z -> k.
  KElement from_integer(std::int64_t d) const;
  /// A generator of the multiplicative group.
  KElement primitive_element() const;

 private:
  std::uint32_t order_;
  std::uint32_t characteristic_;
  unsigned degree_;
  std::vector<std::uint32_t> modulus_;
  // Only populated for degree > 1.
  std::vector<std::uint16_t> add_table_;
  std::vector<std::uint16_t> mul_table_;
  std::vector<std::uint16_t> inv_table_;
};

/// Canonical form a + b*p.
struct RingElement {
  KElement residue = 0;  // a
  KElement p_part = 0;   // b

  friend bool operator==(const RingElement&, const RingElement&) = default;
  friend auto operator<=>(const RingElement&, const RingElement&) = default;
};

enum class RingFamily { IntModQSquared, DualNumbers };

/// Result of splitting an element into zero / unit / unit times p.
struct ElementClass {
  enum class Kind { Zero, Unit, UnitTimesP };
  Kind kind = Kind::Zero;
  /// Unit: the exact inverse. UnitTimesP: the unit u with x = u*p, returned
  /// with zero p-part. Zero: unused.
  RingElement witness{};
};

enum class ArithOp { Add, Sub, Mul, Neg };

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

class Ring {
 public:
  /// Parses `Z/<m>` (m = q^2, q prime) or `GF(<q>)[x]/(x^2)`.
  static RingPtr parse(std::string_view spec);
  static RingPtr int_mod_q_squared(std::uint64_t q);
  static RingPtr dual_numbers(std::uint32_t q);

  RingFamily family() const { return family_; }
  /// Order of the residue field.
  std::uint32_t q() const { return field_->order(); }
  std::uint64_t size() const { return std::uint64_t{q()} * q(); }
  bool two_p_zero() const { return field_->characteristic() == 2; }
  const ResidueField& field() const { return *field_; }
  /// Canonical spec text, accepted by parse().
  std::string spec() const;
  /// "2" for Z/4, "x" for dual numbers.
  std::string uniformizer_name() const;

  RingElement zero() const { return {}; }
  RingElement one() const { return {1, 0}; }
  RingElement p() const { return {0, 1}; }
  RingElement lift(KElement a) const { return {a, 0}; }
  /// u*p for the residue-lift of `residue`.
  RingElement p_times(KElement residue) const { return {0, residue}; }
  /// d * 1_R.
  RingElement from_integer(std::int64_t d) const;

  bool contains(const RingElement& x) const {
    return x.residue < q() && x.p_part < q();
  }
  bool is_unit(const RingElement& x) const { return x.residue != 0; }
  bool in_max_ideal(const RingElement& x) const { return x.residue == 0; }

  RingElement add(const RingElement& x, const RingElement& y) const;
  RingElement sub(const RingElement& x, const RingElement& y) const;
  RingElement neg(const RingElement& x) const;
  RingElement mul(const RingElement& x, const RingElement& y) const;
  /// p * x; depends only on the residue of x.
  RingElement mul_p(const RingElement& x) const { return {0, x.residue}; }
  /// Throws PreconditionError when x is not a unit.
  RingElement inverse(const RingElement& x) const;
  RingElement arith(ArithOp op, const RingElement& x, const RingElement& y) const;
  ElementClass classify(const RingElement& x) const;

  /// One representative per class of units under u ~ v <=> u*p = v*p: the
  /// zero-p-part lifts of k \ {0}, in increasing residue order.
  std::vector<RingElement> unit_classes() const;
  /// Every element of R, ordered by (residue, p_part).
  std::vector<RingElement> elements() const;

  /// Integer value a + b*q (first family only).
  std::uint64_t to_integer(const RingElement& x) const;
  RingElement from_value(std::uint64_t v) const;

  std::string format(const RingElement& x) const;

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.family_ == b.family_ && a.q() == b.q();
  }

 private:
  Ring(RingFamily family, std::uint32_t q);

  RingFamily family_;
  std::shared_ptr<const ResidueField> field_;
};

/// Throws RingMismatch unless both rings are the same ring.
void require_same_ring(const Ring& a, const Ring& b);

bool is_prime(std::uint64_t n);

}  // namespace nangle
