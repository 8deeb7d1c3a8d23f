#pragma once

// Brute-force reference implementations, written without the library's
// arithmetic, normal forms or solvers. Elements are plain integers a + q*b
// (the same digits as the library's canonical form).

#include <cstdint>
#include <optional>
#include <vector>

#include "nangle/sequence.hpp"

namespace oracle {

using Elem = std::uint32_t;
using Mat = std::vector<std::vector<Elem>>;  // rows of entries; rows x cols

/// GF(r^e) by polynomial arithmetic modulo the first monic irreducible
/// found by sieving out every product of lower-degree monics.
class Field {
 public:
  explicit Field(std::uint32_t order);
  std::uint32_t order() const { return q_; }
  std::uint32_t characteristic() const { return r_; }
  Elem add(Elem x, Elem y) const;
  Elem neg(Elem x) const;
  Elem mul(Elem x, Elem y) const;
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

 private:
  std::vector<std::uint32_t> digits(Elem x) const;
  Elem from_digits(const std::vector<std::uint32_t>& d) const;

  std::uint32_t q_, r_;
  unsigned e_;
  std::vector<std::uint32_t> modulus_;  // low degree first, monic
};

class Ring {
 public:
  /// Z/(q^2) for prime q.
  static Ring int_mod(std::uint32_t q);
  /// GF(q)[x]/(x^2).
  static Ring dual(std::uint32_t q);
  /// Matches the library ring's family and q.
  static Ring like(const nangle::Ring& ring);

  std::uint32_t q() const { return q_; }
  std::uint32_t size() const { return q_ * q_; }
  Elem add(Elem x, Elem y) const;
  Elem sub(Elem x, Elem y) const { return add(x, neg(y)); }
  Elem neg(Elem x) const;
  Elem mul(Elem x, Elem y) const;
  bool is_unit(Elem x) const { return x % q_ != 0; }
  Elem p() const { return q_; }
  Elem from_int(std::int64_t d) const;

  static Elem from_lib(const nangle::RingElement& x, std::uint32_t q) { return x.residue + q * x.p_part; }
  nangle::RingElement to_lib(Elem x) const { return {x % q_, x / q_}; }

 private:
  Ring(bool dual, std::uint32_t q);
  bool dual_;
  std::uint32_t q_;
  std::optional<Field> field_;
};

Mat from_lib(const nangle::RMatrix& m);
nangle::RMatrix to_lib(const nangle::RingPtr& ring, const Mat& m);
Mat mul(const Ring& ring, const Mat& a, const Mat& b, std::size_t inner);
std::vector<Elem> apply(const Ring& ring, const Mat& m, const std::vector<Elem>& v);

/// Every vector of R^n, in a fixed order.
std::vector<std::vector<Elem>> all_vectors(const Ring& ring, std::size_t n);

/// Sizes via element enumeration.
std::size_t image_size(const Ring& ring, const Mat& m, std::size_t cols);
std::size_t kernel_size(const Ring& ring, const Mat& m, std::size_t cols);
/// log_q of a size q^l.
std::size_t length_of(const Ring& ring, std::size_t size);

/// Every x with A x = b.
std::vector<std::vector<Elem>> solutions(const Ring& ring, const Mat& a, std::size_t cols, const std::vector<Elem>& b);

struct Seq {
  std::vector<std::size_t> ranks;
  std::vector<Mat> maps;
};
Seq from_lib(const nangle::NSequence& x);

bool candidate(const Ring& ring, const Seq& x);
/// Image of map(i-1) equals kernel of map(i) as sets, at every object.
bool exact(const Ring& ring, const Seq& x);

/// All invertible t x t matrices (t <= 2), via determinants.
const std::vector<Mat>& general_linear(const Ring& ring, std::size_t t);

/// Exhaustive isomorphism search between two sequences with equal ranks.
bool isomorphic(const Ring& ring, const Seq& x, const Seq& y);

/// F(up)^r plus c_i trivial summands at index i.
Seq standard_plus_trivials(const Ring& ring, std::size_t n, Elem u, std::size_t r, const std::vector<std::size_t>& c);

/// Searches every decomposition C + F(up)^r matching the ranks of x.
bool member(const Ring& ring, const Seq& x, Elem u);

/// Exhaustive search over all theta entries.
bool homotopic(const Ring& ring, const Seq& x, const Seq& y, const std::vector<Mat>& phi, const std::vector<Mat>& psi);

/// Exhaustive search over R^{n-3} for the scalar null-homotopy system.
std::optional<std::vector<Elem>> null_homotopy(const Ring& ring, std::size_t n, std::uint64_t d);

}  // namespace oracle
