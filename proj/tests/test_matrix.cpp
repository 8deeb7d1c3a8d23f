#include <gtest/gtest.h>

#include <set>

#include "nangle/error.hpp"
#include "nangle/matrix.hpp"
#include "nangle/random.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace nangle;
using testing_support::mat;

namespace {

RingPtr z4() { return Ring::parse("Z/4"); }
RingPtr z9() { return Ring::parse("Z/9"); }

void expect_valid_form(const RMatrix& m, const NormalForm& nf) {
  EXPECT_EQ(nf.p * m * nf.q, nf.d);
  EXPECT_TRUE(nf.p.is_invertible());
  EXPECT_TRUE(nf.q.is_invertible());
  const Ring& r = *m.ring();
  for (std::size_t i = 0; i < nf.d.rows(); ++i) {
    for (std::size_t j = 0; j < nf.d.cols(); ++j) {
      RingElement want{};
      if (i == j && i < nf.p_block) want = r.p();
      if (i == j && i >= nf.p_block && i < nf.p_block + nf.unit_block) want = r.one();
      EXPECT_EQ(nf.d(i, j), want);
    }
  }
}

// Every matrix of the given shape with entries in R.
std::vector<RMatrix> all_matrices(const RingPtr& ring, std::size_t rows, std::size_t cols) {
  std::vector<RMatrix> out;
  const auto elems = ring->elements();
  std::vector<std::size_t> idx(rows * cols, 0);
  while (true) {
    RMatrix m(ring, rows, cols);
    for (std::size_t i = 0; i < idx.size(); ++i) m(i / cols, i % cols) = elems[idx[i]];
    out.push_back(m);
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == elems.size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return out;
}

}  // namespace

TEST(Matrix, Examples) {
  auto r = z4();
  auto m = mat(r, 2, 2, {2, 1, 0, 2});
  KMatrix k = m.residue();
  EXPECT_EQ(k(0, 0), 0u);
  EXPECT_EQ(k(0, 1), 1u);
  EXPECT_EQ(k(1, 1), 0u);
  EXPECT_EQ(krank(k), 1u);
  EXPECT_EQ(krank(KMatrix::identity(r, 5)), 5u);
  EXPECT_EQ(krank(mat(z9(), 1, 1, {3}).residue()), 0u);
}

TEST(Matrix, ArithmeticAndShapes) {
  auto r = z4();
  auto a = mat(r, 2, 3, {1, 2, 3, 0, 1, 2});
  auto b = mat(r, 3, 1, {1, 1, 1});
  EXPECT_EQ(a * b, mat(r, 2, 1, {2, 3}));
  EXPECT_EQ(a.transpose().transpose(), a);
  EXPECT_EQ(a + (-a), RMatrix(r, 2, 3));
  EXPECT_THROW(a * a, DimensionError);
  EXPECT_THROW(a + b, DimensionError);
  EXPECT_THROW(mat(r, 1, 1, {1}) * mat(Ring::parse("Z/9"), 1, 1, {1}), RingMismatch);
}

TEST(Matrix, InverseAndUnitPart) {
  auto r = z9();
  auto m = mat(r, 2, 2, {4, 3, 6, 1});
  ASSERT_TRUE(m.is_invertible());
  EXPECT_EQ(m * m.inverse_or_throw(), RMatrix::identity(r, 2));
  EXPECT_EQ(m.inverse_or_throw() * m, RMatrix::identity(r, 2));
  EXPECT_EQ(m.unit_part(), mat(r, 2, 2, {1, 0, 0, 1}));
  EXPECT_FALSE(mat(r, 2, 2, {3, 0, 0, 1}).inverse().has_value());
  EXPECT_THROW(mat(r, 2, 2, {1, 2, 2, 4}).inverse_or_throw(), PreconditionError);
  EXPECT_TRUE(mat(r, 2, 2, {3, 6, 0, 3}).is_minimal());
}

TEST(NormalForm, Examples) {
  auto r = z4();
  auto nf = normal_form(mat(r, 1, 1, {3}));
  EXPECT_EQ(nf.d, mat(r, 1, 1, {1}));
  EXPECT_EQ(nf.p_block, 0u);
  EXPECT_EQ(nf.unit_block, 1u);

  nf = normal_form(mat(r, 1, 1, {2}));
  EXPECT_EQ(nf.d, mat(r, 1, 1, {2}));
  EXPECT_EQ(nf.p_block, 1u);
  EXPECT_EQ(nf.unit_block, 0u);

  const auto m = mat(r, 2, 2, {2, 1, 0, 2});
  nf = normal_form(m);
  EXPECT_EQ(nf.d, mat(r, 2, 2, {1, 0, 0, 0}));
  EXPECT_EQ(nf.p_block, 0u);
  EXPECT_EQ(nf.unit_block, 1u);
  EXPECT_EQ(image_length(nf), 2u);
  EXPECT_EQ(kernel_length(nf), 2u);
}

TEST(NormalForm, EmptyShapes) {
  auto r = z4();
  for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{0, 0}, {0, 3}, {2, 0}}) {
    const RMatrix m(r, rows, cols);
    const auto nf = normal_form(m);
    EXPECT_EQ(nf.p_block + nf.unit_block, 0u);
    EXPECT_EQ(kernel_length(nf), 2 * cols);
  }
}

TEST(NormalForm, InvariantUnderInvertibleBaseChange) {
  Rng rng(7);
  for (const char* spec : {"Z/4", "Z/9", "Z/25", "GF(2)[x]/(x^2)", "GF(4)[x]/(x^2)", "GF(9)[x]/(x^2)"}) {
    auto r = Ring::parse(spec);
    for (int t = 0; t < 60; ++t) {
      const std::size_t rows = rng.between(0, 4), cols = rng.between(0, 4);
      RMatrix m = random_matrix(r, rows, cols, rng);
      // bias towards minimal entries so both blocks show up
      if (rng.coin()) m = m.scaled(r->p()) + random_matrix(r, rows, cols, rng).scaled(rng.coin() ? r->p() : r->zero());
      const auto nf = normal_form(m);
      expect_valid_form(m, nf);
      const auto s = random_invertible(r, rows, rng), t2 = random_invertible(r, cols, rng);
      const auto nf2 = normal_form(s * m * t2);
      expect_valid_form(s * m * t2, nf2);
      EXPECT_EQ(nf.p_block, nf2.p_block) << spec;
      EXPECT_EQ(nf.unit_block, nf2.unit_block) << spec;
    }
  }
}

TEST(NormalForm, LengthsAgreeWithElementEnumeration) {
  for (const char* spec : {"Z/4", "GF(2)[x]/(x^2)"}) {
    auto r = Ring::parse(spec);
    const auto naive = oracle::Ring::like(*r);
    ASSERT_EQ(all_matrices(r, 2, 2).size(), 256u);
    for (std::size_t rows = 1; rows <= 2; ++rows) {
      for (std::size_t cols = 1; cols <= 2; ++cols) {
        for (const auto& m : all_matrices(r, rows, cols)) {
          const auto nf = normal_form(m);
          const auto om = oracle::from_lib(m);
          ASSERT_EQ(image_length(nf), oracle::length_of(naive, oracle::image_size(naive, om, cols))) << m.format();
          ASSERT_EQ(kernel_length(nf), oracle::length_of(naive, oracle::kernel_size(naive, om, cols))) << m.format();
        }
      }
    }
  }
}

TEST(SolveLinear, Examples) {
  auto r = z4();
  auto sol = solve_linear(mat(r, 1, 1, {2}), mat(r, 1, 1, {2}));
  ASSERT_TRUE(sol);
  EXPECT_EQ(sol->particular, mat(r, 1, 1, {1}));
  ASSERT_EQ(sol->kernel.size(), 1u);
  EXPECT_EQ(sol->kernel[0], mat(r, 1, 1, {2}));

  EXPECT_FALSE(solve_linear(mat(r, 1, 1, {2}), mat(r, 1, 1, {1})));

  sol = solve_linear(mat(r, 1, 1, {0}), mat(r, 1, 1, {0}));
  ASSERT_TRUE(sol);
  EXPECT_EQ(sol->particular, mat(r, 1, 1, {0}));
  ASSERT_EQ(sol->kernel.size(), 1u);
  EXPECT_EQ(sol->kernel[0], mat(r, 1, 1, {1}));
}

TEST(SolveLinear, RejectsBadRightHandSide) {
  auto r = z4();
  EXPECT_THROW(solve_linear(mat(r, 1, 1, {2}), mat(r, 2, 1, {2, 2})), DimensionError);
}

TEST(SolveLinear, AgreesWithEnumerationOverZ4) {
  auto r = z4();
  const auto naive = oracle::Ring::like(*r);
  Rng rng(11);
  auto check = [&](const RMatrix& a, const RMatrix& b) {
    std::vector<oracle::Elem> ob;
    for (std::size_t i = 0; i < b.rows(); ++i) ob.push_back(oracle::Ring::from_lib(b(i, 0), r->q()));
    const auto brute = oracle::solutions(naive, oracle::from_lib(a), a.cols(), ob);
    const auto outcome = solve_linear_certified(a, b);
    if (const auto* sol = std::get_if<LinearSolution>(&outcome)) {
      ASSERT_FALSE(brute.empty()) << a.format();
      EXPECT_EQ(a * sol->particular, b);
      for (const auto& g : sol->kernel) EXPECT_TRUE((a * g).is_zero());
      // particular + span(kernel) covers every solution
      std::set<std::vector<oracle::Elem>> spanned;
      std::vector<std::vector<oracle::Elem>> combos = oracle::all_vectors(naive, sol->kernel.size());
      for (const auto& c : combos) {
        RMatrix x = sol->particular;
        for (std::size_t i = 0; i < c.size(); ++i) x = x + sol->kernel[i].scaled(naive.to_lib(c[i]));
        std::vector<oracle::Elem> v;
        for (std::size_t i = 0; i < x.rows(); ++i) v.push_back(oracle::Ring::from_lib(x(i, 0), r->q()));
        spanned.insert(v);
      }
      EXPECT_EQ(spanned.size(), brute.size()) << a.format();
    } else {
      ASSERT_TRUE(brute.empty()) << a.format();
      EXPECT_TRUE(verify_infeasibility(a, b, std::get<Infeasibility>(outcome)));
    }
  };
  // exhaustive for 1x1 and 1x2 / 2x1 systems
  for (std::size_t rows = 1; rows <= 2; ++rows) {
    for (std::size_t cols = 1; cols + rows <= 3; ++cols) {
      for (const auto& a : all_matrices(r, rows, cols)) {
        for (const auto& b : all_matrices(r, rows, 1)) check(a, b);
      }
    }
  }
  for (int t = 0; t < 400; ++t) {
    const std::size_t rows = rng.between(1, 4), cols = rng.between(1, 4);
    RMatrix a = random_matrix(r, rows, cols, rng);
    if (rng.coin()) a = a.scaled(r->p()) + random_matrix(r, rows, cols, rng).scaled(rng.coin() ? r->p() : r->zero());
    RMatrix b = rng.coin() ? a * random_matrix(r, cols, 1, rng) : random_matrix(r, rows, 1, rng);
    check(a, b);
  }
}
