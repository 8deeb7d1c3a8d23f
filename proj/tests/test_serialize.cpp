#include <gtest/gtest.h>

#include "nangle/axioms.hpp"
#include "nangle/error.hpp"
#include "nangle/random.hpp"
#include "nangle/serialize.hpp"
#include "support.hpp"

using namespace nangle;
using testing_support::mat;
using testing_support::scalar_components;
using testing_support::scalars;

TEST(Json, ElementEncodings) {
  auto z9 = Ring::parse("Z/9");
  EXPECT_EQ(to_json(*z9, z9->from_value(6)), json(6));
  EXPECT_EQ(element_from_json(*z9, json(6)), z9->from_value(6));
  EXPECT_EQ(element_from_json(*z9, json(-1)), z9->from_value(8));
  EXPECT_EQ(element_from_json(*z9, json(15)), z9->from_value(6));
  EXPECT_EQ(element_from_json(*z9, json("7")), z9->from_value(7));

  auto d4 = Ring::parse("GF(4)[x]/(x^2)");
  const RingElement x{3, 2};
  EXPECT_EQ(to_json(*d4, x), json::parse("[3, 2]"));
  EXPECT_EQ(element_from_json(*d4, json::parse("[3, 2]")), x);
  EXPECT_EQ(element_from_json(*d4, json(2)), (RingElement{2, 0}));
  EXPECT_EQ(element_from_json(*d4, json("[1,1]")), (RingElement{1, 1}));
  EXPECT_THROW(element_from_json(*d4, json::parse("[4, 0]")), ParseError);
  EXPECT_THROW(element_from_json(*d4, json::parse("[1]")), ParseError);
  EXPECT_THROW(element_from_json(*d4, json("x+1")), ParseError);
  EXPECT_THROW(element_from_json(*z9, json(1.5)), ParseError);
}

TEST(Json, MatrixRoundTrip) {
  auto r = Ring::parse("Z/25");
  Rng rng(71);
  for (int t = 0; t < 20; ++t) {
    const auto m = random_matrix(r, rng.between(0, 3), rng.between(0, 3), rng);
    EXPECT_EQ(matrix_from_json(r, to_json(m)), m);
  }
  EXPECT_THROW(matrix_from_json(r, json::parse(R"({"rows":2,"cols":2,"entries":[1,2,3]})")), ParseError);
  EXPECT_THROW(matrix_from_json(r, json::parse(R"({"rows":2,"entries":[1,2]})")), ParseError);
  EXPECT_THROW(matrix_from_json(r, json::parse(R"({"rows":-1,"cols":0,"entries":[]})")), ParseError);
}

TEST(Json, SequenceAndMorphismRoundTrip) {
  Rng rng(73);
  for (const char* spec : {"Z/4", "Z/9", "GF(8)[x]/(x^2)"}) {
    auto r = Ring::parse(spec);
    for (int t = 0; t < 10; ++t) {
      const auto x = random_candidate(r, rng.between(3, 5), 2, rng);
      const auto j = to_json(x);
      EXPECT_EQ(j.at("ring"), r->spec());
      EXPECT_EQ(sequence_from_json(j), x);
      EXPECT_EQ(sequence_from_json(json::parse(j.dump())), x);
      const auto phi = iso_morphism(x, random_iso(x, rng));
      EXPECT_EQ(morphism_from_json(to_json(phi)), phi);
    }
  }
}

TEST(Json, SequenceErrors) {
  auto r = Ring::parse("Z/4");
  const auto x = scalars(r, {2, 2, 2});
  auto j = to_json(x);
  j["n"] = 4;
  EXPECT_THROW(sequence_from_json(j), ParseError);
  j = to_json(x);
  j["ring"] = "Z/6";
  EXPECT_THROW(sequence_from_json(j), ParseError);
  j = to_json(x);
  j.erase("ring");
  EXPECT_THROW(sequence_from_json(j), ParseError);
  EXPECT_EQ(sequence_from_json(j, r), x);
  j = to_json(x);
  j["maps"][1] = to_json(mat(r, 2, 1, {2, 2}));
  EXPECT_THROW(sequence_from_json(j), DimensionError);

  json m{{"source", to_json(x)}, {"target", to_json(x)}, {"phis", {to_json(mat(r, 1, 1, {1})), to_json(mat(r, 1, 1, {3})), to_json(mat(r, 1, 1, {1}))}}};
  EXPECT_NO_THROW(morphism_from_json(m));
  auto z9 = Ring::parse("Z/9");
  const auto y = scalars(z9, {3, 3, 3});
  m = {{"source", to_json(y)}, {"target", to_json(y)}, {"phis", {to_json(mat(z9, 1, 1, {1})), to_json(mat(z9, 1, 1, {2})), to_json(mat(z9, 1, 1, {1}))}}};
  EXPECT_THROW(morphism_from_json(m), PreconditionError);
}

TEST(Json, HomotopyRoundTrip) {
  auto r = Ring::parse("Z/4");
  const Homotopy h{scalar_components(r, {1, 0, 1, 0})};
  const auto back = homotopy_from_json(r, to_json(h));
  ASSERT_EQ(back.thetas.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(back.thetas[i], h.thetas[i]);
}

TEST(Json, CertificateFields) {
  auto r = Ring::parse("Z/9");
  const auto x = direct_sum(rotate_left(scalars(r, {3, 3, 3})), trivial(r, 3, {1, 2}));
  const auto j = to_json(classify(x));
  EXPECT_EQ(j.at("verdict"), "in_nu");
  EXPECT_EQ(j.at("u"), 2);
  ASSERT_EQ(j.at("split").at("trivials").size(), 1u);
  EXPECT_EQ(j.at("split").at("trivials")[0].at("position"), 3);
  EXPECT_TRUE(j.contains("standardizing_iso"));
  EXPECT_EQ(to_json(classify(scalars(r, {1, 1, 1}))).at("reason"), "not-candidate");
}

TEST(Json, ReportsAndEnumerations) {
  auto r = Ring::parse("Z/4");
  auto j = to_json(*r, algebraicity_verdict(r, 6));
  EXPECT_EQ(j.at("verdict"), "inconclusive");
  EXPECT_EQ(j.at("d"), 2);
  EXPECT_EQ(j.at("witness"), json::parse("[1, 0, 1]"));
  j = to_json(*r, algebraicity_verdict(r, 5));
  EXPECT_EQ(j.at("verdict"), "not_algebraic");
  EXPECT_TRUE(j.at("certificate").contains("functional"));

  j = to_json(enumerate_angulations(Ring::parse("Z/9"), 4));
  EXPECT_EQ(j.at("kind"), "classes");
  EXPECT_EQ(j.at("count"), 2);
  j = to_json(enumerate_angulations(Ring::parse("Z/9"), 3));
  EXPECT_EQ(j.at("kind"), "none_exist");
  EXPECT_EQ(j.at("witness").size(), 4u);
}

TEST(Json, AxiomReportDeterministic) {
  auto r = Ring::parse("Z/4");
  AxiomSuiteOptions opts;
  opts.trials = 20;
  opts.seed = 99;
  opts.threads = 1;
  const auto a = to_json(run_axiom_suite(r, 4, r->one(), opts)).dump();
  opts.threads = 3;
  const auto b = to_json(run_axiom_suite(r, 4, r->one(), opts)).dump();
  // thread count is part of the options echo; compare the rest
  auto ja = json::parse(a), jb = json::parse(b);
  ja.erase("options");
  jb.erase("options");
  EXPECT_EQ(ja, jb);
}
