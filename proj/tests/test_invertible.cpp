#include <gtest/gtest.h>

#include "pfkit/invertible.hpp"
#include "pfkit/properties.hpp"

using namespace pfkit;

namespace {
const std::vector<std::string> kWXYZ{"w", "x", "y", "z"};
}

TEST(Parse, ReordersIntoDiagonalForm) {
  auto p = parse_polynomial("x3^8+x4^2+x1^5*x2+x2^4*x3");
  EXPECT_EQ(p.matrix.rows(), (std::vector<std::vector<int>>{{5, 1, 0, 0}, {0, 4, 1, 0}, {0, 0, 8, 0}, {0, 0, 0, 2}}));
  EXPECT_EQ(render_polynomial(p.matrix), "x1^5*x2+x2^4*x3+x3^8+x4^2");
  EXPECT_EQ(p.matrix.link(0), 1);
  EXPECT_EQ(p.matrix.link(3), -1);
}

TEST(Parse, NamedVariables) {
  auto p = parse_polynomial("w^16+x^4+y^2*z+x*z^2", kWXYZ);
  EXPECT_EQ(render_polynomial_compact(p.matrix, kWXYZ), "w^16+x^4+y^2z+z^2x");
  EXPECT_EQ(parse_polynomial(render_polynomial(p.matrix, kWXYZ), kWXYZ).matrix, p.matrix);
}

TEST(Parse, ErrorsCarryPositions) {
  try {
    parse_polynomial("x1^2+x2^^2");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position, 8u);
  }
  EXPECT_THROW(parse_polynomial("x1^2+"), ParseError);
  EXPECT_THROW(parse_polynomial("x1^2+x1*x2"), NotInvertible);
  EXPECT_THROW(parse_polynomial("x1^2*x2^2+x2^3"), NotInvertible);
  EXPECT_THROW(parse_polynomial("x1^2*x2*x3+x2^2+x3^2"), NotInvertible);
  EXPECT_THROW(parse_polynomial("x1^2*x3+x2^2*x3+x3^2"), NotInvertible);
}

TEST(Decompose, ChainsAndLoops) {
  auto m = parse_polynomial("x1^5*x2+x2^4*x3+x3^8+x4^2").matrix;
  auto parts = decompose(m);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0], (AtomicPart{PartKind::Chain, {0, 1, 2}, {5, 4, 8}}));
  EXPECT_EQ(parts[1], (AtomicPart{PartKind::Chain, {3}, {2}}));
  auto loop = decompose(parse_polynomial("x1^2*x2+x2^3*x3+x3^4*x1").matrix);
  ASSERT_EQ(loop.size(), 1u);
  EXPECT_EQ(loop[0].kind, PartKind::Loop);
  EXPECT_EQ(loop[0].exponents, (std::vector<int>{2, 3, 4}));
}

TEST(Weights, KnownRows) {
  auto w = weights(parse_polynomial("x1^5*x2+x2^4*x3+x3^8+x4^2").matrix);
  EXPECT_EQ(w.q, (std::vector<long>{5, 7, 4, 16}));
  EXPECT_EQ(w.d, 32);
  EXPECT_TRUE(is_calabi_yau(w));
  auto e12 = weights(parse_polynomial("w^42+x^7+y^3+z^2", kWXYZ).matrix);
  EXPECT_EQ(e12.q, (std::vector<long>{1, 6, 14, 21}));
  EXPECT_EQ(e12.d, 42);
  auto bad = parse_polynomial("x1^7+x2^3+x3^2").matrix;
  EXPECT_FALSE(is_calabi_yau(weights(bad)));
  EXPECT_THROW(require_calabi_yau(bad), NotCalabiYau);
}

TEST(Transpose, WorkedExampleDual) {
  auto m = parse_polynomial("x1^5*x2+x2^4*x3+x3^8+x4^2").matrix;
  auto t = transpose(m);
  EXPECT_EQ(render_polynomial(t), "x1^5+x2^4*x1+x3^8*x2+x4^2");
  auto dw = weights(t);
  EXPECT_EQ(dw.q, (std::vector<long>{2, 2, 1, 5}));
  EXPECT_EQ(dw.d, 10);
  EXPECT_EQ(transpose(t), m);
  EXPECT_EQ(determinant(m), determinant(t));
}

TEST(StepVectors, S11) {
  auto m = parse_polynomial("w^16+x^4+y^2*z+x*z^2", kWXYZ).matrix;
  auto st = step_vectors(m);
  EXPECT_EQ(st[1], (std::vector<long>{1, -3, 1, 1}));
  EXPECT_EQ(st[2], (std::vector<long>{1, 1, -1, 0}));
  EXPECT_EQ(st[3], (std::vector<long>{1, 0, 1, -1}));
}

TEST(CanonicalSignature, InvariantUnderRenaming) {
  auto a = parse_polynomial("x1^5*x2+x2^4*x3+x3^8+x4^2").matrix;
  auto b = parse_polynomial("x4^5*x1+x1^4*x3+x3^8+x2^2").matrix;
  auto c = parse_polynomial("x1^5*x2+x2^8*x3+x3^4+x4^2").matrix;
  EXPECT_EQ(canonical_signature(a), canonical_signature(b));
  EXPECT_NE(canonical_signature(a), canonical_signature(c));
}

TEST(InvertibleProperty, RandomParseRenderRoundTrip) {
  RandomCYOptions o;
  o.non_cy_fraction = 0.2;
  for (const auto& m : random_invertible(300, 5, o)) {
    auto back = parse_polynomial(render_polynomial(m)).matrix;
    EXPECT_EQ(back, m) << render_polynomial(m);
    auto w = weights(m);
    // M q = d 1
    for (int i = 0; i < m.n(); ++i) {
      long s = 0;
      for (int j = 0; j < m.n(); ++j) s += m.at(i, j) * w.q[j];
      EXPECT_EQ(s, w.d);
    }
  }
}
