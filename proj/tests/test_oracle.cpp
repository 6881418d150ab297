#include <gtest/gtest.h>

#include "pfkit/corpus.hpp"
#include "pfkit/griffiths_dwork.hpp"
#include "pfkit/milnor.hpp"
#include "pfkit/properties.hpp"

using namespace pfkit;

namespace {

ExponentMatrix corpus_poly(const std::string& id) {
  auto es = filter_corpus(builtin_corpus(), {id});
  EXPECT_EQ(es.size(), 1u) << id;
  return parse_polynomial(es.at(0).get("poly"), es.at(0).vars()).matrix;
}

const ExponentMatrix kChain4 = parse_polynomial("x1^5*x2+x2^4*x3+x3^8+x4^2").matrix;

}  // namespace

TEST(Oracle, SmallCorpusAgreesWithClosedForm) {
  for (const char* id : {"ELL:E6~", "ELL:E7~", "ELL:E8~", "YON:1", "YON:3", "YON:5", "EX:chain4"}) {
    const ExponentMatrix m = corpus_poly(id);
    OracleResult r = picard_fuchs_oracle(m);
    EXPECT_EQ(r.op, expand(pf_operator(m))) << id;
    EXPECT_EQ(r.order, index_sets(m).u) << id;
    EXPECT_EQ(r.nullspace_dimension, 1) << id;
    EXPECT_EQ(r.lifts, r.certificates_checked);
  }
}

TEST(Oracle, RandomInstancesAgree) {
  RandomCYOptions o;
  o.min_n = 3;
  o.max_n = 4;
  o.max_dhat = 12;
  for (const auto& m : random_invertible(8, 101, o))
    EXPECT_EQ(picard_fuchs_oracle(m).op, expand(pf_operator(m))) << render_polynomial(m);
}

TEST(Oracle, WorkedExampleRelationAndDenominators) {
  OracleOptions opts;
  opts.keep_ledger = true;
  OracleResult r = picard_fuchs_oracle(kChain4, opts);
  ASSERT_EQ(r.order, 4);
  // (c_q s^10 - c_d) d^4 + (5 c_q s^10 + 20 c_d) d^3 - 130 c_d d^2 + 300 c_d d - 189 c_d
  // with c_q = 50000, c_d = 10^10, divided by c_q.
  const SPoly s10 = SPoly::monomial(1, 10);
  const SPoly delta = s10 - SPoly(200000);
  std::vector<SRat> want{SRat(SPoly(-37800000)), SRat(SPoly(60000000)), SRat(SPoly(-26000000)),
                         SRat(s10 * SPoly(5) + SPoly(4000000)), SRat(delta)};
  EXPECT_EQ(r.op, normalize_operator(want));

  EXPECT_EQ(r.kbases.size(), 3u);
  EXPECT_EQ(r.kbases[0].size() + r.kbases[1].size() + r.kbases[2].size(), 5u);
  // F_3 needs one division by Δ, F_4 two.
  for (const auto& c : r.form_coordinates[3])
    if (!c.is_zero()) EXPECT_TRUE(c.den().is_one() || c.den() == delta) << c.str();
  bool squared = false;
  for (const auto& c : r.form_coordinates[4]) squared |= c.den() == delta * delta;
  EXPECT_TRUE(squared);
  for (int k = 0; k < 3; ++k)
    for (const auto& c : r.form_coordinates[k]) EXPECT_TRUE(c.is_polynomial());

  // δ^i ω = sum_m r(i, m) F_m, and the relation annihilates these coordinate vectors.
  const DeltaMatrix dm = delta_matrix(static_cast<int>(r.order));
  for (size_t col = 0; col < r.form_coordinates[0].size(); ++col) {
    SRat sum;
    for (int i = 0; i <= r.order; ++i)
      for (int m = 0; m <= i; ++m) sum += r.relation[i] * SRat(BigRat(dm.r(i, m))) * r.form_coordinates[m][col];
    EXPECT_TRUE(sum.is_zero()) << "column " << col;
  }
  EXPECT_FALSE(r.ledger.empty());
  for (const auto& rec : r.ledger)
    if (!rec.cofactors.empty())
      for (const auto& c : rec.cofactors)
        for (const auto& t : c.terms()) {
          const SPoly& d = t.second.den();
          EXPECT_TRUE(d.is_one() || d == delta || d == delta * delta) << d.str();
        }
}

TEST(Oracle, IndependentOfMonomialOrder) {
  const ExponentMatrix m = corpus_poly("YON:3");
  const ExpandedOperator base = picard_fuchs_oracle(m).op;
  for (std::vector<int> prio : {std::vector<int>{0, 1, 2, 3}, {2, 0, 3, 1}, {1, 3, 0, 2}}) {
    OracleOptions o;
    o.order_priority = prio;
    EXPECT_EQ(picard_fuchs_oracle(m, o).op, base);
  }
}

TEST(Oracle, LimitsAreEnforced) {
  OracleOptions tight;
  tight.timeout_seconds = 0.05;
  EXPECT_THROW(picard_fuchs_oracle(corpus_poly("ASD:Q10"), tight), OracleTimeout);
  OracleOptions small;
  small.max_dhat = 8;
  EXPECT_THROW(picard_fuchs_oracle(kChain4, small), OracleError);
  EXPECT_THROW(picard_fuchs_oracle(parse_polynomial("x1^5+x2^5+x3^5+x4^5+x5^5").matrix), OracleError);
  EXPECT_THROW(picard_fuchs_oracle(parse_polynomial("x1^7+x2^3+x3^2").matrix), NotCalabiYau);
}

TEST(PeriodOrbit, ComputedBasisSpans) {
  for (const char* id : {"EX:chain4", "ASD:U12"}) {
    const ExponentMatrix m = corpus_poly(id);
    const BasisCatalog c = basis_monomials(m);
    EXPECT_TRUE(spans_period_orbit(m, c.by_level.at(2))) << id;
  }
}

TEST(PeriodOrbit, RejectsWrongSets) {
  const ExponentMatrix m = kChain4;
  auto level2 = basis_monomials(m).by_level.at(2);
  ASSERT_EQ(level2.size(), 2u);
  // Too few forms.
  EXPECT_FALSE(spans_period_orbit(m, {level2[0]}));
  // x4^2 has the right degree but does not complete the set.
  EXPECT_FALSE(spans_period_orbit(m, {level2[0], Exponent{0, 0, 0, 2}}));
}
