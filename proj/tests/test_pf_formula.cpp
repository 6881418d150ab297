#include <gtest/gtest.h>

#include <map>

#include "pfkit/corpus.hpp"
#include "pfkit/pf_formula.hpp"
#include "pfkit/properties.hpp"
#include "pfkit/spectra.hpp"

using namespace pfkit;

namespace {

ExponentMatrix poly(const std::string& s) { return parse_polynomial(s).matrix; }

std::vector<BigRat> rats(std::initializer_list<long> v) {
  std::vector<BigRat> out;
  for (long x : v) out.push_back(BigRat(x));
  return out;
}

// Operators as {(c, b) -> coefficient of s^c δ^b}, multiplied with δ^b s^c = s^c (δ + c)^b.
using Weyl = std::map<std::pair<long, long>, BigRat>;

Weyl weyl_from(const ExpandedOperator& op) {
  Weyl w;
  for (long b = 0; b <= op.order(); ++b)
    for (int c = 0; c <= op.coefficients[b].degree(); ++c)
      if (op.coefficients[b].coeff(c) != 0) w[{c, b}] = op.coefficients[b].coeff(c);
  return w;
}

Weyl weyl_mul(const Weyl& a, const Weyl& b) {
  Weyl r;
  for (const auto& [ka, va] : a)
    for (const auto& [kb, vb] : b) {
      // s^ca δ^ba s^cb δ^bb = s^(ca+cb) (δ+cb)^ba δ^bb
      const long ba = ka.second, cb = kb.first;
      BigInt binom = 1;
      for (long k = 0; k <= ba; ++k) {
        if (k > 0) binom = binom * (ba - k + 1) / k;
        BigRat term = va * vb * BigRat(binom) * BigRat(int_pow(BigInt(cb), static_cast<unsigned long>(ba - k)));
        if (term != 0) r[{ka.first + cb, k + kb.second}] += term;
      }
    }
  for (auto it = r.begin(); it != r.end();)
    it = it->second == 0 ? r.erase(it) : std::next(it);
  return r;
}

ExpandedOperator to_expanded(const Weyl& w) {
  long order = 0;
  for (const auto& [k, v] : w) order = std::max(order, k.second);
  std::vector<SRat> coeffs(order + 1);
  for (const auto& [k, v] : w) coeffs[k.second] += SRat(SPoly::monomial(v, static_cast<int>(k.first)));
  return normalize_operator(coeffs);
}

// Constant term of (g / prod x)^k by expanding g^k over all compositions of k.
BigInt constant_term(const ExponentMatrix& m, long k) {
  const int n = m.n();
  BigInt total = 0;
  std::vector<long> c(n, 0);
  std::function<void(int, long)> rec = [&](int j, long left) {
    if (j == n - 1) {
      c[j] = left;
      std::vector<long> e(n, 0);
      for (int r = 0; r < n; ++r)
        for (int v = 0; v < n; ++v) e[v] += c[r] * m.at(r, v);
      for (int v = 0; v < n; ++v)
        if (e[v] != k) return;
      BigInt coef;
      mpz_fac_ui(coef.get_mpz_t(), static_cast<unsigned long>(k));
      for (int r = 0; r < n; ++r) {
        BigInt f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(c[r]));
        coef /= f;
      }
      total += coef;
      return;
    }
    for (long x = 0; x <= left; ++x) {
      c[j] = x;
      rec(j + 1, left - x);
    }
  };
  rec(0, k);
  return total;
}

// The period of s Omega_0 / f is sum_k (-1)^k CT[(g/prod x)^k] s^{-k}. Applying
// sum_i p_i(s) δ^i and collecting s^{-m} must give zero.
void expect_annihilates_period(const ExponentMatrix& m, const ExpandedOperator& op, long terms) {
  std::vector<BigRat> a(terms);
  for (long k = 0; k < terms; ++k) a[k] = BigRat((k % 2 ? -1 : 1) * constant_term(m, k));
  long top = 0;
  for (const auto& p : op.coefficients) top = std::max<long>(top, p.degree());
  bool nontrivial = false;
  for (long mm = -top; mm + top < terms; ++mm) {
    BigRat sum = 0;
    for (long b = 0; b <= op.order(); ++b)
      for (int c = 0; c <= op.coefficients[b].degree(); ++c) {
        long k = mm + c;  // s^c s^{-k} = s^{-mm}
        if (k < 0 || k >= terms) continue;
        BigRat pw = 1;
        for (long i = 0; i < b; ++i) pw *= BigRat(-k);
        sum += op.coefficients[b].coeff(c) * pw * a[k];
        if (a[k] != 0 && k > 0) nontrivial = true;
      }
    EXPECT_EQ(sum, 0) << "coefficient of s^" << -mm << " for " << render_polynomial(m);
  }
  EXPECT_TRUE(nontrivial);
}

}  // namespace

TEST(IndexSets, WorkedExample) {
  auto m = poly("x1^5*x2+x2^4*x3+x3^8+x4^2");
  auto ix = index_sets(m);
  EXPECT_EQ(ix.d_hat, 10);
  EXPECT_EQ(ix.q_hat, (std::vector<long>{2, 2, 1, 5}));
  EXPECT_EQ(ix.u, 4);
  EXPECT_EQ(ix.v, 4);
  EXPECT_EQ(ix.I, (std::set<long>{0, 2, 4, 5, 6, 8}));
  EXPECT_EQ(ix.V, (std::set<long>{1, 3, 7, 9}));
  auto ab = alpha_beta(m);
  EXPECT_EQ(ab.alphas, rats({0, 0, 0, 5}));
  EXPECT_EQ(ab.betas, rats({1, 3, 7, 9}));
}

TEST(IndexSets, IntersectionRouteNeedsZeroStart) {
  auto m = poly("x1^5*x2+x2^4*x3+x3^8+x4^2");
  auto from_zero = alpha_beta_by_intersection(m, true);
  EXPECT_EQ(from_zero.alphas, alpha_beta(m).alphas);
  EXPECT_EQ(from_zero.betas, alpha_beta(m).betas);
  auto from_one = alpha_beta_by_intersection(m, false);
  EXPECT_EQ(from_one.alphas, rats({0, 0, 0, 0, 5}));
  EXPECT_EQ(from_one.betas, rats({1, 3, 7, 9, 10}));
}

TEST(PFOperator, RendersTableForm) {
  EXPECT_EQ(render_operator(pf_operator(poly("x1^12+x2^4+x3^2*x4+x3*x4^2"))),
            "s^12 d^3(d+3)(d+6)(d+9) - 2^8 3^9 (d-1)(d-2)(d-5)(d-7)(d-10)(d-11)");
  EXPECT_EQ(render_operator(pf_operator(poly("x1^4+x2^4+x3^4+x4^4"))), "s^4 d^3 - 2^8 (d-1)(d-2)(d-3)");
  EXPECT_EQ(render_operator(pf_operator(poly("x1^3+x2^3+x3^3"))), "s^3 d^2 + 3^3 (d-1)(d-2)");
}

TEST(PFOperator, WorkedExampleExpanded) {
  // (c_q s^10 - c_d) d^4 + (5 c_q s^10 + 20 c_d) d^3 - 130 c_d d^2 + 300 c_d d - 189 c_d
  const BigInt cq = 50000, cd("10000000000");
  auto op = expand(pf_operator(poly("x1^5*x2+x2^4*x3+x3^8+x4^2")));
  auto sp = [](const BigInt& a, const BigInt& b) {  // a s^10 + b
    std::vector<BigRat> c(11);
    c[0] = b;
    c[10] = a;
    return SPoly(c);
  };
  std::vector<SRat> want{SRat(sp(0, -189 * cd)), SRat(sp(0, 300 * cd)), SRat(sp(0, -130 * cd)),
                         SRat(sp(5 * cq, 20 * cd)), SRat(sp(cq, -cd))};
  EXPECT_EQ(op, normalize_operator(want));
}

TEST(PFOperator, ParseRenderRoundTrip) {
  for (const char* text : {"s^12 d^3 (d+3)(d+6)(d+9) - 2^8 3^9 (d-1)(d-2)(d-5)(d-7)(d-10)(d-11)",
                           "3^6 5^5 s^16 d^3 (d+8/3)(d+16/5) - 2^50 (d-1)(d-2)",
                           "s^{4}\\delta^3-2^{8}(\\delta-1)(\\delta-2)(\\delta-3)",
                           "s^{15}δ^3(δ+\\frac{5}{2}) − 3^{6}\\cdot 5^{10}(δ-1)(δ-2)(δ-4)(δ-7)"}) {
    PFOperator op = parse_operator(text);
    EXPECT_EQ(expand(parse_operator(render_operator(op))), expand(op)) << text;
  }
  EXPECT_THROW(parse_operator("s^4 d^3 - 2^8 (d-1)(d2)"), ParseError);
  EXPECT_THROW(parse_operator("d^3 - 2^8 (d-1)"), ParseError);
}

TEST(PFOperator, ProjectiveEquality) {
  PFOperator a = parse_operator("s^4 d^3 - 2^8 (d-1)(d-2)(d-3)");
  PFOperator b = a;
  b.c_left *= 7;
  b.c_right *= 7;
  EXPECT_TRUE(projectively_equal(a, b));
  b.c_right *= 2;
  EXPECT_FALSE(projectively_equal(a, b));
}

TEST(LambdaForm, FermatQuartic) {
  LambdaOperator l = to_lambda(pf_operator(poly("x1^4+x2^4+x3^4+x4^4")));
  EXPECT_EQ(l.left, rats({0, 0, 0}));
  EXPECT_EQ(l.right, (std::vector<BigRat>{make_rat(1, 4), make_rat(1, 2), make_rat(3, 4)}));
  EXPECT_EQ(render_lambda(l), "D^3 - 2^8 l (D+1/4)(D+1/2)(D+3/4)");
}

TEST(GKZ, FermatQuarticForm) {
  EXPECT_EQ(render_operator(gkz_operator(poly("x1^4+x2^4+x3^4+x4^4"))), "s^4 d^4 - 2^8 (d-1)(d-2)(d-3)(d-4)");
}

TEST(GKZ, IsLeftMultipleOfPF) {
  // GKZ = prod_{k in I} (δ + k - d̂) · PF up to a scalar, checked with an independent Weyl product.
  std::vector<ExponentMatrix> cases;
  for (const auto& e : filter_corpus(builtin_corpus(), {"ELL:*", "EX:*", "YON:1", "YON:3", "YON:6", "ASD:U12"}))
    cases.push_back(parse_polynomial(e.get("poly"), e.vars()).matrix);
  RandomCYOptions o;
  o.max_dhat = 24;
  o.max_n = 4;
  for (const auto& m : random_invertible(25, 3, o)) cases.push_back(m);
  for (const auto& m : cases) {
    IndexSets ix = index_sets(m);
    Weyl r{{{0, 0}, BigRat(1)}};
    for (long k : ix.I) r = weyl_mul(r, Weyl{{{0, 1}, BigRat(1)}, {{0, 0}, BigRat(k - ix.d_hat)}});
    Weyl prod = weyl_mul(r, weyl_from(expand(pf_operator(m))));
    EXPECT_EQ(to_expanded(prod), expand(gkz_operator(m))) << render_polynomial(m);
  }
}

TEST(GKZ, SpecVariantIsNotALeftMultiple) {
  auto m = poly("x1^4+x2^4+x3^4+x4^4");
  PFOperator variant = parse_operator("s^4 d^4 - 2^8 d(d-1)(d-2)(d-3)");
  Weyl r{{{0, 1}, BigRat(1)}, {{0, 0}, BigRat(-4)}};
  EXPECT_NE(to_expanded(weyl_mul(r, weyl_from(expand(pf_operator(m))))), expand(variant));
}

TEST(PeriodSeries, ClosedFormAnnihilatesPeriod) {
  std::vector<ExponentMatrix> cases;
  for (const auto& e : filter_corpus(builtin_corpus(), {"ELL:*", "EX:*", "YON:1", "YON:3", "YON:5", "YON:7"}))
    cases.push_back(parse_polynomial(e.get("poly"), e.vars()).matrix);
  RandomCYOptions o;
  o.max_dhat = 12;
  o.max_n = 4;
  for (const auto& m : random_invertible(10, 17, o)) cases.push_back(m);
  for (const auto& m : cases) {
    const long dh = index_sets(m).d_hat;
    expect_annihilates_period(m, expand(pf_operator(m)), 3 * dh + 1);
  }
}

TEST(PeriodSeries, WrongOperatorIsDetected) {
  auto m = poly("x1^4+x2^4+x3^4+x4^4");
  PFOperator bad = parse_operator("s^4 d^3 - 2^8 (d-1)(d-2)(d-3)");
  bad.c_right *= 2;
  const ExpandedOperator op = expand(bad);
  // Recompute the residual by hand at s^{-4}: must be nonzero.
  std::vector<BigRat> a(9);
  for (long k = 0; k < 9; ++k) a[k] = BigRat((k % 2 ? -1 : 1) * constant_term(m, k));
  EXPECT_EQ(a[4], BigRat(24));
  BigRat sum = 0;
  for (long b = 0; b <= op.order(); ++b) {
    BigRat pw0 = 1, pw4 = 1, pw8 = 1;
    for (long i = 0; i < b; ++i) {
      pw4 *= -4;
      pw8 *= -8;
    }
    (void)pw0;
    sum += op.coefficients[b].coeff(0) * pw4 * a[4] + op.coefficients[b].coeff(4) * pw8 * a[8];
  }
  EXPECT_NE(sum, 0);
}
