#pragma once

#include <set>
#include <string>
#include <vector>

#include "pfkit/invertible.hpp"
#include "pfkit/poly_core.hpp"

namespace pfkit {

struct IndexSets {
  long d_hat = 0;
  std::vector<long> q_hat;
  std::vector<std::vector<BigRat>> Q;   // Q_i = { j d̂/q̂_i : j = 1..q̂_i }
  std::vector<std::vector<BigRat>> QZ;  // integral part of Q_i
  std::vector<std::vector<BigRat>> QQ;  // non-integral part of Q_i
  std::set<long> union_QZ;
  std::set<long> I;  // {0..d̂-1} ∩ ∪_i { j d̂/q̂_i : j = 0..q̂_i-1 } ∩ Z
  std::set<long> V;  // {1..d̂} minus ∪ QZ
  long u = 0;
  long v = 0;
};

IndexSets index_sets(const ExponentMatrix& m);
long pf_order(const ExponentMatrix& m);

struct AlphaBeta {
  std::vector<BigRat> alphas;  // sorted multiset
  std::vector<BigRat> betas;   // sorted
};

AlphaBeta alpha_beta(const ExponentMatrix& m);
// Same sets built as A minus (A ∩ D) for the multiset A of all shifts j d̂/q̂_i
// (j = 0..q̂_i-1). With D = {0..d̂-1} this agrees with alpha_beta; with D = {1..d̂}
// no zero is cancelled, so n zeros remain among the alphas and d̂ among the betas.
AlphaBeta alpha_beta_by_intersection(const ExponentMatrix& m, bool d_from_zero);
// Multiset of all shifts j d̂/q̂_i, j = 0..q̂_i-1, sorted.
std::vector<BigRat> all_shifts(const IndexSets& ix);

// c_left s^{s_power} prod(δ + alpha) - c_right prod(δ - beta).
struct PFOperator {
  BigRat c_left = 1;
  long s_power = 0;
  std::vector<BigRat> alphas;
  BigRat c_right = 1;
  std::vector<BigRat> betas;
};

PFOperator pf_operator(const ExponentMatrix& m);
PFOperator gkz_operator(const ExponentMatrix& m);

// Differential operator sum_i p_i(s) δ^i with s-coefficients written on the left.
using DOp = std::vector<SPoly>;
DOp to_dop(const PFOperator& op);
DOp dop_mul(const DOp& a, const DOp& b);
DOp dop_linear(const BigRat& shift);  // δ + shift
bool dop_equal(const DOp& a, const DOp& b);

// Projective normal form: integer coefficients with content 1, and the leading
// s-coefficient of the top δ-coefficient positive.
struct ExpandedOperator {
  std::vector<SPoly> coefficients;  // indexed by δ power
  long order() const { return static_cast<long>(coefficients.size()) - 1; }
  friend bool operator==(const ExpandedOperator& a, const ExpandedOperator& b) {
    return a.coefficients == b.coefficients;
  }
};

ExpandedOperator normalize_operator(const std::vector<SRat>& coefficients);
ExpandedOperator expand(const PFOperator& op);
bool projectively_equal(const PFOperator& a, const PFOperator& b);
std::string render_expanded(const ExpandedOperator& op);

// c0 prod(D - left) - c1 l prod(D + right), D = λ d/dλ, λ = (-s)^{-s_power}.
struct LambdaOperator {
  BigRat c0;
  std::vector<BigRat> left;
  BigRat c1;
  std::vector<BigRat> right;
};
LambdaOperator to_lambda(const PFOperator& op);
std::string render_lambda(const LambdaOperator& op);

// Compact text, e.g. "s^12 d^3(d+3)(d+6)(d+9) - 2^8 3^9 (d-1)(d-2)(d-5)(d-7)(d-10)(d-11)".
// The two scalars are divided by their common integer factor before printing.
std::string render_operator(const PFOperator& op);
// Accepts the rendering above plus the table variants: '·', '*' or '\cdot' between
// prime powers, "δ" or "\delta" for d, "\frac{a}{b}" shifts, and '+' between the summands.
PFOperator parse_operator(const std::string& text);

std::string render_factored_integer(const BigInt& v);

}  // namespace pfkit
