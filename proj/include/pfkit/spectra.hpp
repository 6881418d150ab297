#pragma once

#include <map>
#include <string>
#include <vector>

#include "pfkit/invertible.hpp"
#include "pfkit/pf_formula.hpp"

namespace pfkit {

// Multiset of elements of Q/Z, each stored as a reduced fraction in [0,1), sorted.
struct CyclotomicMultiset {
  std::vector<BigRat> elements;
  static CyclotomicMultiset from(const std::vector<BigRat>& values, const BigRat& divisor = 1);
  bool closed_under_conjugation() const;
  bool all_zero() const;
  friend bool operator==(const CyclotomicMultiset& a, const CyclotomicMultiset& b) { return a.elements == b.elements; }
};

// prod(1 - t^nu) / prod(1 - t^eta).
struct UnityProductForm {
  std::vector<long> numerator;
  std::vector<long> denominator;
  friend bool operator==(const UnityProductForm& a, const UnityProductForm& b) {
    return a.numerator == b.numerator && a.denominator == b.denominator;
  }
};

std::string render_unity_form(const UnityProductForm& f);
UnityProductForm parse_unity_form(const std::string& text);
// Cancels equal orders between numerator and denominator and sorts both lists.
UnityProductForm reduce_unity_form(std::vector<long> num, std::vector<long> den);
// Exponents c_m with prod (1 - t^m)^{c_m}.
std::map<long, long> unity_exponents(const UnityProductForm& f);

struct HodgeProfile {
  std::vector<long> p_values;  // p(1..u)
  long p_plus = 0;
  long p_minus = 0;
  std::vector<long> h;  // h[j - p_minus] = |p^{-1}(j)|
};

HodgeProfile hodge_profile(const std::vector<BigRat>& alphas, const std::vector<BigRat>& betas, int n);

struct PoincareSeries {
  UnityProductForm unreduced;  // (1 - t^d) / prod (1 - t^{q_i})
  CyclotomicMultiset zeros;    // after cancelling common roots with multiplicity
  CyclotomicMultiset poles;
};
PoincareSeries poincare_series(const WeightSystem& w);

struct ChiForms {
  UnityProductForm chi0;
  UnityProductForm chi_inf;
};
// Roots of chi0: exp(2 pi i beta/d̂); roots of chi_inf: exp(2 pi i alpha/d̂).
// `orders_bound` is the lcm whose divisors are candidate orders.
ChiForms chi_forms(const std::vector<BigRat>& alphas, const std::vector<BigRat>& betas, long d_hat,
                   long orders_bound = 0);
ChiForms chi_forms(const ExponentMatrix& m);
// Writes the multiset of roots as prod (1-t^m)^{c_m}. Throws std::invalid_argument when the
// multiset is not a union of full Galois orbits (no such form exists then).
UnityProductForm solve_unity_form(const CyclotomicMultiset& roots, long orders_bound);
// chi0 / chi_inf compared to (1 - t^{d̂}) / prod (1 - t^{q̂_i}).
bool quotient_identity_holds(const ChiForms& chi, const WeightSystem& dual);

struct Monodromy {
  CyclotomicMultiset at_zero;
  CyclotomicMultiset at_infinity;
};
Monodromy monodromy_eigenvalues(const ExponentMatrix& m);

long euler_phi(long n);
long moebius(long n);
std::vector<long> divisors(long n);

}  // namespace pfkit
