#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace pfkit {

using BigInt = mpz_class;
using BigRat = mpq_class;

BigRat make_rat(const BigInt& num, const BigInt& den = 1);
std::string to_string(const BigInt& v);
std::string to_string(const BigRat& v);
// Accepts "p" or "p/q".
BigRat parse_rat(const std::string& text);
BigInt int_pow(const BigInt& base, unsigned long e);

// Univariate polynomial in the deformation parameter s with rational coefficients.
class SPoly {
 public:
  SPoly() = default;
  SPoly(const BigRat& c);  // NOLINT(google-explicit-constructor): constants promote freely
  SPoly(long c) : SPoly(BigRat(c)) {}  // NOLINT
  explicit SPoly(std::vector<BigRat> coeffs);

  static SPoly s() { return monomial(1, 1); }
  static SPoly monomial(const BigRat& c, int k);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  const std::vector<BigRat>& coeffs() const { return c_; }
  BigRat coeff(int k) const;
  const BigRat& lead() const { return c_.back(); }
  // Power of s dividing the polynomial (0 for the zero polynomial).
  int valuation() const;
  size_t term_count() const;

  SPoly operator-() const;
  SPoly& operator+=(const SPoly& o);
  SPoly& operator-=(const SPoly& o);
  SPoly& operator*=(const SPoly& o);
  SPoly& operator*=(const BigRat& c);
  friend SPoly operator+(SPoly a, const SPoly& b) { return a += b; }
  friend SPoly operator-(SPoly a, const SPoly& b) { return a -= b; }
  friend SPoly operator*(const SPoly& a, const SPoly& b);
  friend bool operator==(const SPoly& a, const SPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const SPoly& a, const SPoly& b) { return !(a == b); }

  SPoly shifted(int k) const;  // multiply by s^k (k may be negative if divisible)
  SPoly monic() const;
  BigRat eval(const BigRat& at) const;
  SPoly derivative() const;
  SPoly pow(unsigned e) const;

  // Positive rational c with p / c having coprime integer coefficients; 0 for zero.
  BigRat content() const;
  SPoly primitive() const;

  static std::pair<SPoly, SPoly> divmod(const SPoly& a, const SPoly& b);
  // Exact division; throws std::domain_error if b does not divide a.
  static SPoly exact_div(const SPoly& a, const SPoly& b);
  // Monic gcd; gcd(0,0) = 0.
  static SPoly gcd(const SPoly& a, const SPoly& b);

  std::string str(const std::string& var = "s") const;

 private:
  void trim();
  std::vector<BigRat> c_;
};

// Element of Q(s): num/den reduced, den monic.
class SRat {
 public:
  SRat() : den_(1) {}
  SRat(const SPoly& num);  // NOLINT
  SRat(const BigRat& c) : SRat(SPoly(c)) {}  // NOLINT
  SRat(long c) : SRat(SPoly(c)) {}  // NOLINT
  SRat(const SPoly& num, const SPoly& den);

  const SPoly& num() const { return num_; }
  const SPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return is_polynomial() && num_.is_constant(); }
  bool is_one() const { return is_polynomial() && num_.is_one(); }
  // Cost proxy used for pivot choices.
  size_t weight() const;

  SRat operator-() const;
  SRat inverse() const;
  SRat& operator+=(const SRat& o);
  SRat& operator-=(const SRat& o);
  SRat& operator*=(const SRat& o);
  SRat& operator/=(const SRat& o);
  friend SRat operator+(SRat a, const SRat& b) { return a += b; }
  friend SRat operator-(SRat a, const SRat& b) { return a -= b; }
  friend SRat operator*(SRat a, const SRat& b) { return a *= b; }
  friend SRat operator/(SRat a, const SRat& b) { return a /= b; }
  friend bool operator==(const SRat& a, const SRat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const SRat& a, const SRat& b) { return !(a == b); }

  std::string str(const std::string& var = "s") const;

 private:
  void normalize();
  SPoly num_;
  SPoly den_;
};

constexpr int kMaxVars = 8;

struct Exponent {
  std::array<int32_t, kMaxVars> e{};
  int n = 0;

  Exponent() = default;
  explicit Exponent(int nvars) : n(nvars) {}
  Exponent(std::initializer_list<int> v);
  static Exponent from_vector(const std::vector<int>& v);
  std::vector<int> to_vector() const { return {e.begin(), e.begin() + n}; }

  int32_t& operator[](int i) { return e[i]; }
  int32_t operator[](int i) const { return e[i]; }
  int size() const { return n; }
  int total() const;
  bool is_zero() const { return total() == 0; }
  bool divides(const Exponent& o) const;

  friend Exponent operator+(Exponent a, const Exponent& b);
  friend Exponent operator-(Exponent a, const Exponent& b);  // caller checks divisibility
  friend bool operator==(const Exponent& a, const Exponent& b) { return a.n == b.n && a.e == b.e; }
  friend bool operator!=(const Exponent& a, const Exponent& b) { return !(a == b); }
  // Lexicographic; storage order only, not a monomial order.
  friend bool operator<(const Exponent& a, const Exponent& b) { return a.e < b.e; }
};

Exponent lcm(const Exponent& a, const Exponent& b);
long weighted_degree(const Exponent& m, const std::vector<long>& w);

struct ExponentHash {
  size_t operator()(const Exponent& m) const;
};

// Weighted degree with a reverse-lexicographic tie-break. `priority` lists the
// variables from the one compared first by the reverse-lex rule (default: last variable first).
class WeightedOrder {
 public:
  WeightedOrder() = default;
  explicit WeightedOrder(std::vector<long> weights, std::vector<int> priority = {});
  const std::vector<long>& weights() const { return w_; }
  const std::vector<int>& priority() const { return prio_; }
  long degree(const Exponent& m) const { return weighted_degree(m, w_); }
  // -1, 0, 1 for a < b, a == b, a > b.
  int compare(const Exponent& a, const Exponent& b) const;
  bool less(const Exponent& a, const Exponent& b) const { return compare(a, b) < 0; }

 private:
  std::vector<long> w_;
  std::vector<int> prio_;
};

// Sparse polynomial in x_1..x_n over Q(s). Terms kept sorted by Exponent::operator<.
class MultiPoly {
 public:
  using Term = std::pair<Exponent, SRat>;

  MultiPoly() = default;
  explicit MultiPoly(int nvars) : n_(nvars) {}
  static MultiPoly constant(int nvars, const SRat& c);
  static MultiPoly monomial(const Exponent& m, const SRat& c = SRat(1));
  static MultiPoly from_terms(int nvars, std::vector<Term> terms);  // combines duplicates

  int nvars() const { return n_; }
  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }
  SRat coeff(const Exponent& m) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly scaled(const SRat& c) const;
  MultiPoly times_monomial(const Exponent& m, const SRat& c) const;
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.n_ == b.n_ && a.t_ == b.t_; }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  MultiPoly partial(int i) const;
  // Weighted degree when all terms share it, -1 for zero, throws if inhomogeneous.
  long homogeneous_degree(const std::vector<long>& w) const;
  bool is_homogeneous(const std::vector<long>& w) const;

  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  int n_ = 0;
  std::vector<Term> t_;
};

MultiPoly arith(const MultiPoly& a, const MultiPoly& b, char op);
MultiPoly partial_derivative(const MultiPoly& p, int i);

std::vector<std::string> default_var_names(int n);
std::string render_monomial(const Exponent& m, const std::vector<std::string>& names, bool compact = true);

}  // namespace pfkit
