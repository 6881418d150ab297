#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pfkit/invertible.hpp"
#include "pfkit/pf_formula.hpp"
#include "pfkit/poly_core.hpp"

namespace pfkit {

class PieceSolver;

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OracleTimeout : public OracleError {
 public:
  using OracleError::OracleError;
};

class NotInIdeal : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Wall-clock budget; a default-constructed deadline never expires.
class Deadline {
 public:
  Deadline() = default;
  explicit Deadline(double seconds);
  void check() const;
  bool enabled() const { return enabled_; }

 private:
  bool enabled_ = false;
  std::chrono::steady_clock::time_point end_{};
};

struct GroebnerBasis {
  std::vector<MultiPoly> generators;  // reduced, monic, sorted by ascending leading monomial
  WeightedOrder order;
  std::vector<Exponent> leading;      // leading monomial of each generator
};

Exponent leading_monomial(const MultiPoly& p, const WeightedOrder& order);
GroebnerBasis groebner(const std::vector<MultiPoly>& gens, const WeightedOrder& order,
                       const Deadline& deadline = Deadline());
MultiPoly normal_form(const MultiPoly& p, const GroebnerBasis& gb);
// Reduced GB test: every S-polynomial reduces to zero.
bool is_groebner(const GroebnerBasis& gb);
std::vector<Exponent> monomials_of_degree(long degree, const std::vector<long>& w);
std::vector<Exponent> weight_kbase(const GroebnerBasis& gb, long degree, const std::vector<long>& w);

// Quotient of Z^n by the lattice spanned by the step vectors: the grading by weighted
// degree together with the diagonal symmetry group. The Jacobian generators of the
// family are homogeneous for it.
class ClassLattice {
 public:
  ClassLattice() = default;
  explicit ClassLattice(const std::vector<std::vector<long>>& generators, int n);
  std::vector<long> key(const Exponent& m) const;
  std::vector<long> key(const std::vector<long>& v) const;
  bool trivial() const { return rows_.empty(); }
  // Order of the torsion part (product of the pivots).
  long torsion_order() const;

 private:
  int n_ = 0;
  std::vector<std::vector<long>> rows_;  // Hermite normal form
};

// Cofactors l with p = sum l_j gens_j. gens must be weighted homogeneous for w. When a
// lattice is given, the linear systems are restricted to one class at a time.
std::vector<MultiPoly> lift(const MultiPoly& p, const std::vector<MultiPoly>& gens, const std::vector<long>& w,
                            const ClassLattice* lattice = nullptr, const Deadline& deadline = Deadline());
bool certificate_holds(const MultiPoly& p, const std::vector<MultiPoly>& gens, const std::vector<MultiPoly>& cofactors);

// h = sum_j d(cofactor_j)/dx_j scaled by 1/(deg(h)/d + 1).
MultiPoly griffiths_reduce(const std::vector<MultiPoly>& cofactors, const std::vector<long>& w, long d);

// r(i, m): coefficient of m! s^{m+1} (prod x)^m Omega_0 / f^{m+1} in δ^i ω, up to the
// sign (-1)^m. Stored as w[m][i] like the reference loop.
struct DeltaMatrix {
  std::vector<std::vector<BigInt>> w;
  BigInt r(int i, int m) const { return w[m][i]; }
  BigInt signed_coeff(int i, int m) const { return (m % 2 == 0) ? w[m][i] : BigInt(-w[m][i]); }
  int size() const { return static_cast<int>(w.size()); }
};
DeltaMatrix delta_matrix(int kn);

MultiPoly family_polynomial(const ExponentMatrix& m);
std::vector<MultiPoly> jacobian(const MultiPoly& f);

struct OracleOptions {
  long max_dhat = 24;
  int max_n = 4;
  double timeout_seconds = 300;
  bool keep_ledger = false;
  bool check_certificates = true;
  std::vector<int> order_priority;  // permutes the reverse-lex tie-break (basis-independence check)
};

struct LedgerRecord {
  int k = 0;           // which form F_k is being reduced
  int pole_level = 0;  // p Omega_0 / f^{pole_level}
  MultiPoly p;
  std::vector<MultiPoly> cofactors;                     // empty when p had no ideal part
  std::vector<std::pair<Exponent, SRat>> basis_part;    // normal form of p on the k-base
};

struct OracleResult {
  ExpandedOperator op;
  std::vector<SRat> relation;  // coefficients of δ^0 .. δ^order
  long order = 0;
  long nullspace_dimension = 0;
  std::vector<std::vector<Exponent>> kbases;  // by level - 1
  std::vector<std::vector<SRat>> form_coordinates;  // coordinates of F_k on the concatenated k-base
  std::vector<LedgerRecord> ledger;
  size_t groebner_size = 0;
  size_t lifts = 0;
  size_t certificates_checked = 0;
  double seconds = 0;
};

OracleResult picard_fuchs_oracle(const ExponentMatrix& m, const OracleOptions& opts = OracleOptions());

// n = 4 only. True when s Omega_0/f, the given monomials m Omega_0/f^2 (weighted degree d)
// and (prod x)^2 Omega_0/f^3 are u = pf_order independent classes whose span contains
// F_0..F_{u-1}, i.e. they form a basis of the part of cohomology reached by the period.
bool spans_period_orbit(const ExponentMatrix& m, const std::vector<Exponent>& degree_d_monomials,
                        const OracleOptions& opts = OracleOptions());

// Coordinates of the form p Omega_0 / f^{level} on the concatenated k-base, using the same
// reduction as the oracle. Needs a state built once per polynomial.
class FormReducer {
 public:
  FormReducer(const ExponentMatrix& m, const OracleOptions& opts);
  std::vector<SRat> reduce(const MultiPoly& p, int k_tag = -1, std::vector<LedgerRecord>* ledger = nullptr);
  const std::vector<std::vector<Exponent>>& kbases() const { return kbases_; }
  const GroebnerBasis& basis() const { return gb_; }
  const MultiPoly& f() const { return f_; }
  const std::vector<MultiPoly>& jacobian_generators() const { return jac_; }
  const WeightSystem& weights_of_g() const { return w_; }
  size_t lifts() const { return lifts_; }
  size_t certificates_checked() const { return certs_; }
  size_t column_count() const { return columns_; }

 private:
  OracleOptions opts_;
  Deadline deadline_;
  WeightSystem w_;
  MultiPoly f_;
  std::vector<MultiPoly> jac_;
  GroebnerBasis gb_;
  ClassLattice lattice_;
  std::vector<std::vector<Exponent>> kbases_;
  std::vector<std::map<Exponent, size_t>> column_of_;
  std::map<std::pair<long, std::vector<long>>, std::shared_ptr<PieceSolver>> solvers_;
  size_t columns_ = 0;
  size_t lifts_ = 0;
  size_t certs_ = 0;
};

}  // namespace pfkit
