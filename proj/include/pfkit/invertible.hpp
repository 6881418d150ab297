#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pfkit/poly_core.hpp"

namespace pfkit {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& msg, size_t pos)
      : std::invalid_argument(msg + " (at column " + std::to_string(pos + 1) + ")"), position(pos) {}
  size_t position;
};

class NotInvertible : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotCalabiYau : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exponent matrix of an invertible polynomial in diagonal form: row i is the exponent
// vector of the monomial containing x_i^{k_i} (k_i >= 2), plus at most one other
// variable with exponent 1. Rows are monomials, so the degree condition reads M q = d 1.
class ExponentMatrix {
 public:
  ExponentMatrix() = default;
  // Validates the invertible shape and reorders the monomials into diagonal form.
  explicit ExponentMatrix(std::vector<std::vector<int>> monomials);

  int n() const { return static_cast<int>(rows_.size()); }
  const std::vector<std::vector<int>>& rows() const { return rows_; }
  int at(int monomial, int var) const { return rows_[monomial][var]; }
  int k(int i) const { return rows_[i][i]; }
  // Variable carrying exponent 1 in monomial i, or -1.
  int link(int i) const { return link_[i]; }
  Exponent monomial(int i) const { return Exponent::from_vector(rows_[i]); }

  friend bool operator==(const ExponentMatrix& a, const ExponentMatrix& b) { return a.rows_ == b.rows_; }
  friend bool operator!=(const ExponentMatrix& a, const ExponentMatrix& b) { return !(a == b); }

 private:
  std::vector<std::vector<int>> rows_;
  std::vector<int> link_;
};

struct ParsedPolynomial {
  ExponentMatrix matrix;
  std::vector<std::string> names;
};

// Grammar: poly := term ('+' term)*; term := factor ('*' factor)*; factor := name ('^' INT)?
// where name is x<INT>, or one of `names` when given. Whitespace is ignored.
ParsedPolynomial parse_polynomial(const std::string& text, const std::vector<std::string>& names = {});

// Parseable text, e.g. "x1^5*x2+x2^4*x3+x3^8+x4^2".
std::string render_polynomial(const ExponentMatrix& m, const std::vector<std::string>& names = {});
// Display form with juxtaposed single-letter names, e.g. "w^16+x^4+y^2z+xz^2".
std::string render_polynomial_compact(const ExponentMatrix& m, const std::vector<std::string>& names);

enum class PartKind { Loop, Chain };

struct AtomicPart {
  PartKind kind = PartKind::Chain;
  std::vector<int> variables;  // loop: from the smallest index along the links; chain: head to tail
  std::vector<int> exponents;
  friend bool operator==(const AtomicPart& a, const AtomicPart& b) {
    return a.kind == b.kind && a.variables == b.variables && a.exponents == b.exponents;
  }
};

std::vector<AtomicPart> decompose(const ExponentMatrix& m);
std::string render_parts(const std::vector<AtomicPart>& parts, const std::vector<std::string>& names = {});
// Parts sorted by (kind, length, smallest index) with indices erased; equal for matrices
// that differ by a renaming of variables.
std::vector<std::pair<int, std::vector<int>>> canonical_signature(const ExponentMatrix& m);

struct WeightSystem {
  std::vector<long> q;
  long d = 0;
  friend bool operator==(const WeightSystem& a, const WeightSystem& b) { return a.q == b.q && a.d == b.d; }
};

WeightSystem weights(const ExponentMatrix& m);
ExponentMatrix transpose(const ExponentMatrix& m);
bool is_calabi_yau(const WeightSystem& w);
BigInt determinant(const ExponentMatrix& m);

// step_i = (1,...,1) - (exponent vector of monomial i).
std::vector<std::vector<long>> step_vectors(const ExponentMatrix& m);

// Convenience bundle used by the higher modules.
struct DualData {
  WeightSystem w;     // weights of g
  WeightSystem dual;  // weights of the transpose
};
DualData dual_data(const ExponentMatrix& m);
// Throws NotCalabiYau when the weights of m do not sum to the degree.
void require_calabi_yau(const ExponentMatrix& m);

}  // namespace pfkit
