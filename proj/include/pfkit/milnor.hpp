#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "pfkit/invertible.hpp"
#include "pfkit/pf_formula.hpp"

namespace pfkit {

class RecipeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BasisElement {
  BigRat alpha;
  int level = 0;  // pole level; the monomial has weighted degree d (level - 1)
  Exponent monomial;
};

struct BasisCatalog {
  std::map<int, std::vector<Exponent>> by_level;
  std::vector<BasisElement> elements;  // one per alpha, in alpha order
  long count() const { return static_cast<long>(elements.size()); }
};

// Number of elements of Q_i not exceeding alpha, for each i.
std::vector<long> position_counts(const IndexSets& ix, const BigRat& alpha);
// (1,...,1) + sum_i count_i(alpha) step_i.
std::vector<long> vertex(const ExponentMatrix& m, const BigRat& alpha);

// The u distinguished monomials. Zero alphas give (l-1)(1,...,1) at level l = 1..n-1.
// A nonzero alpha walks the Jacobi path from (n-1)(1,...,1) by its position counts to a
// vertex V; the basis monomial is V - min(V)(1,...,1) at level n - min(V). For n = 4 this
// is exactly `vertex` at level 2.
BasisCatalog basis_monomials(const ExponentMatrix& m);

struct PositionTable {
  std::vector<std::vector<long>> smallest_positions;  // per variable, in the order of Q_i
};
PositionTable jacobi_positions(const ExponentMatrix& m);

// Rank over Q(s) of the images of the monomials in the Milnor ring of f = g + s prod(x_i),
// via normal forms modulo a Groebner basis of the Jacobian ideal.
long milnor_rank(const ExponentMatrix& m, const std::vector<Exponent>& monomials);

// count(i) = q̂_i; throws if the closure identities fail.
std::vector<long> path_step_multiset(const ExponentMatrix& m);

}  // namespace pfkit
