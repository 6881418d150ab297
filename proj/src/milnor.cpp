#include "pfkit/milnor.hpp"

#include <algorithm>
#include <numeric>

#include "pfkit/griffiths_dwork.hpp"

namespace pfkit {

std::vector<long> position_counts(const IndexSets& ix, const BigRat& alpha) {
  std::vector<long> c;
  for (const auto& qi : ix.Q)
    c.push_back(std::count_if(qi.begin(), qi.end(), [&](const BigRat& q) { return q <= alpha; }));
  return c;
}

namespace {
std::vector<long> walk(const ExponentMatrix& m, const IndexSets& ix, const BigRat& alpha, long start) {
  const int n = m.n();
  auto steps = step_vectors(m);
  auto counts = position_counts(ix, alpha);
  std::vector<long> v(n, start);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v[j] += counts[i] * steps[i][j];
  return v;
}
}  // namespace

std::vector<long> vertex(const ExponentMatrix& m, const BigRat& alpha) {
  return walk(m, index_sets(m), alpha, 1);
}

BasisCatalog basis_monomials(const ExponentMatrix& m) {
  const int n = m.n();
  if (n < 3) throw RecipeError("basis extraction needs at least three variables");
  IndexSets ix = index_sets(m);
  WeightSystem w = weights(m);
  AlphaBeta ab = alpha_beta(m);
  BasisCatalog cat;
  int zero_level = 1;
  for (const auto& a : ab.alphas) {
    BasisElement el;
    el.alpha = a;
    if (a == 0) {
      el.level = zero_level++;
      el.monomial = Exponent(n);
      for (int j = 0; j < n; ++j) el.monomial[j] = el.level - 1;
    } else {
      std::vector<long> v = walk(m, ix, a, n - 1);
      long lo = *std::min_element(v.begin(), v.end());
      if (lo <= 0 || lo >= n - 1)
        throw RecipeError("vertex for alpha = " + to_string(a) + " leaves the admissible levels");
      el.level = static_cast<int>(n - lo);
      el.monomial = Exponent(n);
      for (int j = 0; j < n; ++j) el.monomial[j] = static_cast<int>(v[j] - lo);
    }
    if (weighted_degree(el.monomial, w.q) != w.d * (el.level - 1))
      throw RecipeError("basis monomial has the wrong weighted degree");
    cat.by_level[el.level].push_back(el.monomial);
    cat.elements.push_back(el);
  }
  if (zero_level != n) throw RecipeError("expected n-1 zero alphas");
  return cat;
}

PositionTable jacobi_positions(const ExponentMatrix& m) {
  IndexSets ix = index_sets(m);
  const long n = m.n();
  PositionTable t;
  for (int i = 0; i < m.n(); ++i) {
    bool case_one = ix.q_hat[i] * m.k(i) == ix.d_hat;
    std::vector<long> pos;
    for (const auto& q : ix.Q[i]) {
      BigInt fl;
      mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
      long f = fl.get_si();
      if (case_one) pos.push_back(f - n + 2);  // q is integral in this case
      else if (q.get_den() == 1) pos.push_back(f - n + 1);
      else pos.push_back(f - n + 2);
    }
    t.smallest_positions.push_back(pos);
  }
  return t;
}

std::vector<long> path_step_multiset(const ExponentMatrix& m) {
  IndexSets ix = index_sets(m);
  auto steps = step_vectors(m);
  const int n = m.n();
  std::vector<long> sum(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sum[j] += ix.q_hat[i] * steps[i][j];
  if (std::any_of(sum.begin(), sum.end(), [](long x) { return x != 0; }))
    throw RecipeError("Jacobi path does not close");
  if (std::accumulate(ix.q_hat.begin(), ix.q_hat.end(), 0L) != ix.d_hat)
    throw RecipeError("Jacobi path length differs from the dual degree");
  return ix.q_hat;
}

long milnor_rank(const ExponentMatrix& m, const std::vector<Exponent>& monomials) {
  GroebnerBasis gb = groebner(jacobian(family_polynomial(m)), WeightedOrder(weights(m).q));
  // Rows are normal forms; eliminate on the fly keyed by leading exponent.
  std::map<Exponent, std::map<Exponent, SRat>> pivots;
  long rank = 0;
  for (const auto& x : monomials) {
    const MultiPoly nf = normal_form(MultiPoly::monomial(x), gb);
    std::map<Exponent, SRat> row(nf.terms().begin(), nf.terms().end());
    for (auto it = pivots.begin(); it != pivots.end() && !row.empty(); ++it) {
      auto hit = row.find(it->first);
      if (hit == row.end()) continue;
      SRat f = hit->second;
      for (const auto& [e, c] : it->second) {
        SRat v = row[e] - f * c;
        if (v.is_zero()) row.erase(e);
        else row[e] = v;
      }
    }
    if (row.empty()) continue;
    SRat inv = row.begin()->second.inverse();
    for (auto& [e, c] : row) c *= inv;
    pivots[row.begin()->first] = row;
    ++rank;
  }
  return rank;
}

}  // namespace pfkit
