#include "pfkit/spectra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pfkit {

long euler_phi(long n) {
  long r = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

long moebius(long n) {
  long r = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    r = -r;
  }
  if (n > 1) r = -r;
  return r;
}

std::vector<long> divisors(long n) {
  std::vector<long> d;
  for (long k = 1; k <= n; ++k)
    if (n % k == 0) d.push_back(k);
  return d;
}

CyclotomicMultiset CyclotomicMultiset::from(const std::vector<BigRat>& values, const BigRat& divisor) {
  CyclotomicMultiset m;
  for (const auto& v : values) {
    BigRat x = v / divisor;
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    x -= fl;
    m.elements.push_back(x);
  }
  std::sort(m.elements.begin(), m.elements.end());
  return m;
}

bool CyclotomicMultiset::closed_under_conjugation() const {
  std::vector<BigRat> conj;
  for (const auto& x : elements) conj.push_back(x == 0 ? x : BigRat(1 - x));
  std::sort(conj.begin(), conj.end());
  return conj == elements;
}

bool CyclotomicMultiset::all_zero() const {
  return std::all_of(elements.begin(), elements.end(), [](const BigRat& x) { return x == 0; });
}

// ---------------------------------------------------------------- unity forms

UnityProductForm reduce_unity_form(std::vector<long> num, std::vector<long> den) {
  std::sort(num.begin(), num.end());
  std::sort(den.begin(), den.end());
  UnityProductForm f;
  std::set_difference(num.begin(), num.end(), den.begin(), den.end(), std::back_inserter(f.numerator));
  std::set_difference(den.begin(), den.end(), num.begin(), num.end(), std::back_inserter(f.denominator));
  return f;
}

std::map<long, long> unity_exponents(const UnityProductForm& f) {
  std::map<long, long> c;
  for (long m : f.numerator) ++c[m];
  for (long m : f.denominator) --c[m];
  for (auto it = c.begin(); it != c.end();) it = it->second == 0 ? c.erase(it) : std::next(it);
  return c;
}

std::string render_unity_form(const UnityProductForm& f) {
  const std::string dot = "\xC2\xB7";
  auto join = [&dot](const std::vector<long>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) out += (i ? dot : "") + std::to_string(v[i]);
    return out;
  };
  std::string out = f.numerator.empty() ? "()" : join(f.numerator);
  if (!f.denominator.empty()) out += "/" + join(f.denominator);
  return out;
}

UnityProductForm parse_unity_form(const std::string& text) {
  std::string t;
  for (size_t i = 0; i < text.size(); ++i) {
    if (text.compare(i, 2, "\xC2\xB7") == 0) {
      t += ' ';
      ++i;
    } else if (text[i] == '.' || text[i] == '*' || text[i] == ',') {
      t += ' ';
    } else if (text.compare(i, 5, "\\cdot") == 0) {
      t += ' ';
      i += 4;
    } else {
      t += text[i];
    }
  }
  auto slash = t.find('/');
  auto read = [](const std::string& s) {
    std::vector<long> v;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) {
      if (tok == "()") continue;
      size_t used = 0;
      long x = std::stol(tok, &used);
      if (used != tok.size() || x <= 0) throw std::invalid_argument("unity form: bad order '" + tok + "'");
      v.push_back(x);
    }
    return v;
  };
  std::vector<long> num = read(t.substr(0, slash));
  std::vector<long> den = slash == std::string::npos ? std::vector<long>{} : read(t.substr(slash + 1));
  std::sort(num.begin(), num.end());
  std::sort(den.begin(), den.end());
  UnityProductForm f;
  f.numerator = num;
  f.denominator = den;
  return f;
}

UnityProductForm solve_unity_form(const CyclotomicMultiset& roots, long orders_bound) {
  // Multiplicity of each root, grouped by exact order.
  std::map<long, std::map<BigRat, long>> by_order;
  long bound = orders_bound > 0 ? orders_bound : 1;
  for (const auto& x : roots.elements) {
    long e = x.get_den().get_si();
    by_order[e][x] += 1;
    if (orders_bound <= 0) bound = std::lcm(bound, e);
  }
  std::map<long, long> b;
  bool uniform = true;
  for (const auto& [e, mult] : by_order) {
    if (bound % e != 0) throw std::invalid_argument("root order does not divide the candidate bound");
    long m0 = mult.begin()->second;
    if (static_cast<long>(mult.size()) != euler_phi(e)) uniform = false;
    for (const auto& [x, k] : mult)
      if (k != m0) uniform = false;
    b[e] = m0;
  }
  if (!uniform) throw std::invalid_argument("root multiset is not stable under the Galois action");
  UnityProductForm f;
  // b_e = sum_{e | m} c_m, solved from the largest order downwards.
  std::vector<long> divs = divisors(bound);
  std::map<long, long> c;
  for (auto it = divs.rbegin(); it != divs.rend(); ++it) {
    long m = *it;
    long v = b.count(m) ? b[m] : 0;
    for (const auto& [k, ck] : c)
      if (k != m && k % m == 0) v -= ck;
    c[m] = v;
  }
  for (const auto& [m, cm] : c) {
    for (long k = 0; k < cm; ++k) f.numerator.push_back(m);
    for (long k = 0; k < -cm; ++k) f.denominator.push_back(m);
  }
  return f;
}

ChiForms chi_forms(const std::vector<BigRat>& alphas, const std::vector<BigRat>& betas, long d_hat,
                   long orders_bound) {
  long bound = orders_bound > 0 ? orders_bound : d_hat;
  for (const auto& a : alphas) bound = std::lcm(bound, BigRat(a / d_hat).get_den().get_si());
  ChiForms out;
  out.chi0 = solve_unity_form(CyclotomicMultiset::from(betas, d_hat), bound);
  out.chi_inf = solve_unity_form(CyclotomicMultiset::from(alphas, d_hat), bound);
  return out;
}

ChiForms chi_forms(const ExponentMatrix& m) {
  IndexSets ix = index_sets(m);
  AlphaBeta ab = alpha_beta(m);
  long bound = ix.d_hat;
  for (long q : ix.q_hat) bound = std::lcm(bound, q);
  return chi_forms(ab.alphas, ab.betas, ix.d_hat, bound);
}

bool quotient_identity_holds(const ChiForms& chi, const WeightSystem& dual) {
  std::map<long, long> lhs = unity_exponents(chi.chi0);
  for (auto [m, c] : unity_exponents(chi.chi_inf)) lhs[m] -= c;
  std::map<long, long> rhs;
  rhs[dual.d] += 1;
  for (long q : dual.q) rhs[q] -= 1;
  auto clean = [](std::map<long, long>& x) {
    for (auto it = x.begin(); it != x.end();) it = it->second == 0 ? x.erase(it) : std::next(it);
  };
  clean(lhs);
  clean(rhs);
  return lhs == rhs;
}

// ---------------------------------------------------------------- Hodge / Poincaré / monodromy

HodgeProfile hodge_profile(const std::vector<BigRat>& alphas, const std::vector<BigRat>& betas, int n) {
  if (alphas.size() != betas.size()) throw std::invalid_argument("hodge_profile: |alphas| != |betas|");
  if (alphas.empty()) throw std::invalid_argument("hodge_profile: empty input");
  (void)n;
  std::vector<BigRat> a = alphas, b = betas;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  HodgeProfile hp;
  for (size_t k = 0; k < b.size(); ++k) {
    long below = std::count_if(a.begin(), a.end(), [&](const BigRat& x) { return x < b[k]; });
    hp.p_values.push_back(below - static_cast<long>(k));
  }
  hp.p_plus = *std::max_element(hp.p_values.begin(), hp.p_values.end());
  hp.p_minus = *std::min_element(hp.p_values.begin(), hp.p_values.end());
  hp.h.assign(hp.p_plus - hp.p_minus + 1, 0);
  for (long p : hp.p_values) hp.h[p - hp.p_minus] += 1;
  return hp;
}

PoincareSeries poincare_series(const WeightSystem& w) {
  PoincareSeries ps;
  ps.unreduced.numerator = {w.d};
  ps.unreduced.denominator = w.q;
  std::sort(ps.unreduced.denominator.begin(), ps.unreduced.denominator.end());
  std::vector<BigRat> z, p;
  for (long j = 0; j < w.d; ++j) z.push_back(make_rat(j, w.d));
  for (long q : w.q)
    for (long j = 0; j < q; ++j) p.push_back(make_rat(j, q));
  std::sort(z.begin(), z.end());
  std::sort(p.begin(), p.end());
  std::set_difference(z.begin(), z.end(), p.begin(), p.end(), std::back_inserter(ps.zeros.elements));
  std::set_difference(p.begin(), p.end(), z.begin(), z.end(), std::back_inserter(ps.poles.elements));
  return ps;
}

Monodromy monodromy_eigenvalues(const ExponentMatrix& m) {
  IndexSets ix = index_sets(m);
  AlphaBeta ab = alpha_beta(m);
  return {CyclotomicMultiset::from(ab.alphas, ix.d_hat), CyclotomicMultiset::from(ab.betas, ix.d_hat)};
}

}  // namespace pfkit
