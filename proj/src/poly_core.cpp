#include "pfkit/poly_core.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pfkit {

BigRat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  BigRat r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const BigInt& v) { return v.get_str(); }

std::string to_string(const BigRat& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

BigRat parse_rat(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return BigRat(BigInt(text));
    return make_rat(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
}

BigInt int_pow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// ---------------------------------------------------------------- SPoly

namespace {

using ZPoly = std::vector<BigInt>;

void ztrim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

BigInt zcontent(const ZPoly& p) {
  BigInt g = 0;
  for (const auto& c : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

void zmake_primitive(ZPoly& p) {
  if (p.empty()) return;
  BigInt g = zcontent(p);
  if (p.back() < 0) g = -g;
  if (g != 1)
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// Pseudo-remainder of a by b (b nonzero).
ZPoly zprem(ZPoly a, const ZPoly& b) {
  const size_t db = b.size() - 1;
  const BigInt& lb = b.back();
  while (!a.empty() && a.size() - 1 >= db) {
    BigInt la = a.back();
    size_t shift = a.size() - 1 - db;
    for (auto& c : a) c *= lb;
    for (size_t i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
    ztrim(a);
  }
  return a;
}

ZPoly to_primitive_z(const SPoly& p) {
  BigInt l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  ZPoly z;
  z.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) z.push_back(c.get_num() * (l / c.get_den()));
  zmake_primitive(z);
  return z;
}

}  // namespace

SPoly::SPoly(const BigRat& c) {
  if (c != 0) c_.push_back(c);
}

SPoly::SPoly(std::vector<BigRat> coeffs) : c_(std::move(coeffs)) { trim(); }

SPoly SPoly::monomial(const BigRat& c, int k) {
  SPoly p;
  if (c == 0) return p;
  p.c_.assign(k + 1, BigRat(0));
  p.c_[k] = c;
  return p;
}

void SPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

BigRat SPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
  return c_[k];
}

int SPoly::valuation() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<int>(i);
  return 0;
}

size_t SPoly::term_count() const {
  return static_cast<size_t>(std::count_if(c_.begin(), c_.end(), [](const BigRat& c) { return c != 0; }));
}

SPoly SPoly::operator-() const {
  SPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

SPoly& SPoly::operator+=(const SPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), BigRat(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

SPoly& SPoly::operator-=(const SPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), BigRat(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

SPoly operator*(const SPoly& a, const SPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigRat> r(a.c_.size() + b.c_.size() - 1, BigRat(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j] == 0) continue;
      r[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return SPoly(std::move(r));
}

SPoly& SPoly::operator*=(const SPoly& o) { return *this = *this * o; }

SPoly& SPoly::operator*=(const BigRat& c) {
  if (c == 0) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= c;
  return *this;
}

SPoly SPoly::shifted(int k) const {
  if (is_zero() || k == 0) return *this;
  SPoly r;
  if (k > 0) {
    r.c_.assign(k, BigRat(0));
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  } else {
    if (valuation() < -k) throw std::domain_error("SPoly::shifted: not divisible by s^k");
    r.c_.assign(c_.begin() - k, c_.end());
  }
  return r;
}

SPoly SPoly::monic() const {
  if (is_zero()) return {};
  SPoly r = *this;
  BigRat inv = 1 / lead();
  for (auto& c : r.c_) c *= inv;
  return r;
}

BigRat SPoly::eval(const BigRat& at) const {
  BigRat r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * at + *it;
  return r;
}

SPoly SPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<BigRat> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
  return SPoly(std::move(r));
}

SPoly SPoly::pow(unsigned e) const {
  SPoly r(1), b = *this;
  while (e) {
    if (e & 1u) r *= b;
    e >>= 1u;
    if (e) b *= b;
  }
  return r;
}

BigRat SPoly::content() const {
  if (is_zero()) return 0;
  BigInt num = 0, den = 1;
  for (const auto& c : c_) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  return make_rat(num, den);
}

SPoly SPoly::primitive() const {
  if (is_zero()) return {};
  SPoly r = *this;
  r *= 1 / content();
  return r;
}

std::pair<SPoly, SPoly> SPoly::divmod(const SPoly& a, const SPoly& b) {
  if (b.is_zero()) throw std::domain_error("SPoly::divmod by zero");
  if (a.degree() < b.degree()) return {SPoly(), a};
  std::vector<BigRat> q(a.degree() - b.degree() + 1, BigRat(0));
  std::vector<BigRat> r = a.c_;
  BigRat inv = 1 / b.lead();
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    BigRat f = r[k + b.degree()] * inv;
    if (f == 0) continue;
    q[k] = f;
    for (int i = 0; i <= b.degree(); ++i) r[k + i] -= f * b.c_[i];
  }
  return {SPoly(std::move(q)), SPoly(std::move(r))};
}

SPoly SPoly::exact_div(const SPoly& a, const SPoly& b) {
  if (b.degree() == 0) {
    SPoly r = a;
    r *= 1 / b.lead();
    return r;
  }
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("SPoly::exact_div: remainder is nonzero");
  return q;
}

SPoly SPoly::gcd(const SPoly& a, const SPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  int v = std::min(a.valuation(), b.valuation());
  SPoly a1 = a.shifted(-a.valuation()), b1 = b.shifted(-b.valuation());
  if (a1.degree() == 0 || b1.degree() == 0) return SPoly::monomial(1, v);
  ZPoly x = to_primitive_z(a1), y = to_primitive_z(b1);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    ZPoly r = zprem(x, y);
    zmake_primitive(r);
    x = std::move(y);
    y = std::move(r);
  }
  std::vector<BigRat> g(x.begin(), x.end());
  return SPoly(std::move(g)).monic().shifted(v);
}

std::string SPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const BigRat& c = c_[k];
    if (c == 0) continue;
    BigRat a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << to_string(a);
      continue;
    }
    if (a != 1) os << to_string(a) << "*";
    os << var;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

// ---------------------------------------------------------------- SRat

SRat::SRat(const SPoly& num) : num_(num), den_(1) {}

SRat::SRat(const SPoly& num, const SPoly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw std::domain_error("SRat: zero denominator");
  normalize();
}

void SRat::normalize() {
  if (num_.is_zero()) {
    den_ = SPoly(1);
    return;
  }
  if (den_.degree() > 0) {
    SPoly g = SPoly::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = SPoly::exact_div(num_, g);
      den_ = SPoly::exact_div(den_, g);
    }
  }
  if (!den_.is_one()) {
    BigRat l = den_.lead();
    if (l != 1) {
      BigRat inv = 1 / l;
      num_ *= inv;
      den_ *= inv;
    }
  }
}

size_t SRat::weight() const { return num_.coeffs().size() + den_.coeffs().size(); }

SRat SRat::operator-() const {
  SRat r = *this;
  r.num_ = -r.num_;
  return r;
}

SRat SRat::inverse() const {
  if (is_zero()) throw std::domain_error("SRat: inverse of zero");
  return SRat(den_, num_);
}

SRat& SRat::operator+=(const SRat& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (den_.degree() > 0) normalize();
    else if (num_.is_zero()) den_ = SPoly(1);
    return *this;
  }
  if (o.den_.is_one()) {
    num_ += o.num_ * den_;
    normalize();
    return *this;
  }
  if (den_.is_one()) {
    num_ = num_ * o.den_ + o.num_;
    den_ = o.den_;
    normalize();
    return *this;
  }
  SPoly g = SPoly::gcd(den_, o.den_);
  SPoly a = SPoly::exact_div(o.den_, g), b = SPoly::exact_div(den_, g);
  num_ = num_ * a + o.num_ * b;
  den_ = den_ * a;
  normalize();
  return *this;
}

SRat& SRat::operator-=(const SRat& o) { return *this += -o; }

SRat& SRat::operator*=(const SRat& o) {
  if (is_zero() || o.is_zero()) {
    num_ = SPoly();
    den_ = SPoly(1);
    return *this;
  }
  if (den_.is_one() && o.den_.is_one()) {
    num_ *= o.num_;
    return *this;
  }
  // Cross-cancel before multiplying to keep degrees small.
  SPoly g1 = SPoly::gcd(num_, o.den_), g2 = SPoly::gcd(o.num_, den_);
  SPoly n1 = SPoly::exact_div(num_, g1), d2 = SPoly::exact_div(o.den_, g1);
  SPoly n2 = SPoly::exact_div(o.num_, g2), d1 = SPoly::exact_div(den_, g2);
  num_ = n1 * n2;
  den_ = d1 * d2;
  BigRat l = den_.lead();
  if (l != 1) {
    num_ *= 1 / l;
    den_ *= 1 / l;
  }
  return *this;
}

SRat& SRat::operator/=(const SRat& o) { return *this *= o.inverse(); }

std::string SRat::str(const std::string& var) const {
  if (den_.is_one()) return num_.str(var);
  return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

// ---------------------------------------------------------------- Exponent

Exponent::Exponent(std::initializer_list<int> v) : n(static_cast<int>(v.size())) {
  if (n > kMaxVars) throw std::invalid_argument("too many variables");
  std::copy(v.begin(), v.end(), e.begin());
}

Exponent Exponent::from_vector(const std::vector<int>& v) {
  if (static_cast<int>(v.size()) > kMaxVars) throw std::invalid_argument("too many variables");
  Exponent m(static_cast<int>(v.size()));
  std::copy(v.begin(), v.end(), m.e.begin());
  return m;
}

int Exponent::total() const {
  int t = 0;
  for (int i = 0; i < n; ++i) t += e[i];
  return t;
}

bool Exponent::divides(const Exponent& o) const {
  for (int i = 0; i < n; ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

Exponent operator+(Exponent a, const Exponent& b) {
  for (int i = 0; i < a.n; ++i) a.e[i] += b.e[i];
  return a;
}

Exponent operator-(Exponent a, const Exponent& b) {
  for (int i = 0; i < a.n; ++i) a.e[i] -= b.e[i];
  return a;
}

Exponent lcm(const Exponent& a, const Exponent& b) {
  Exponent r(a.n);
  for (int i = 0; i < a.n; ++i) r.e[i] = std::max(a.e[i], b.e[i]);
  return r;
}

long weighted_degree(const Exponent& m, const std::vector<long>& w) {
  if (static_cast<int>(w.size()) != m.n) throw std::invalid_argument("weighted_degree: length mismatch");
  long d = 0;
  for (int i = 0; i < m.n; ++i) d += static_cast<long>(m.e[i]) * w[i];
  return d;
}

size_t ExponentHash::operator()(const Exponent& m) const {
  size_t h = 1469598103934665603ull;
  for (int i = 0; i < m.n; ++i) h = (h ^ static_cast<size_t>(m.e[i])) * 1099511628211ull;
  return h;
}

// ---------------------------------------------------------------- WeightedOrder

WeightedOrder::WeightedOrder(std::vector<long> weights, std::vector<int> priority)
    : w_(std::move(weights)), prio_(std::move(priority)) {
  for (long x : w_)
    if (x <= 0) throw std::invalid_argument("WeightedOrder: weights must be positive");
  if (prio_.empty()) {
    for (int i = static_cast<int>(w_.size()) - 1; i >= 0; --i) prio_.push_back(i);
  }
  std::vector<int> chk = prio_;
  std::sort(chk.begin(), chk.end());
  for (size_t i = 0; i < chk.size(); ++i)
    if (chk[i] != static_cast<int>(i) || chk.size() != w_.size())
      throw std::invalid_argument("WeightedOrder: priority must be a permutation");
}

int WeightedOrder::compare(const Exponent& a, const Exponent& b) const {
  long da = degree(a), db = degree(b);
  if (da != db) return da < db ? -1 : 1;
  for (int i : prio_) {
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
  }
  return 0;
}

// ---------------------------------------------------------------- MultiPoly

MultiPoly MultiPoly::constant(int nvars, const SRat& c) {
  MultiPoly p(nvars);
  if (!c.is_zero()) p.t_.emplace_back(Exponent(nvars), c);
  return p;
}

MultiPoly MultiPoly::monomial(const Exponent& m, const SRat& c) {
  MultiPoly p(m.n);
  if (!c.is_zero()) p.t_.emplace_back(m, c);
  return p;
}

MultiPoly MultiPoly::from_terms(int nvars, std::vector<Term> terms) {
  std::map<Exponent, SRat> acc;
  for (auto& [m, c] : terms) {
    if (m.n != nvars) throw std::invalid_argument("MultiPoly: variable count mismatch");
    acc[m] += c;
  }
  MultiPoly p(nvars);
  for (auto& [m, c] : acc)
    if (!c.is_zero()) p.t_.emplace_back(m, c);
  return p;
}

SRat MultiPoly::coeff(const Exponent& m) const {
  auto it = std::lower_bound(t_.begin(), t_.end(), m, [](const Term& t, const Exponent& x) { return t.first < x; });
  if (it != t_.end() && it->first == m) return it->second;
  return SRat();
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.t_) t.second = -t.second;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) {
    n_ = o.n_;
    t_ = o.t_;
    return *this;
  }
  if (n_ != o.n_) throw std::invalid_argument("MultiPoly: variable count mismatch");
  std::vector<Term> out;
  out.reserve(t_.size() + o.t_.size());
  auto i = t_.begin();
  auto j = o.t_.begin();
  while (i != t_.end() || j != o.t_.end()) {
    if (j == o.t_.end() || (i != t_.end() && i->first < j->first)) {
      out.push_back(std::move(*i++));
    } else if (i == t_.end() || j->first < i->first) {
      out.push_back(*j++);
    } else {
      i->second += j->second;
      if (!i->second.is_zero()) out.push_back(std::move(*i));
      ++i;
      ++j;
    }
  }
  t_ = std::move(out);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this += -o; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return MultiPoly(std::max(a.nvars(), b.nvars()));
  if (a.nvars() != b.nvars()) throw std::invalid_argument("MultiPoly: variable count mismatch");
  std::map<Exponent, SRat> acc;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) acc[ma + mb] += ca * cb;
  std::vector<MultiPoly::Term> terms;
  for (auto& [m, c] : acc)
    if (!c.is_zero()) terms.emplace_back(m, c);
  return MultiPoly::from_terms(a.nvars(), std::move(terms));
}

MultiPoly MultiPoly::scaled(const SRat& c) const {
  if (c.is_zero()) return MultiPoly(n_);
  MultiPoly r = *this;
  for (auto& t : r.t_) t.second *= c;
  return r;
}

MultiPoly MultiPoly::times_monomial(const Exponent& m, const SRat& c) const {
  if (c.is_zero()) return MultiPoly(n_);
  MultiPoly r = *this;
  for (auto& t : r.t_) {
    t.first = t.first + m;
    t.second *= c;
  }
  return r;  // adding a fixed exponent preserves lexicographic order
}

MultiPoly MultiPoly::partial(int i) const {
  if (i < 0 || i >= n_) throw std::out_of_range("MultiPoly::partial: variable index");
  std::vector<Term> out;
  for (const auto& [m, c] : t_) {
    if (m.e[i] == 0) continue;
    Exponent m2 = m;
    m2.e[i] -= 1;
    out.emplace_back(m2, c * SRat(static_cast<long>(m.e[i])));
  }
  return from_terms(n_, std::move(out));
}

long MultiPoly::homogeneous_degree(const std::vector<long>& w) const {
  if (is_zero()) return -1;
  long d = weighted_degree(t_.front().first, w);
  for (const auto& t : t_)
    if (weighted_degree(t.first, w) != d) throw std::invalid_argument("MultiPoly: not weighted homogeneous");
  return d;
}

bool MultiPoly::is_homogeneous(const std::vector<long>& w) const {
  try {
    homogeneous_degree(w);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

std::vector<std::string> default_var_names(int n) {
  std::vector<std::string> v;
  for (int i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

std::string render_monomial(const Exponent& m, const std::vector<std::string>& names, bool compact) {
  std::vector<std::string> nm = names.empty() ? default_var_names(m.n) : names;
  bool single = compact && std::all_of(nm.begin(), nm.end(), [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (int i = 0; i < m.n; ++i) {
    if (m.e[i] == 0) continue;
    if (!out.empty() && !single) out += "*";
    out += nm[i];
    if (m.e[i] > 1) out += "^" + std::to_string(m.e[i]);
  }
  return out.empty() ? "1" : out;
}

std::string MultiPoly::str(const std::vector<std::string>& names) const {
  if (is_zero()) return "0";
  std::string out;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    if (!out.empty()) out += " + ";
    std::string c = it->second.str();
    std::string mono = render_monomial(it->first, names, false);
    if (mono == "1") out += "(" + c + ")";
    else if (it->second.is_one()) out += mono;
    else out += "(" + c + ")*" + mono;
  }
  return out;
}

MultiPoly arith(const MultiPoly& a, const MultiPoly& b, char op) {
  switch (op) {
    case '+': return a + b;
    case '-': return a - b;
    case '*': return a * b;
    default: throw std::invalid_argument("arith: unknown operation");
  }
}

MultiPoly partial_derivative(const MultiPoly& p, int i) { return p.partial(i); }

}  // namespace pfkit
