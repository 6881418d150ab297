#include "pfkit/pf_formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>
#include <stdexcept>

namespace pfkit {

IndexSets index_sets(const ExponentMatrix& m) {
  require_calabi_yau(m);
  WeightSystem dual = weights(transpose(m));
  IndexSets ix;
  ix.d_hat = dual.d;
  ix.q_hat = dual.q;
  const int n = m.n();
  ix.Q.resize(n);
  ix.QZ.resize(n);
  ix.QQ.resize(n);
  long total = 0;
  for (int i = 0; i < n; ++i) {
    for (long j = 1; j <= ix.q_hat[i]; ++j) {
      BigRat q = make_rat(j * ix.d_hat, ix.q_hat[i]);
      ix.Q[i].push_back(q);
      if (q.get_den() == 1) {
        ix.QZ[i].push_back(q);
        ix.union_QZ.insert(q.get_num().get_si());
      } else {
        ix.QQ[i].push_back(q);
      }
    }
    total += static_cast<long>(ix.Q[i].size());
    for (long j = 0; j < ix.q_hat[i]; ++j)
      if ((j * ix.d_hat) % ix.q_hat[i] == 0) ix.I.insert(j * ix.d_hat / ix.q_hat[i]);
  }
  for (long k = 1; k <= ix.d_hat; ++k)
    if (!ix.union_QZ.count(k)) ix.V.insert(k);
  ix.u = total - static_cast<long>(ix.union_QZ.size());
  ix.v = static_cast<long>(ix.V.size());
  return ix;
}

long pf_order(const ExponentMatrix& m) { return index_sets(m).u; }

std::vector<BigRat> all_shifts(const IndexSets& ix) {
  std::vector<BigRat> a;
  for (size_t i = 0; i < ix.q_hat.size(); ++i)
    for (long j = 0; j < ix.q_hat[i]; ++j) a.push_back(make_rat(j * ix.d_hat, ix.q_hat[i]));
  std::sort(a.begin(), a.end());
  return a;
}

AlphaBeta alpha_beta(const ExponentMatrix& m) {
  IndexSets ix = index_sets(m);
  AlphaBeta ab;
  std::set<long> removed;
  for (const auto& a : all_shifts(ix)) {
    if (a.get_den() == 1) {
      long k = a.get_num().get_si();
      if (ix.I.count(k) && !removed.count(k)) {
        removed.insert(k);
        continue;
      }
    }
    ab.alphas.push_back(a);
  }
  for (long k = 0; k < ix.d_hat; ++k)
    if (!ix.I.count(k)) ab.betas.push_back(BigRat(k));
  return ab;
}

AlphaBeta alpha_beta_by_intersection(const ExponentMatrix& m, bool d_from_zero) {
  IndexSets ix = index_sets(m);
  std::vector<BigRat> A = all_shifts(ix);
  std::vector<BigRat> D;
  for (long k = d_from_zero ? 0 : 1; k < (d_from_zero ? ix.d_hat : ix.d_hat + 1); ++k) D.push_back(BigRat(k));
  std::vector<BigRat> AD, ab_alpha, ab_beta;
  std::set_intersection(A.begin(), A.end(), D.begin(), D.end(), std::back_inserter(AD));
  std::set_difference(A.begin(), A.end(), AD.begin(), AD.end(), std::back_inserter(ab_alpha));
  std::set_difference(D.begin(), D.end(), AD.begin(), AD.end(), std::back_inserter(ab_beta));
  return {ab_alpha, ab_beta};
}

PFOperator pf_operator(const ExponentMatrix& m) {
  IndexSets ix = index_sets(m);
  AlphaBeta ab = alpha_beta(m);
  PFOperator op;
  BigInt cl = 1;
  for (long q : ix.q_hat) cl *= int_pow(q, q);
  op.c_left = cl;
  op.s_power = ix.d_hat;
  op.alphas = ab.alphas;
  op.c_right = int_pow(BigInt(-ix.d_hat), ix.d_hat);
  op.betas = ab.betas;
  return op;
}

PFOperator gkz_operator(const ExponentMatrix& m) {
  IndexSets ix = index_sets(m);
  PFOperator op = pf_operator(m);
  op.alphas = all_shifts(ix);
  op.betas.clear();
  for (long j = 1; j <= ix.d_hat; ++j) op.betas.push_back(BigRat(j));
  return op;
}

// ---------------------------------------------------------------- δ-operators

DOp dop_linear(const BigRat& shift) { return DOp{SPoly(shift), SPoly(1)}; }

namespace {

void dop_trim(DOp& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

// δ^b s^c = s^c (δ + c)^b
DOp shifted_power(long b, long c) {
  DOp r{SPoly(1)};
  DOp lin = dop_linear(BigRat(c));
  for (long i = 0; i < b; ++i) r = dop_mul(r, lin);
  return r;
}

DOp dop_product(const std::vector<BigRat>& shifts, const BigRat& sign) {
  DOp r{SPoly(1)};
  for (const auto& a : shifts) r = dop_mul(r, dop_linear(sign * a));
  return r;
}

}  // namespace

DOp dop_mul(const DOp& a, const DOp& b) {
  // Fast path: b has constant coefficients, so no commutation is needed.
  bool b_const = std::all_of(b.begin(), b.end(), [](const SPoly& p) { return p.is_constant(); });
  DOp r;
  auto add = [&r](size_t k, const SPoly& p) {
    if (r.size() <= k) r.resize(k + 1);
    r[k] += p;
  };
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      if (b_const) {
        add(i + j, a[i] * b[j]);
        continue;
      }
      // a_i(s) δ^i b_j(s) δ^j, expand b_j term by term.
      const auto& bc = b[j].coeffs();
      for (size_t c = 0; c < bc.size(); ++c) {
        if (bc[c] == 0) continue;
        DOp sh = shifted_power(static_cast<long>(i), static_cast<long>(c));
        SPoly left = a[i] * SPoly::monomial(bc[c], static_cast<int>(c));
        for (size_t k = 0; k < sh.size(); ++k) add(k + j, left * sh[k]);
      }
    }
  }
  dop_trim(r);
  return r;
}

bool dop_equal(const DOp& a, const DOp& b) {
  DOp x = a, y = b;
  dop_trim(x);
  dop_trim(y);
  return x == y;
}

DOp to_dop(const PFOperator& op) {
  DOp left = dop_product(op.alphas, BigRat(1));
  for (auto& p : left) p = p * SPoly::monomial(op.c_left, static_cast<int>(op.s_power));
  DOp right = dop_product(op.betas, BigRat(-1));
  DOp r(std::max(left.size(), right.size()));
  for (size_t i = 0; i < left.size(); ++i) r[i] += left[i];
  for (size_t i = 0; i < right.size(); ++i) r[i] -= right[i] * SPoly(op.c_right);
  dop_trim(r);
  return r;
}

ExpandedOperator normalize_operator(const std::vector<SRat>& coefficients) {
  ExpandedOperator out;
  SPoly den(1);
  for (const auto& c : coefficients) {
    if (c.is_zero()) continue;
    den = den * SPoly::exact_div(c.den(), SPoly::gcd(den, c.den()));
  }
  std::vector<SPoly> polys;
  for (const auto& c : coefficients) polys.push_back(c.num() * SPoly::exact_div(den, c.den()));
  while (!polys.empty() && polys.back().is_zero()) polys.pop_back();
  if (polys.empty()) return out;
  // Divide out the polynomial gcd of all coefficients, then the rational content.
  SPoly g;
  for (const auto& p : polys) g = SPoly::gcd(g, p);
  BigRat content = 0;
  BigInt cnum = 0, cden = 1;
  for (auto& p : polys) {
    p = SPoly::exact_div(p, g);
    for (const auto& c : p.coeffs()) {
      mpz_gcd(cnum.get_mpz_t(), cnum.get_mpz_t(), c.get_num_mpz_t());
      mpz_lcm(cden.get_mpz_t(), cden.get_mpz_t(), c.get_den_mpz_t());
    }
  }
  content = make_rat(cnum, cden);
  if (polys.back().lead() < 0) content = -content;
  for (auto& p : polys) p *= 1 / content;
  out.coefficients = std::move(polys);
  return out;
}

ExpandedOperator expand(const PFOperator& op) {
  DOp d = to_dop(op);
  std::vector<SRat> c(d.begin(), d.end());
  return normalize_operator(c);
}

bool projectively_equal(const PFOperator& a, const PFOperator& b) { return expand(a) == expand(b); }

std::string render_expanded(const ExpandedOperator& op) {
  std::string out;
  for (long i = op.order(); i >= 0; --i) {
    const SPoly& p = op.coefficients[i];
    if (p.is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + p.str() + ")";
    if (i >= 1) out += "*d";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

LambdaOperator to_lambda(const PFOperator& op) {
  LambdaOperator l;
  l.c0 = op.c_left;
  l.c1 = (op.s_power % 2 == 0) ? op.c_right : BigRat(-op.c_right);
  for (const auto& a : op.alphas) l.left.push_back(a / op.s_power);
  for (const auto& b : op.betas) l.right.push_back(b / op.s_power);
  return l;
}

// ---------------------------------------------------------------- rendering

std::string render_factored_integer(const BigInt& v) {
  BigInt x = abs(v);
  if (x <= 1) return to_string(v);
  std::string out;
  auto emit = [&out](const BigInt& p, long e) {
    if (!out.empty()) out += " ";
    out += to_string(p);
    if (e > 1) out += "^" + std::to_string(e);
  };
  for (long p = 2; p <= 100000 && x > 1; ++p) {
    if (p * p > x && x > 1) break;
    long e = 0;
    while (mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(p))) {
      x /= p;
      ++e;
    }
    if (e) emit(BigInt(p), e);
  }
  if (x > 1) emit(x, 1);
  return (v < 0 ? "-" : "") + out;
}

namespace {

std::string shift_factor(const BigRat& a, char sign) {
  std::string out = "(d";
  BigRat s = sign == '+' ? a : BigRat(-a);
  out += s < 0 ? "-" : "+";
  out += to_string(BigRat(abs(s)));
  return out + ")";
}

std::string factor_list(const std::vector<BigRat>& shifts, char sign) {
  long zeros = std::count(shifts.begin(), shifts.end(), BigRat(0));
  std::string out;
  if (zeros == 1) out += "d";
  if (zeros > 1) out += "d^" + std::to_string(zeros);
  for (const auto& a : shifts)
    if (a != 0) out += shift_factor(a, sign);
  return out;
}

std::string scalar_prefix(const BigRat& c) {
  if (c == 1) return "";
  if (c.get_den() != 1) return to_string(c) + " ";
  return render_factored_integer(c.get_num()) + " ";
}

}  // namespace

std::string render_operator(const PFOperator& op) {
  BigRat l = op.c_left, r = op.c_right;
  if (l.get_den() == 1 && r.get_den() == 1 && l != 0 && r != 0) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), l.get_num_mpz_t(), r.get_num_mpz_t());
    l /= g;
    r /= g;
  }
  if (l < 0) {
    l = -l;
    r = -r;
  }
  std::string out = scalar_prefix(l) + "s^" + std::to_string(op.s_power) + " " + factor_list(op.alphas, '+');
  out += r < 0 ? " + " : " - ";
  BigRat ar = abs(r);
  std::string rf = factor_list(op.betas, '-');
  std::string pre = scalar_prefix(ar);
  if (pre.empty() && rf.empty()) pre = "1";
  out += pre + rf;
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::string render_lambda(const LambdaOperator& op) {
  auto roots = [](const std::vector<BigRat>& v, char sign) {
    long zeros = std::count(v.begin(), v.end(), BigRat(0));
    std::string out;
    if (zeros == 1) out += "D";
    if (zeros > 1) out += "D^" + std::to_string(zeros);
    for (const auto& a : v) {
      if (a == 0) continue;
      BigRat s = sign == '+' ? a : BigRat(-a);
      out += std::string("(D") + (s < 0 ? "-" : "+") + to_string(BigRat(abs(s))) + ")";
    }
    return out;
  };
  BigRat c0 = op.c0, c1 = op.c1;
  if (c0.get_den() == 1 && c1.get_den() == 1 && c0 != 0 && c1 != 0) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), c0.get_num_mpz_t(), c1.get_num_mpz_t());
    c0 /= g;
    c1 /= g;
  }
  std::string out = scalar_prefix(c0) + roots(op.left, '-');
  out += c1 < 0 ? " + " : " - ";
  out += scalar_prefix(abs(c1)) + "l " + roots(op.right, '+');
  return out;
}

// ---------------------------------------------------------------- parsing

namespace {

std::string normalize_operator_text(std::string t) {
  auto replace_all = [&t](const std::string& from, const std::string& to) {
    size_t pos = 0;
    while ((pos = t.find(from, pos)) != std::string::npos) {
      t.replace(pos, from.size(), to);
      pos += to.size();
    }
  };
  t = std::regex_replace(t, std::regex(R"(\\frac\s*\{\s*(\d+)\s*\}\s*\{\s*(\d+)\s*\})"), "$1/$2");
  replace_all("\\delta", "d");
  replace_all("\xCE\xB4", "d");  // δ
  replace_all("\\cdot", " ");
  replace_all("\xC2\xB7", " ");  // ·
  replace_all("\xE2\x88\x92", "-");  // − (unicode minus)
  replace_all("*", " ");
  replace_all("{", "");
  replace_all("}", "");
  return t;
}

struct OpCursor {
  std::string s;
  size_t i = 0;
  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  char peek() {
    skip();
    return i < s.size() ? s[i] : '\0';
  }
  bool eof() { return peek() == '\0'; }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError("operator: " + msg, i); }
  BigInt integer() {
    skip();
    size_t st = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (st == i) fail("expected an integer");
    return BigInt(s.substr(st, i - st));
  }
  BigRat rational() {
    BigInt num = integer();
    if (peek() == '/') {
      ++i;
      return make_rat(num, integer());
    }
    return BigRat(num);
  }
  long exponent() {
    if (peek() != '^') return 1;
    ++i;
    return integer().get_si();
  }
};

struct Summand {
  BigRat coeff = 1;
  long s_power = -1;  // -1: no s factor
  std::vector<BigRat> shifts;  // factor (d + shift)
};

Summand parse_summand(OpCursor& c) {
  Summand out;
  bool any = false;
  while (true) {
    char ch = c.peek();
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      BigInt base = c.integer();
      long e = c.exponent();
      out.coeff *= int_pow(base, e);
      any = true;
    } else if (ch == 's') {
      ++c.i;
      if (out.s_power >= 0) c.fail("repeated s factor");
      out.s_power = c.exponent();
      any = true;
    } else if (ch == 'd') {
      ++c.i;
      long e = c.exponent();
      for (long k = 0; k < e; ++k) out.shifts.push_back(BigRat(0));
      any = true;
    } else if (ch == '(') {
      ++c.i;
      if (c.peek() != 'd') c.fail("expected 'd' inside a factor");
      ++c.i;
      char sg = c.peek();
      BigRat sh = 0;
      if (sg == '+' || sg == '-') {
        ++c.i;
        sh = c.rational();
        if (sg == '-') sh = -sh;
      }
      if (c.peek() != ')') c.fail("expected ')'");
      ++c.i;
      long e = c.exponent();
      for (long k = 0; k < e; ++k) out.shifts.push_back(sh);
      any = true;
    } else {
      break;
    }
  }
  if (!any) c.fail("empty summand");
  return out;
}

}  // namespace

PFOperator parse_operator(const std::string& text) {
  OpCursor c{normalize_operator_text(text)};
  BigRat lead_sign = 1;
  if (c.peek() == '-') {
    lead_sign = -1;
    ++c.i;
  }
  Summand a = parse_summand(c);
  char sg = c.peek();
  if (sg != '+' && sg != '-') c.fail("expected '+' or '-' between the two summands");
  ++c.i;
  Summand b = parse_summand(c);
  if (!c.eof()) c.fail("trailing input");
  a.coeff *= lead_sign;
  b.coeff *= (sg == '-') ? BigRat(1) : BigRat(-1);  // operator = A - B
  if (a.s_power < 0 && b.s_power >= 0) {
    std::swap(a, b);
    a.coeff = -a.coeff;
    b.coeff = -b.coeff;
  }
  if (a.s_power < 0) c.fail("no summand carries a power of s");
  if (b.s_power >= 0) c.fail("both summands carry a power of s");
  PFOperator op;
  op.c_left = a.coeff;
  op.s_power = a.s_power;
  op.alphas = a.shifts;
  op.c_right = b.coeff;
  for (const auto& x : b.shifts) op.betas.push_back(-x);
  std::sort(op.alphas.begin(), op.alphas.end());
  std::sort(op.betas.begin(), op.betas.end());
  return op;
}

}  // namespace pfkit
