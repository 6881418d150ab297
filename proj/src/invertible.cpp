#include "pfkit/invertible.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

namespace pfkit {

ExponentMatrix::ExponentMatrix(std::vector<std::vector<int>> monomials) {
  const int n = static_cast<int>(monomials.size());
  if (n == 0) throw NotInvertible("empty polynomial");
  if (n > kMaxVars) throw NotInvertible("at most " + std::to_string(kMaxVars) + " variables are supported");
  std::vector<int> owner(n, -1);
  for (int j = 0; j < n; ++j) {
    const auto& row = monomials[j];
    if (static_cast<int>(row.size()) != n) throw NotInvertible("monomial count differs from variable count");
    int big = -1, ones = 0;
    for (int i = 0; i < n; ++i) {
      if (row[i] < 0) throw NotInvertible("negative exponent");
      if (row[i] >= 2) {
        if (big >= 0) throw NotInvertible("monomial " + std::to_string(j + 1) + " has two exponents >= 2");
        big = i;
      } else if (row[i] == 1) {
        ++ones;
      }
    }
    if (big < 0) throw NotInvertible("monomial " + std::to_string(j + 1) + " has no exponent >= 2");
    if (ones > 1) throw NotInvertible("monomial " + std::to_string(j + 1) + " involves more than two variables");
    if (owner[big] >= 0)
      throw NotInvertible("variable " + std::to_string(big + 1) + " carries the large exponent of two monomials");
    owner[big] = j;
  }
  rows_.resize(n);
  link_.assign(n, -1);
  std::vector<int> linked_by(n, -1);
  for (int i = 0; i < n; ++i) {
    rows_[i] = monomials[owner[i]];
    for (int v = 0; v < n; ++v) {
      if (v != i && rows_[i][v] == 1) {
        link_[i] = v;
        if (linked_by[v] >= 0)
          throw NotInvertible("variable " + std::to_string(v + 1) + " is attached to two monomials");
        linked_by[v] = i;
      }
    }
  }
  if (determinant(*this) == 0) throw NotInvertible("singular exponent matrix");
}

// ---------------------------------------------------------------- parsing

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip();
    return i >= s.size();
  }
  char peek() {
    skip();
    return i < s.size() ? s[i] : '\0';
  }
  long integer() {
    skip();
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) throw ParseError("expected an integer", start);
    if (i - start > 6) throw ParseError("integer too large", start);
    return std::stol(s.substr(start, i - start));
  }
};

}  // namespace

ParsedPolynomial parse_polynomial(const std::string& text, const std::vector<std::string>& names) {
  Cursor c{text};
  std::vector<std::map<int, int>> terms;
  int maxvar = 0;
  auto read_name = [&]() -> int {
    c.skip();
    size_t start = c.i;
    if (start >= text.size()) throw ParseError("expected a variable", start);
    char ch = text[start];
    if (std::isdigit(static_cast<unsigned char>(ch)))
      throw ParseError("explicit coefficients are not allowed (all coefficients are 1)", start);
    if (!names.empty()) {
      size_t best = 0;
      int idx = -1;
      for (size_t k = 0; k < names.size(); ++k) {
        const auto& nm = names[k];
        if (nm.size() > best && text.compare(start, nm.size(), nm) == 0) {
          best = nm.size();
          idx = static_cast<int>(k);
        }
      }
      if (idx >= 0) {
        c.i = start + best;
        return idx;
      }
    }
    if (ch == 's') throw ParseError("the deformation term s*x1*...*xn is implicit and must not be written", start);
    if (ch != 'x') throw ParseError("expected a variable", start);
    ++c.i;
    if (c.i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[c.i])))
      throw ParseError("expected a variable index after 'x'", c.i);
    long v = c.integer();
    if (v < 1) throw ParseError("variable indices start at 1", start);
    if (v > kMaxVars) throw ParseError("variable index too large", start);
    return static_cast<int>(v - 1);
  };
  while (true) {
    std::map<int, int> term;
    while (true) {
      size_t pos = (c.skip(), c.i);
      int v = read_name();
      long e = 1;
      if (c.peek() == '^') {
        ++c.i;
        size_t epos = (c.skip(), c.i);
        e = c.integer();
        if (e == 0) throw ParseError("variable appearing with exponent 0", epos);
      }
      (void)pos;
      term[v] += static_cast<int>(e);
      maxvar = std::max(maxvar, v + 1);
      if (c.peek() == '*') {
        ++c.i;
        continue;
      }
      break;
    }
    terms.push_back(term);
    if (c.eof()) break;
    if (c.peek() != '+') throw ParseError("expected '+' or '*'", c.i);
    ++c.i;
  }
  int n = names.empty() ? maxvar : static_cast<int>(names.size());
  if (static_cast<int>(terms.size()) != n)
    throw NotInvertible("number of monomials (" + std::to_string(terms.size()) + ") differs from number of variables (" +
                        std::to_string(n) + ")");
  std::vector<bool> seen(n, false);
  std::vector<std::vector<int>> rows;
  for (const auto& t : terms) {
    std::vector<int> row(n, 0);
    for (auto [v, e] : t) {
      row[v] = e;
      seen[v] = true;
    }
    rows.push_back(row);
  }
  for (int v = 0; v < n; ++v)
    if (!seen[v]) throw NotInvertible("variable " + (names.empty() ? "x" + std::to_string(v + 1) : names[v]) + " does not occur");
  ParsedPolynomial out{ExponentMatrix(rows), names.empty() ? default_var_names(n) : names};
  return out;
}

namespace {
std::string render_term(const ExponentMatrix& m, int i, const std::vector<std::string>& nm, bool compact) {
  std::string s = nm[i] + "^" + std::to_string(m.k(i));
  if (m.link(i) >= 0) s += (compact ? "" : "*") + nm[m.link(i)];
  return s;
}
}  // namespace

std::string render_polynomial(const ExponentMatrix& m, const std::vector<std::string>& names) {
  auto nm = names.empty() ? default_var_names(m.n()) : names;
  std::string out;
  for (int i = 0; i < m.n(); ++i) out += (i ? "+" : "") + render_term(m, i, nm, false);
  return out;
}

std::string render_polynomial_compact(const ExponentMatrix& m, const std::vector<std::string>& names) {
  bool single = std::all_of(names.begin(), names.end(), [](const std::string& s) { return s.size() == 1; });
  auto nm = names.empty() ? default_var_names(m.n()) : names;
  std::string out;
  for (int i = 0; i < m.n(); ++i) out += (i ? "+" : "") + render_term(m, i, nm, single && !names.empty());
  return out;
}

// ---------------------------------------------------------------- structure

std::vector<AtomicPart> decompose(const ExponentMatrix& m) {
  const int n = m.n();
  std::vector<int> linked_by(n, -1);
  for (int i = 0; i < n; ++i)
    if (m.link(i) >= 0) linked_by[m.link(i)] = i;
  std::vector<bool> used(n, false);
  std::vector<AtomicPart> parts;
  // Chains start at a variable no monomial links to.
  for (int i = 0; i < n; ++i) {
    if (linked_by[i] >= 0) continue;
    AtomicPart p;
    p.kind = PartKind::Chain;
    for (int v = i; v >= 0; v = m.link(v)) {
      p.variables.push_back(v);
      p.exponents.push_back(m.k(v));
      used[v] = true;
    }
    parts.push_back(p);
  }
  for (int i = 0; i < n; ++i) {
    if (used[i]) continue;
    AtomicPart p;
    p.kind = PartKind::Loop;
    int v = i;
    do {
      p.variables.push_back(v);
      p.exponents.push_back(m.k(v));
      used[v] = true;
      v = m.link(v);
      if (v < 0) throw NotInvertible("broken loop structure");
    } while (v != i);
    if (p.variables.size() < 2) throw NotInvertible("loop of length one");
    parts.push_back(p);
  }
  std::sort(parts.begin(), parts.end(), [](const AtomicPart& a, const AtomicPart& b) {
    return *std::min_element(a.variables.begin(), a.variables.end()) <
           *std::min_element(b.variables.begin(), b.variables.end());
  });
  return parts;
}

std::string render_parts(const std::vector<AtomicPart>& parts, const std::vector<std::string>& names) {
  std::string out;
  for (const auto& p : parts) {
    auto nm = names;
    if (!out.empty()) out += ", ";
    out += p.kind == PartKind::Loop ? "Loop[" : "Chain[";
    for (size_t i = 0; i < p.variables.size(); ++i) {
      int v = p.variables[i];
      if (i) out += p.kind == PartKind::Loop ? "," : "->";
      out += nm.empty() ? "x" + std::to_string(v + 1) : nm[v];
    }
    out += "; ";
    for (size_t i = 0; i < p.exponents.size(); ++i) out += (i ? "," : "") + std::to_string(p.exponents[i]);
    out += "]";
  }
  return out;
}

std::vector<std::pair<int, std::vector<int>>> canonical_signature(const ExponentMatrix& m) {
  std::vector<std::pair<int, std::vector<int>>> sig;
  for (const auto& p : decompose(m)) {
    std::vector<int> ex = p.exponents;
    if (p.kind == PartKind::Loop) {
      // Loops have no distinguished start; use the lexicographically smallest rotation.
      std::vector<int> best = ex;
      for (size_t r = 1; r < ex.size(); ++r) {
        std::rotate(ex.begin(), ex.begin() + 1, ex.end());
        best = std::min(best, ex);
      }
      ex = best;
    }
    sig.emplace_back(p.kind == PartKind::Loop ? 0 : 1, ex);
  }
  std::sort(sig.begin(), sig.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    if (a.second.size() != b.second.size()) return a.second.size() < b.second.size();
    return a.second < b.second;
  });
  return sig;
}

// ---------------------------------------------------------------- weights

namespace {

// Solves A x = b over Q; A square and nonsingular.
std::vector<BigRat> solve_square(std::vector<std::vector<BigRat>> a, std::vector<BigRat> b) {
  const size_t n = a.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw NotInvertible("singular exponent matrix");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      BigRat f = a[r][col] / a[col][col];
      for (size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  std::vector<BigRat> x(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace

BigInt determinant(const ExponentMatrix& m) {
  const int n = m.n();
  std::vector<std::vector<BigRat>> a(n, std::vector<BigRat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m.at(i, j);
  BigRat det = 1;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      BigRat f = a[r][col] / a[col][col];
      for (int k = col; k < n; ++k) a[r][k] -= f * a[col][k];
    }
  }
  return det.get_num();
}

WeightSystem weights(const ExponentMatrix& m) {
  const int n = m.n();
  std::vector<std::vector<BigRat>> a(n, std::vector<BigRat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m.at(i, j);
  std::vector<BigRat> r = solve_square(a, std::vector<BigRat>(n, BigRat(1)));
  BigInt d = 1;
  for (const auto& x : r) {
    if (x <= 0) throw NotInvertible("non-positive weight");
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
  }
  WeightSystem w;
  w.d = d.get_si();
  for (const auto& x : r) {
    BigRat qi = x * d;
    w.q.push_back(qi.get_num().get_si());
  }
  return w;
}

ExponentMatrix transpose(const ExponentMatrix& m) {
  const int n = m.n();
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = m.at(j, i);
  return ExponentMatrix(t);
}

bool is_calabi_yau(const WeightSystem& w) {
  return std::accumulate(w.q.begin(), w.q.end(), 0L) == w.d;
}

std::vector<std::vector<long>> step_vectors(const ExponentMatrix& m) {
  const int n = m.n();
  std::vector<std::vector<long>> steps(n, std::vector<long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) steps[i][j] = 1 - m.at(i, j);
  return steps;
}

DualData dual_data(const ExponentMatrix& m) { return {weights(m), weights(transpose(m))}; }

void require_calabi_yau(const ExponentMatrix& m) {
  WeightSystem w = weights(m);
  if (!is_calabi_yau(w)) {
    long sum = std::accumulate(w.q.begin(), w.q.end(), 0L);
    throw NotCalabiYau("Calabi-Yau condition violated: sum of weights " + std::to_string(sum) + " != degree " +
                       std::to_string(w.d));
  }
}

}  // namespace pfkit
