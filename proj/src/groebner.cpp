#include <algorithm>
#include <functional>

#include "pfkit/griffiths_dwork.hpp"

namespace pfkit {

Deadline::Deadline(double seconds) : enabled_(seconds > 0) {
  if (enabled_)
    end_ = std::chrono::steady_clock::now() +
           std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(seconds));
}

void Deadline::check() const {
  if (enabled_ && std::chrono::steady_clock::now() > end_) throw OracleTimeout("wall-clock budget exhausted");
}

namespace {

using Term = MultiPoly::Term;

// Terms sorted ascending in the monomial order, so the leading term is at the back.
struct OPoly {
  std::vector<Term> t;
  bool empty() const { return t.empty(); }
  const Exponent& lm() const { return t.back().first; }
  const SRat& lc() const { return t.back().second; }
};

OPoly to_opoly(const MultiPoly& p, const WeightedOrder& ord) {
  OPoly o;
  o.t = p.terms();
  std::sort(o.t.begin(), o.t.end(), [&](const Term& a, const Term& b) { return ord.less(a.first, b.first); });
  return o;
}

MultiPoly to_multipoly(const OPoly& o, int n) { return MultiPoly::from_terms(n, o.t); }

void make_monic(OPoly& p) {
  if (p.empty() || p.lc().is_one()) return;
  SRat inv = p.lc().inverse();
  for (auto& [m, c] : p.t) c *= inv;
}

// a - c * x^shift * b, all sorted ascending.
OPoly sub_mul(const OPoly& a, const SRat& c, const Exponent& shift, const OPoly& b, const WeightedOrder& ord) {
  OPoly r;
  r.t.reserve(a.t.size() + b.t.size());
  size_t i = 0, j = 0;
  while (i < a.t.size() || j < b.t.size()) {
    if (j == b.t.size()) {
      r.t.push_back(a.t[i++]);
      continue;
    }
    Exponent bm = b.t[j].first + shift;
    int cmp = i == a.t.size() ? 1 : ord.compare(a.t[i].first, bm);
    if (cmp < 0) {
      r.t.push_back(a.t[i++]);
    } else if (cmp > 0) {
      r.t.emplace_back(bm, -(c * b.t[j].second));
      ++j;
    } else {
      SRat v = a.t[i].second - c * b.t[j].second;
      if (!v.is_zero()) r.t.emplace_back(bm, std::move(v));
      ++i;
      ++j;
    }
  }
  return r;
}

const OPoly* find_reducer(const Exponent& m, const std::vector<const OPoly*>& basis) {
  for (const OPoly* g : basis)
    if (g->lm().divides(m)) return g;
  return nullptr;
}

// Full reduction by monic basis elements.
OPoly reduce_full(OPoly p, const std::vector<const OPoly*>& basis, const WeightedOrder& ord, const Deadline& dl) {
  std::vector<Term> rem;  // collected in descending order
  size_t steps = 0;
  while (!p.empty()) {
    if ((++steps & 63u) == 0) dl.check();
    const Exponent& m = p.lm();
    const OPoly* g = find_reducer(m, basis);
    if (!g) {
      rem.push_back(std::move(p.t.back()));
      p.t.pop_back();
      continue;
    }
    SRat c = p.lc();
    Exponent shift = m - g->lm();
    p = sub_mul(p, c, shift, *g, ord);
  }
  std::reverse(rem.begin(), rem.end());
  OPoly r;
  r.t = std::move(rem);
  return r;
}

bool disjoint(const Exponent& a, const Exponent& b) {
  for (int i = 0; i < a.n; ++i)
    if (a[i] && b[i]) return false;
  return true;
}

struct Pair {
  int i, j;
  Exponent lcm;
};

}  // namespace

Exponent leading_monomial(const MultiPoly& p, const WeightedOrder& order) {
  if (p.is_zero()) throw std::invalid_argument("leading monomial of zero");
  const Exponent* best = &p.terms().front().first;
  for (const auto& t : p.terms())
    if (order.less(*best, t.first)) best = &t.first;
  return *best;
}

GroebnerBasis groebner(const std::vector<MultiPoly>& gens, const WeightedOrder& order, const Deadline& deadline) {
  if (gens.empty()) throw std::invalid_argument("groebner: no generators");
  const int n = gens.front().nvars();
  std::vector<OPoly> polys;
  std::vector<int> active;  // indices forming the current basis G
  std::vector<Pair> pairs;

  auto basis_ptrs = [&]() {
    std::vector<const OPoly*> b;
    for (int i : active) b.push_back(&polys[i]);
    return b;
  };

  auto update = [&](int h) {
    const Exponent& lh = polys[h].lm();
    std::vector<Pair> C, D;
    for (int g : active) C.push_back({h, g, lcm(lh, polys[g].lm())});
    for (size_t a = 0; a < C.size(); ++a) {
      const Pair& p = C[a];
      bool keep = disjoint(lh, polys[p.j].lm());
      if (!keep) {
        keep = true;
        for (size_t b = a + 1; b < C.size() && keep; ++b)
          if (C[b].lcm.divides(p.lcm)) keep = false;
        for (size_t b = 0; b < D.size() && keep; ++b)
          if (D[b].lcm.divides(p.lcm)) keep = false;
      }
      if (keep) D.push_back(p);
    }
    std::vector<Pair> E;
    for (const auto& p : D)
      if (!disjoint(lh, polys[p.j].lm())) E.push_back(p);
    std::vector<Pair> B;
    for (const auto& p : pairs) {
      bool drop = lh.divides(p.lcm) && lcm(polys[p.i].lm(), lh) != p.lcm && lcm(polys[p.j].lm(), lh) != p.lcm;
      if (!drop) B.push_back(p);
    }
    B.insert(B.end(), E.begin(), E.end());
    pairs = std::move(B);
    std::vector<int> G;
    for (int g : active)
      if (!lh.divides(polys[g].lm())) G.push_back(g);
    G.push_back(h);
    active = std::move(G);
  };

  for (const auto& g : gens) {
    if (g.nvars() != n) throw std::invalid_argument("groebner: variable count mismatch");
    OPoly p = reduce_full(to_opoly(g, order), basis_ptrs(), order, deadline);
    if (p.empty()) continue;
    make_monic(p);
    polys.push_back(std::move(p));
    update(static_cast<int>(polys.size()) - 1);
  }

  while (!pairs.empty()) {
    deadline.check();
    // Normal strategy: smallest lcm first.
    auto it = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      int c = order.compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return std::make_pair(a.i, a.j) < std::make_pair(b.i, b.j);
    });
    Pair p = *it;
    pairs.erase(it);
    const OPoly& f = polys[p.i];
    const OPoly& g = polys[p.j];
    OPoly spol = sub_mul(OPoly{}, SRat(-1), p.lcm - f.lm(), f, order);
    spol = sub_mul(spol, SRat(1), p.lcm - g.lm(), g, order);
    OPoly r = reduce_full(std::move(spol), basis_ptrs(), order, deadline);
    if (r.empty()) continue;
    make_monic(r);
    polys.push_back(std::move(r));
    update(static_cast<int>(polys.size()) - 1);
  }

  // Interreduce the minimal basis.
  std::vector<OPoly> minimal;
  for (int i : active) minimal.push_back(polys[i]);
  std::sort(minimal.begin(), minimal.end(), [&](const OPoly& a, const OPoly& b) { return order.less(a.lm(), b.lm()); });
  for (size_t i = 0; i < minimal.size(); ++i) {
    std::vector<const OPoly*> others;
    for (size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(&minimal[j]);
    Term lead = minimal[i].t.back();
    OPoly tail;
    tail.t.assign(minimal[i].t.begin(), minimal[i].t.end() - 1);
    OPoly red = reduce_full(std::move(tail), others, order, deadline);
    red.t.push_back(lead);
    make_monic(red);
    minimal[i] = std::move(red);
  }
  GroebnerBasis gb;
  gb.order = order;
  for (const auto& p : minimal) {
    gb.generators.push_back(to_multipoly(p, n));
    gb.leading.push_back(p.lm());
  }
  return gb;
}

MultiPoly normal_form(const MultiPoly& p, const GroebnerBasis& gb) {
  if (p.is_zero()) return p;
  std::vector<OPoly> basis;
  basis.reserve(gb.generators.size());
  for (const auto& g : gb.generators) basis.push_back(to_opoly(g, gb.order));
  std::vector<const OPoly*> ptrs;
  for (const auto& b : basis) ptrs.push_back(&b);
  OPoly r = reduce_full(to_opoly(p, gb.order), ptrs, gb.order, Deadline());
  return to_multipoly(r, p.nvars());
}

bool is_groebner(const GroebnerBasis& gb) {
  std::vector<OPoly> basis;
  for (const auto& g : gb.generators) basis.push_back(to_opoly(g, gb.order));
  std::vector<const OPoly*> ptrs;
  for (const auto& b : basis) ptrs.push_back(&b);
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = i + 1; j < basis.size(); ++j) {
      Exponent l = lcm(basis[i].lm(), basis[j].lm());
      OPoly s = sub_mul(OPoly{}, basis[j].lc(), l - basis[i].lm(), basis[i], gb.order);
      s = sub_mul(s, basis[i].lc(), l - basis[j].lm(), basis[j], gb.order);
      if (!reduce_full(s, ptrs, gb.order, Deadline()).empty()) return false;
    }
  return true;
}

std::vector<Exponent> monomials_of_degree(long degree, const std::vector<long>& w) {
  const int n = static_cast<int>(w.size());
  std::vector<Exponent> out;
  if (degree < 0) return out;
  Exponent cur(n);
  std::function<void(int, long)> rec = [&](int i, long rest) {
    if (i == n - 1) {
      if (rest % w[i] == 0) {
        cur[i] = static_cast<int>(rest / w[i]);
        out.push_back(cur);
      }
      return;
    }
    for (long e = 0; e * w[i] <= rest; ++e) {
      cur[i] = static_cast<int>(e);
      rec(i + 1, rest - e * w[i]);
    }
    cur[i] = 0;
  };
  rec(0, degree);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Exponent> weight_kbase(const GroebnerBasis& gb, long degree, const std::vector<long>& w) {
  std::vector<Exponent> out;
  for (const auto& m : monomials_of_degree(degree, w)) {
    bool standard = std::none_of(gb.leading.begin(), gb.leading.end(), [&](const Exponent& l) { return l.divides(m); });
    if (standard) out.push_back(m);
  }
  return out;
}

}  // namespace pfkit
