#include "pfkit/griffiths_dwork.hpp"

#include <algorithm>
#include <numeric>

namespace pfkit {

// ---------------------------------------------------------------- class lattice

ClassLattice::ClassLattice(const std::vector<std::vector<long>>& generators, int n) : n_(n) {
  std::vector<std::vector<long>> a = generators;
  for (const auto& g : a)
    if (static_cast<int>(g.size()) != n) throw std::invalid_argument("ClassLattice: generator length");
  size_t r = 0;
  for (int col = 0; col < n && r < a.size(); ++col) {
    bool found = false;
    while (true) {
      size_t best = a.size();
      for (size_t i = r; i < a.size(); ++i)
        if (a[i][col] != 0 && (best == a.size() || std::labs(a[i][col]) < std::labs(a[best][col]))) best = i;
      if (best == a.size()) break;
      found = true;
      std::swap(a[r], a[best]);
      bool clean = true;
      for (size_t i = r + 1; i < a.size(); ++i) {
        if (a[i][col] == 0) continue;
        long q = a[i][col] / a[r][col];
        for (int j = 0; j < n; ++j) a[i][j] -= q * a[r][j];
        if (a[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (!found) continue;
    if (a[r][col] < 0)
      for (auto& x : a[r]) x = -x;
    ++r;
  }
  a.resize(r);
  rows_ = std::move(a);
}

std::vector<long> ClassLattice::key(const std::vector<long>& v0) const {
  std::vector<long> v = v0;
  for (const auto& row : rows_) {
    int c = 0;
    while (row[c] == 0) ++c;
    long p = row[c];
    long q = v[c] >= 0 ? v[c] / p : -((-v[c] + p - 1) / p);
    if (q != 0)
      for (int j = 0; j < n_; ++j) v[j] -= q * row[j];
  }
  return v;
}

std::vector<long> ClassLattice::key(const Exponent& m) const {
  std::vector<long> v(m.n);
  for (int i = 0; i < m.n; ++i) v[i] = m[i];
  return key(v);
}

long ClassLattice::torsion_order() const {
  long t = 1;
  for (const auto& row : rows_) {
    int c = 0;
    while (row[c] == 0) ++c;
    t *= row[c];
  }
  return t;
}

// ---------------------------------------------------------------- sparse solver

// Linear system for one graded piece: rows are the monomials of the piece, columns the
// products m * gens_j landing in it. The elimination is recorded once and replayed for
// every right-hand side.
class PieceSolver {
 public:
  PieceSolver(long degree, const std::vector<long>& key, const std::vector<MultiPoly>& gens,
              const std::vector<long>& w, const ClassLattice* lattice, const Deadline& dl);
  // Cofactor contributions for the part of p lying in this piece.
  void solve(const MultiPoly& piece, std::vector<MultiPoly>& cofactors) const;

 private:
  struct Op {
    int target, source;
    SRat factor;
  };
  std::map<Exponent, int> row_of_;
  std::vector<std::pair<int, Exponent>> columns_;
  std::vector<Op> ops_;
  std::vector<std::pair<int, int>> pivots_;  // (row, column) in elimination order
  std::vector<std::map<int, SRat>> final_rows_;
  std::vector<int> zero_rows_;
};

namespace {

bool in_class(const Exponent& m, const std::vector<long>& key, const ClassLattice* lattice) {
  return !lattice || lattice->key(m) == key;
}

}  // namespace

PieceSolver::PieceSolver(long degree, const std::vector<long>& key, const std::vector<MultiPoly>& gens,
                         const std::vector<long>& w, const ClassLattice* lattice, const Deadline& dl) {
  int nrows = 0;
  for (const auto& m : monomials_of_degree(degree, w))
    if (in_class(m, key, lattice)) row_of_[m] = nrows++;

  std::vector<std::map<int, SRat>> rows(nrows);
  for (size_t j = 0; j < gens.size(); ++j) {
    if (gens[j].is_zero()) continue;
    long gd = gens[j].homogeneous_degree(w);
    const Exponent& lead = gens[j].terms().front().first;
    for (const auto& m : monomials_of_degree(degree - gd, w)) {
      if (!in_class(m + lead, key, lattice)) continue;
      int col = static_cast<int>(columns_.size());
      columns_.emplace_back(static_cast<int>(j), m);
      for (const auto& [e, c] : gens[j].terms()) {
        auto it = row_of_.find(m + e);
        if (it == row_of_.end()) throw OracleError("lift: generator is not homogeneous for the class grading");
        rows[it->second][col] += c;
      }
    }
  }

  final_rows_.resize(nrows);
  std::vector<bool> active(nrows, true);
  int remaining = nrows;
  while (remaining > 0) {
    dl.check();
    int r = -1;
    for (int i = 0; i < nrows; ++i)
      if (active[i] && (r < 0 || rows[i].size() < rows[r].size())) r = i;
    active[r] = false;
    --remaining;
    if (rows[r].empty()) {
      zero_rows_.push_back(r);
      continue;
    }
    int c = -1;
    size_t best = 0;
    for (const auto& [col, v] : rows[r]) {
      size_t wgt = v.weight();
      if (c < 0 || wgt < best) {
        c = col;
        best = wgt;
      }
    }
    const SRat inv = rows[r].at(c).inverse();
    for (int i = 0; i < nrows; ++i) {
      if (!active[i]) continue;
      auto it = rows[i].find(c);
      if (it == rows[i].end()) continue;
      SRat f = it->second * inv;
      for (const auto& [col, v] : rows[r]) {
        SRat& dst = rows[i][col];
        dst -= f * v;
        if (dst.is_zero()) rows[i].erase(col);
      }
      ops_.push_back({i, r, std::move(f)});
    }
    pivots_.emplace_back(r, c);
    final_rows_[r] = rows[r];
  }
}

void PieceSolver::solve(const MultiPoly& piece, std::vector<MultiPoly>& cofactors) const {
  std::vector<SRat> b(row_of_.size());
  for (const auto& [m, c] : piece.terms()) {
    auto it = row_of_.find(m);
    if (it == row_of_.end()) throw std::logic_error("lift: term outside its piece");
    b[it->second] = c;
  }
  for (const auto& op : ops_)
    if (!b[op.source].is_zero()) b[op.target] -= op.factor * b[op.source];
  for (int r : zero_rows_)
    if (!b[r].is_zero()) throw NotInIdeal("polynomial is not in the ideal");
  std::vector<SRat> x(columns_.size());
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    auto [r, c] = *it;
    SRat acc = b[r];
    for (const auto& [col, v] : final_rows_[r])
      if (col != c && !x[col].is_zero()) acc -= v * x[col];
    x[c] = acc / final_rows_[r].at(c);
  }
  const int n = piece.nvars();
  std::vector<std::vector<MultiPoly::Term>> terms(cofactors.size());
  for (size_t col = 0; col < columns_.size(); ++col)
    if (!x[col].is_zero()) terms[columns_[col].first].emplace_back(columns_[col].second, x[col]);
  for (size_t j = 0; j < cofactors.size(); ++j)
    if (!terms[j].empty()) cofactors[j] += MultiPoly::from_terms(n, std::move(terms[j]));
}

namespace {

using SolverCache = std::map<std::pair<long, std::vector<long>>, std::shared_ptr<PieceSolver>>;

std::vector<MultiPoly> lift_cached(const MultiPoly& p, const std::vector<MultiPoly>& gens, const std::vector<long>& w,
                                   const ClassLattice* lattice, const Deadline& dl, SolverCache& cache) {
  const int n = p.nvars();
  std::vector<MultiPoly> cof(gens.size(), MultiPoly(n));
  std::map<std::pair<long, std::vector<long>>, std::vector<MultiPoly::Term>> pieces;
  for (const auto& t : p.terms()) {
    std::vector<long> key = lattice ? lattice->key(t.first) : std::vector<long>{};
    pieces[{weighted_degree(t.first, w), std::move(key)}].push_back(t);
  }
  for (auto& [k, terms] : pieces) {
    auto& slot = cache[k];
    if (!slot) slot = std::make_shared<PieceSolver>(k.first, k.second, gens, w, lattice, dl);
    slot->solve(MultiPoly::from_terms(n, std::move(terms)), cof);
  }
  return cof;
}

}  // namespace

std::vector<MultiPoly> lift(const MultiPoly& p, const std::vector<MultiPoly>& gens, const std::vector<long>& w,
                            const ClassLattice* lattice, const Deadline& deadline) {
  SolverCache cache;
  return lift_cached(p, gens, w, lattice, deadline, cache);
}

bool certificate_holds(const MultiPoly& p, const std::vector<MultiPoly>& gens, const std::vector<MultiPoly>& cofactors) {
  if (gens.size() != cofactors.size()) return false;
  MultiPoly acc(p.nvars());
  for (size_t j = 0; j < gens.size(); ++j) acc += cofactors[j] * gens[j];
  return acc == p;
}

MultiPoly griffiths_reduce(const std::vector<MultiPoly>& cofactors, const std::vector<long>& w, long d) {
  if (cofactors.empty()) throw std::invalid_argument("griffiths_reduce: no cofactors");
  MultiPoly h(cofactors.front().nvars());
  for (size_t j = 0; j < cofactors.size(); ++j) h += cofactors[j].partial(static_cast<int>(j));
  if (h.is_zero()) return h;
  long deg = h.homogeneous_degree(w);
  if (deg % d != 0) throw OracleError("griffiths_reduce: degree is not a multiple of d");
  return h.scaled(SRat(make_rat(1, deg / d + 1)));
}

// ---------------------------------------------------------------- δ-matrix and family

DeltaMatrix delta_matrix(int kn) {
  if (kn < 0) throw std::invalid_argument("delta_matrix: negative size");
  DeltaMatrix dm;
  dm.w.assign(kn + 1, std::vector<BigInt>(kn + 1, 0));
  for (int i = 0; i <= kn; ++i) dm.w[0][i] = 1;
  for (int m = 1; m <= kn; ++m)
    for (int i = m; i <= kn; ++i) dm.w[m][i] = (m + 1) * dm.w[m][i - 1] + dm.w[m - 1][i - 1];
  return dm;
}

MultiPoly family_polynomial(const ExponentMatrix& m) {
  const int n = m.n();
  std::vector<MultiPoly::Term> terms;
  for (int i = 0; i < n; ++i) terms.emplace_back(m.monomial(i), SRat(1));
  Exponent all(n);
  for (int i = 0; i < n; ++i) all[i] = 1;
  terms.emplace_back(all, SRat(SPoly::s()));
  return MultiPoly::from_terms(n, std::move(terms));
}

std::vector<MultiPoly> jacobian(const MultiPoly& f) {
  std::vector<MultiPoly> out;
  for (int j = 0; j < f.nvars(); ++j) out.push_back(f.partial(j));
  return out;
}

// ---------------------------------------------------------------- reducer

FormReducer::FormReducer(const ExponentMatrix& m, const OracleOptions& opts)
    : opts_(opts), deadline_(opts.timeout_seconds), w_(weights(m)) {
  const int n = m.n();
  if (n > kMaxVars) throw OracleError("too many variables");
  f_ = family_polynomial(m);
  jac_ = jacobian(f_);
  gb_ = groebner(jac_, WeightedOrder(w_.q, opts.order_priority), deadline_);
  lattice_ = ClassLattice(step_vectors(m), n);
  for (int level = 1; level <= n - 1; ++level) {
    std::vector<long> diag(n, level - 1);
    std::vector<long> want = lattice_.key(diag);
    std::vector<Exponent> kb;
    for (const auto& mono : weight_kbase(gb_, w_.d * (level - 1), w_.q))
      if (lattice_.key(mono) == want) kb.push_back(mono);
    std::map<Exponent, size_t> idx;
    for (const auto& mono : kb) idx[mono] = columns_++;
    kbases_.push_back(std::move(kb));
    column_of_.push_back(std::move(idx));
  }
}

std::vector<SRat> FormReducer::reduce(const MultiPoly& p, int k_tag, std::vector<LedgerRecord>* ledger) {
  std::vector<SRat> coords(columns_);
  MultiPoly cur = p;
  while (!cur.is_zero()) {
    deadline_.check();
    long deg = cur.homogeneous_degree(w_.q);
    if (deg % w_.d != 0) throw OracleError("form numerator has degree " + std::to_string(deg) + ", not a multiple of d");
    int level = static_cast<int>(deg / w_.d) + 1;
    MultiPoly nf = normal_form(cur, gb_);
    LedgerRecord rec;
    rec.k = k_tag;
    rec.pole_level = level;
    if (ledger) rec.p = cur;
    for (const auto& [mono, c] : nf.terms()) {
      if (level - 1 >= static_cast<int>(column_of_.size())) throw OracleError("standard monomial above the top level");
      auto it = column_of_[level - 1].find(mono);
      if (it == column_of_[level - 1].end()) throw OracleError("normal form leaves the invariant k-base");
      coords[it->second] += c;
      if (ledger) rec.basis_part.emplace_back(mono, c);
    }
    cur -= nf;
    if (cur.is_zero()) {
      if (ledger) ledger->push_back(std::move(rec));
      break;
    }
    if (level == 1) throw OracleError("nonzero ideal element in degree zero");
    std::vector<MultiPoly> cof = lift_cached(cur, jac_, w_.q, &lattice_, deadline_, solvers_);
    ++lifts_;
    if (opts_.check_certificates) {
      if (!certificate_holds(cur, jac_, cof)) throw OracleError("lift certificate failed");
      ++certs_;
    }
    cur = griffiths_reduce(cof, w_.q, w_.d);
    if (ledger) {
      rec.cofactors = std::move(cof);
      ledger->push_back(std::move(rec));
    }
  }
  return coords;
}

// ---------------------------------------------------------------- oracle

OracleResult picard_fuchs_oracle(const ExponentMatrix& m, const OracleOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  IndexSets ix = index_sets(m);
  if (m.n() > opts.max_n)
    throw OracleError("oracle limited to " + std::to_string(opts.max_n) + " variables, got " + std::to_string(m.n()));
  if (ix.d_hat > opts.max_dhat)
    throw OracleError("dual degree " + std::to_string(ix.d_hat) + " exceeds the oracle limit " +
                      std::to_string(opts.max_dhat));

  FormReducer fr(m, opts);
  OracleResult res;
  const int n = m.n();
  const long u = static_cast<long>(fr.column_count());
  DeltaMatrix dm = delta_matrix(static_cast<int>(u));

  struct EchelonRow {
    std::vector<SRat> v;
    size_t pivot;
    std::vector<SRat> comb;
  };
  std::vector<EchelonRow> echelon;
  std::vector<std::vector<SRat>> forms;
  Exponent pk(n);
  for (long i = 0; i <= u; ++i) {
    // F_i = (-1)^i i! s^{i+1} P^i Omega_0 / f^{i+1}
    SPoly c = SPoly::monomial(BigRat(1), static_cast<int>(i) + 1);
    BigInt fact = 1;
    for (long j = 2; j <= i; ++j) fact *= j;
    c *= BigRat(i % 2 == 0 ? fact : BigInt(-fact));
    for (int j = 0; j < n; ++j) pk[j] = static_cast<int>(i);
    forms.push_back(fr.reduce(MultiPoly::monomial(pk, SRat(c)), static_cast<int>(i),
                              opts.keep_ledger ? &res.ledger : nullptr));

    std::vector<SRat> e(u);
    for (long mm = 0; mm <= i; ++mm) {
      SRat r(BigRat(dm.r(static_cast<int>(i), static_cast<int>(mm))));
      for (long c2 = 0; c2 < u; ++c2)
        if (!forms[mm][c2].is_zero()) e[c2] += r * forms[mm][c2];
    }
    std::vector<SRat> comb(i + 1);
    comb[i] = SRat(1);
    for (const auto& row : echelon) {
      if (e[row.pivot].is_zero()) continue;
      SRat f = e[row.pivot];
      for (long c2 = 0; c2 < u; ++c2)
        if (!row.v[c2].is_zero()) e[c2] -= f * row.v[c2];
      for (size_t c2 = 0; c2 < row.comb.size(); ++c2)
        if (!row.comb[c2].is_zero()) comb[c2] -= f * row.comb[c2];
    }
    auto nz = std::find_if(e.begin(), e.end(), [](const SRat& x) { return !x.is_zero(); });
    if (nz == e.end()) {
      res.relation = comb;
      res.order = i;
      res.nullspace_dimension = (i + 1) - static_cast<long>(echelon.size());
      break;
    }
    size_t piv = static_cast<size_t>(nz - e.begin());
    SRat inv = e[piv].inverse();
    for (auto& x : e) x *= inv;
    for (auto& x : comb) x *= inv;
    echelon.push_back({std::move(e), piv, std::move(comb)});
  }
  if (res.relation.empty()) throw OracleError("no relation among the δ-derivatives");

  res.op = normalize_operator(res.relation);
  res.kbases = fr.kbases();
  res.form_coordinates = std::move(forms);
  res.groebner_size = fr.basis().generators.size();
  res.lifts = fr.lifts();
  res.certificates_checked = fr.certificates_checked();
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

namespace {

// Echelon form with pivots kept in insertion order; returns false if v was dependent.
bool insert_row(std::vector<std::pair<size_t, std::vector<SRat>>>& rows, std::vector<SRat> v) {
  for (const auto& [piv, r] : rows) {
    if (v[piv].is_zero()) continue;
    SRat f = v[piv];
    for (size_t c = 0; c < v.size(); ++c)
      if (!r[c].is_zero()) v[c] -= f * r[c];
  }
  auto nz = std::find_if(v.begin(), v.end(), [](const SRat& x) { return !x.is_zero(); });
  if (nz == v.end()) return false;
  size_t piv = static_cast<size_t>(nz - v.begin());
  SRat inv = v[piv].inverse();
  for (auto& x : v) x *= inv;
  rows.emplace_back(piv, std::move(v));
  return true;
}

}  // namespace

bool spans_period_orbit(const ExponentMatrix& m, const std::vector<Exponent>& degree_d_monomials,
                        const OracleOptions& opts) {
  const int n = m.n();
  if (n != 4) throw OracleError("spans_period_orbit expects four variables");
  const long u = pf_order(m);
  if (static_cast<long>(degree_d_monomials.size()) + 2 != u) return false;
  FormReducer fr(m, opts);
  std::vector<std::pair<size_t, std::vector<SRat>>> rows;
  Exponent one(n), two(n);
  for (int j = 0; j < n; ++j) {
    one[j] = 0;
    two[j] = 2;
  }
  std::vector<MultiPoly> candidates{MultiPoly::monomial(one, SRat(SPoly::s()))};
  for (const auto& x : degree_d_monomials) candidates.push_back(MultiPoly::monomial(x));
  candidates.push_back(MultiPoly::monomial(two));
  for (const auto& p : candidates)
    if (!insert_row(rows, fr.reduce(p))) return false;
  Exponent pk(n);
  for (long i = 0; i < u; ++i) {
    for (int j = 0; j < n; ++j) pk[j] = static_cast<int>(i);
    if (insert_row(rows, fr.reduce(MultiPoly::monomial(pk)))) return false;
  }
  return true;
}

}  // namespace pfkit
