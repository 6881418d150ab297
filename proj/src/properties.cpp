#include "pfkit/properties.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "pfkit/pf_formula.hpp"
#include "pfkit/spectra.hpp"

namespace pfkit {

namespace {

// Rows of one atomic part in local coordinates 0..L-1.
using Block = std::vector<std::vector<int>>;

Block fermat(int k) { return {{k}}; }

Block chain(const std::vector<int>& k) {
  const int L = static_cast<int>(k.size());
  Block b(L, std::vector<int>(L, 0));
  for (int i = 0; i < L; ++i) {
    b[i][i] = k[i];
    if (i + 1 < L) b[i][i + 1] = 1;
  }
  return b;
}

Block loop(const std::vector<int>& k) {
  const int L = static_cast<int>(k.size());
  Block b(L, std::vector<int>(L, 0));
  for (int i = 0; i < L; ++i) {
    b[i][i] = k[i];
    b[i][(i + 1) % L] = 1;
  }
  return b;
}

// sum q_i / d of a block on its own.
BigRat share(const Block& b) {
  WeightSystem w = weights(ExponentMatrix(b));
  return BigRat(std::accumulate(w.q.begin(), w.q.end(), 0L), w.d);
}

using Blocks = std::vector<Block>;

class Generator {
 public:
  Generator(uint64_t seed, const RandomCYOptions& o) : rng_(seed), o_(o) {
    const int K = o_.max_exponent;
    // Completions covering 1, 2 or 3 variables, indexed by their share.
    std::vector<Block> singles, pairs, triples;
    for (int a = 2; a <= K; ++a) singles.push_back(fermat(a));
    for (int a = 2; a <= K; ++a)
      for (int b = 2; b <= K; ++b) {
        pairs.push_back(chain({a, b}));
        if (a <= b) pairs.push_back(loop({a, b}));
      }
    for (int a = 2; a <= K; ++a)
      for (int b = 2; b <= K; ++b)
        for (int c = 2; c <= K; ++c) {
          triples.push_back(chain({a, b, c}));
          if (a <= b && a <= c) triples.push_back(loop({a, b, c}));
        }
    std::vector<BigRat> s1;
    for (const auto& x : singles) s1.push_back(share(x));
    for (size_t i = 0; i < singles.size(); ++i) {
      completions_[1][s1[i]].push_back({singles[i]});
      for (size_t j = i; j < singles.size(); ++j) {
        completions_[2][s1[i] + s1[j]].push_back({singles[i], singles[j]});
        for (size_t k = j; k < singles.size(); ++k)
          completions_[3][s1[i] + s1[j] + s1[k]].push_back({singles[i], singles[j], singles[k]});
      }
    }
    for (const auto& p : pairs) {
      BigRat sp = share(p);
      completions_[2][sp].push_back({p});
      for (size_t i = 0; i < singles.size(); ++i) completions_[3][sp + s1[i]].push_back({p, singles[i]});
    }
    for (const auto& t : triples) completions_[3][share(t)].push_back({t});
  }

  Block random_block(int max_len) {
    std::uniform_int_distribution<int> len_d(1, std::min(max_len, 5));
    std::uniform_int_distribution<int> exp_d(2, o_.max_exponent);
    const int L = len_d(rng_);
    if (L == 1) return fermat(exp_d(rng_));
    std::vector<int> k(L);
    for (auto& x : k) x = exp_d(rng_);
    return std::bernoulli_distribution(0.5)(rng_) ? chain(k) : loop(k);
  }

  // Random parts for n variables; with `complete`, the last 1..3 variables are chosen so
  // that the shares add up to 1. Returns false when no completion exists.
  bool draw(int n, bool complete, Blocks& out) {
    out.clear();
    int left = n;
    BigRat used = 0;
    std::uniform_int_distribution<int> tail_d(1, 3);
    const int tail = complete ? std::min(n, tail_d(rng_)) : 0;
    while (left > tail) {
      Block b = random_block(left - tail);
      used += share(b);
      left -= static_cast<int>(b.size());
      out.push_back(std::move(b));
    }
    if (!complete) return true;
    auto it = completions_[tail].find(BigRat(1) - used);
    if (it == completions_[tail].end()) return false;
    std::uniform_int_distribution<size_t> pick(0, it->second.size() - 1);
    for (const auto& b : it->second[pick(rng_)]) out.push_back(b);
    return true;
  }

  // Block-diagonal assembly with shuffled variables and monomials.
  ExponentMatrix assemble(const Blocks& blocks) {
    int n = 0;
    for (const auto& b : blocks) n += static_cast<int>(b.size());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng_);
    std::vector<std::vector<int>> rows;
    int off = 0;
    for (const auto& b : blocks) {
      for (const auto& r : b) {
        std::vector<int> row(n, 0);
        for (size_t j = 0; j < r.size(); ++j) row[perm[off + j]] = r[j];
        rows.push_back(row);
      }
      off += static_cast<int>(b.size());
    }
    std::shuffle(rows.begin(), rows.end(), rng_);
    return ExponentMatrix(rows);
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
  RandomCYOptions o_;
  std::map<BigRat, std::vector<Blocks>> completions_[4];
};

}  // namespace

std::vector<ExponentMatrix> random_invertible(size_t count, uint64_t seed, const RandomCYOptions& opts) {
  Generator gen(seed, opts);
  std::vector<ExponentMatrix> out;
  std::set<std::vector<std::pair<int, std::vector<int>>>> seen;
  std::uniform_int_distribution<int> n_d(opts.min_n, opts.max_n);
  const size_t want_non_cy = static_cast<size_t>(opts.non_cy_fraction * static_cast<double>(count));
  size_t non_cy = 0;
  Blocks blocks;
  for (size_t attempts = 0; out.size() < count; ++attempts) {
    if (attempts > 1000 * count + 100000) throw std::runtime_error("random_invertible: generator stalled");
    const bool want_cy = out.size() - non_cy >= count - want_non_cy ? false : (non_cy >= want_non_cy || attempts % 2);
    if (!gen.draw(n_d(gen.rng()), want_cy, blocks)) continue;
    ExponentMatrix m = gen.assemble(blocks);
    const bool cy = is_calabi_yau(weights(m));
    if (cy != want_cy) continue;
    if (cy && weights(transpose(m)).d > opts.max_dhat) continue;
    if (!seen.insert(canonical_signature(m)).second) continue;
    if (!cy) ++non_cy;
    out.push_back(std::move(m));
  }
  return out;
}

namespace {

std::string show(const std::vector<BigRat>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s;
}

}  // namespace

std::vector<PropertyFailure> check_properties(const ExponentMatrix& m) {
  std::vector<PropertyFailure> f;
  auto expect = [&f](bool ok, const std::string& prop, const std::string& detail = "") {
    if (!ok) f.push_back({prop, detail});
  };
  try {
    const ExponentMatrix t = transpose(m);
    expect(transpose(t) == m, "transpose_involution");
    const bool cy = is_calabi_yau(weights(m));
    expect(cy == is_calabi_yau(weights(t)), "dual_cy_equivalence");
    if (!cy) return f;

    const int n = m.n();
    const IndexSets ix = index_sets(m);
    const long dh = ix.d_hat;
    expect(ix.u == ix.v, "u_equals_v", std::to_string(ix.u) + " vs " + std::to_string(ix.v));
    expect(ix.u >= std::max<long>(n - 1, euler_phi(dh)), "u_lower_bound");
    expect(pf_order(m) == ix.u, "pf_order");

    const AlphaBeta ab = alpha_beta(m);
    expect(static_cast<long>(ab.alphas.size()) == ix.u && static_cast<long>(ab.betas.size()) == ix.u,
           "alpha_beta_sizes");
    expect(std::count(ab.alphas.begin(), ab.alphas.end(), BigRat(0)) == n - 1, "zero_alphas");
    const AlphaBeta by_cut = alpha_beta_by_intersection(m, true);
    expect(by_cut.alphas == ab.alphas && by_cut.betas == ab.betas, "alpha_beta_two_routes");

    // PF factors together with the cancelled ones give the GKZ factors.
    std::vector<BigRat> left = ab.alphas;
    for (long k : ix.I) left.push_back(BigRat(k));
    std::sort(left.begin(), left.end());
    expect(left == all_shifts(ix), "gkz_left_reconstruction", show(left));
    std::vector<BigRat> right = ab.betas;
    for (long k : ix.union_QZ) right.push_back(BigRat(k));
    std::sort(right.begin(), right.end());
    std::vector<BigRat> one_to_d;
    for (long j = 1; j <= dh; ++j) one_to_d.push_back(BigRat(j));
    expect(right == one_to_d, "gkz_right_reconstruction", show(right));
    expect(ix.I.size() == ix.union_QZ.size(), "cancelled_factor_count");

    std::vector<long> sum(n, 0);
    const auto steps = step_vectors(m);
    long qsum = 0;
    for (int i = 0; i < n; ++i) {
      qsum += ix.q_hat[i];
      for (int j = 0; j < n; ++j) sum[j] += ix.q_hat[i] * steps[i][j];
    }
    expect(std::all_of(sum.begin(), sum.end(), [](long x) { return x == 0; }), "step_closure");
    expect(qsum == dh, "dual_weight_sum");

    const PoincareSeries ps = poincare_series(weights(t));
    const auto za = CyclotomicMultiset::from(ab.alphas, BigRat(dh));
    const auto zb = CyclotomicMultiset::from(ab.betas, BigRat(dh));
    expect(ps.zeros == zb, "poincare_zeros", show(ps.zeros.elements));
    expect(ps.poles == za, "poincare_poles", show(ps.poles.elements));
    expect(za.closed_under_conjugation(), "alpha_conjugation");
    expect(zb.closed_under_conjugation(), "beta_conjugation");
  } catch (const std::exception& e) {
    f.push_back({"exception", e.what()});
  }
  return f;
}

namespace {

SweepResult merge(const std::vector<ExponentMatrix>& ms, std::vector<std::vector<PropertyFailure>>& per,
                  const std::vector<char>& cy) {
  SweepResult r;
  r.instances = ms.size();
  for (size_t i = 0; i < ms.size(); ++i) {
    r.calabi_yau += cy[i] ? 1 : 0;
    for (auto& f : per[i]) r.failures.emplace_back(i, std::move(f));
  }
  return r;
}

}  // namespace

SweepResult property_sweep_serial(const std::vector<ExponentMatrix>& ms) {
  std::vector<std::vector<PropertyFailure>> per(ms.size());
  std::vector<char> cy(ms.size());
  for (size_t i = 0; i < ms.size(); ++i) {
    per[i] = check_properties(ms[i]);
    cy[i] = is_calabi_yau(weights(ms[i]));
  }
  return merge(ms, per, cy);
}

SweepResult property_sweep_parallel(const std::vector<ExponentMatrix>& ms) {
  std::vector<std::vector<PropertyFailure>> per(ms.size());
  std::vector<char> cy(ms.size());
  const long n = static_cast<long>(ms.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < n; ++i) {
    per[i] = check_properties(ms[i]);
    cy[i] = is_calabi_yau(weights(ms[i]));
  }
  return merge(ms, per, cy);
}

}  // namespace pfkit
