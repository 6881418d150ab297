// Acceptance run: one PASS/FAIL line per criterion on stdout, diagnostics on stderr.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "pfkit/corpus.hpp"
#include "pfkit/griffiths_dwork.hpp"
#include "pfkit/milnor.hpp"
#include "pfkit/properties.hpp"
#include "pfkit/spectra.hpp"
#include "pfkit/verify.hpp"

using namespace pfkit;

namespace {

constexpr double kAsdSeconds = 1.0;
constexpr double kYonSeconds = 2.0;
constexpr double kOracleSecondsPerInstance = 300.0;
constexpr long kOracleMaxDhat = 40;
constexpr size_t kSweepInstances = 1200;
constexpr size_t kSweepMinCalabiYau = 1000;
constexpr uint64_t kSweepSeed = 20240601;
constexpr double kGroebnerSecondsPerInstance = 20.0;
constexpr int kDeltaMatrixSize = 30;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string summary;
};

ExponentMatrix entry_poly(const CorpusEntry& e) { return parse_polynomial(e.get("poly"), e.vars()).matrix; }

const CorpusEntry& find_entry(const std::string& id) {
  for (const auto& e : builtin_corpus())
    if (e.id == id) return e;
  throw std::runtime_error("no corpus entry " + id);
}

// Runs the verifier and counts the listed checks. Fails on any Fail or missing check.
struct CheckTally {
  size_t rows = 0, checks = 0, errata = 0, failures = 0, missing = 0;
  std::set<std::string> erratum_rows;
};

CheckTally tally(const std::vector<EntryReport>& reports, const std::set<std::string>& names) {
  CheckTally t;
  for (const auto& r : reports) {
    ++t.rows;
    for (const auto& name : names) {
      const CheckResult* c = r.find(name);
      if (!c) {
        std::cerr << "  " << r.id << ": missing expectation '" << name << "'\n";
        ++t.missing;
        continue;
      }
      ++t.checks;
      if (c->status == CheckStatus::Fail || c->status == CheckStatus::Skip) {
        std::cerr << "  " << r.id << " " << name << ": " << c->detail << "\n";
        ++t.failures;
      } else if (c->status == CheckStatus::Erratum) {
        ++t.errata;
        t.erratum_rows.insert(r.id);
        std::cerr << "  " << r.id << " " << name << " via erratum: " << c->detail << "\n";
      }
    }
  }
  return t;
}

std::string describe(const CheckTally& t) {
  std::ostringstream o;
  o << t.rows << " rows, " << (t.checks - t.failures) << "/" << t.checks << " checks";
  if (t.errata) o << " (" << t.errata << " through a recorded table erratum)";
  if (t.missing) o << ", " << t.missing << " expectations MISSING";
  return o.str();
}

Outcome criterion_asd() {
  const auto entries = filter_corpus(builtin_corpus(), {"ASD:*"});
  const auto t0 = Clock::now();
  const auto reports = verify_serial(entries, builtin_corpus(), VerifyOptions());
  const double secs = since(t0);
  CheckTally t = tally(reports, {"pf", "u", "alphas", "betas"});
  Outcome o;
  o.pass = t.failures == 0 && t.missing == 0 && entries.size() == 14 && secs < kAsdSeconds;
  char buf[64];
  std::snprintf(buf, sizeof buf, ", %.3f s (limit %.0f s)", secs, kAsdSeconds);
  o.summary = describe(t) + buf;
  return o;
}

Outcome criterion_yon() {
  const auto entries = filter_corpus(builtin_corpus(), {"YON:*"});
  const auto t0 = Clock::now();
  const auto reports = verify_serial(entries, builtin_corpus(), VerifyOptions());
  const double secs = since(t0);
  CheckTally t = tally(reports, {"weights", "u", "pf"});
  Outcome o;
  o.pass = t.failures == 0 && t.missing == 0 && entries.size() >= 48 && secs < kYonSeconds;
  char buf[64];
  std::snprintf(buf, sizeof buf, ", %.3f s (limit %.0f s)", secs, kYonSeconds);
  o.summary = describe(t) + buf;
  return o;
}

Outcome criterion_elliptic() {
  const auto entries = filter_corpus(builtin_corpus(), {"ELL:*"});
  const auto reports = verify_serial(entries, builtin_corpus(), VerifyOptions());
  CheckTally t = tally(reports, {"pf"});
  Outcome o;
  o.pass = t.failures == 0 && t.missing == 0 && entries.size() == 3;
  // Odd d̂ puts '+' between the summands, even d̂ '-'.
  int sign_ok = 0;
  for (const auto& e : entries) {
    const ExponentMatrix m = entry_poly(e);
    const std::string r = render_operator(pf_operator(m));
    const bool odd = index_sets(m).d_hat % 2 != 0;
    const bool plus = r.find(" + ") != std::string::npos;
    if (odd == plus) {
      ++sign_ok;
    } else {
      std::cerr << "  " << e.id << ": sign pattern of '" << r << "'\n";
      o.pass = false;
    }
  }
  o.summary = describe(t) + ", sign pattern " + std::to_string(sign_ok) + "/3";
  return o;
}

Outcome criterion_oracle() {
  Outcome o;
  OracleOptions opts;
  opts.max_dhat = kOracleMaxDhat;
  opts.timeout_seconds = kOracleSecondsPerInstance;
  int agree = 0, total = 0;
  double slowest = 0;
  bool relation_ok = false;
  for (const char* id : {"YON:1", "YON:3", "YON:5", "ELL:E6~", "ELL:E7~", "ELL:E8~", "ASD:U12", "ASD:Q10", "EX:chain4"}) {
    ++total;
    try {
      const ExponentMatrix m = entry_poly(find_entry(id));
      const OracleResult r = picard_fuchs_oracle(m, opts);
      slowest = std::max(slowest, r.seconds);
      const bool same = r.op == expand(pf_operator(m)) && r.certificates_checked == r.lifts;
      if (same) {
        ++agree;
      } else {
        std::cerr << "  " << id << ": oracle " << render_expanded(r.op) << " vs closed form "
                  << render_expanded(expand(pf_operator(m))) << "\n";
      }
      if (std::string(id) == "EX:chain4") {
        // (c_q s^10 - c_d) d^4 + (5 c_q s^10 + 20 c_d) d^3 - 130 c_d d^2 + 300 c_d d - 189 c_d
        const BigInt cq = 50000, cd("10000000000");
        auto sp = [](const BigInt& a, const BigInt& b) {
          std::vector<BigRat> c(11);
          c[0] = b;
          c[10] = a;
          return SRat(SPoly(c));
        };
        std::vector<SRat> rel{sp(0, -189 * cd), sp(0, 300 * cd), sp(0, -130 * cd), sp(5 * cq, 20 * cd), sp(cq, -cd)};
        // The oracle relation is monic in δ; scale the reference the same way.
        const SRat lead = rel.back();
        relation_ok = r.relation.size() == rel.size();
        for (size_t i = 0; relation_ok && i < rel.size(); ++i) relation_ok = r.relation[i] == rel[i] / lead;
        if (!relation_ok) std::cerr << "  EX:chain4: exact relation differs\n";
      }
    } catch (const std::exception& e) {
      std::cerr << "  " << id << ": " << e.what() << "\n";
    }
  }
  o.pass = agree == total && relation_ok && slowest <= kOracleSecondsPerInstance;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/%d instances agree, worked-example relation %s, slowest %.1f s (limit %.0f s)", agree,
                total, relation_ok ? "exact" : "MISMATCH", slowest, kOracleSecondsPerInstance);
  o.summary = buf;
  return o;
}

Outcome criterion_basis() {
  const auto entries = filter_corpus(builtin_corpus(), {"ASD:*"});
  const auto reports = verify_serial(entries, builtin_corpus(), VerifyOptions());
  CheckTally t = tally(reports, {"basis"});
  Outcome o;
  o.pass = t.failures == 0 && t.missing == 0 && entries.size() == 14;
  const ExponentMatrix s11 = entry_poly(find_entry("ASD:S11"));
  const bool v1 = vertex(s11, BigRat(4)) == std::vector<long>{4, 3, 0, 0};
  const bool v2 = vertex(s11, make_rat(16, 3)) == std::vector<long>{5, 0, 1, 1};
  if (!v1 || !v2) {
    std::cerr << "  S11 intermediates differ\n";
    o.pass = false;
  }
  // Rows matched through an erratum: the printed set must fail and the computed set must
  // pass the period-orbit span test.
  int evidence = 0;
  for (const auto& id : t.erratum_rows) {
    const CorpusEntry& e = find_entry(id);
    const ExponentMatrix m = entry_poly(e);
    const bool printed_spans = spans_period_orbit(m, parse_monomial_list(e.get("basis"), e.vars()));
    const bool computed_spans = spans_period_orbit(m, basis_monomials(m).by_level.at(2));
    std::cerr << "  " << id << ": printed set spans the period orbit: " << (printed_spans ? "yes" : "no")
              << ", computed set: " << (computed_spans ? "yes" : "no") << "\n";
    if (!printed_spans && computed_spans) ++evidence;
  }
  if (evidence != static_cast<int>(t.erratum_rows.size())) o.pass = false;
  o.summary = describe(t) + ", S11 vertices (4,3,0,0) and (5,0,1,1) " + (v1 && v2 ? "ok" : "MISMATCH");
  if (!t.erratum_rows.empty())
    o.summary += ", " + std::to_string(evidence) + "/" + std::to_string(t.erratum_rows.size()) +
                 " erratum rows confirmed by the span test";
  return o;
}

Outcome criterion_spectra() {
  const auto entries = filter_corpus(builtin_corpus(), {"ASD:*"});
  const auto reports = verify_serial(entries, builtin_corpus(), VerifyOptions());
  CheckTally t = tally(reports, {"chi0", "chiinf", "quotient_identity", "h11"});
  Outcome o;
  o.pass = t.failures == 0 && t.missing == 0 && entries.size() == 14;
  // h11 = u - 2 with the Hodge range [1,3] on every row.
  int hodge_ok = 0;
  for (const auto& e : entries) {
    const ExponentMatrix m = entry_poly(e);
    const AlphaBeta ab = alpha_beta(m);
    const HodgeProfile h = hodge_profile(ab.alphas, ab.betas, m.n());
    if (h.p_plus == 3 && h.p_minus == 1 && h.h.size() == 3 && h.h[1] == index_sets(m).u - 2)
      ++hodge_ok;
    else
      std::cerr << "  " << e.id << ": Hodge profile off\n";
  }
  if (hodge_ok != 14) o.pass = false;
  o.summary = describe(t) + ", h11 = u-2 with p in [1,3] on " + std::to_string(hodge_ok) + "/14";
  return o;
}

Outcome criterion_properties() {
  RandomCYOptions opts;
  opts.non_cy_fraction = 0.1;
  const auto ms = random_invertible(kSweepInstances, kSweepSeed, opts);
  const SweepResult r = property_sweep_parallel(ms);
  int max_n = 0;
  long max_dhat = 0;
  for (const auto& m : ms) {
    max_n = std::max(max_n, m.n());
    if (is_calabi_yau(weights(m))) max_dhat = std::max(max_dhat, weights(transpose(m)).d);
  }
  for (size_t i = 0; i < r.failures.size() && i < 20; ++i)
    std::cerr << "  " << r.failures[i].second.property << " on " << render_polynomial(ms[r.failures[i].first]) << " "
              << r.failures[i].second.detail << "\n";
  Outcome o;
  o.pass = r.failures.empty() && r.calabi_yau >= kSweepMinCalabiYau && max_n <= 5 && max_dhat <= 60;
  o.summary = std::to_string(r.calabi_yau) + " CY + " + std::to_string(r.instances - r.calabi_yau) +
              " non-CY instances (n <= " + std::to_string(max_n) + ", d̂ <= " + std::to_string(max_dhat) + "), " +
              std::to_string(r.failures.size()) + " failures";
  return o;
}

// prod (1 - t^{d - q_i}) / (1 - t^{q_i}) as a power series, independent of the Groebner code.
std::vector<long> hilbert_series(const WeightSystem& w, long top) {
  std::vector<long> h(top + 1, 0);
  h[0] = 1;
  for (long q : w.q) {
    for (long k = top; k >= w.d - q; --k) h[k] -= h[k - (w.d - q)];
    for (long k = q; k <= top; ++k) h[k] += h[k - q];
  }
  return h;
}

Outcome criterion_internals() {
  Outcome o;
  int completed = 0, matched = 0, skipped = 0, certs = 0, certs_ok = 0;
  for (const auto& e : builtin_corpus()) {
    const ExponentMatrix m = entry_poly(e);
    if (!is_calabi_yau(weights(m)) || m.n() > 4) continue;
    const WeightSystem w = weights(m);
    const std::vector<MultiPoly> jac = jacobian(family_polynomial(m));
    GroebnerBasis gb;
    try {
      gb = groebner(jac, WeightedOrder(w.q), Deadline(kGroebnerSecondsPerInstance));
    } catch (const OracleTimeout&) {
      ++skipped;
      continue;
    }
    ++completed;
    long socle = 0;
    for (long q : w.q) socle += w.d - 2 * q;
    const auto h = hilbert_series(w, socle + w.d);
    bool ok = true;
    for (long deg = 0; deg <= socle + w.d && ok; ++deg)
      ok = static_cast<long>(weight_kbase(gb, deg, w.q).size()) == h[deg];
    if (ok) {
      ++matched;
    } else {
      std::cerr << "  " << e.id << ": k-base dimensions differ from the Hilbert series\n";
    }
    // (prod x)^{n-1} lies in the Jacobian ideal; its cofactors must re-expand exactly.
    Exponent top(m.n());
    for (int i = 0; i < m.n(); ++i) top[i] = m.n() - 1;
    try {
      const MultiPoly p = MultiPoly::monomial(top);
      ++certs;
      ClassLattice lat(step_vectors(m), m.n());
      if (certificate_holds(p, jac, lift(p, jac, w.q, &lat, Deadline(kGroebnerSecondsPerInstance)))) ++certs_ok;
    } catch (const OracleTimeout&) {
      --certs;
    }
  }
  const DeltaMatrix dm = delta_matrix(kDeltaMatrixSize);
  bool recursion = dm.size() == kDeltaMatrixSize + 1;
  for (int m = 1; recursion && m <= kDeltaMatrixSize; ++m)
    for (int i = 1; i <= kDeltaMatrixSize; ++i)
      if (dm.w[m][i] != BigInt(m + 1) * dm.w[m][i - 1] + dm.w[m - 1][i - 1]) recursion = false;
  for (int i = 1; recursion && i <= kDeltaMatrixSize; ++i) recursion = dm.r(i, i) == 1 && dm.r(0, i) == 0;
  o.pass = completed > 0 && matched == completed && certs_ok == certs && recursion;
  o.summary = "Hilbert series " + std::to_string(matched) + "/" + std::to_string(completed) + " (" +
              std::to_string(skipped) + " Groebner runs over the time limit), certificates " + std::to_string(certs_ok) +
              "/" + std::to_string(certs) + ", DeltaMatrix recursion up to " + std::to_string(kDeltaMatrixSize) + " " +
              (recursion ? "ok" : "FAILED");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"ASD closed-form suite", criterion_asd},
      {"Yonemura suite", criterion_yon},
      {"elliptic suite", criterion_elliptic},
      {"oracle equivalence", criterion_oracle},
      {"basis suite", criterion_basis},
      {"spectra suite", criterion_spectra},
      {"property suite", criterion_properties},
      {"oracle internals", criterion_internals},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    std::cerr << "criterion " << i + 1 << ":\n";
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << i + 1 << " " << criteria[i].first << ": " << o.summary
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
