#include "pfkit/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>

#include "pfkit/griffiths_dwork.hpp"
#include "pfkit/milnor.hpp"
#include "pfkit/pf_formula.hpp"
#include "pfkit/spectra.hpp"

namespace pfkit {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Skip: return "skip";
    case CheckStatus::Erratum: return "pass (erratum)";
  }
  return "?";
}

bool EntryReport::ok() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == CheckStatus::Fail; });
}

bool EntryReport::uses_erratum() const {
  return std::any_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.status == CheckStatus::Erratum; });
}

const CheckResult* EntryReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

template <class T>
std::string join(const std::vector<T>& v, const std::function<std::string(const T&)>& f) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + f(v[i]);
  return out;
}

std::string join_longs(const std::vector<long>& v) {
  return join<long>(v, [](const long& x) { return std::to_string(x); });
}

std::string join_rats(const std::vector<BigRat>& v) {
  return join<BigRat>(v, [](const BigRat& x) { return to_string(x); });
}

// Returns an empty string on success, otherwise a description of the mismatch.
using Checker = std::function<std::string(const std::string& value)>;

struct Runner {
  const CorpusEntry& e;
  EntryReport& r;

  void field(const std::string& key, const Checker& check) {
    if (!e.has(key)) return;
    CheckResult c;
    c.name = key;
    std::string err;
    try {
      err = check(e.get(key));
    } catch (const std::exception& ex) {
      err = ex.what();
    }
    if (err.empty()) {
      c.status = CheckStatus::Pass;
    } else if (e.has(key + "_erratum")) {
      std::string err2;
      try {
        err2 = check(e.get(key + "_erratum"));
      } catch (const std::exception& ex) {
        err2 = ex.what();
      }
      if (err2.empty()) {
        c.status = CheckStatus::Erratum;
        c.detail = "as printed: " + err;
        if (e.has("note")) c.detail += "; " + e.get("note");
      } else {
        c.status = CheckStatus::Fail;
        c.detail = err + "; erratum also fails: " + err2;
      }
    } else {
      c.status = CheckStatus::Fail;
      c.detail = err;
    }
    r.checks.push_back(std::move(c));
  }

  void add(const std::string& name, CheckStatus st, const std::string& detail = "") {
    r.checks.push_back({name, st, detail});
  }
};

std::string diff(const std::string& what, const std::string& expected, const std::string& got) {
  return what + ": expected " + expected + ", computed " + got;
}

const CorpusEntry* find_entry(const std::vector<CorpusEntry>& all, const std::string& prefix, const std::string& name) {
  for (const auto& e : all)
    if (e.id == prefix + name) return &e;
  return nullptr;
}

}  // namespace

EntryReport verify_entry(const CorpusEntry& e, const std::vector<CorpusEntry>& all, const VerifyOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  EntryReport r;
  r.id = e.id;
  Runner run{e, r};

  std::optional<ParsedPolynomial> pp;
  try {
    pp = parse_polynomial(e.get("poly"), e.vars());
    ExponentMatrix back = parse_polynomial(render_polynomial(pp->matrix, pp->names), pp->names).matrix;
    if (back != pp->matrix) throw std::runtime_error("render/parse round trip changed the polynomial");
    run.add("poly", CheckStatus::Pass);
  } catch (const std::exception& ex) {
    run.add("poly", CheckStatus::Fail, ex.what());
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }
  const ExponentMatrix& m = pp->matrix;
  const auto& names = pp->names;
  try {
    const WeightSystem w = weights(m);
    const IndexSets ix = index_sets(m);

    run.field("weights", [&](const std::string& v) {
      auto q = parse_long_list(v);
      return q == w.q ? "" : diff("weights", join_longs(q), join_longs(w.q));
    });
    run.field("degree", [&](const std::string& v) {
      long d = std::stol(v);
      return d == w.d ? "" : diff("degree", v, std::to_string(w.d));
    });
    run.add("calabi_yau", is_calabi_yau(w) ? CheckStatus::Pass : CheckStatus::Fail);
    run.field("dual", [&](const std::string& v) {
      std::string prefix = e.id.substr(0, e.id.find(':') + 1);
      const CorpusEntry* d = find_entry(all, prefix, v);
      if (!d) return "dual entry " + prefix + v + " not in corpus";
      auto dq = parse_long_list(d->get("weights"));
      long dd = std::stol(d->get("degree"));
      auto mine = ix.q_hat;
      std::sort(dq.begin(), dq.end());
      std::sort(mine.begin(), mine.end());
      if (dq != mine || dd != ix.d_hat)
        return diff("dual weights", join_longs(dq) + " / " + std::to_string(dd),
                    join_longs(mine) + " / " + std::to_string(ix.d_hat));
      return std::string();
    });
    run.field("dual_weights", [&](const std::string& v) {
      auto q = parse_long_list(v);
      return q == ix.q_hat ? "" : diff("dual weights", v, join_longs(ix.q_hat));
    });
    run.field("u", [&](const std::string& v) {
      long u = std::stol(v);
      return u == pf_order(m) ? "" : diff("u", v, std::to_string(pf_order(m)));
    });
    AlphaBeta ab = alpha_beta(m);
    run.field("alphas", [&](const std::string& v) {
      auto a = parse_rat_list(v);
      std::sort(a.begin(), a.end());
      return a == ab.alphas ? "" : diff("alphas", join_rats(a), join_rats(ab.alphas));
    });
    run.field("betas", [&](const std::string& v) {
      auto b = parse_rat_list(v);
      std::sort(b.begin(), b.end());
      return b == ab.betas ? "" : diff("betas", join_rats(b), join_rats(ab.betas));
    });
    PFOperator closed = pf_operator(m);
    ExpandedOperator closed_exp = expand(closed);
    run.field("pf", [&](const std::string& v) {
      PFOperator given = parse_operator(v);
      if (expand(parse_operator(render_operator(given))) != expand(given))
        return std::string("operator render/parse round trip failed");
      if (expand(given) != closed_exp) return diff("operator", render_operator(given), render_operator(closed));
      return std::string();
    });
    run.field("basis", [&](const std::string& v) {
      std::vector<Exponent> want = parse_monomial_list(v, names);
      BasisCatalog cat = basis_monomials(m);
      std::vector<Exponent> got = cat.by_level.count(2) ? cat.by_level.at(2) : std::vector<Exponent>{};
      for (const auto& x : want)
        if (parse_monomial(render_monomial(x, names), names) != x) return std::string("monomial round trip failed");
      std::sort(want.begin(), want.end());
      std::sort(got.begin(), got.end());
      if (want == got) return std::string();
      auto show = [&](const std::vector<Exponent>& xs) {
        return join<Exponent>(xs, [&](const Exponent& x) { return render_monomial(x, names); });
      };
      return diff("basis", show(want), show(got));
    });
    run.field("h11", [&](const std::string& v) {
      HodgeProfile hp = hodge_profile(ab.alphas, ab.betas, m.n());
      long h11 = (hp.p_minus <= 2 && 2 <= hp.p_plus) ? hp.h[2 - hp.p_minus] : 0;
      if (hp.p_plus != 3 || hp.p_minus != 1)
        return "Hodge range [" + std::to_string(hp.p_minus) + "," + std::to_string(hp.p_plus) + "], expected [1,3]";
      return h11 == std::stol(v) ? std::string() : diff("h11", v, std::to_string(h11));
    });
    ChiForms chi = chi_forms(m);
    auto chi_check = [&](const UnityProductForm& got) {
      return [&, got](const std::string& v) {
        UnityProductForm want = parse_unity_form(v);
        if (unity_exponents(parse_unity_form(render_unity_form(want))) != unity_exponents(want))
          return std::string("unity form round trip failed");
        return unity_exponents(want) == unity_exponents(got) ? std::string()
                                                              : diff("chi", v, render_unity_form(got));
      };
    };
    run.field("chi0", chi_check(chi.chi0));
    run.field("chiinf", chi_check(chi.chi_inf));
    if (e.has("chi0") && e.has("chiinf"))
      run.add("quotient_identity", quotient_identity_holds(chi, dual_data(m).dual) ? CheckStatus::Pass : CheckStatus::Fail);

    if (opts.oracle) {
      if (m.n() > opts.max_n || ix.d_hat > opts.max_dhat) {
        run.add("oracle", CheckStatus::Skip, "outside the oracle bound");
      } else {
        try {
          OracleOptions oo;
          oo.max_dhat = opts.max_dhat;
          oo.max_n = opts.max_n;
          oo.timeout_seconds = opts.timeout_seconds;
          OracleResult res = picard_fuchs_oracle(m, oo);
          if (res.op == closed_exp && res.nullspace_dimension == 1)
            run.add("oracle", CheckStatus::Pass);
          else
            run.add("oracle", CheckStatus::Fail, diff("oracle", render_expanded(closed_exp), render_expanded(res.op)));
        } catch (const std::exception& ex) {
          run.add("oracle", CheckStatus::Fail, ex.what());
        }
      }
    }
  } catch (const std::exception& ex) {
    run.add("analysis", CheckStatus::Fail, ex.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<EntryReport> verify_serial(const std::vector<CorpusEntry>& entries, const std::vector<CorpusEntry>& all,
                                       const VerifyOptions& opts) {
  std::vector<EntryReport> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(verify_entry(e, all, opts));
  return out;
}

std::vector<EntryReport> verify_parallel(const std::vector<CorpusEntry>& entries, const std::vector<CorpusEntry>& all,
                                         const VerifyOptions& opts) {
  std::vector<EntryReport> out(entries.size());
  const long n = static_cast<long>(entries.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) out[i] = verify_entry(entries[i], all, opts);
  return out;
}

VerifySummary summarize(const std::vector<EntryReport>& reports) {
  VerifySummary s;
  for (const auto& r : reports) {
    ++s.entries;
    r.ok() ? ++s.passed : ++s.failed;
    if (r.uses_erratum()) ++s.with_errata;
    for (const auto& c : r.checks) {
      ++s.checks;
      if (c.status == CheckStatus::Fail) ++s.failed_checks;
    }
  }
  return s;
}

}  // namespace pfkit
