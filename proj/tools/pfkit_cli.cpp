#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "pfkit/corpus.hpp"
#include "pfkit/griffiths_dwork.hpp"
#include "pfkit/invertible.hpp"
#include "pfkit/milnor.hpp"
#include "pfkit/pf_formula.hpp"
#include "pfkit/spectra.hpp"
#include "pfkit/verify.hpp"

using json = nlohmann::ordered_json;
using namespace pfkit;

namespace {

constexpr const char* kSchema = "pfkit/1";

struct Globals {
  bool json = false;
  std::string vars;
};

json rat(const BigRat& r) { return {{"num", to_string(r.get_num())}, {"den", to_string(r.get_den())}}; }

json rats(const std::vector<BigRat>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(rat(r));
  return a;
}

json spoly(const SPoly& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(rat(c));
  return a;
}

json srat(const SRat& r) { return {{"num", spoly(r.num())}, {"den", spoly(r.den())}}; }

json mpoly(const MultiPoly& p) {
  json a = json::array();
  for (const auto& [m, c] : p.terms()) a.push_back({{"exponent", m.to_vector()}, {"coefficient", srat(c)}});
  return a;
}

json expanded(const ExpandedOperator& op) {
  json a = json::array();
  for (const auto& c : op.coefficients) a.push_back(spoly(c));
  return a;
}

std::string join_longs(const std::vector<long>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string join_rats(const std::vector<BigRat>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s;
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ','))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

// A corpus id is accepted wherever a polynomial is; its variable names come along.
ParsedPolynomial read_input(const std::string& text, const Globals& g, std::string* source = nullptr) {
  for (const auto& e : builtin_corpus())
    if (e.id == text) {
      if (source) *source = e.id;
      auto names = g.vars.empty() ? e.vars() : split_names(g.vars);
      return parse_polynomial(e.get("poly"), names);
    }
  return parse_polynomial(text, split_names(g.vars));
}

json header(const std::string& command) { return {{"schema", kSchema}, {"command", command}}; }

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_analyze(const std::string& input, const Globals& g) {
  std::string source;
  ParsedPolynomial pp = read_input(input, g, &source);
  const ExponentMatrix& m = pp.matrix;
  const auto names = pp.names.empty() ? default_var_names(m.n()) : pp.names;
  WeightSystem w = weights(m);
  long sum = std::accumulate(w.q.begin(), w.q.end(), 0L);
  bool cy = is_calabi_yau(w);
  WeightSystem dual = weights(transpose(m));
  auto parts = decompose(m);
  long u = cy ? pf_order(m) : -1;
  if (g.json) {
    json j = header("analyze");
    if (!source.empty()) j["corpus_id"] = source;
    j["polynomial"] = render_polynomial(m, pp.names);
    j["exponent_matrix"] = m.rows();
    json jp = json::array();
    for (const auto& p : parts)
      jp.push_back({{"kind", p.kind == PartKind::Loop ? "loop" : "chain"},
                    {"variables", p.variables},
                    {"exponents", p.exponents}});
    j["decomposition"] = jp;
    j["weights"] = w.q;
    j["degree"] = w.d;
    j["weight_sum"] = sum;
    j["calabi_yau"] = cy;
    j["transpose"] = render_polynomial(transpose(m), pp.names);
    j["dual_weights"] = dual.q;
    j["dual_degree"] = dual.d;
    if (cy) j["u"] = u;
    else j["u"] = nullptr;
    emit(j);
    return 0;
  }
  std::cout << "polynomial     " << render_polynomial(m, pp.names) << "\n";
  std::cout << "decomposition  " << render_parts(parts, names) << "\n";
  std::cout << "weights        (" << join_longs(w.q) << "), d = " << w.d << "\n";
  std::cout << "Calabi-Yau     " << (cy ? "true" : "false");
  if (!cy) std::cout << " (" << sum << " != " << w.d << ")";
  std::cout << "\n";
  std::cout << "transpose      " << render_polynomial(transpose(m), pp.names) << "\n";
  std::cout << "dual weights   (" << join_longs(dual.q) << "), d^ = " << dual.d << "\n";
  if (cy) std::cout << "u              " << u << "\n";
  return 0;
}

int cmd_pf(const std::string& input, bool lambda, bool gkz, const Globals& g) {
  ParsedPolynomial pp = read_input(input, g);
  const ExponentMatrix& m = pp.matrix;
  require_calabi_yau(m);
  PFOperator op = gkz ? gkz_operator(m) : pf_operator(m);
  ExpandedOperator ex = expand(op);
  if (g.json) {
    json j = header("pf");
    j["polynomial"] = render_polynomial(m, pp.names);
    j["kind"] = gkz ? "gkz" : "picard_fuchs";
    j["order"] = static_cast<long>(op.alphas.size());
    j["s_power"] = op.s_power;
    j["c_left"] = rat(op.c_left);
    j["alphas"] = rats(op.alphas);
    j["c_right"] = rat(op.c_right);
    j["betas"] = rats(op.betas);
    j["factored"] = render_operator(op);
    j["expanded"] = expanded(ex);
    if (lambda) {
      LambdaOperator l = to_lambda(op);
      j["lambda"] = {{"c0", rat(l.c0)}, {"left", rats(l.left)}, {"c1", rat(l.c1)}, {"right", rats(l.right)},
                     {"text", render_lambda(l)}};
    }
    emit(j);
    return 0;
  }
  std::cout << render_operator(op) << "\n";
  std::cout << "expanded: " << render_expanded(ex) << "\n";
  if (lambda) {
    LambdaOperator l = to_lambda(op);
    std::cout << "lambda:   " << render_lambda(l) << "\n";
    std::cout << "roots at 0:        " << join_rats(l.left) << "\n";
    std::cout << "roots at infinity: " << join_rats(l.right) << "\n";
  }
  return 0;
}

int cmd_spectra(const std::string& input, const Globals& g) {
  ParsedPolynomial pp = read_input(input, g);
  const ExponentMatrix& m = pp.matrix;
  require_calabi_yau(m);
  AlphaBeta ab = alpha_beta(m);
  HodgeProfile hp = hodge_profile(ab.alphas, ab.betas, m.n());
  ChiForms chi = chi_forms(m);
  DualData dd = dual_data(m);
  Monodromy mono = monodromy_eigenvalues(m);
  PoincareSeries ps = poincare_series(dd.dual);
  bool qi = quotient_identity_holds(chi, dd.dual);
  if (g.json) {
    json j = header("spectra");
    j["alphas"] = rats(ab.alphas);
    j["betas"] = rats(ab.betas);
    j["hodge"] = {{"p", hp.p_values}, {"p_plus", hp.p_plus}, {"p_minus", hp.p_minus}, {"h", hp.h}};
    j["chi0"] = render_unity_form(chi.chi0);
    j["chiinf"] = render_unity_form(chi.chi_inf);
    j["monodromy_at_zero"] = rats(mono.at_zero.elements);
    j["monodromy_at_infinity"] = rats(mono.at_infinity.elements);
    j["dual_poincare_series"] = render_unity_form(ps.unreduced);
    j["quotient_identity"] = qi;
    emit(j);
    return 0;
  }
  std::cout << "alphas   " << join_rats(ab.alphas) << "\n";
  std::cout << "betas    " << join_rats(ab.betas) << "\n";
  std::cout << "hodge    p in [" << hp.p_minus << "," << hp.p_plus << "], h = (" << join_longs(hp.h) << ")\n";
  std::cout << "chi0     " << render_unity_form(chi.chi0) << "\n";
  std::cout << "chiinf   " << render_unity_form(chi.chi_inf) << "\n";
  std::cout << "monodromy at 0    exp(2 pi i x), x = " << join_rats(mono.at_zero.elements) << "\n";
  std::cout << "monodromy at inf  exp(2 pi i x), x = " << join_rats(mono.at_infinity.elements) << "\n";
  std::cout << "chi0/chiinf = Poincare series of transpose " << render_unity_form(ps.unreduced) << ": "
            << (qi ? "yes" : "NO") << "\n";
  return qi ? 0 : 1;
}

int cmd_basis(const std::string& input, const Globals& g) {
  ParsedPolynomial pp = read_input(input, g);
  const ExponentMatrix& m = pp.matrix;
  require_calabi_yau(m);
  const auto names = pp.names.empty() ? default_var_names(m.n()) : pp.names;
  BasisCatalog cat = basis_monomials(m);
  if (g.json) {
    json j = header("basis");
    json el = json::array();
    for (const auto& e : cat.elements)
      el.push_back({{"alpha", rat(e.alpha)}, {"level", e.level}, {"monomial", e.monomial.to_vector()},
                    {"text", render_monomial(e.monomial, names)}});
    j["elements"] = el;
    j["count"] = cat.count();
    emit(j);
    return 0;
  }
  for (const auto& e : cat.elements)
    std::cout << "alpha " << to_string(e.alpha) << "  level " << e.level << "  "
              << render_monomial(e.monomial, names) << "\n";
  for (const auto& [level, mons] : cat.by_level) {
    std::cout << "level " << level << ":";
    for (const auto& x : mons) std::cout << " " << render_monomial(x, names);
    std::cout << "\n";
  }
  return 0;
}

json ledger_json(const std::vector<LedgerRecord>& ledger) {
  json a = json::array();
  for (const auto& r : ledger) {
    json cof = json::array();
    for (const auto& c : r.cofactors) cof.push_back(mpoly(c));
    json bp = json::array();
    for (const auto& [x, c] : r.basis_part) bp.push_back({{"monomial", x.to_vector()}, {"coefficient", srat(c)}});
    a.push_back({{"k", r.k}, {"pole_level", r.pole_level}, {"p", mpoly(r.p)}, {"cofactors", cof}, {"basis_part", bp}});
  }
  return a;
}

int cmd_oracle(const std::string& input, long max_dhat, double timeout, const std::string& ledger_path,
               const Globals& g) {
  ParsedPolynomial pp = read_input(input, g);
  const ExponentMatrix& m = pp.matrix;
  OracleOptions oo;
  oo.max_dhat = max_dhat;
  oo.timeout_seconds = timeout;
  oo.keep_ledger = !ledger_path.empty();
  OracleResult res = picard_fuchs_oracle(m, oo);
  ExpandedOperator closed = expand(pf_operator(m));
  bool agrees = res.op == closed;
  if (!ledger_path.empty()) {
    json lj = header("oracle-ledger");
    lj["polynomial"] = render_polynomial(m, pp.names);
    lj["records"] = ledger_json(res.ledger);
    if (ledger_path == "-") {
      emit(lj);
    } else {
      std::ofstream os(ledger_path);
      if (!os) throw std::runtime_error("cannot write " + ledger_path);
      os << lj.dump(2) << "\n";
    }
  }
  if (g.json) {
    json j = header("oracle");
    j["polynomial"] = render_polynomial(m, pp.names);
    j["order"] = res.order;
    j["nullspace_dimension"] = res.nullspace_dimension;
    j["operator"] = expanded(res.op);
    j["operator_text"] = render_expanded(res.op);
    j["agrees_with_closed_form"] = agrees;
    j["groebner_size"] = res.groebner_size;
    j["lifts"] = res.lifts;
    j["certificates_checked"] = res.certificates_checked;
    j["seconds"] = res.seconds;
    if (ledger_path != "-") emit(j);
    return agrees ? 0 : 1;
  }
  if (ledger_path == "-") return agrees ? 0 : 1;
  std::cout << "oracle operator  " << render_expanded(res.op) << "\n";
  std::cout << "closed form      " << render_expanded(closed) << "\n";
  std::cout << "order " << res.order << ", nullspace dimension " << res.nullspace_dimension << ", "
            << res.groebner_size << " Groebner generators, " << res.lifts << " lifts, "
            << res.certificates_checked << " certificates checked, " << res.seconds << " s\n";
  std::cout << (agrees ? "agrees with the closed form" : "DISAGREES with the closed form") << "\n";
  return agrees ? 0 : 1;
}

int cmd_verify(const std::vector<std::string>& patterns, const VerifyOptions& vo, bool serial, bool verbose,
               const Globals& g) {
  const auto& all = builtin_corpus();
  auto chosen = filter_corpus(all, patterns);
  if (chosen.empty()) throw std::invalid_argument("no corpus entry matches");
  auto reports = serial ? verify_serial(chosen, all, vo) : verify_parallel(chosen, all, vo);
  VerifySummary s = summarize(reports);
  if (g.json) {
    json j = header("verify");
    json ents = json::array();
    for (const auto& r : reports) {
      json cs = json::array();
      for (const auto& c : r.checks) {
        json cj = {{"name", c.name}, {"status", to_string(c.status)}};
        if (!c.detail.empty()) cj["detail"] = c.detail;
        cs.push_back(cj);
      }
      ents.push_back({{"id", r.id}, {"ok", r.ok()}, {"checks", cs}});
    }
    j["entries"] = ents;
    j["summary"] = {{"entries", s.entries}, {"passed", s.passed}, {"failed", s.failed},
                    {"with_errata", s.with_errata}, {"checks", s.checks}, {"failed_checks", s.failed_checks}};
    emit(j);
    return s.failed ? 1 : 0;
  }
  for (const auto& r : reports) {
    std::cout << (r.ok() ? "ok    " : "FAIL  ") << r.id;
    std::string passed;
    for (const auto& c : r.checks)
      if (c.status == CheckStatus::Pass) passed += (passed.empty() ? "" : " ") + c.name;
    if (verbose) std::cout << "  [" << passed << "]";
    std::cout << "\n";
    for (const auto& c : r.checks)
      if (c.status != CheckStatus::Pass && (verbose || c.status != CheckStatus::Skip))
        std::cout << "      " << c.name << ": " << to_string(c.status) << (c.detail.empty() ? "" : "  " + c.detail)
                  << "\n";
  }
  std::cout << s.passed << "/" << s.entries << " entries pass";
  if (s.with_errata) std::cout << " (" << s.with_errata << " using a recorded erratum)";
  std::cout << ", " << s.checks - s.failed_checks << "/" << s.checks << " checks\n";
  return s.failed ? 1 : 0;
}

int cmd_list(const std::vector<std::string>& patterns, const Globals& g) {
  auto chosen = filter_corpus(builtin_corpus(), patterns);
  if (g.json) {
    json j = header("list-corpus");
    json ents = json::array();
    for (const auto& e : chosen) {
      json fj = json::object();
      for (const auto& [k, v] : e.fields) fj[k] = v;
      ents.push_back({{"id", e.id}, {"file", e.file}, {"line", e.line}, {"fields", fj}});
    }
    j["entries"] = ents;
    emit(j);
    return 0;
  }
  for (const auto& e : chosen) std::cout << e.id << "  " << e.get("poly") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pfkit: Picard-Fuchs operators of invertible Calabi-Yau families g + s*prod(x_i)"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Emit JSON (schema pfkit/1)");
  app.add_option("--vars", g.vars, "Variable names, e.g. w,x,y,z");

  std::string input;
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("polynomial", input, "Polynomial such as x1^4+x2^4+x3^4+x4^4, or a corpus id")->required();
  };

  auto* analyze = app.add_subcommand("analyze", "Decomposition, weights, transpose, CY condition, order u");
  add_input(analyze);

  bool lambda = false, gkz = false;
  auto* pf = app.add_subcommand("pf", "Closed-form Picard-Fuchs operator");
  add_input(pf);
  pf->add_flag("--lambda", lambda, "Also print the operator in the coordinate (-s)^(-d^)");
  pf->add_flag("--gkz", gkz, "Print the uncancelled GKZ operator instead");

  auto* spectra = app.add_subcommand("spectra", "Hodge profile, chi forms, monodromy");
  add_input(spectra);

  auto* basis = app.add_subcommand("basis", "Distinguished basis monomials of the Milnor ring");
  add_input(basis);

  long max_dhat = 24;
  double timeout = 300;
  std::string ledger_path;
  auto* oracle = app.add_subcommand("oracle", "Griffiths-Dwork computation of the operator");
  add_input(oracle);
  oracle->add_option("--max-dhat", max_dhat, "Refuse inputs with a larger dual degree")->capture_default_str();
  oracle->add_option("--timeout-seconds", timeout, "Wall-clock budget")->capture_default_str();
  oracle->add_option("--emit-ledger", ledger_path, "Write every reduction step as JSON to FILE ('-' for stdout)");

  std::vector<std::string> patterns;
  VerifyOptions vo;
  bool serial = false, verbose = false;
  auto* verify = app.add_subcommand("verify", "Check the embedded corpus");
  verify->add_option("patterns", patterns, "Glob patterns on entry ids, e.g. 'ASD:*'");
  verify->add_flag("--oracle", vo.oracle, "Also run the Griffiths-Dwork oracle where the bound allows");
  verify->add_option("--max-dhat", vo.max_dhat, "Oracle bound on the dual degree")->capture_default_str();
  verify->add_option("--timeout-seconds", vo.timeout_seconds, "Oracle budget per entry")->capture_default_str();
  verify->add_flag("--serial", serial, "Do not parallelize over entries");
  verify->add_flag("-v,--verbose", verbose, "List passing checks and skips");

  std::vector<std::string> list_patterns;
  auto* list = app.add_subcommand("list-corpus", "List corpus entries");
  list->add_option("patterns", list_patterns, "Glob patterns on entry ids");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) return cmd_analyze(input, g);
    if (*pf) return cmd_pf(input, lambda, gkz, g);
    if (*spectra) return cmd_spectra(input, g);
    if (*basis) return cmd_basis(input, g);
    if (*oracle) return cmd_oracle(input, max_dhat, timeout, ledger_path, g);
    if (*verify) return cmd_verify(patterns, vo, serial, verbose, g);
    if (*list) return cmd_list(list_patterns, g);
  } catch (const NotInvertible& e) {
    std::cerr << "error: not invertible: " << e.what() << "\n";
    return 2;
  } catch (const NotCalabiYau& e) {
    std::cerr << "error: not Calabi-Yau: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
