// schwarz: command-line front end for the schwarz_core library.
//
// Exit codes: 0 when every requested check passes, 1 when a check fails,
// 2 for usage and input errors.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "schwarz/casebook.hpp"
#include "schwarz/cy_conditions.hpp"
#include "schwarz/expr.hpp"
#include "schwarz/frobenius.hpp"
#include "schwarz/mirror_yukawa.hpp"
#include "schwarz/powers.hpp"
#include "schwarz/schwarzian.hpp"
#include "schwarz/serialize.hpp"

using namespace schwarz;

namespace {

constexpr int kDefaultOrder = 30;
constexpr int kMinOrder = 8;

struct Config {
  bool json = false;
  std::optional<int> order;
  unsigned jobs = 0;

  int K() const {
    int k = kDefaultOrder;
    if (order) {
      k = *order;
    } else if (const char* env = std::getenv("SCHWARZ_ORDER")) {
      try {
        size_t used = 0;
        k = std::stoi(env, &used);
        if (env[used] != '\0') throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw std::invalid_argument(std::string("SCHWARZ_ORDER: not an integer: ") + env);
      }
    }
    if (k < kMinOrder) throw std::invalid_argument("order must be at least " + std::to_string(kMinOrder));
    return k;
  }
};

// An error that already carries its JSON payload.
struct CommandError : std::runtime_error {
  json payload;
  CommandError(const std::string& m, json p) : std::runtime_error(m), payload(std::move(p)) {}
};

json envelope(const std::string& command) { return {{"schema_version", kJsonSchemaVersion}, {"command", command}}; }

void emit(const Config& cfg, const json& j, const std::string& text) {
  if (cfg.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

std::string head_str(const std::vector<Rational>& head, int first_exponent) {
  std::ostringstream os;
  for (size_t i = 0; i < head.size(); ++i) {
    if (i) os << ", ";
    os << "x^" << first_exponent + static_cast<int>(i) << ": " << head[i].get_str();
  }
  return os.str();
}

std::string yes(bool b) { return b ? "holds" : "fails"; }

int cmd_w(const Config& cfg, const std::string& path) {
  RatFunc W = load_w(path);
  PremodularResult pm = premodular_test(W, 6);
  json j = envelope("w");
  j["w"] = to_json(W);
  j["laurent_head"] = to_json(pm)["head"];
  std::ostringstream os;
  os << "W(x) = " << W.str() << "\n" << "Laurent head at 0: " << head_str(pm.head, -2) << "\n";
  emit(cfg, j, os.str());
  return 0;
}

int cmd_residual(const Config& cfg, const std::string& path, const std::string& expr) {
  DiffOperator L = load_operator(path);
  RatFunc y;
  try {
    y = parse_expression(expr);
  } catch (const ParseError& e) {
    throw InputError(std::string("--pullback: ") + e.what());
  }
  PullbackReport r = pullback_symmetry_check(L, y);
  json j = envelope("residual");
  j["pullback"] = to_json(y);
  j["residual"] = to_json(r.residual);
  j["coefficient_match"] = r.coefficient_match;
  j["first_mismatch"] = r.first_mismatch();
  j["conjugated"] = to_json(r.conjugated);
  j["pulled"] = to_json(r.pulled);
  j["pass"] = r.holds();
  std::ostringstream os;
  os << "Schwarzian residual: " << r.residual.str() << "\n";
  for (size_t k = 0; k < r.coefficient_match.size(); ++k)
    os << "  D^" << k << " coefficient: " << (r.coefficient_match[k] ? "match" : "MISMATCH") << "\n";
  os << (r.holds() ? "PASS" : "FAIL") << ": pullback-conjugation symmetry\n";
  emit(cfg, j, os.str());
  return r.holds() ? 0 : 1;
}

int cmd_solve(const Config& cfg, const std::string& w_path, const std::string& op_path, int n,
              const std::string& an_text) {
  RatFunc W = load_w(w_path.empty() ? op_path : w_path);
  Rational an;
  try {
    an = parse_constant(an_text);
  } catch (const ParseError& e) {
    throw InputError(std::string("--an: ") + e.what());
  }
  if (an == 0) throw InputError("--an: must be nonzero");
  int K = cfg.K();
  SolutionFamily fam = solve_schwarzian_series(W, n, an, K);
  json j = envelope("solve");
  j["family"] = to_json(fam);
  std::ostringstream os;
  if (!fam.consistent()) {
    os << "inconsistent at order " << *fam.inconsistent_at << " (n = " << n << ")\n";
    j["pass"] = false;
    emit(cfg, j, os.str());
    return 1;
  }
  // the emitted family must make the residual vanish to its known order
  Series res = schwarzian_residual(W, fam.y, K);
  bool zero = res.is_zero();
  j["residual_zero"] = zero;
  j["residual_order"] = res.order();
  j["pass"] = zero;
  os << "y = " << fam.y.str() << "\n";
  if (!fam.resonances.empty()) {
    os << "resonances at levels";
    for (int k : fam.resonances) os << " " << k;
    os << " (free coefficients set to 0)\n";
  }
  os << (zero ? "PASS" : "FAIL") << ": Schwarzian residual vanishes mod x^" << res.order() << "\n";
  emit(cfg, j, os.str());
  return zero ? 0 : 1;
}

int cmd_premodular(const Config& cfg, const std::string& path) {
  PremodularResult pm = premodular_test(load_w(path), 6);
  json j = envelope("premodular");
  j["result"] = to_json(pm);
  j["pass"] = pm.pass;
  std::ostringstream os;
  os << (pm.pass ? "PASS" : "FAIL") << ": pre-modular (pole order " << pm.pole_order << ")\n"
     << "Laurent head at 0: " << head_str(pm.head, -2) << "\n";
  emit(cfg, j, os.str());
  return pm.pass ? 0 : 1;
}

int cmd_cy(const Config& cfg, const std::string& path) {
  DiffOperator L = load_operator(path).normalized();
  int N = L.order();
  std::vector<ConditionReport> conds;
  if (N == 3) conds.push_back(symcy3_residual(L));
  if (N == 4) {
    conds.push_back(calabi_residual(L));
    conds.push_back(s_condition_residual(L));
  }
  if (N == 5)
    for (ConditionReport& c : order5_residuals(L)) conds.push_back(std::move(c));

  json j = envelope("cy");
  j["order"] = N;
  json cj = json::array();
  bool pass = true;
  std::ostringstream os;
  os << "operator order " << N << "\n";
  for (const ConditionReport& c : conds) {
    cj.push_back(to_json(c));
    pass = pass && c.holds;
    os << "  " << c.name << ": " << yes(c.holds) << "\n";
  }
  j["conditions"] = cj;
  if (N == 4) {
    int ext = power_order(L, PowerKind::ext2);
    j["ext2_order"] = ext;
    os << "  exterior square order: " << ext << "\n";
  }
  if (N >= 2) {
    SymPowerDetection d = detect_sym_power(L, N);
    j["sym_power"] = {{"detected", d.is_sym_power}, {"L2", to_json(d.L2)}};
    pass = pass && d.is_sym_power;
    os << "  symmetric power of an order-2 operator: " << (d.is_sym_power ? "yes" : "no") << "\n";
    if (d.is_sym_power) os << "    L2 = " << d.L2.str() << "\n";
  }
  json exps = json::array();
  os << "  adjoint-conjugation exponents:";
  std::vector<Rational> found = adjoint_conjugation_search(L);
  for (const Rational& a : found) {
    exps.push_back(to_json(a));
    os << " " << a.get_str();
  }
  if (found.empty()) os << " none";
  os << "\n" << (pass ? "PASS" : "FAIL") << ": condition battery\n";
  j["adjoint_exponents"] = exps;
  j["pass"] = pass;
  emit(cfg, j, os.str());
  return pass ? 0 : 1;
}

int cmd_mirror(const Config& cfg, const std::string& path) {
  DiffOperator L = load_operator(path);
  int K = cfg.K();
  MumData m;
  try {
    m = mum_data(L, K);
  } catch (const NotMumError& e) {
    json p = envelope("mirror");
    p["error"] = e.what();
    p["indicial_polynomial"] = to_json(e.indicial(), "s");
    throw CommandError(e.what(), p);
  }
  json j = envelope("mirror");
  j["order"] = K;
  j["mum"] = to_json(m);
  std::ostringstream os;
  os << "indicial exponent " << m.exponent.get_str() << "\n"
     << "q_x = " << m.q_x.str() << "\n"
     << "K_x = " << m.K_x.str() << "\n"
     << "K_q = " << m.K_q.str("q") << "\n";
  emit(cfg, j, os.str());
  return 0;
}

int cmd_case(const Config& cfg, std::vector<std::string> names, bool all) {
  if (all) names = case_names();
  if (names.empty()) throw std::invalid_argument("case: give a case name or --all");
  std::vector<CaseReport> reports = run_cases(names, default_data_dir(), cfg.jobs);
  json j = envelope("case");
  json arr = json::array();
  bool pass = true;
  std::ostringstream os;
  for (const CaseReport& r : reports) {
    arr.push_back(to_json(r));
    pass = pass && r.pass();
    os << "== " << r.case_name << "\n";
    for (const CaseCheck& c : r.checks) {
      os << (c.pass ? "  PASS " : "  FAIL ") << c.description << "\n";
      if (!c.pass) os << "       expected " << c.expected << "\n       computed " << c.computed << "\n";
    }
    for (const std::string& n : r.notes) os << "  note: " << n << "\n";
    os << "  " << r.checks.size() - r.failed() << "/" << r.checks.size() << " checks pass\n";
  }
  j["reports"] = arr;
  j["pass"] = pass;
  emit(cfg, j, os.str());
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schwarzian conditions, Calabi-Yau conditions and mirror maps for linear differential operators"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_flag("--json", cfg.json, "machine-readable output");
  app.add_option("--order,-K", cfg.order, "truncation order (default $SCHWARZ_ORDER or 30)");
  app.add_option("--jobs,-j", cfg.jobs, "worker threads for case --all (0: all cores)");

  std::string op_path, w_path, pullback, an = "1";
  int n = 1;
  std::vector<std::string> names;
  bool all = false;

  auto* w = app.add_subcommand("w", "print W(x) and its Laurent head at 0");
  w->add_option("--op", op_path, "operator or {\"w\": ...} file")->required()->check(CLI::ExistingFile);

  auto* res = app.add_subcommand("residual", "Schwarzian residual and pullback-conjugation comparison");
  res->add_option("--op", op_path, "operator file")->required()->check(CLI::ExistingFile);
  res->add_option("--pullback", pullback, "rational expression in x")->required();

  auto* solve = app.add_subcommand("solve", "series solution y = a_n x^n + ... of the Schwarzian equation");
  auto* sw = solve->add_option("--w", w_path, "{\"w\": ...} file")->check(CLI::ExistingFile);
  auto* so = solve->add_option("--op", op_path, "operator file")->check(CLI::ExistingFile);
  sw->excludes(so);
  solve->add_option("--n", n, "leading exponent")->required()->check(CLI::PositiveNumber);
  solve->add_option("--an", an, "leading coefficient (rational)");

  auto* pm = app.add_subcommand("premodular", "pre-modular test of W");
  pm->add_option("--op", op_path, "operator or {\"w\": ...} file")->required()->check(CLI::ExistingFile);

  auto* cy = app.add_subcommand("cy", "Calabi-Yau condition battery");
  cy->add_option("--op", op_path, "operator file")->required()->check(CLI::ExistingFile);

  auto* mir = app.add_subcommand("mirror", "nome and Yukawa coupling of an order-4 MUM operator");
  mir->add_option("--op", op_path, "operator file")->required()->check(CLI::ExistingFile);

  auto* cs = app.add_subcommand("case", "run verification cases");
  cs->add_option("names", names, "case names");
  cs->add_flag("--all", all, "run every registered case");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed() && w_path.empty() && op_path.empty())
      throw std::invalid_argument("solve: one of --w or --op is required");
    cfg.K();  // validate the order up front
    if (w->parsed()) return cmd_w(cfg, op_path);
    if (res->parsed()) return cmd_residual(cfg, op_path, pullback);
    if (solve->parsed()) return cmd_solve(cfg, w_path, op_path, n, an);
    if (pm->parsed()) return cmd_premodular(cfg, op_path);
    if (cy->parsed()) return cmd_cy(cfg, op_path);
    if (mir->parsed()) return cmd_mirror(cfg, op_path);
    if (cs->parsed()) return cmd_case(cfg, names, all);
  } catch (const CommandError& e) {
    if (cfg.json)
      std::cout << e.payload.dump(2) << "\n";
    else
      std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    if (cfg.json) {
      json j = envelope(app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name());
      j["error"] = e.what();
      std::cout << j.dump(2) << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
  }
  return 2;
}
