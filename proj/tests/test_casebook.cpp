#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "schwarz/casebook.hpp"
#include "schwarz/serialize.hpp"
#include "support.hpp"

using namespace schwarz;
using namespace schwarz::testing;

namespace {

const CaseCheck* find_check(const CaseReport& r, const std::string& prefix) {
  for (const CaseCheck& c : r.checks)
    if (c.description.rfind(prefix, 0) == 0) return &c;
  return nullptr;
}

std::vector<std::string> failing(const CaseReport& r) {
  std::vector<std::string> out;
  for (const CaseCheck& c : r.checks)
    if (!c.pass) out.push_back(c.description);
  return out;
}

// copy of the shipped data with one field replaced
std::filesystem::path patched_data(const std::string& file, const std::string& key, const json& value) {
  auto dir = std::filesystem::temp_directory_path() / ("schwarz_cases_" + key);
  std::filesystem::create_directories(dir);
  for (const auto& e : std::filesystem::directory_iterator(default_data_dir()))
    std::filesystem::copy_file(e.path(), dir / e.path().filename(), std::filesystem::copy_options::overwrite_existing);
  json j = read_json_file(dir / file);
  j[key] = value;
  std::ofstream(dir / file) << j.dump(2);
  return dir;
}

}  // namespace

TEST_CASE("registry") {
  CHECK(case_names().size() == 6);
  CHECK_THROWS_AS(run_case("no-such-case"), std::invalid_argument);
  CHECK(std::filesystem::exists(default_data_dir() / "modular-j.json"));
}

TEST_CASE("modular-j") {
  CaseReport r = run_case("modular-j");
  CHECK(r.pass());
  const CaseCheck* q = find_check(r, "Q(1728x)/1728");
  REQUIRE(q);
  CHECK(q->pass);
  CHECK(q->computed == "[1, 744, 750420, 872769632, 1102652742882]");
  const CaseCheck* y = find_check(r, "y_1 x^2 coefficient at a_1 = 3");
  REQUIRE(y);
  CHECK(y->computed == "-31/12");
}

TEST_CASE("landen-chi2") {
  CaseReport r = run_case("landen-chi2");
  CHECK(failing(r).empty());
  const CaseCheck* h = find_check(r, "Laurent head of W");
  REQUIRE(h);
  CHECK(h->computed == "[15/2, 0, 6, 0, 6, 0, 6]");
}

TEST_CASE("avoiding-permutations") {
  CaseReport r = run_case("avoiding-permutations");
  CHECK(failing(r).empty());
  const CaseCheck* g = find_check(r, "Gamma3(p1, p2) = 0");
  REQUIRE(g);
  CHECK(g->pass);
  CHECK(find_check(r, "Gamma9")->pass);
  CHECK(find_check(r, "calL1 calL2")->pass);
  const CaseCheck* xi = find_check(r, "Xi2 integer series");
  REQUIRE(xi);
  CHECK(xi->computed.rfind("[0, 1, -3, -6, -22, -108, -612", 0) == 0);
  // the printed discrepancies are reported, not hidden
  CHECK(r.notes.size() >= 4);
}

TEST_CASE("heun-premodular") {
  CaseReport r = run_case("heun-premodular");
  CHECK(failing(r).empty());
  CHECK(r.checks.size() > 50);
}

TEST_CASE("hadamard-cy: only the printed Yukawa series disagree") {
  CaseReport r = run_case("hadamard-cy");
  std::vector<std::string> bad = failing(r);
  CHECK(bad == std::vector<std::string>{"printed K_x(L4) through order 3", "printed K_x(H4) through order 3",
                                        "printed K_q(L4) through order 3", "printed K_q(H4) through order 3"});
  CHECK(find_check(r, "nome q_x(H4)")->pass);
  CHECK(find_check(r, "q_x(H4) x^2 coefficient")->computed == "28/45");
  CHECK(find_check(r, "K_q(H4)(q) = K_q(L4)(lambda q)")->pass);
  CHECK(std::count_if(r.notes.begin(), r.notes.end(),
                      [](const std::string& s) { return s.find("square") != std::string::npos; }) == 1);
}

TEST_CASE("sym-power-gallery") {
  CHECK(run_case("sym-power-gallery").pass());
  SUBCASE("zeroed inputs reduce to D-power identities") {
    CaseReport z = sym_power_gallery(RatFunc(), RatFunc(), RatFunc(), X());
    CHECK(z.pass());
    CHECK(find_check(z, "Ext^2(L2^2)")->computed == DiffOperator::D_power(5).str());
  }
  SUBCASE("a non rank-two pairing still passes the identities that hold for any A_R") {
    CaseReport r = sym_power_gallery(R(1) / X(), R(2), R(3) / (X() + R(1)), X() * X());
    CHECK(r.pass());
  }
}

TEST_CASE("reports are deterministic and the worker pool preserves order") {
  std::vector<std::string> names = case_names();
  std::vector<CaseReport> par = run_cases(names, default_data_dir(), 4);
  REQUIRE(par.size() == names.size());
  for (size_t i = 0; i < names.size(); ++i) {
    CHECK(par[i].case_name == names[i]);
    CHECK(to_json(par[i]).dump() == to_json(run_case(names[i])).dump());
  }
  CHECK_THROWS_AS(run_cases({"modular-j", "bogus"}, default_data_dir(), 2), std::invalid_argument);
}

TEST_CASE("data errors name the file and field") {
  auto dir = patched_data("ap-operator.json", "p1", "-64*x/((1 - x)*(1 - 9*x)^3");
  try {
    run_case("avoiding-permutations", dir);
    FAIL("expected an InputError");
  } catch (const InputError& e) {
    std::string m = e.what();
    CHECK(m.find("ap-operator.json") != std::string::npos);
    CHECK(m.find("p1: column") != std::string::npos);
  }
  auto dir2 = patched_data("modular-j.json", "paper_ref", 3);
  CHECK_THROWS_AS(run_case("modular-j", dir2), InputError);
  // a changed printed value becomes a failing check, not an exception
  auto dir3 = patched_data("modular-j.json", "Q_coefficients", json::array({"1", "744", "750420", "872769632", "0"}));
  CaseReport r = run_case("modular-j", dir3);
  CHECK_FALSE(r.pass());
  CHECK(failing(r) == std::vector<std::string>{"Q(1728x)/1728 coefficients of x^1..x^5"});
}

TEST_CASE("SCHWARZ_DATA_DIR overrides the default") {
  auto dir = patched_data("modular-j.json", "lambda", "0");
  ::setenv("SCHWARZ_DATA_DIR", dir.c_str(), 1);
  CHECK(default_data_dir() == dir);
  ::unsetenv("SCHWARZ_DATA_DIR");
  CHECK(default_data_dir() != dir);
}
