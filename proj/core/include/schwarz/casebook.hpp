#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "schwarz/ratfunc.hpp"

namespace schwarz {

// One comparison: `expected` and `computed` are exact serializations
// (rationals, rational functions, or "0 mod x^K" for residuals).
struct CaseCheck {
  std::string description;
  std::string expected;
  std::string computed;
  bool pass = false;
};

struct CaseReport {
  std::string case_name;
  std::vector<CaseCheck> checks;
  std::vector<std::string> notes;
  bool pass() const;
  size_t failed() const;
};

const std::vector<std::string>& case_names();

// $SCHWARZ_DATA_DIR when set, else the data/cases directory of the source tree.
std::filesystem::path default_data_dir();

// Throws std::invalid_argument for an unknown name; data files that are
// missing or malformed raise InputError.
CaseReport run_case(const std::string& name, const std::filesystem::path& data_dir = default_data_dir());

// Runs the named cases on `jobs` worker threads (0: hardware concurrency);
// the reports come back in the order of `names`.
std::vector<CaseReport> run_cases(const std::vector<std::string>& names, const std::filesystem::path& data_dir,
                                  unsigned jobs = 0);

// Symmetric-power and factorization identities for L2 = D^2 + p D + q and a
// rank-two A_R. With p = q = A_R = 0 every check reduces to a D-power identity.
CaseReport sym_power_gallery(const RatFunc& p, const RatFunc& q, const RatFunc& A_R, const RatFunc& pullback);

nlohmann::json to_json(const CaseReport& r);

}  // namespace schwarz
