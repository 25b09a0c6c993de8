#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "schwarz/cy_conditions.hpp"
#include "schwarz/expr.hpp"
#include "schwarz/mirror_yukawa.hpp"
#include "schwarz/schwarzian.hpp"

namespace schwarz {

using json = nlohmann::json;

inline constexpr int kJsonSchemaVersion = 1;

// Malformed input file or field; the message carries the file, the field
// path and, for expressions, the column.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json to_json(const Rational& r);  // "p/q" string
json to_json(const RatFunc& f);   // expression string accepted by parse_expression
json to_json(const Series& s);    // {val, order (null when exact), coefficients}
json to_json(const DiffOperator& L);  // {coefficients: [D^0, D^1, ...]}
json to_json(const Polynomial& p, const std::string& var = "s");
json to_json(const ConditionReport& r);
json to_json(const SolutionFamily& f);
json to_json(const PremodularResult& r);
json to_json(const MumData& m);
json to_json(const YukawaRelationReport& r);

Rational rational_from_json(const json& j, const Bindings& vars = {});
RatFunc ratfunc_from_json(const json& j, const Bindings& vars = {});
Series series_from_json(const json& j);

// Operator object:
//   {"parameters": {"s": "86/225", ...},        optional, bound in order of appearance
//    "coefficients": ["expr", ...]}              a_k of D^k, k ascending
// or {"theta_coefficients": ["expr", ...]}       sum c_k(x) theta^k
DiffOperator operator_from_json(const json& j, const Bindings& vars = {});
Bindings parameters_from_json(const json& j, Bindings vars = {});

json read_json_file(const std::filesystem::path& p);
DiffOperator load_operator(const std::filesystem::path& p);
// {"w": "expr"} or an operator file (W of the operator).
RatFunc load_w(const std::filesystem::path& p);

}  // namespace schwarz
