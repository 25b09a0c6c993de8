#include "schwarz/serialize.hpp"

#include <fstream>
#include <sstream>

namespace schwarz {

json to_json(const Rational& r) { return to_string(r); }

json to_json(const RatFunc& f) { return f.str(); }

json to_json(const Series& s) {
  json c = json::array();
  for (const Rational& r : s.raw()) c.push_back(to_json(r));
  json j{{"val", s.val()}, {"coefficients", c}};
  j["order"] = s.is_exact() ? json(nullptr) : json(s.order());
  return j;
}

json to_json(const DiffOperator& L) {
  json c = json::array();
  for (const RatFunc& f : L.coeffs()) c.push_back(to_json(f));
  return {{"coefficients", c}};
}

json to_json(const Polynomial& p, const std::string& var) { return p.str(var); }

json to_json(const ConditionReport& r) {
  return {{"name", r.name}, {"holds", r.holds}, {"residual", to_json(r.residual)}};
}

json to_json(const SolutionFamily& f) {
  json j{{"n", f.n}, {"a_n", to_json(f.a_n)}, {"y", to_json(f.y)}, {"resonances", f.resonances},
         {"consistent", f.consistent()}};
  j["inconsistent_at"] = f.inconsistent_at ? json(*f.inconsistent_at) : json(nullptr);
  return j;
}

json to_json(const PremodularResult& r) {
  json head = json::array();
  for (const Rational& c : r.head) head.push_back(to_json(c));
  return {{"pass", r.pass}, {"pole_order", r.pole_order}, {"head", head}};
}

json to_json(const MumData& m) {
  return {{"exponent", to_json(m.exponent)}, {"q_x", to_json(m.q_x)}, {"K_x", to_json(m.K_x)},
          {"K_q", to_json(m.K_q)}};
}

json to_json(const YukawaRelationReport& r) {
  return {{"precondition", r.precondition}, {"lambda", to_json(r.lambda)}, {"n", r.n},
          {"order", r.order}, {"nome", r.nome}, {"yukawa_x", r.yukawa_x},
          {"yukawa_q", r.yukawa_q}, {"holds", r.holds()}, {"detail", r.detail}};
}

Rational rational_from_json(const json& j, const Bindings& vars) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_constant(j.get<std::string>(), vars);
  throw InputError("expected a rational number as string or integer, got " + j.dump());
}

RatFunc ratfunc_from_json(const json& j, const Bindings& vars) {
  if (j.is_number_integer()) return RatFunc(j.get<long>());
  if (j.is_string()) return parse_expression(j.get<std::string>(), vars);
  throw InputError("expected an expression string, got " + j.dump());
}

Series series_from_json(const json& j) {
  std::vector<Rational> c;
  for (const json& e : j.at("coefficients")) c.push_back(rational_from_json(e));
  int order = j.contains("order") && !j["order"].is_null() ? j["order"].get<int>() : Series::kExact;
  return Series(j.value("val", 0), std::move(c), order);
}

Bindings parameters_from_json(const json& j, Bindings vars) {
  if (!j.contains("parameters")) return vars;
  const json& ps = j["parameters"];
  if (!ps.is_object()) throw InputError("parameters: expected an object");
  for (auto it = ps.begin(); it != ps.end(); ++it) {
    try {
      vars[it.key()] = ratfunc_from_json(it.value(), vars);
    } catch (const ParseError& e) {
      throw InputError("parameters." + it.key() + ": " + e.what());
    }
  }
  return vars;
}

namespace {

std::vector<RatFunc> parse_list(const json& arr, const char* field, const Bindings& vars) {
  if (!arr.is_array() || arr.empty()) throw InputError(std::string(field) + ": expected a non-empty array");
  std::vector<RatFunc> out;
  for (size_t k = 0; k < arr.size(); ++k) {
    try {
      out.push_back(ratfunc_from_json(arr[k], vars));
    } catch (const ParseError& e) {
      throw InputError(std::string(field) + "[" + std::to_string(k) + "]: " + e.what());
    } catch (const InputError& e) {
      throw InputError(std::string(field) + "[" + std::to_string(k) + "]: " + e.what());
    }
  }
  return out;
}

}  // namespace

DiffOperator operator_from_json(const json& j, const Bindings& outer) {
  if (!j.is_object()) throw InputError("operator: expected a JSON object");
  Bindings vars = parameters_from_json(j, outer);
  if (j.contains("coefficients")) {
    DiffOperator L(parse_list(j["coefficients"], "coefficients", vars));
    if (L.order() < 1) throw InputError("coefficients: operator has order < 1");
    return L;
  }
  if (j.contains("theta_coefficients")) {
    std::vector<RatFunc> c = parse_list(j["theta_coefficients"], "theta_coefficients", vars);
    DiffOperator L, t = DiffOperator::theta(), tk(RatFunc(1));
    for (const RatFunc& f : c) {
      L += f * tk;
      tk = t * tk;
    }
    if (L.order() < 1) throw InputError("theta_coefficients: operator has order < 1");
    return L;
  }
  throw InputError("operator: needs \"coefficients\" or \"theta_coefficients\"");
}

json read_json_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw InputError(p.string() + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(p.string() + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

DiffOperator load_operator(const std::filesystem::path& p) {
  json j = read_json_file(p);
  try {
    return operator_from_json(j.contains("operator") ? j["operator"] : j);
  } catch (const InputError& e) {
    throw InputError(p.string() + ": " + e.what());
  }
}

RatFunc load_w(const std::filesystem::path& p) {
  json j = read_json_file(p);
  try {
    if (j.contains("w")) return ratfunc_from_json(j["w"], parameters_from_json(j));
    return w_function(operator_from_json(j.contains("operator") ? j["operator"] : j));
  } catch (const ParseError& e) {
    throw InputError(p.string() + ": w: " + e.what());
  } catch (const InputError& e) {
    throw InputError(p.string() + ": " + e.what());
  }
}

}  // namespace schwarz
