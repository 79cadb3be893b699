#include "mvml/io.hpp"

#include <fstream>
#include <sstream>

#include "mvml/error.hpp"

namespace mvml {

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw DomainError(std::string("malformed ") + what + ": " + e.what());
  }
}

std::vector<std::vector<std::size_t>> table_from_json(const Json& j) {
  return j.get<std::vector<std::vector<std::size_t>>>();
}

}  // namespace

Algebra algebra_from_name(const std::string& name) {
  if (name == "std-mv") return Algebra::std_mv();
  if (name == "std-godel") return Algebra::std_godel();
  if (name == "std-product") return Algebra::std_product();
  if (name == "exp-chain") return Algebra::exp_chain();
  if (name.rfind("mv-", 0) == 0 && name.size() > 3 && name.find_first_not_of("0123456789", 3) == std::string::npos)
    return Algebra::mv(std::stoul(name.substr(3)));
  throw DomainError("unknown algebra " + name);
}

Algebra algebra_from_json(const Json& j) {
  return guarded("algebra", [&] {
    if (j.is_string()) return algebra_from_name(j.get<std::string>());
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "mv-n") return Algebra::mv(j.at("n").get<std::size_t>());
    if (kind == "finite-table") {
      const Json& t = j.at("tables");
      FiniteTables tables;
      tables.size = t.at("size").get<std::size_t>();
      tables.meet = table_from_json(t.at("meet"));
      tables.join = table_from_json(t.at("join"));
      tables.times = table_from_json(t.at("times"));
      tables.residuum = table_from_json(t.at("residuum"));
      tables.zero = t.at("zero").get<std::size_t>();
      tables.one = t.at("one").get<std::size_t>();
      return Algebra::finite(std::move(tables));
    }
    if (kind == "std-product" && j.contains("power_cap")) return Algebra::std_product(j.at("power_cap").get<unsigned long>());
    return algebra_from_name(kind);
  });
}

Json algebra_to_json(const Algebra& alg) {
  Json j;
  switch (alg.kind()) {
    case AlgebraKind::MVn:
      j["kind"] = "mv-n";
      j["n"] = alg.n();
      break;
    case AlgebraKind::FiniteTable: {
      const FiniteTables& t = alg.tables();
      j["kind"] = "finite-table";
      j["tables"] = {{"size", t.size},   {"meet", t.meet},         {"join", t.join}, {"times", t.times},
                     {"residuum", t.residuum}, {"zero", t.zero}, {"one", t.one}};
      break;
    }
    default:
      j["kind"] = alg.name();
      if (alg.kind() == AlgebraKind::StdProduct && alg.power_cap() != 64) j["power_cap"] = alg.power_cap();
  }
  return j;
}

Value value_from_json(const Algebra& alg, const Json& j) {
  return guarded("value", [&] {
    Value v;
    switch (alg.kind()) {
      case AlgebraKind::ExpChain:
        if (j.is_string() && j.get<std::string>() == "zero")
          v = Value::exp_zero();
        else
          v = Value::pow(parse_rational(j.at("pow").is_string() ? j.at("pow").get<std::string>()
                                                                 : j.at("pow").dump()));
        break;
      case AlgebraKind::FiniteTable:
        v = Value::fin(j.get<std::size_t>());
        break;
      default:
        v = parse_rational(j.is_string() ? j.get<std::string>() : j.dump());
    }
    alg.check(v);
    return v;
  });
}

Json value_to_json(const Value& v) {
  if (v.is_rat()) return to_string(v.rat());
  if (v.is_fin()) return v.fin();
  if (v.exp().is_zero) return "zero";
  return Json{{"pow", to_string(v.exp().t)}};
}

KripkeFrame frame_from_json(const Json& j) {
  return guarded("frame", [&] {
    auto worlds = j.at("worlds").get<std::vector<std::string>>();
    KripkeFrame names(worlds, {});
    std::vector<Edge> edges;
    for (const auto& e : j.value("edges", Json::array())) {
      if (!e.is_array() || e.size() != 2) throw DomainError("an edge is a pair of world names");
      edges.emplace_back(names.index_of(e[0].get<std::string>()), names.index_of(e[1].get<std::string>()));
    }
    return KripkeFrame(std::move(worlds), std::move(edges));
  });
}

Json frame_to_json(const KripkeFrame& fr) {
  Json j;
  j["worlds"] = fr.worlds();
  j["edges"] = Json::array();
  for (const auto& [a, b] : fr.edges()) j["edges"].push_back({fr.name(a), fr.name(b)});
  return j;
}

KripkeModel model_from_json(const Json& j) {
  return guarded("model", [&] {
    Algebra alg = algebra_from_json(j.at("algebra"));
    KripkeFrame fr = frame_from_json(j);
    const Json& val = j.value("valuation", Json::object());
    std::map<std::string, std::vector<Value>> cols;
    std::vector<std::set<std::string>> seen(fr.size());
    for (const auto& [wname, row] : val.items()) {
      const std::size_t w = fr.index_of(wname);
      for (const auto& [var, value] : row.items()) {
        if (!is_identifier(var)) throw DomainError("not a variable name: " + var);
        auto& col = cols[var];
        col.resize(fr.size());
        col[w] = value_from_json(alg, value);
        seen[w].insert(var);
      }
    }
    for (std::size_t w = 0; w < fr.size(); ++w)
      for (const auto& [var, col] : cols)
        if (!seen[w].count(var)) throw DomainError("world " + fr.name(w) + " has no value for " + var);
    return KripkeModel::from_columns(std::move(fr), std::move(alg), cols);
  });
}

Json model_to_json(const KripkeModel& m) {
  Json j;
  j["algebra"] = algebra_to_json(m.algebra());
  Json fr = frame_to_json(m.frame());
  j["worlds"] = fr["worlds"];
  j["edges"] = fr["edges"];
  Json val = Json::object();
  for (std::size_t w = 0; w < m.size(); ++w) {
    Json row = Json::object();
    for (const auto& var : m.variables()) row[var] = value_to_json(m.value(w, var));
    val[m.frame().name(w)] = std::move(row);
  }
  j["valuation"] = std::move(val);
  return j;
}

PCPInstance instance_from_json(const Json& j) {
  return guarded("instance", [&] {
    PCPInstance p;
    p.base = j.at("base").get<unsigned long>();
    auto numeral = [](const Json& n) {
      if (!n.is_array() || n.size() != 2) throw DomainError("a numeral is [value, length]");
      Numeral out;
      const std::string digits = n[0].is_string() ? n[0].get<std::string>() : n[0].dump();
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw DomainError("numeral value must be a decimal natural: " + digits);
      out.value = Natural(digits, 10);
      out.length = n[1].get<std::size_t>();
      return out;
    };
    for (const auto& pair : j.at("pairs")) {
      if (!pair.is_array() || pair.size() != 2) throw DomainError("a pair has two numerals");
      p.pairs.emplace_back(numeral(pair[0]), numeral(pair[1]));
    }
    p.validate();
    return p;
  });
}

Json instance_to_json(const PCPInstance& p) {
  Json pairs = Json::array();
  for (const auto& [x, y] : p.pairs)
    pairs.push_back(Json::array({Json::array({x.value.get_str(), x.length}), Json::array({y.value.get_str(), y.length})}));
  return {{"base", p.base}, {"pairs", pairs}};
}

Json verdict_to_json(const Verdict& v) {
  Json j;
  j["holds"] = v.holds;
  if (v.witness) {
    const Witness& w = *v.witness;
    Json wj;
    if (w.model) {
      wj["model"] = model_to_json(*w.model);
      wj["world"] = w.model->frame().name(w.world);
    } else {
      wj["world"] = w.world;
    }
    wj["formula"] = render(w.formula);
    wj["value"] = value_to_json(w.value);
    j["witness"] = std::move(wj);
  }
  return j;
}

Json report_to_json(const SeparationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"depth", c.depth}, {"formula", render(c.formula)}, {"value", value_to_json(c.value)}});
  return {{"n", r.n},
          {"algebra", r.algebra},
          {"pass", r.pass()},
          {"checks", checks},
          {"conclusion", render(sigma_conclusion())},
          {"final_value", value_to_json(r.final_value)}};
}

Json violations_to_json(const std::vector<ClaimViolation>& vs) {
  Json out = Json::array();
  for (const auto& v : vs)
    out.push_back({{"world", v.world},
                   {"formula", render(v.formula)},
                   {"expected", value_to_json(v.expected)},
                   {"actual", value_to_json(v.actual)}});
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::exception& e) {
    throw DomainError("invalid JSON in " + path + ": " + e.what());
  }
}

}  // namespace mvml
