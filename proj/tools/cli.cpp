#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "mvml/bridges.hpp"
#include "mvml/decision.hpp"
#include "mvml/error.hpp"
#include "mvml/io.hpp"
#include "mvml/necessitation.hpp"
#include "mvml/pcp.hpp"

namespace mvml::cli {

namespace {

struct Flags {
  std::string algebra;
  std::string model;
  std::string frame;
  std::size_t cardinality = 0;
  std::string premises;
  std::string conclusion;
  std::string instance;
  std::string solution;
  std::string pairs;
  std::string world;
  std::string x = "x";
  std::string p, q;
  std::string mode = "strict";
  std::size_t n = 0;
  std::size_t budget = 3;
  unsigned jobs = 1;
  bool plain = false;
  bool ascii = false;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// STR or @FILE; in a file, newlines separate formulas like ';'.
FormulaSet premises_of(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return parse_list(arg);
  std::string text = read_text(arg.substr(1));
  std::replace(text.begin(), text.end(), '\n', ';');
  return parse_list(text);
}

Formula required_formula(const std::string& text, const char* flag) {
  if (text.empty()) throw DomainError(std::string("missing ") + flag);
  return parse(text);
}

std::vector<std::size_t> indices_of(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw DomainError("bad index list: " + text);
    out.push_back(std::stoul(item));
  }
  if (out.empty()) throw DomainError("empty index list");
  return out;
}

ChainAlgebra chain_algebra(const std::string& name) {
  if (name.empty() || name == "std-mv") return ChainAlgebra::StdMV;
  if (name == "exp-chain") return ChainAlgebra::ExpChain;
  throw DomainError("chain constructions need std-mv or exp-chain, not " + name);
}

Json formulas_json(const FormulaSet& fs) {
  Json out = Json::array();
  for (const auto& f : fs) out.push_back(render(f));
  return out;
}

void print_model(std::ostream& out, const KripkeModel& m) {
  out << "algebra " << m.algebra().name() << "\n";
  for (std::size_t w = 0; w < m.size(); ++w) {
    out << m.frame().name(w) << " ->";
    for (auto u : m.frame().successors(w)) out << " " << m.frame().name(u);
    out << " |";
    for (const auto& v : m.variables()) out << " " << v << "=" << to_string(m.value(w, v));
    out << "\n";
  }
}

int emit_verdict(std::ostream& out, const Verdict& v, bool plain) {
  if (!plain) {
    out << verdict_to_json(v).dump(2) << "\n";
  } else if (v.holds) {
    out << "holds\n";
  } else {
    const Witness& w = *v.witness;
    out << "fails: " << render(w.formula) << " = " << to_string(w.value);
    if (w.model) {
      out << " at world " << w.model->frame().name(w.world) << "\n";
      print_model(out, *w.model);
    } else {
      out << "\n";
    }
  }
  return v.holds ? kHolds : kFails;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

int cmd_eval(const Flags& f, std::ostream& out) {
  if (f.model.empty()) throw DomainError("missing --model");
  KripkeModel m = model_from_json(read_json_file(f.model));
  Formula phi = required_formula(f.conclusion, "--formula");
  Evaluator ev(m);
  std::vector<std::size_t> worlds;
  if (!f.world.empty()) {
    worlds.push_back(m.frame().index_of(f.world));
  } else {
    for (std::size_t w = 0; w < m.size(); ++w) worlds.push_back(w);
  }
  Json values = Json::object();
  for (auto w : worlds) {
    Value v = ev.value(w, phi);
    if (f.plain)
      out << m.frame().name(w) << ": " << to_string(v) << "\n";
    else
      values[m.frame().name(w)] = value_to_json(v);
  }
  if (!f.plain) emit(out, {{"formula", render(phi)}, {"values", values}});
  return kHolds;
}

int cmd_check(const Flags& f, std::ostream& out) {
  const int sources = !f.model.empty() + !f.frame.empty() + (f.cardinality > 0);
  if (sources != 1) throw DomainError("give exactly one of --model, --frame, --cardinality");
  FormulaSet gamma = premises_of(f.premises);
  Formula phi = required_formula(f.conclusion, "--conclusion");
  if (!f.model.empty()) {
    KripkeModel m = model_from_json(read_json_file(f.model));
    if (!f.algebra.empty() && !(algebra_from_name(f.algebra) == m.algebra()))
      throw DomainError("--algebra does not match the model's algebra");
    return emit_verdict(out, consequence_witness(m, gamma, phi), f.plain);
  }
  if (f.algebra.empty()) throw DomainError("missing --algebra");
  Algebra alg = algebra_from_name(f.algebra);
  if (!f.frame.empty()) {
    KripkeFrame fr = frame_from_json(read_json_file(f.frame));
    return emit_verdict(out, decide_on_frame(fr, gamma, phi, alg), f.plain);
  }
  CardinalityOptions opts;
  opts.jobs = f.jobs;
  return emit_verdict(out, decide_cardinality(f.cardinality, gamma, phi, alg, opts), f.plain);
}

PCPInstance instance_of(const Flags& f) {
  if (f.instance.empty()) throw DomainError("missing --instance");
  return instance_from_json(read_json_file(f.instance));
}

int cmd_pcp_encode(const Flags& f, std::ostream& out) {
  PCPEncoding enc = encode(instance_of(f));
  if (f.plain) {
    for (const auto& g : enc.gamma) out << render(g) << "\n";
    out << "|- " << render(enc.phi) << "\n";
  } else {
    emit(out, {{"premises", formulas_json(enc.gamma)}, {"conclusion", render(enc.phi)}});
  }
  return kHolds;
}

int cmd_pcp_model(const Flags& f, std::ostream& out) {
  PCPInstance p = instance_of(f);
  if (f.solution.empty()) throw DomainError("missing --solution");
  auto idx = indices_of(f.solution);
  const bool solved = verify_solution(p, idx);
  KripkeModel m = build_chain_model(p, idx, chain_algebra(f.algebra));
  const std::size_t top = m.size() - 1;
  Value phi = evaluate(m, top, encode(p).phi);
  if (f.plain) {
    out << (solved ? "solution" : "not a solution") << "; phi at " << m.frame().name(top) << " = " << to_string(phi)
        << "\n";
    print_model(out, m);
  } else {
    emit(out, {{"solution", solved},
               {"top", m.frame().name(top)},
               {"phi_value", value_to_json(phi)},
               {"model", model_to_json(m)}});
  }
  return solved ? kHolds : kFails;
}

int cmd_pcp_extract(const Flags& f, std::ostream& out) {
  PCPInstance p = instance_of(f);
  if (f.model.empty()) throw DomainError("missing --model");
  KripkeModel m = model_from_json(read_json_file(f.model));
  std::size_t top;
  if (!f.world.empty()) {
    top = m.frame().index_of(f.world);
  } else {
    auto order = chain_order(m.frame());
    if (!order) throw DomainError("model is not a chain");
    top = order->front();
  }
  auto idx = extract_solution(p, m, top);
  if (f.plain) {
    for (std::size_t i = 0; i < idx.size(); ++i) out << (i ? "," : "") << idx[i];
    out << "\n";
  } else {
    emit(out, {{"solution", idx}});
  }
  return kHolds;
}

int cmd_fin2glob(const Flags& f, std::ostream& out) {
  FormulaSet gamma = premises_of(f.premises);
  Formula phi = required_formula(f.conclusion, "--conclusion");
  std::set<std::string> used = variables(gamma);
  for (const auto& v : variables(phi)) used.insert(v);
  std::string p = f.p.empty() ? fresh_variable(used, "p") : f.p;
  used.insert(p);
  std::string q = f.q.empty() ? fresh_variable(used, "q") : f.q;
  ReducedPair r = finite_to_global(gamma, phi, p, q);
  std::optional<KripkeModel> extended;
  if (!f.model.empty()) {
    KripkeModel m = model_from_json(read_json_file(f.model));
    if (f.world.empty()) throw DomainError("--model needs --world");
    extended = extend_model_pq(m, m.frame().index_of(f.world), p, q);
  }
  if (f.plain) {
    for (const auto& g : r.gamma) out << render(g) << "\n";
    out << "|- " << render(r.phi) << "\n";
    if (extended) print_model(out, *extended);
  } else {
    Json j{{"p", p}, {"q", q}, {"premises", formulas_json(r.gamma)}, {"conclusion", render(r.phi)}};
    if (extended) j["model"] = model_to_json(*extended);
    emit(out, j);
  }
  return kHolds;
}

TranslationMode mode_of(const std::string& s) {
  if (s == "strict") return TranslationMode::Strict;
  if (s == "rewrite") return TranslationMode::Rewrite;
  if (s == "homomorphic") return TranslationMode::Homomorphic;
  throw DomainError("unknown --mode " + s);
}

int cmd_l2p(const Flags& f, std::ostream& out) {
  if (f.conclusion.empty() && f.model.empty()) throw DomainError("give --formula, --model or both");
  Json j;
  j["x"] = f.x;
  if (!f.conclusion.empty()) {
    Formula phi = parse(f.conclusion);
    j["formula"] = render(luk2prod_formula(phi, f.x, mode_of(f.mode)));
    j["theta"] = formulas_json(theta(f.x));
  }
  if (!f.model.empty()) j["model"] = model_to_json(model_l2p(model_from_json(read_json_file(f.model)), f.x));
  if (f.plain) {
    if (j.contains("formula")) out << j["formula"].get<std::string>() << "\n";
    if (j.contains("model")) print_model(out, model_from_json(j["model"]));
  } else {
    emit(out, j);
  }
  return kHolds;
}

int cmd_mod2fo(const Flags& f, std::ostream& out) {
  Formula phi = required_formula(f.conclusion, "--formula");
  std::string fo = render_fo(modal_to_fo(phi), f.ascii);
  if (f.plain)
    out << fo << "\n";
  else
    emit(out, {{"formula", render(phi)}, {"fo", fo}});
  return kHolds;
}

int cmd_nec_demo(const Flags& f, std::ostream& out) {
  ChainAlgebra alg = chain_algebra(f.algebra);
  KripkeModel m = build_nec_model(f.n, alg);
  SeparationReport r = verify_separation(m, f.n);
  if (f.plain) {
    out << "world  x  y\n";
    for (std::size_t w = 0; w < m.size(); ++w)
      out << m.frame().name(w) << "  " << to_string(m.value(w, "x")) << "  " << to_string(m.value(w, "y")) << "\n";
    std::size_t ok = 0;
    for (const auto& c : r.checks) ok += c.holds;
    out << ok << "/" << r.checks.size() << " premise checks at 1; " << render(sigma_conclusion()) << " = "
        << to_string(r.final_value) << "; " << (r.pass() ? "pass" : "fail") << "\n";
  } else {
    Json table = Json::array();
    for (std::size_t w = 0; w < m.size(); ++w)
      table.push_back({{"world", m.frame().name(w)},
                       {"x", value_to_json(m.value(w, "x"))},
                       {"y", value_to_json(m.value(w, "y"))}});
    Json j = report_to_json(r);
    j["table"] = table;
    emit(out, j);
  }
  return r.pass() ? kHolds : kFails;
}

int cmd_coenum(const Flags& f, std::ostream& out) {
  if (f.pairs.empty()) throw DomainError("missing --pairs");
  Json list = read_json_file(f.pairs);
  std::vector<ConsequencePair> pairs;
  try {
    for (const auto& item : list)
      pairs.push_back({parse_list(item.value("premises", "")), parse(item.at("conclusion").get<std::string>())});
  } catch (const Json::exception& e) {
    throw DomainError(std::string("malformed pair list: ") + e.what());
  }
  CardinalityOptions opts;
  opts.jobs = f.jobs;
  Algebra alg = algebra_from_name(f.algebra.empty() ? "std-mv" : f.algebra);
  auto emissions = coenumerate_nonconsequences(pairs, f.budget, alg, opts);
  if (f.plain) {
    for (const auto& e : emissions)
      out << "pair " << e.pair << " refuted at stage " << e.stage << " on " << e.cardinality << " worlds\n";
  } else {
    Json j = Json::array();
    for (const auto& e : emissions)
      j.push_back({{"pair", e.pair},
                   {"stage", e.stage},
                   {"cardinality", e.cardinality},
                   {"verdict", verdict_to_json(e.verdict)}});
    emit(out, j);
  }
  return kHolds;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"many-valued modal logic workbench", "mvml"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "print help for every subcommand");

  std::map<CLI::App*, std::function<int(const Flags&, std::ostream&)>> handlers;
  auto sub = [&](const char* name, const char* desc, std::function<int(const Flags&, std::ostream&)> h) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->add_flag("--plain", f.plain, "human-readable output");
    handlers[s] = std::move(h);
    return s;
  };
  auto formula_opt = [&](CLI::App* s) { s->add_option("--conclusion,--formula", f.conclusion, "formula"); };

  auto* eval = sub("eval", "evaluate a formula on a model", cmd_eval);
  eval->add_option("--model", f.model, "model file");
  eval->add_option("--world", f.world, "world name");
  formula_opt(eval);

  auto* check = sub("check", "decide a global consequence", cmd_check);
  check->add_option("--algebra", f.algebra, "algebra name");
  check->add_option("--model", f.model, "model file");
  check->add_option("--frame", f.frame, "frame file");
  check->add_option("--cardinality", f.cardinality, "frame size");
  check->add_option("--premises", f.premises, "premises, ';' separated, or @FILE");
  check->add_option("--jobs", f.jobs, "worker threads");
  formula_opt(check);

  auto* enc = sub("pcp-encode", "premises and conclusion for a PCP instance", cmd_pcp_encode);
  enc->add_option("--instance", f.instance, "instance file");

  auto* pm = sub("pcp-model", "chain model for an index sequence", cmd_pcp_model);
  pm->add_option("--instance", f.instance, "instance file");
  pm->add_option("--solution", f.solution, "indices i1,i2,...");
  pm->add_option("--algebra", f.algebra, "std-mv or exp-chain");

  auto* px = sub("pcp-extract", "read a solution off a chain countermodel", cmd_pcp_extract);
  px->add_option("--instance", f.instance, "instance file");
  px->add_option("--model", f.model, "model file");
  px->add_option("--world", f.world, "top world");

  auto* fg = sub("reduce-fin2glob", "reduce finite-model consequence to global consequence", cmd_fin2glob);
  fg->add_option("--premises", f.premises, "premises, ';' separated, or @FILE");
  fg->add_option("--p", f.p, "fresh variable p");
  fg->add_option("--q", f.q, "fresh variable q");
  fg->add_option("--model", f.model, "finite std-mv countermodel to extend");
  fg->add_option("--world", f.world, "world refuting the conclusion");
  formula_opt(fg);

  auto* l2p = sub("l2p", "translate a formula or model from Lukasiewicz to Product", cmd_l2p);
  l2p->add_option("--model", f.model, "std-mv model file");
  l2p->add_option("--x", f.x, "fresh variable");
  l2p->add_option("--mode", f.mode, "strict, rewrite or homomorphic");
  formula_opt(l2p);

  auto* fo = sub("mod2fo", "standard translation to first order", cmd_mod2fo);
  fo->add_flag("--ascii", f.ascii, "forall/exists instead of symbols");
  formula_opt(fo);

  auto* nec = sub("nec-demo", "chain countermodel separating local-plus-necessitation from global", cmd_nec_demo);
  nec->add_option("--n", f.n, "chain parameter N");
  nec->add_option("--algebra", f.algebra, "std-mv or exp-chain");

  auto* co = sub("coenum", "co-enumerate non-consequences", cmd_coenum);
  co->add_option("--pairs", f.pairs, "JSON list of {premises, conclusion}");
  co->add_option("--budget", f.budget, "largest frame size");
  co->add_option("--algebra", f.algebra, "algebra name");
  co->add_option("--jobs", f.jobs, "worker threads");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kHolds;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kHolds;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    for (auto* s : app.get_subcommands()) return handlers.at(s)(f, out);
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << "\n";
    return kResourceLimit;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace mvml::cli
