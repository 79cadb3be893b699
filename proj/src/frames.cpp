#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "mvml/decision.hpp"
#include "mvml/error.hpp"

namespace mvml {

const std::string& FrameTranslation::name_of(const Formula& source, std::size_t world) const {
  auto it = names_.find({source, world});
  if (it == names_.end()) throw DomainError("no fresh variable for " + render(source));
  return it->second;
}

FormulaSet FrameTranslation::all_premises() const {
  FormulaSet out = premises;
  for (const auto& d : deltas) out.insert_all(d);
  return out;
}

namespace {

class Star {
 public:
  Star(const FrameTranslation& t) : t_(t) {}

  Formula operator()(const Formula& f, std::size_t v) {
    auto key = std::make_pair(f, v);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Formula out;
    switch (f.op()) {
      case Op::Zero:
      case Op::One:
        out = f;
        break;
      case Op::Var:
      case Op::Box:
      case Op::Diamond:
        out = Formula::var(t_.name_of(f, v));
        break;
      case Op::And:
        out = Formula::conj((*this)(f.lhs(), v), (*this)(f.rhs(), v));
        break;
      case Op::Or:
        out = Formula::disj((*this)(f.lhs(), v), (*this)(f.rhs(), v));
        break;
      case Op::Times:
        out = Formula::times((*this)(f.lhs(), v), (*this)(f.rhs(), v));
        break;
      case Op::Implies:
        out = Formula::implies((*this)(f.lhs(), v), (*this)(f.rhs(), v));
        break;
    }
    memo_.emplace(key, out);
    return out;
  }

 private:
  const FrameTranslation& t_;
  std::map<std::pair<Formula, std::size_t>, Formula> memo_;
};

}  // namespace

FrameTranslation translate_on_frame(const KripkeFrame& fr, const FormulaSet& gamma, const Formula& phi) {
  FrameTranslation t;
  FormulaSet all = gamma;
  all.insert(phi);
  std::set<std::string> vars = variables(all);
  t.source_variables.assign(vars.begin(), vars.end());

  std::string sep = "__";
  while (std::any_of(vars.begin(), vars.end(), [&](const std::string& v) { return v.find(sep) != std::string::npos; }))
    sep += "_";

  std::vector<Formula> modal;
  for (const auto& f : subformulas(all))
    if (is_modal(f.op())) modal.push_back(f);

  auto record = [&](const Formula& source, std::size_t v, std::string name) {
    t.names_[{source, v}] = name;
    t.legend[name] = {v, source};
  };
  for (std::size_t v = 0; v < fr.size(); ++v) {
    for (const auto& p : vars) record(Formula::var(p), v, p + sep + std::to_string(v));
    for (std::size_t k = 0; k < modal.size(); ++k)
      record(modal[k], v,
             std::string(modal[k].op() == Op::Box ? "xb" : "xd") + std::to_string(k) + sep + std::to_string(v));
  }

  Star star(t);
  for (std::size_t v = 0; v < fr.size(); ++v)
    for (const auto& g : gamma) t.premises.insert(star(g, v));
  t.deltas.resize(fr.size());
  for (std::size_t v = 0; v < fr.size(); ++v) {
    for (const auto& m : modal) {
      const bool box = m.op() == Op::Box;
      std::optional<Formula> acc;
      for (auto w : fr.successors(v)) {
        Formula s = star(m.body(), w);
        acc = acc ? (box ? Formula::conj(*acc, s) : Formula::disj(*acc, s)) : s;
      }
      Formula rhs = acc ? *acc : (box ? Formula::one() : Formula::zero());
      t.deltas[v].insert(Formula::equiv(star(m, v), rhs));
    }
  }
  for (std::size_t v = 0; v < fr.size(); ++v) {
    t.conclusions.push_back(star(phi, v));
    t.conclusion = v == 0 ? t.conclusions.back() : Formula::conj(t.conclusion, t.conclusions.back());
  }
  return t;
}

Verdict decide_on_frame(const KripkeFrame& fr, const FormulaSet& gamma, const Formula& phi, const Algebra& alg,
                        const DecideOptions& opts) {
  switch (alg.kind()) {
    case AlgebraKind::StdMV:
    case AlgebraKind::MVn:
    case AlgebraKind::FiniteTable:
      break;
    case AlgebraKind::StdProduct:
    case AlgebraKind::ExpChain:
      throw DomainError("Product propositional decision out of scope");
    case AlgebraKind::StdGodel:
      throw DomainError("no propositional decision procedure for std-godel");
  }
  FrameTranslation t = translate_on_frame(fr, gamma, phi);
  FormulaSet premises = t.all_premises();

  FiniteOptions fopts = opts.finite;
  if (fopts.order.empty()) {
    for (std::size_t v = 0; v < fr.size(); ++v)
      for (const auto& p : t.source_variables) fopts.order.push_back(t.name_of(Formula::var(p), v));
    std::vector<std::pair<std::size_t, std::string>> xs;
    for (const auto& [name, entry] : t.legend)
      if (entry.source.op() != Op::Var) xs.emplace_back(entry.source.modal_depth(), name);
    std::stable_sort(xs.begin(), xs.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& x : xs) fopts.order.push_back(x.second);
  }

  // A meet is below 1 iff some conjunct is, so each world is decided separately.
  for (std::size_t v = 0; v < fr.size(); ++v) {
    Verdict r = alg.kind() == AlgebraKind::StdMV ? luk_consequence(premises, t.conclusions[v], opts.luk)
                                                 : finite_consequence(alg, premises, t.conclusions[v], fopts);
    if (r.holds) continue;
    const KripkeModel& flat = *r.witness->model;
    std::map<std::string, std::vector<Value>> cols;
    for (const auto& p : t.source_variables) {
      std::vector<Value> col;
      for (std::size_t w = 0; w < fr.size(); ++w) {
        const std::string& name = t.name_of(Formula::var(p), w);
        col.push_back(flat.declares(name) ? flat.value(0, name) : alg.zero());
      }
      cols[p] = std::move(col);
    }
    KripkeModel m = KripkeModel::from_columns(fr, alg, cols);
    if (!globally_satisfies(m, gamma).holds) throw std::logic_error("folded countermodel violates a premise");
    Value val = evaluate(m, v, phi);
    if (alg.is_one(val)) throw std::logic_error("folded countermodel does not refute the conclusion");
    return Verdict::no({m, v, phi, val});
  }
  return Verdict::yes();
}

KripkeFrame frame_from_mask(std::size_t j, std::uint64_t mask) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < j; ++i)
    for (std::size_t k = 0; k < j; ++k)
      if (mask >> (i * j + k) & 1U) edges.emplace_back(i, k);
  return KripkeFrame::numbered(j, std::move(edges));
}

Verdict decide_cardinality(std::size_t j, const FormulaSet& gamma, const Formula& phi, const Algebra& alg,
                           const CardinalityOptions& opts) {
  if (j < 1) throw DomainError("cardinality must be at least 1");
  if (j > opts.cap) throw ResourceLimit("cardinality " + std::to_string(j) + " exceeds the cap " + std::to_string(opts.cap));
  const std::uint64_t frames = std::uint64_t{1} << (j * j);
  const unsigned jobs = std::max(1U, opts.jobs);

  std::atomic<std::uint64_t> best{frames};
  std::vector<std::optional<Verdict>> found(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  auto worker = [&](unsigned id) {
    try {
      for (std::uint64_t mask = id; mask < frames && mask < best.load(); mask += jobs) {
        Verdict r = decide_on_frame(frame_from_mask(j, mask), gamma, phi, alg, opts.decide);
        if (r.holds) continue;
        found[id] = std::move(r);
        std::uint64_t cur = best.load();
        while (mask < cur && !best.compare_exchange_weak(cur, mask)) {
        }
        return;
      }
    } catch (...) {
      errors[id] = std::current_exception();
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < jobs; ++id) pool.emplace_back(worker, id);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  const std::uint64_t winner = best.load();
  if (winner == frames) return Verdict::yes();
  return std::move(*found[winner % jobs]);
}

std::vector<Emission> coenumerate_nonconsequences(const std::vector<ConsequencePair>& pairs, std::size_t budget,
                                                  const Algebra& alg, const CardinalityOptions& opts) {
  std::vector<Emission> out;
  const std::size_t jmax = std::min(budget, opts.cap);
  std::vector<std::size_t> checked(pairs.size(), 0);  // cardinalities already tried
  std::vector<bool> emitted(pairs.size(), false);
  const std::size_t stages = std::max(pairs.size(), jmax);
  for (std::size_t stage = 1; stage <= stages; ++stage) {
    const std::size_t stored = std::min(stage, pairs.size());
    const std::size_t reach = std::min(stage, jmax);
    for (std::size_t i = 0; i < stored; ++i) {
      while (!emitted[i] && checked[i] < reach) {
        std::size_t j = ++checked[i];
        Verdict r = decide_cardinality(j, pairs[i].gamma, pairs[i].phi, alg, opts);
        if (!r.holds) {
          emitted[i] = true;
          out.push_back({i, stage, j, std::move(r)});
        }
      }
    }
  }
  return out;
}

}  // namespace mvml
