#include "mvml/bridges.hpp"

#include <algorithm>
#include <unordered_map>

#include "mvml/error.hpp"

namespace mvml {

namespace {

void require_fresh(const std::set<std::string>& used, const std::string& name) {
  if (!is_identifier(name)) throw DomainError("not a variable name: " + name);
  if (used.count(name)) throw DomainError("variable " + name + " is not fresh");
}

std::set<std::string> variables_of(const FormulaSet& gamma, const Formula& phi) {
  std::set<std::string> out = variables(gamma);
  for (const auto& v : variables(phi)) out.insert(v);
  return out;
}

}  // namespace

FormulaSet xi_set(const std::string& p) {
  Formula v = Formula::var(p), bv = Formula::box(v), b0 = Formula::box(Formula::zero());
  return {Formula::disj(b0, Formula::equiv(v, bv)), Formula::disj(b0, Formula::equiv(bv, Formula::diamond(v)))};
}

Formula xi_formula(const std::string& p, const std::string& q) {
  Formula vq = Formula::var(q);
  return Formula::equiv(vq, Formula::times(Formula::var(p), Formula::box(vq)));
}

Formula psi_formula(const std::string& p, const std::string& q) {
  Formula vp = Formula::var(p), vq = Formula::var(q);
  return Formula::disj(Formula::disj(Formula::disj(vp, Formula::neg(vp)), vq), Formula::neg(vq));
}

ReducedPair finite_to_global(const FormulaSet& gamma, const Formula& phi, const std::string& p,
                             const std::string& q) {
  auto used = variables_of(gamma, phi);
  require_fresh(used, p);
  require_fresh(used, q);
  if (p == q) throw DomainError("the two fresh variables must differ");
  ReducedPair out{gamma, Formula::disj(phi, psi_formula(p, q))};
  out.gamma.insert_all(xi_set(p));
  out.gamma.insert(xi_formula(p, q));
  return out;
}

std::optional<RecognizedPair> recognize_finite_to_global(const FormulaSet& gamma, const Formula& phi) {
  if (phi.op() != Op::Or) return std::nullopt;
  const Formula psi = phi.rhs();
  // psi = ((p \/ ~p) \/ q) \/ ~q
  if (psi.op() != Op::Or || psi.lhs().op() != Op::Or || psi.lhs().lhs().op() != Op::Or) return std::nullopt;
  const Formula pp = psi.lhs().lhs().lhs(), qq = psi.lhs().rhs();
  if (pp.op() != Op::Var || qq.op() != Op::Var) return std::nullopt;
  const std::string p = pp.name(), q = qq.name();
  if (p == q || psi != psi_formula(p, q)) return std::nullopt;

  FormulaSet added = xi_set(p);
  added.insert(xi_formula(p, q));
  for (const auto& f : added)
    if (!gamma.contains(f)) return std::nullopt;
  RecognizedPair out{{}, phi.lhs(), p, q};
  for (const auto& g : gamma)
    if (!added.contains(g)) out.gamma.insert(g);
  auto used = variables_of(out.gamma, out.phi);
  if (used.count(p) || used.count(q)) return std::nullopt;
  return out;
}

KripkeModel extend_model_pq(const KripkeModel& m, std::size_t v, const std::string& p, const std::string& q) {
  const Algebra& alg = m.algebra();
  if (alg.kind() != AlgebraKind::StdMV) throw DomainError("extend_model_pq needs a std-mv model");
  if (v >= m.size()) throw DomainError("world index out of range");
  if (m.declares(p) || m.declares(q)) throw DomainError("fresh variables already declared in the model");
  if (p == q) throw DomainError("the two fresh variables must differ");
  auto hs = heights(m.frame());
  for (std::size_t w = 0; w < hs.size(); ++w)
    if (!hs[w]) throw DomainError("world " + m.frame().name(w) + " reaches a cycle");
  const std::size_t h = *hs[v];
  const Value a = Rational(2 * h + 1, 2 * h + 2);

  std::vector<std::size_t> order(m.size());
  for (std::size_t w = 0; w < order.size(); ++w) order[w] = w;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return *hs[x] < *hs[y]; });
  std::vector<Value> qcol(m.size());
  for (auto w : order) {
    Value box = alg.one();
    for (auto u : m.frame().successors(w)) box = alg.meet(box, qcol[u]);
    qcol[w] = alg.times(box, a);
  }
  return m.with_variable(p, std::vector<Value>(m.size(), a)).with_variable(q, qcol);
}

bool in_fragment(const Formula& f) {
  for (const auto& g : subformulas(FormulaSet{f})) {
    switch (g.op()) {
      case Op::Zero:
      case Op::Var:
      case Op::Times:
      case Op::Implies:
      case Op::Box:
        break;
      default:
        return false;
    }
  }
  return true;
}

namespace {

class Rewriter {
 public:
  Formula operator()(const Formula& f) {
    if (auto it = memo_.find(f.id()); it != memo_.end()) return it->second.second;
    Formula out;
    switch (f.op()) {
      case Op::Zero:
      case Op::Var:
        out = f;
        break;
      case Op::One:
        out = Formula::implies(Formula::zero(), Formula::zero());
        break;
      case Op::Times:
        out = Formula::times((*this)(f.lhs()), (*this)(f.rhs()));
        break;
      case Op::Implies:
        out = Formula::implies((*this)(f.lhs()), (*this)(f.rhs()));
        break;
      case Op::Box:
        out = Formula::box((*this)(f.body()));
        break;
      case Op::Diamond:
        out = Formula::neg(Formula::box(Formula::neg((*this)(f.body()))));
        break;
      case Op::And:
        out = meet((*this)(f.lhs()), (*this)(f.rhs()));
        break;
      case Op::Or: {
        Formula a = (*this)(f.lhs()), b = (*this)(f.rhs());
        out = meet(Formula::implies(Formula::implies(a, b), b), Formula::implies(Formula::implies(b, a), a));
        break;
      }
    }
    memo_.emplace(f.id(), std::make_pair(f, out));
    return out;
  }

 private:
  static Formula meet(const Formula& a, const Formula& b) { return Formula::times(a, Formula::implies(a, b)); }

  std::unordered_map<const void*, std::pair<Formula, Formula>> memo_;
};

class Translator {
 public:
  Translator(Formula x, TranslationMode mode) : x_(std::move(x)), mode_(mode) {}

  Formula operator()(const Formula& f) {
    if (auto it = memo_.find(f.id()); it != memo_.end()) return it->second.second;
    Formula out;
    switch (f.op()) {
      case Op::Zero:
        out = x_;
        break;
      case Op::Var:
        out = Formula::disj(f, x_);
        break;
      case Op::Times:
        out = Formula::disj(x_, Formula::times((*this)(f.lhs()), (*this)(f.rhs())));
        break;
      case Op::Implies:
        out = Formula::implies((*this)(f.lhs()), (*this)(f.rhs()));
        break;
      case Op::Box:
        out = Formula::box((*this)(f.body()));
        break;
      case Op::One:
        reject(f);
        out = f;
        break;
      case Op::And:
        reject(f);
        out = Formula::conj((*this)(f.lhs()), (*this)(f.rhs()));
        break;
      case Op::Or:
        reject(f);
        out = Formula::disj((*this)(f.lhs()), (*this)(f.rhs()));
        break;
      case Op::Diamond:
        reject(f);
        // The empty join is 0, which lies below the image of every value.
        out = Formula::disj(x_, Formula::diamond((*this)(f.body())));
        break;
    }
    memo_.emplace(f.id(), std::make_pair(f, out));
    return out;
  }

 private:
  void reject(const Formula& f) const {
    if (mode_ != TranslationMode::Homomorphic)
      throw DomainError("outside the {0, variable, *, ->, []} fragment: " + render(f));
  }

  Formula x_;
  TranslationMode mode_;
  std::unordered_map<const void*, std::pair<Formula, Formula>> memo_;
};

}  // namespace

Formula rewrite_to_fragment(const Formula& f) { return Rewriter()(f); }

Formula luk2prod_formula(const Formula& f, const std::string& x, TranslationMode mode) {
  require_fresh(variables(f), x);
  Formula src = mode == TranslationMode::Rewrite ? rewrite_to_fragment(f) : f;
  return Translator(Formula::var(x), mode)(src);
}

FormulaSet theta(const std::string& x) {
  Formula v = Formula::var(x), bv = Formula::box(v);
  return {Formula::equiv(bv, Formula::diamond(v)), Formula::equiv(bv, v), Formula::neg(Formula::neg(v))};
}

KripkeModel model_l2p(const KripkeModel& m, const std::string& x) {
  if (m.algebra().kind() != AlgebraKind::StdMV) throw DomainError("model_l2p needs a std-mv model");
  if (m.declares(x)) throw DomainError("variable " + x + " is not fresh");
  std::map<std::string, std::vector<Value>> cols;
  for (const auto& q : m.variables()) {
    std::vector<Value> col;
    for (std::size_t w = 0; w < m.size(); ++w) col.push_back(Value::pow(1 - m.value(w, q).rat()));
    cols[q] = std::move(col);
  }
  cols[x] = std::vector<Value>(m.size(), Value::pow(1));
  return KripkeModel::from_columns(m.frame(), Algebra::exp_chain(), cols);
}

namespace {

Rational base_exponent(const KripkeModel& m, const std::string& x) {
  if (!m.declares(x)) return 1;
  std::optional<Value> a;
  for (std::size_t w = 0; w < m.size(); ++w) {
    const Value& v = m.value(w, x);
    if (a && !(*a == v)) throw DomainError("variable " + x + " is not constant");
    a = v;
  }
  if (!a) return 1;
  const Exp& e = a->exp();
  if (e.is_zero || e.t == 0) throw DomainError("the base " + to_string(*a) + " must lie strictly between zero and 1");
  return e.t;
}

Value luk_of(const Value& v, const Rational& s) {
  const Exp& e = v.exp();
  if (e.is_zero) throw DomainError("zero has no logarithm");
  Rational r = e.t / s;
  return Rational(1 - std::min(r, Rational(1)));
}

}  // namespace

KripkeModel model_p2l(const KripkeModel& m, const std::string& x) {
  if (m.algebra().kind() != AlgebraKind::ExpChain) throw DomainError("model_p2l needs a power-chain model");
  const Rational s = base_exponent(m, x);
  std::map<std::string, std::vector<Value>> cols;
  for (const auto& q : m.variables()) {
    if (q == x) continue;
    std::vector<Value> col;
    for (std::size_t w = 0; w < m.size(); ++w) col.push_back(luk_of(m.value(w, q), s));
    cols[q] = std::move(col);
  }
  return KripkeModel::from_columns(m.frame(), Algebra::std_mv(), cols);
}

std::vector<ClaimViolation> verify_claim1(const KripkeModel& m, const FormulaSet& formulas, const std::string& x,
                                          TranslationMode mode) {
  KripkeModel target = model_l2p(m, x);
  Evaluator src(m), dst(target);
  std::vector<ClaimViolation> out;
  for (const auto& f : formulas) {
    Formula fx = luk2prod_formula(f, x, mode);
    for (std::size_t w = 0; w < m.size(); ++w) {
      Value expected = Value::pow(1 - src.value(w, f).rat());
      Value actual = dst.value(w, fx);
      if (!(expected == actual)) out.push_back({w, f, expected, actual});
    }
  }
  return out;
}

std::vector<ClaimViolation> verify_claim2(const KripkeModel& m, const FormulaSet& formulas, const std::string& x,
                                          TranslationMode mode) {
  KripkeModel target = model_p2l(m, x);
  const Rational s = base_exponent(m, x);
  Evaluator src(m), dst(target);
  std::vector<ClaimViolation> out;
  for (const auto& f : formulas) {
    Formula fx = luk2prod_formula(f, x, mode);
    for (std::size_t w = 0; w < m.size(); ++w) {
      Value image = src.value(w, fx);
      Value actual = dst.value(w, f);
      if (image.exp().is_zero || image.exp().t > s) {
        out.push_back({w, f, image, actual});
        continue;
      }
      Value expected = Rational(1 - image.exp().t / s);
      if (!(expected == actual)) out.push_back({w, f, expected, actual});
    }
  }
  return out;
}

ReducedPair global_to_local_transitive(const FormulaSet& gamma, const Formula& phi) {
  ReducedPair out{gamma, phi};
  out.gamma.insert_all(box_prefix(gamma, 1));
  return out;
}

namespace {

using FOPtr = std::shared_ptr<const FOFormula>;

FOPtr make(FOFormula f) { return std::make_shared<const FOFormula>(std::move(f)); }

FOPtr translate_fo(const Formula& f, std::size_t i) {
  using K = FOFormula::Kind;
  FOFormula out;
  switch (f.op()) {
    case Op::Zero:
      out.kind = K::Zero;
      break;
    case Op::One:
      out.kind = K::One;
      break;
    case Op::Var:
      out.kind = K::Pred;
      out.pred = f.name();
      out.var = i;
      break;
    case Op::And:
    case Op::Or:
    case Op::Times:
    case Op::Implies:
      out.kind = f.op() == Op::And ? K::And : f.op() == Op::Or ? K::Or : f.op() == Op::Times ? K::Times : K::Implies;
      out.lhs = translate_fo(f.lhs(), i);
      out.rhs = translate_fo(f.rhs(), i);
      break;
    case Op::Box:
    case Op::Diamond: {
      FOFormula rel;
      rel.kind = K::Rel;
      rel.var = i;
      rel.var2 = i + 1;
      FOFormula body;
      body.kind = f.op() == Op::Box ? K::Implies : K::Times;
      body.lhs = make(rel);
      body.rhs = translate_fo(f.body(), i + 1);
      out.kind = f.op() == Op::Box ? K::Forall : K::Exists;
      out.var = i + 1;
      out.lhs = make(body);
      break;
    }
  }
  return make(out);
}

bool is_compound(const FOFormula& f) {
  using K = FOFormula::Kind;
  return f.kind != K::Zero && f.kind != K::One && f.kind != K::Pred && f.kind != K::Rel;
}

void render_into(const FOFormula& f, bool ascii, std::string& out) {
  using K = FOFormula::Kind;
  switch (f.kind) {
    case K::Zero:
      out += "0";
      return;
    case K::One:
      out += "1";
      return;
    case K::Pred:
      out += "P_" + f.pred + "(x" + std::to_string(f.var) + ")";
      return;
    case K::Rel:
      out += "R(x" + std::to_string(f.var) + ",x" + std::to_string(f.var2) + ")";
      return;
    case K::Forall:
    case K::Exists:
      if (ascii)
        out += f.kind == K::Forall ? "forall " : "exists ";
      else
        out += f.kind == K::Forall ? "∀" : "∃";
      out += "x" + std::to_string(f.var) + " (";
      render_into(*f.lhs, ascii, out);
      out += ")";
      return;
    default: {
      const char* op = f.kind == K::And ? " /\\ " : f.kind == K::Or ? " \\/ " : f.kind == K::Times ? " * " : " -> ";
      auto operand = [&](const FOFormula& g) {
        if (is_compound(g)) out += "(";
        render_into(g, ascii, out);
        if (is_compound(g)) out += ")";
      };
      operand(*f.lhs);
      out += op;
      operand(*f.rhs);
      return;
    }
  }
}

}  // namespace

FOFormula modal_to_fo(const Formula& f, std::size_t i) { return *translate_fo(f, i); }

std::string render_fo(const FOFormula& f, bool ascii) {
  std::string out;
  render_into(f, ascii, out);
  return out;
}

}  // namespace mvml
