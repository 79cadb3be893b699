#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mvml/algebra.hpp"
#include "mvml/kripke.hpp"
#include "mvml/syntax.hpp"

namespace mvml {

// ---- finite-global to global ----

struct ReducedPair {
  FormulaSet gamma;
  Formula phi;
};

/// {[]0 \/ (p <-> []p), []0 \/ ([]p <-> <>p)}
FormulaSet xi_set(const std::string& p);
/// q <-> (p * []q)
Formula xi_formula(const std::string& p, const std::string& q);
/// p \/ ~p \/ q \/ ~q, left nested.
Formula psi_formula(const std::string& p, const std::string& q);

/// (gamma u Xi(p) u {xi(p,q)}, phi \/ psi(p,q)). Throws DomainError if p or q
/// occurs in gamma or phi, or p == q.
ReducedPair finite_to_global(const FormulaSet& gamma, const Formula& phi, const std::string& p,
                             const std::string& q);

struct RecognizedPair {
  FormulaSet gamma;
  Formula phi;
  std::string p, q;
};

/// Inverse of finite_to_global on its image; nullopt for anything else.
std::optional<RecognizedPair> recognize_finite_to_global(const FormulaSet& gamma, const Formula& phi);

/// Adds p constant a = (2h+1)/(2h+2), h the height of v, and q = ([]q) * a computed
/// from the successor-free worlds up. The model must be over std-mv and every world
/// must have finite height.
KripkeModel extend_model_pq(const KripkeModel& m, std::size_t v, const std::string& p, const std::string& q);

// ---- Lukasiewicz to Product ----

enum class TranslationMode {
  Strict,       // only 0, variables, *, ->, []
  Rewrite,      // /\, \/, <>, 1 first rewritten through * and ->
  Homomorphic,  // /\, \/ and 1 translated pointwise, (<>f)^x = x \/ <>f^x
};

/// Rewrites /\, \/, <> and 1 into the {0, var, *, ->, []} fragment.
Formula rewrite_to_fragment(const Formula& f);
bool in_fragment(const Formula& f);

/// f^x. Throws DomainError if x occurs in f, or in Strict mode when f leaves the fragment.
Formula luk2prod_formula(const Formula& f, const std::string& x, TranslationMode mode = TranslationMode::Strict);

/// {[]x <-> <>x, []x <-> x, ~~x}
FormulaSet theta(const std::string& x);

/// Same frame over the power chain: q -> pow(1 - e(w,q)), x -> pow(1).
KripkeModel model_l2p(const KripkeModel& m, const std::string& x);

/// Back to std-mv: with a = e(w,x) = pow(s) (s = 1 if x is undeclared), a value pow(t)
/// becomes 1 - min(t/s, 1). x itself is dropped. Throws DomainError on a zero value,
/// on a non-constant x, or if x is zero or the unit.
KripkeModel model_p2l(const KripkeModel& m, const std::string& x);

struct ClaimViolation {
  std::size_t world = 0;
  Formula formula;
  Value expected;
  Value actual;
};

/// e'(w, f^x) = pow(1 - e(w, f)) on model_l2p(m, x), for every formula and world.
std::vector<ClaimViolation> verify_claim1(const KripkeModel& m, const FormulaSet& formulas, const std::string& x,
                                          TranslationMode mode = TranslationMode::Strict);

/// e'(w, f) = 1 - log_a e(w, f^x) on model_p2l(m, x), for every formula and world.
std::vector<ClaimViolation> verify_claim2(const KripkeModel& m, const FormulaSet& formulas, const std::string& x,
                                          TranslationMode mode = TranslationMode::Strict);

// ---- global to local over transitive frames ----

ReducedPair global_to_local_transitive(const FormulaSet& gamma, const Formula& phi);

// ---- modal to first order ----

struct FOFormula {
  enum class Kind { Zero, One, Pred, Rel, And, Or, Times, Implies, Forall, Exists };
  Kind kind = Kind::Zero;
  std::string pred;        // Pred: the modal variable
  std::size_t var = 0;     // Pred argument, bound variable of a quantifier, first Rel argument
  std::size_t var2 = 0;    // second Rel argument
  std::shared_ptr<const FOFormula> lhs, rhs;  // binary operands; lhs is a quantifier's body
};

/// <f, x_i>*: box and diamond bind x_{i+1} through R(x_i, x_{i+1}).
FOFormula modal_to_fo(const Formula& f, std::size_t i = 0);
/// "∀x1 (R(x0,x1) -> P_p(x1))"; `ascii` spells the quantifiers forall and exists.
std::string render_fo(const FOFormula& f, bool ascii = false);

}  // namespace mvml
