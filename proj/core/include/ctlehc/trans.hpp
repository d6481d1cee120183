#pragma once

#include "ctlehc/clause.hpp"
#include "ctlehc/program.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ctlehc {

// Deterministic fresh names: <family><counter>, skipping reserved names.
// Families used by the translation: aux, x_X, x_G, x_U, p, q, r, t, sel, neg.
class FreshNamer {
 public:
  FreshNamer() = default;
  explicit FreshNamer(std::set<std::string> reserved) : reserved_(std::move(reserved)) {}

  std::string next(const std::string& family);
  void reserve(const std::string& name) { reserved_.insert(name); }
  std::size_t issued() const { return issued_; }
  const std::map<std::string, int>& counters() const { return counters_; }

 private:
  std::set<std::string> reserved_;
  std::map<std::string, int> counters_;
  std::size_t issued_ = 0;
};

// Accumulates EHC clauses. Bodies and heads are arbitrary assertions with
// predicate atoms; `add` normalizes them: negated atoms become complement
// predicates, body disjunctions split into separate clauses, and head
// disjunctions are desugared into right-nested selector predicates.
class ClauseBuilder {
 public:
  ClauseBuilder(ClauseSet& out, FreshNamer& namer) : out_(out), namer_(namer) {}

  PredPtr declare(const std::string& family, std::vector<Var> params);
  void declare_existing(const PredPtr& p);
  void add(const std::string& rule, const Expr& body, const std::vector<Var>& exist, const Expr& head);
  void add_dwf(const std::string& rule, const PredPtr& p);
  // The complement q of p, with p ∧ q → ⊥ and ⊤ → p ∨ q emitted once.
  PredPtr complement(const PredPtr& p);

  ClauseSet& clauses() { return out_; }
  FreshNamer& namer() { return namer_; }

 private:
  struct Conj {
    std::vector<Expr> constraints;
    std::vector<Atom> atoms;
  };
  Expr atom_nnf(const Expr& e, bool positive);
  std::vector<Conj> dnf(const Expr& e);
  void emit(const std::string& tag, const Conj& body, const std::vector<Var>& exist, const Conj& head);
  Atom selector(const std::string& rule, const std::vector<Var>& shared, const std::vector<Var>& exist,
                const std::vector<Conj>& branches);
  std::string tag(const std::string& rule) const;

  ClauseSet& out_;
  FreshNamer& namer_;
  std::map<std::string, PredPtr> complement_of_;
};

enum class Rule { R1, R2, R3, R4, R5, R6, R7, R8 };
std::string rule_name(Rule r);

// Rule 1: extract the leftmost-outermost proper basic subformula φ1 into a
// fresh aux predicate. Returns nothing when φ has no proper basic subformula.
struct Rule1Split {
  PredPtr aux;
  Formula extracted;
  Problem sub;       // (v, aux(v), next, J), φ1
  Problem residual;  // (v, init, next, J), φ[φ1 := aux(v)]
};
std::optional<Rule1Split> rule1_split(const Problem& p, ClauseBuilder& b);

// Rule 2: Qψ → Q_f ψ with J = ∅.
Problem rule2_defair(const Problem& p);

// Rules 3-5: eliminate X c, G c or c1 U c2 from Q_f ψ with a fresh boolean
// variable. For E_f the initial condition becomes a fresh aux predicate and
// the clause init(v) → ∃x: aux(v, x) is emitted.
struct Extension {
  Rule rule;
  Problem extended;
  Var fresh;
  Formula eliminated;
  PredPtr aux;  // E_f only
};
// Leftmost-innermost X/G/U node whose operands are assertions.
std::optional<Formula> find_eligible_temporal(const Formula& path);
Extension rule3_next(const Problem& p, const Formula& node, ClauseBuilder& b);
Extension rule4_globally(const Problem& p, const Formula& node, ClauseBuilder& b);
Extension rule5_until(const Problem& p, const Formula& node, ClauseBuilder& b);
Extension eliminate_temporal(const Problem& p, const Formula& node, ClauseBuilder& b);

// Rule 6: A_f c. Predicates p (no fair path), t (transitive closure of
// next) and r (well-founded progress through J).
struct Rule6Preds {
  PredPtr p, t, r;
};
Rule6Preds rule6_af_assertion(const Problem& p, ClauseBuilder& b);

// Rule 7: E_f c. With J = ∅ there is a single q and no r.
struct Rule7Preds {
  std::vector<PredPtr> q, r;
};
Rule7Preds rule7_ef_assertion(const Problem& p, ClauseBuilder& b);

// Rule 8: init(v) → c(v).
void rule8_assertion(const Problem& p, ClauseBuilder& b);

struct TraceStep {
  Rule rule = Rule::R8;
  Problem problem;
  std::vector<std::pair<PredPtr, Formula>> splits;  // R1
  std::optional<Var> fresh;                         // R3-R5
  Formula eliminated;                               // R3-R5
  PredPtr aux;                                      // R3-R5 with E_f
  std::vector<PredPtr> preds;                       // R6: p,t,r; R7: q..., r...
  std::vector<TraceStep> children;
};

struct Translation {
  ClauseSet clauses;
  TraceStep trace;
};

std::set<std::string> reserved_names(const Program& p);
// Translate the problem's spec, which must be a CTL* state formula.
Translation translate(const Problem& p);
TraceStep translate_into(const Problem& p, ClauseBuilder& b);

// Size measure n for the clause-count bound: NNF node count of the spec plus
// predicate-atom occurrences in init, next and J. k is |J|.
std::size_t spec_measure(const Problem& p);
std::size_t clause_count_bound(std::size_t n, std::size_t k);
inline constexpr std::size_t kBoundFactor = 24;
inline constexpr std::size_t kBoundConstant = 16;

}  // namespace ctlehc
