#pragma once

#include "ctlehc/interp.hpp"
#include "ctlehc/program.hpp"
#include "ctlehc/relation.hpp"
#include "ctlehc/trans.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace ctlehc {

// One predicate per hole, in hole order: u_c_<l>(v_r) for condition holes and
// u_a_<l>(v_r, v_r') for assignment holes.
std::vector<PredPtr> make_hole_predicates(const PartialProgram& ph);
PredPtr hole_predicate(const std::vector<PredPtr>& u, const Hole& h);

// ⊤ → ∃v_r': u_a_l(v_r, v_r') per assignment hole.
void add_delta_a(const PartialProgram& ph, const std::vector<PredPtr>& u, ClauseBuilder& b);
ClauseSet delta_a(const PartialProgram& ph);

// next ∨ condition-true ∨ condition-false ∨ assignment disjuncts. With a
// builder, ¬u_c_l is written as the complement predicate of u_c_l.
Expr build_next_u(const PartialProgram& ph, const std::vector<PredPtr>& u, ClauseBuilder* b = nullptr);
Program program_u(const PartialProgram& ph, const std::vector<PredPtr>& u, ClauseBuilder* b = nullptr);

struct SynthEncoding {
  std::vector<PredPtr> holes;
  std::size_t delta_a_count = 0;
  Program program_u;
  Translation translation;  // Δ_a first, then Clauses(P_U, φ)
};
SynthEncoding delta_synth(const PartialProgram& ph, const Formula& phi);
// The verification bound for P_U plus one clause per assignment hole.
std::size_t synth_clause_bound(const SynthEncoding& enc, const Formula& phi);

// Explicit conditions and assignment relations keyed by hole location.
struct ResolvingFunction {
  std::map<std::string, Relation> cond;    // over v_r
  std::map<std::string, Relation> assign;  // over (v_r, v_r')
};

// Every v_r has a successor under each assignment relation; with
// `deterministic`, exactly one.
void validate_resolving(const PartialProgram& ph, const ResolvingFunction& psi, bool deterministic = false);
// P_Ψ, with each relation written out as a disjunction of point equalities.
Program apply_resolving(const PartialProgram& ph, const ResolvingFunction& psi, bool deterministic = false);
// P_Ψ for symbolic fills: conditions over v_r, assignments over v_r and v_r'.
Program apply_fills(const PartialProgram& ph, const std::map<std::string, Expr>& fills);
ResolvingFunction extract_resolving(const Interpretation& interp, const PartialProgram& ph, const Domains& d);
// Interpretation of the hole predicates under Ψ.
Interpretation resolving_interpretation(const PartialProgram& ph, const ResolvingFunction& psi, const Domains& d);
// Tabulate symbolic holes: conditions over v_r, assignments over v_r and v_r'.
ResolvingFunction tabulate_resolving(const PartialProgram& ph, const std::map<std::string, Expr>& fills,
                                     const Domains& d);

// Visit every total resolving function over the domains. Returns false when
// the number of candidates exceeds `cap` (nothing is visited then).
bool for_each_resolving(const PartialProgram& ph, const Domains& d, std::size_t cap,
                        const std::function<bool(const ResolvingFunction&)>& visit);

}  // namespace ctlehc
