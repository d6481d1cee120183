#pragma once

#include "ctlehc/clause.hpp"
#include "ctlehc/oracle.hpp"
#include "ctlehc/relation.hpp"
#include "ctlehc/synthesis.hpp"

#include <string>
#include <string_view>

namespace ctlehc {

// Clause text format:
//   decl <name>/<arity> (<var>:<sort>, ...) [dwf]
//   clause [<tag>]: forall <var>:<sort> ... . <body> -> exists <var>:<sort> ... . <head>
//   dwf <name>
// The exists part is omitted when the head has no existential variables.
// Selector and complement derivations are recovered from the clause tags.
std::string emit_clauses_text(const ClauseSet& cs);
ClauseSet parse_clauses_text(std::string_view text);

std::string emit_clauses_json(const ClauseSet& cs);

// {"domain": "<ranges>", "relations": {"<pred>": [[v, ...], ...]}}
std::string interpretation_to_json(const Interpretation& interp, const std::vector<PredPtr>& preds,
                                   const Domains* d = nullptr);
// Tuples are read against the predicates' parameter sorts. A "domain" entry
// in the file is merged into `d` when present.
Interpretation interpretation_from_json(std::string_view text, const std::vector<PredPtr>& preds, Domains& d);

// {"vars": [{"name", "sort"}], "states": [[...]], "initial": [ids],
//  "succ": [[ids]], "fairness": [[ids]]}
std::string finite_system_to_json(const FiniteSystem& fs);
FiniteSystem finite_system_from_json(std::string_view text);

// {"cond": {"<l>": [[v_r...], ...] | "<assertion>"},
//  "assign": {"<l>": [[v_r..., v_r'...], ...] | "<assertion>"}}
std::string resolving_to_json(const ResolvingFunction& psi, const PartialProgram& ph);
ResolvingFunction resolving_from_json(std::string_view text, const PartialProgram& ph, const Domains& d);

std::string program_to_json(const Program& p);

}  // namespace ctlehc
