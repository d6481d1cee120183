#pragma once

#include "ctlehc/fixtures.hpp"
#include "ctlehc/formula.hpp"
#include "ctlehc/interp.hpp"
#include "ctlehc/oracle.hpp"
#include "ctlehc/relation.hpp"

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace ctlehc::testing {

using Rng = std::mt19937_64;

std::filesystem::path golden_dir();
std::filesystem::path cli_path();
std::string read_file(const std::filesystem::path& p);

// Random explicit system over vars id:int, a:bool, b:bool. Every state has
// between one and `max_out` successors.
FiniteSystem random_system(Rng& rng, std::size_t states, std::size_t max_out, bool fair);

// Random state formula over a, b and id = k, with at most `temporal` temporal
// operators and at most two quantifiers.
Formula random_formula(Rng& rng, const FiniteSystem& fs, int temporal, bool fair_quantifiers);

// Every predicate of the clause set (derived ones included) gets a random
// relation where each tuple is a member with probability `density`.
Interpretation random_interpretation(const ClauseSet& cs, const Domains& d, Rng& rng, double density);
// Flips `flips` random membership bits across the non-derived predicates.
void perturb(Interpretation& interp, const ClauseSet& cs, Rng& rng, std::size_t flips);

// Random binary relation on n elements, stored as a 2-ary relation over 0..n-1.
Relation random_binary(Rng& rng, std::size_t n, double density);

// Plain finite fixtures whose expanded system has at most `max_states` states.
std::vector<const Fixture*> small_finite_fixtures(std::size_t max_states);

}  // namespace ctlehc::testing
