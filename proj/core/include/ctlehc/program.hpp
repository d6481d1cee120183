#pragma once

#include "ctlehc/formula.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ctlehc {

// A fair transition system: variables, initial condition, transition
// relation over v and v', and fairness assertions J.
struct Program {
  std::vector<Var> vars;
  Expr init = ex::t();
  Expr next = ex::t();
  std::vector<Expr> fairness;

  // Checks that init/J only mention unprimed program variables and next only
  // program variables with at most one prime. Predicate atoms are allowed.
  void validate() const;
  std::optional<Var> find_var(std::string_view name) const;
};

// A program with holes: `cond` holes choose between two successor
// locations, `assign` holes update the non-pc variables and jump.
struct Hole {
  enum class Kind { Cond, Assign };
  Kind kind = Kind::Cond;
  std::string loc;
  std::string target;        // l_t for Cond, l' for Assign
  std::string false_target;  // l_f for Cond
};

struct PartialProgram {
  Program program;
  std::vector<Hole> holes;

  Var pc() const;
  // Every variable except pc, in declaration order.
  std::vector<Var> data_vars() const;
  void validate() const;
};

struct Problem {
  Program program;
  Formula spec;
};

// Finite value domains for finite-state checking, looked up by variable base
// name first and then by sort ("int", "rat"). Bool and location sorts have
// implicit domains.
class Domains {
 public:
  void set(const std::string& key, std::vector<Value> values);
  bool has(const std::string& key) const { return by_key_.count(key) != 0; }
  std::vector<Value> values(const std::string& name, const Sort& sort) const;
  std::vector<Value> values(const Var& v) const { return values(v.name, v.sort); }
  // Merge, with entries of `other` taking precedence.
  void merge(const Domains& other);
  const std::map<std::string, std::vector<Value>>& entries() const { return by_key_; }
  // "x=0..2,int=-1..1,r={0,1/2,1}"
  static Domains parse(std::string_view text);
  std::string str() const;

 private:
  std::map<std::string, std::vector<Value>> by_key_;
};

Value parse_value(std::string_view text);

std::string program_to_string(const Program& p, const Domains* domains = nullptr);

}  // namespace ctlehc
