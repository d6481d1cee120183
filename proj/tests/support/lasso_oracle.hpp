#pragma once

#include "ctlehc/formula.hpp"
#include "ctlehc/oracle.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ctlehc::testing {

// CTL* labelling by explicit enumeration of lasso paths up to a length
// bound. Shares nothing with the tableau checker beyond assertion
// evaluation, so the two can be compared.
class LassoOracle {
 public:
  LassoOracle(const FiniteSystem& fs, std::size_t max_len);

  StateSet label(const Formula& f);
  bool holds(const Formula& f);

 private:
  struct Lasso {
    std::vector<std::uint32_t> states;
    std::size_t loop = 0;
  };
  bool some_lasso(std::uint32_t s, const Formula& path, bool fair);
  std::vector<bool> eval_path(const Formula& f, const Lasso& l);

  const FiniteSystem& fs_;
  std::size_t max_len_;
  std::map<const FormulaNode*, StateSet> memo_;
};

}  // namespace ctlehc::testing
