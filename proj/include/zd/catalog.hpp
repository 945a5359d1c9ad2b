#pragma once

#include <string>
#include <vector>

#include "zd/game.hpp"
#include "zd/strategy.hpp"
#include "zd/zd_construct.hpp"

namespace zd {

// One named builtin for the 2x2 prisoner's dilemma. Formulas are written
// for constructing player 1; building for player 2 swaps s_1 and s_2.
struct CatalogEntry {
  std::string name;
  std::string kind;         // "memory-one" | "factor" | "trigger" | "identity"
  std::string formula;      // tensor or factor formula, plain text
  std::string relation;     // enforced stationary relation
  std::string constraints;  // payoff inequalities required for feasibility
};

// Stable listing; names never change meaning, new entries only append.
const std::vector<CatalogEntry>& catalog();

bool is_catalog_name(const std::string& name);

// B = max{2R - (T+S), (T+S) - 2P}, the normalizer of the sum-payoff member.
double catalog_payoff_bound(const PrisonersDilemmaParams& params);

// The named tensor at memory n for the given seat. Memory-one members are
// padded; "gm_*" factor members pair their weight with the fairness G_1;
// "grim" triggers on the history of n straight (1,2) states (own cooperation
// exploited). Throws on unknown names; throws InfeasibleTensorError naming
// the violated inequality when params break a member's constraint.
PressDysonTensor builtin(const std::string& name, const PrisonersDilemmaParams& params,
                         int n, int player = 1);

// Per-slot factor rows of the named member over profiles (1,1),(1,2),(2,1),(2,2)
// in seat order for `player`; row 0 is the G_1 Press-Dyson vector. Defined for
// every catalog name except repeat and grim.
FactorSpec builtin_factors(const std::string& name, const PrisonersDilemmaParams& params,
                           int n, int player = 1);

// alpha over (s_0, s_1, s_2) with sum_b alpha_b s_b(sigma) = G_1(sigma), the
// linear relation enforced through the member's memory-one core.
std::vector<double> builtin_alpha(const std::string& name,
                                  const PrisonersDilemmaParams& params, int player = 1);

}  // namespace zd
