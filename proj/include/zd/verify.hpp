#pragma once

#include <string>
#include <vector>

#include "zd/game.hpp"
#include "zd/markov.hpp"
#include "zd/observable.hpp"
#include "zd/strategy.hpp"
#include "zd/tolerances.hpp"
#include "zd/zd_construct.hpp"

namespace zd {

// Which side of the enforcement dichotomy an entry was checked on:
// `relation` compares the relation value against the residual tolerance,
// `degenerate_support` instead requires zero stationary mass on the weight
// support, and `vacuous` marks an identically zero relation.
enum class RelationBranch { relation, degenerate_support, vacuous };

std::string to_string(RelationBranch branch);

// One enforced-relation check against one stationary distribution (and one
// grid point, for sweeps).
struct RelationEntry {
  int class_id = 0;
  RelationBranch branch = RelationBranch::relation;
  double value = 0.0;          // signed relation value on the relation branch
  double residual = 0.0;       // magnitude compared against the tolerance
  double ensemble_mass = 0.0;  // D = <w> for biased checks, 0 elsewhere
  std::string label;           // grid-point tag for sweeps, empty elsewhere
  bool pass = false;
};

struct RelationReport {
  std::string relation;
  std::vector<RelationEntry> entries;
  double relation_tolerance = 0.0;
  double support_tolerance = 0.0;
  bool pass = false;  // every entry passed its branch
};

// sum_h pi(h) Tdot(sigma_a|h) per own action; vanishes on stationary pi.
std::vector<double> akin_residual(const PressDysonTensor& pd,
                                  const StationaryDistribution& pi);

// Dichotomy check for biased ensembles. With D = <w>_pi, either the biased
// payoff relation sum_b alpha_b <s_b w>/D vanishes (alpha[0] weighting the
// constant observable) or, when D falls below the documented mass floor, the
// stationary mass of every history in supp w must vanish instead.
RelationReport biased_relation(const GameSpec& game, const std::vector<double>& alpha,
                               const BiasWeights& weights,
                               const std::vector<StationaryDistribution>& dists,
                               const Tolerances& tol = {});

// <prod_m G_m(sigma^(-m))> = 0 for the factors of a factorable tensor. A
// factor row that is identically zero makes the relation vacuous.
RelationReport correlation_relation(const GameSpec& game, const FactorSpec& factors,
                                    const std::vector<StationaryDistribution>& dists,
                                    const Tolerances& tol = {});

// Exponential-payoff relation family of tftn/tftn2 evaluated over a grid of
// h vectors (length n) against the same stationary distributions. Slot
// factors are normalized by e^{h T} - e^{h S} so grid points stay O(1), and
// h = 0 slots substitute the exact limiting linear form instead of dividing
// vanishing differences.
RelationReport h_sweep(const GameSpec& game, const std::string& family, int n,
                       const std::vector<std::vector<double>>& h_grid,
                       const std::vector<StationaryDistribution>& dists,
                       const Tolerances& tol = {});

// <prod_m f_m(sigma^(-m))> = 0 for per-slot payoff observables; the
// newest-slot observable must not be a constant.
RelationReport deformed_relation(const GameSpec& game,
                                 const std::vector<SlotObservable>& slots,
                                 const std::vector<StationaryDistribution>& dists,
                                 const Tolerances& tol = {});

}  // namespace zd
