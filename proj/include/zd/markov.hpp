#pragma once

#include <cstdint>
#include <vector>

#include "zd/game.hpp"
#include "zd/strategy.hpp"
#include "zd/tolerances.hpp"

namespace zd {

// The history-indexed Markov chain of a match-up. step[h*P + j] holds the
// probability prod_a T_a(sigma_a(j)|h) of playing profile j after history h;
// the full transition is step routed through HistorySpace::successor, so
// entries between histories that disagree on the n-1 overlapping states are
// structurally zero.
struct HistoryChain {
  GameSpec game;
  int memory = 1;
  std::vector<StrategyTensor> strategies;  // seat order, padded to memory
  std::vector<double> step;
  bool perturbed = false;
  double epsilon = 0.0;

  HistoryChain() : game(GameSpec::prisoners_dilemma({})) {}

  HistorySpace space() const { return HistorySpace(game, memory); }
  std::size_t size() const { return step.size() / game.num_profiles(); }

  // Dense transition entry (to <- from); zero unless `to` is a shift of `from`.
  double transition(std::size_t from, std::size_t to) const;
};

// Mixes every probability row with the uniform distribution at rate eps.
StrategyTensor perturb_strategy(const StrategyTensor& s, double eps);

// Builds the chain at the common memory n = max n_a, padding shorter
// strategies; eps > 0 applies perturb_strategy to every seat and marks the
// chain perturbed (never applied silently).
HistoryChain build_chain(const GameSpec& game, const std::vector<StrategyTensor>& strategies,
                         double eps = 0.0);

enum class StationaryMethod { exact_class, power_iteration, monte_carlo };

struct StationaryDistribution {
  std::vector<double> probs;  // over histories
  StationaryMethod method = StationaryMethod::exact_class;
  int class_id = -1;          // recurrent class when method == exact_class
  bool damping_used = false;  // power iteration fell back to the lazy chain
  double residual = 0.0;      // ||pi M - pi||_inf on the unmodified chain
  std::size_t iterations = 0;
};

// Closed communicating classes of the support graph, each sorted by history
// index, ordered by their smallest member.
std::vector<std::vector<std::size_t>> recurrent_classes(const HistoryChain& chain);

// One extreme stationary distribution per recurrent class: solves
// pi M = pi, sum pi = 1 restricted to the class (dense LU for small
// classes, sparse LU above that) with one step of iterative refinement.
std::vector<StationaryDistribution> stationary_exact(const HistoryChain& chain);

// Repeated pi <- pi M from `initial` until the sup-norm delta drops below
// tol. A stalled delta switches to the lazy update pi <- pi (I + M)/2
// (same stationary set, kills periodicity) and reports damping_used.
// Throws SolverError carrying the last residual on non-convergence.
StationaryDistribution stationary_power(const HistoryChain& chain,
                                        const std::vector<double>& initial,
                                        std::size_t max_iters = Tolerances{}.power_max_iters,
                                        double tol = Tolerances{}.power_tol);

struct TrajectorySummary {
  std::vector<double> empirical;     // history distribution over the run
  std::vector<double> avg_payoffs;   // per player, time-averaged
  std::vector<std::size_t> trajectory;  // history index every `thin` rounds
  std::size_t rounds = 0;
  std::uint64_t seed = 0;
  std::size_t thin = 1;
};

// Seeded Monte Carlo play for `rounds` steps from the given initial history;
// identical inputs give bit-identical summaries.
TrajectorySummary simulate(const HistoryChain& chain, std::size_t initial,
                           std::size_t rounds, std::uint64_t seed, std::size_t thin = 1);

}  // namespace zd
