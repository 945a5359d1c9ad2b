#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "zd/game.hpp"

namespace zd {

// Memory-n_a behavior strategy of one player: a conditional distribution
// T_a(sigma_a | sigma^(-1), ..., sigma^(-n_a)) stored densely, one
// probability row per history in HistorySpace order.
//
// Immutable by convention after construction; safe to share across threads.
struct StrategyTensor {
  int player = 1;                 // 1..N
  int memory = 1;                 // n_a
  std::vector<int> actions_per_player;  // full action-space shape
  std::vector<double> probs;      // [history * M_a + (action-1)]

  int num_actions() const { return actions_per_player[player - 1]; }
  HistorySpace history_space() const { return HistorySpace(actions_per_player, memory); }
  double prob(std::size_t history, int action) const {
    return probs[history * static_cast<std::size_t>(num_actions()) +
                 static_cast<std::size_t>(action - 1)];
  }
};

// The repeat-kernel-subtracted form
//   That_a(sigma_a | h) = T_a(sigma_a | h) - delta_{sigma_a, sigma_a^(-1)}.
// Valid tensors satisfy, per history: entries sum to 0; entries are <= 0 at
// the repeated action and >= 0 elsewhere; every |entry| <= 1.
struct PressDysonTensor {
  int player = 1;
  int memory = 1;
  std::vector<int> actions_per_player;
  std::vector<double> values;     // same layout as StrategyTensor::probs

  int num_actions() const { return actions_per_player[player - 1]; }
  HistorySpace history_space() const { return HistorySpace(actions_per_player, memory); }
  double value(std::size_t history, int action) const {
    return values[history * static_cast<std::size_t>(num_actions()) +
                  static_cast<std::size_t>(action - 1)];
  }
};

struct ConstraintViolation {
  std::string constraint;  // "range" | "normalization" | "sign" | "magnitude" | "shape"
  std::size_t history = 0;
  int action = 0;          // 1-based; 0 when the violation is per-history
  double magnitude = 0.0;
  std::string detail;
};

// Lists every violated constraint (capped), with location and magnitude.
struct ValidationReport {
  std::vector<ConstraintViolation> violations;
  std::size_t total_violations = 0;  // may exceed violations.size() when capped
  bool ok() const { return total_violations == 0; }
};

inline constexpr std::size_t kMaxReportedViolations = 1000;

// Constructors for common memory-one strategies of `player` in a 2-action
// seat; rows follow profile enumeration order.
StrategyTensor make_strategy(const GameSpec& game, int player, int memory,
                             std::vector<double> probs);

ValidationReport validate_strategy(const StrategyTensor& s, double tol = 1e-12);
ValidationReport validate_press_dyson(const PressDysonTensor& t, double tol = 1e-12);

PressDysonTensor press_dyson(const StrategyTensor& s);

// Inverse of press_dyson. Throws InfeasibleTensorError naming the first
// offending (history, action) if the tensor invariants fail.
StrategyTensor from_press_dyson(const PressDysonTensor& t, double tol = 1e-12);

// Lifts a strategy to memory n by ignoring states older than its own
// memory; stationary behavior is unchanged.
StrategyTensor pad_memory(const StrategyTensor& s, int n);
PressDysonTensor pad_memory(const PressDysonTensor& t, int n);

// Action index of `player` inside the newest state of a history.
int own_previous_action(const HistorySpace& space, int player, std::size_t history);

}  // namespace zd
