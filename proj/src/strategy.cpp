#include "zd/strategy.hpp"

#include <cmath>
#include <cstdlib>

namespace zd {

namespace {

void check_shape(int player, const std::vector<int>& shape) {
  if (shape.empty()) throw InvalidArgumentError("empty action-space shape");
  if (player < 1 || player > static_cast<int>(shape.size())) {
    throw InvalidArgumentError("tensor player index out of range");
  }
}

void push_violation(ValidationReport& report, ConstraintViolation v) {
  report.total_violations++;
  if (report.violations.size() < kMaxReportedViolations) {
    report.violations.push_back(std::move(v));
  }
}

}  // namespace

StrategyTensor make_strategy(const GameSpec& game, int player, int memory,
                             std::vector<double> probs) {
  StrategyTensor s;
  s.player = player;
  s.memory = memory;
  s.actions_per_player = game.actions_per_player();
  check_shape(player, s.actions_per_player);
  HistorySpace space(s.actions_per_player, memory);
  const std::size_t want = space.size() * static_cast<std::size_t>(s.num_actions());
  if (probs.size() != want) {
    throw InvalidArgumentError("strategy table needs " + std::to_string(want) +
                               " probabilities, got " + std::to_string(probs.size()));
  }
  s.probs = std::move(probs);
  return s;
}

int own_previous_action(const HistorySpace& space, int player, std::size_t history) {
  const std::vector<int>& shape = space.actions_per_player();
  std::size_t profile = space.profile_at_slot(history, 1);
  std::size_t stride = 1;
  for (std::size_t a = shape.size(); a > static_cast<std::size_t>(player); a--) {
    stride *= static_cast<std::size_t>(shape[a - 1]);
  }
  const std::size_t M = static_cast<std::size_t>(shape[player - 1]);
  return static_cast<int>(profile / stride % M) + 1;
}

ValidationReport validate_strategy(const StrategyTensor& s, double tol) {
  check_shape(s.player, s.actions_per_player);
  ValidationReport report;
  const HistorySpace space = s.history_space();
  const int M = s.num_actions();
  if (s.probs.size() != space.size() * static_cast<std::size_t>(M)) {
    push_violation(report, {"shape", 0, 0,
                            static_cast<double>(s.probs.size()),
                            "probability table has wrong size"});
    return report;
  }
  for (std::size_t h = 0; h < space.size(); h++) {
    double sum = 0.0;
    for (int a = 1; a <= M; a++) {
      const double p = s.prob(h, a);
      sum += p;
      if (p < -tol || p > 1.0 + tol) {
        push_violation(report, {"range", h, a, p, "probability outside [0,1]"});
      }
    }
    if (std::abs(sum - 1.0) > tol) {
      push_violation(report, {"normalization", h, 0, std::abs(sum - 1.0),
                              "probabilities do not sum to 1"});
    }
  }
  return report;
}

ValidationReport validate_press_dyson(const PressDysonTensor& t, double tol) {
  check_shape(t.player, t.actions_per_player);
  ValidationReport report;
  const HistorySpace space = t.history_space();
  const int M = t.num_actions();
  if (t.values.size() != space.size() * static_cast<std::size_t>(M)) {
    push_violation(report, {"shape", 0, 0,
                            static_cast<double>(t.values.size()),
                            "value table has wrong size"});
    return report;
  }
  for (std::size_t h = 0; h < space.size(); h++) {
    const int prev = own_previous_action(space, t.player, h);
    double sum = 0.0;
    for (int a = 1; a <= M; a++) {
      const double v = t.value(h, a);
      sum += v;
      if (std::abs(v) > 1.0 + tol) {
        push_violation(report, {"magnitude", h, a, std::abs(v), "|entry| exceeds 1"});
      }
      if (a == prev ? v > tol : v < -tol) {
        push_violation(report, {"sign", h, a, std::abs(v),
                                a == prev ? "repeat-action entry must be <= 0"
                                          : "switch-action entry must be >= 0"});
      }
    }
    if (std::abs(sum) > tol) {
      push_violation(report, {"normalization", h, 0, std::abs(sum),
                              "entries do not sum to 0"});
    }
  }
  return report;
}

PressDysonTensor press_dyson(const StrategyTensor& s) {
  check_shape(s.player, s.actions_per_player);
  PressDysonTensor t;
  t.player = s.player;
  t.memory = s.memory;
  t.actions_per_player = s.actions_per_player;
  t.values = s.probs;
  const HistorySpace space = s.history_space();
  const std::size_t M = static_cast<std::size_t>(s.num_actions());
  for (std::size_t h = 0; h < space.size(); h++) {
    const int prev = own_previous_action(space, s.player, h);
    t.values[h * M + static_cast<std::size_t>(prev - 1)] -= 1.0;
  }
  return t;
}

StrategyTensor from_press_dyson(const PressDysonTensor& t, double tol) {
  const ValidationReport report = validate_press_dyson(t, tol);
  if (!report.ok()) {
    const ConstraintViolation& v = report.violations.front();
    throw InfeasibleTensorError(
        "infeasible Press-Dyson tensor: " + v.constraint + " violation of " +
            std::to_string(v.magnitude) + " at history " + std::to_string(v.history) +
            ", action " + std::to_string(v.action),
        v.history, v.action);
  }
  StrategyTensor s;
  s.player = t.player;
  s.memory = t.memory;
  s.actions_per_player = t.actions_per_player;
  s.probs = t.values;
  const HistorySpace space = t.history_space();
  const std::size_t M = static_cast<std::size_t>(t.num_actions());
  for (std::size_t h = 0; h < space.size(); h++) {
    const int prev = own_previous_action(space, t.player, h);
    s.probs[h * M + static_cast<std::size_t>(prev - 1)] += 1.0;
  }
  // Entries that validation admitted within tolerance of a bound are snapped
  // back so downstream code sees genuine probabilities.
  for (double& p : s.probs) {
    if (p < 0.0) p = 0.0;
    if (p > 1.0) p = 1.0;
  }
  return s;
}

StrategyTensor pad_memory(const StrategyTensor& s, int n) {
  if (n < s.memory) {
    throw InvalidArgumentError("cannot pad memory " + std::to_string(s.memory) +
                               " strategy down to " + std::to_string(n));
  }
  if (n == s.memory) return s;
  StrategyTensor out;
  out.player = s.player;
  out.memory = n;
  out.actions_per_player = s.actions_per_player;
  const HistorySpace space(s.actions_per_player, n);
  const std::size_t M = static_cast<std::size_t>(s.num_actions());
  out.probs.resize(space.size() * M);
  for (std::size_t h = 0; h < space.size(); h++) {
    const std::size_t src = space.truncate(h, s.memory);
    for (std::size_t a = 0; a < M; a++) out.probs[h * M + a] = s.probs[src * M + a];
  }
  return out;
}

PressDysonTensor pad_memory(const PressDysonTensor& t, int n) {
  if (n < t.memory) {
    throw InvalidArgumentError("cannot pad memory " + std::to_string(t.memory) +
                               " tensor down to " + std::to_string(n));
  }
  if (n == t.memory) return t;
  PressDysonTensor out;
  out.player = t.player;
  out.memory = n;
  out.actions_per_player = t.actions_per_player;
  const HistorySpace space(t.actions_per_player, n);
  const std::size_t M = static_cast<std::size_t>(t.num_actions());
  out.values.resize(space.size() * M);
  for (std::size_t h = 0; h < space.size(); h++) {
    const std::size_t src = space.truncate(h, t.memory);
    for (std::size_t a = 0; a < M; a++) out.values[h * M + a] = t.values[src * M + a];
  }
  return out;
}

}  // namespace zd
