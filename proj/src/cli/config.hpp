#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zd/error.hpp"
#include "zd/game.hpp"
#include "zd/observable.hpp"
#include "zd/strategy.hpp"
#include "zd/tolerances.hpp"
#include "zd/zd_construct.hpp"

namespace zd::cli {

// Any defect of the run configuration itself: unreadable file, malformed
// JSON, unknown names, values outside their documented ranges.
struct ConfigError : Error {
  using Error::Error;
};

// The relations a configured strategy promises, in library terms; filled
// from the construction itself or from explicit "claims".
struct VerificationPlan {
  std::optional<std::vector<double>> alpha;  // linear payoff relation
  std::optional<BiasWeights> weights;        // ensemble weights; unit when absent
  std::optional<FactorSpec> factors;         // slot-correlation relation
  std::optional<std::string> family;         // "tftn" | "tftn2": h sweep applies
  bool expect_degenerate = false;            // trigger members: support mass must vanish
};

struct StrategyConfig {
  int player = 1;
  std::string kind;  // "builtin" | "tensor" | "random" | "constructor"
  std::string name;  // catalog or constructor name, empty for tensor/random
  StrategyTensor tensor;
  VerificationPlan plan;
};

struct OpponentsConfig {
  int count = 0;  // 0 disables the opponent batch
  int memory = 1;
  std::uint64_t seed = 1;
  double min_prob = 0.0;
};

struct TaskConfig {
  std::uint64_t seed = 12345;
  std::size_t rounds = 100000;
  std::size_t thin = 0;  // 0: no trajectory in the simulate output
  double epsilon = 0.0;
  std::optional<std::size_t> initial;  // absent: uniform start / history 0
  std::string method = "exact";        // "exact" | "power"
  OpponentsConfig opponents;
  std::vector<std::string> checks;  // empty: run every planned check
  std::vector<std::vector<double>> h_grid;
  std::vector<SlotObservable> deformed_slots;
};

struct RunConfig {
  int schema_version = 1;
  GameSpec game = GameSpec::prisoners_dilemma({});
  bool game_is_pd = true;
  PrisonersDilemmaParams pd;
  std::vector<StrategyConfig> strategies;
  TaskConfig task;
  Tolerances tol;
  std::uint64_t config_hash = 0;
  std::string source_path;
};

std::uint64_t fnv1a(const void* data, std::size_t size);

// Parses and realizes a run configuration. Throws ConfigError for defects
// of the file; specs the library rejects surface as the library's errors.
RunConfig load_config(const std::string& path);

}  // namespace zd::cli
