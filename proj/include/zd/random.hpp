#pragma once

#include <cstdint>
#include <random>

#include "zd/game.hpp"
#include "zd/strategy.hpp"

namespace zd {

// 53-bit uniform double in [0,1), stable across platforms for a fixed seed.
inline double uniform_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Random behavior strategy; every probability is at least min_prob
// (min_prob <= 1/M_a), which keeps chains built from such strategies
// irreducible when min_prob > 0.
StrategyTensor random_strategy(const GameSpec& game, int player, int memory,
                               std::mt19937_64& rng, double min_prob = 0.0);

// Random pure strategy: one deterministic action per history.
StrategyTensor random_deterministic_strategy(const GameSpec& game, int player,
                                             int memory, std::mt19937_64& rng);

}  // namespace zd
