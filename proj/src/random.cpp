#include "zd/random.hpp"

#include <cmath>

namespace zd {

StrategyTensor random_strategy(const GameSpec& game, int player, int memory,
                               std::mt19937_64& rng, double min_prob) {
  const int M = game.num_actions(player);
  if (min_prob < 0.0 || min_prob * M > 1.0) {
    throw InvalidArgumentError("min_prob must lie in [0, 1/M_a]");
  }
  HistorySpace space(game, memory);
  std::vector<double> probs(space.size() * static_cast<std::size_t>(M));
  for (std::size_t h = 0; h < space.size(); h++) {
    // exponential draws normalize to a point of the simplex, then shrink
    // toward the barycenter far enough to respect the floor
    double sum = 0.0;
    for (int a = 0; a < M; a++) {
      double e = -std::log(1.0 - uniform_double(rng));
      probs[h * M + a] = e;
      sum += e;
    }
    double rest = 1.0 - min_prob * M;
    double tail = 0.0;
    for (int a = 0; a < M - 1; a++) {
      probs[h * M + a] = min_prob + rest * probs[h * M + a] / sum;
      tail += probs[h * M + a];
    }
    probs[h * M + M - 1] = 1.0 - tail;
  }
  return make_strategy(game, player, memory, std::move(probs));
}

StrategyTensor random_deterministic_strategy(const GameSpec& game, int player,
                                             int memory, std::mt19937_64& rng) {
  const int M = game.num_actions(player);
  HistorySpace space(game, memory);
  std::vector<double> probs(space.size() * static_cast<std::size_t>(M), 0.0);
  for (std::size_t h = 0; h < space.size(); h++) {
    probs[h * M + rng() % static_cast<std::uint64_t>(M)] = 1.0;
  }
  return make_strategy(game, player, memory, std::move(probs));
}

}  // namespace zd
