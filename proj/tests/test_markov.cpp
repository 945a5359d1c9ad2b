#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "zd/catalog.hpp"
#include "zd/markov.hpp"
#include "zd/random.hpp"
#include "zd/strategy.hpp"
#include "zd/zd_construct.hpp"

using namespace zd;

namespace {

const GameSpec kPD = GameSpec::prisoners_dilemma({});

StrategyTensor tft(int player) {
  return from_press_dyson(builtin("tft", {}, 1, player));
}

StrategyTensor alld(int player) {
  std::vector<double> probs;
  for (int h = 0; h < 4; h++) {
    probs.push_back(0.0);
    probs.push_back(1.0);
  }
  return make_strategy(kPD, player, 1, probs);
}

StrategyTensor repeat(int player) {
  return from_press_dyson(builtin("repeat", {}, 1, player));
}

StrategyTensor anti_tft(int player) {
  // play the opposite of the co-player's previous action
  std::vector<double> probs(8);
  HistorySpace space(kPD, 1);
  for (std::size_t h = 0; h < 4; h++) {
    int opp = own_previous_action(space, player == 1 ? 2 : 1, h);
    probs[h * 2] = opp == 2 ? 1.0 : 0.0;
    probs[h * 2 + 1] = opp == 2 ? 0.0 : 1.0;
  }
  return make_strategy(kPD, player, 1, probs);
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); i++) d += std::abs(a[i] - b[i]);
  return 0.5 * d;
}

}  // namespace

TEST_CASE("build_chain routes deterministic play") {
  HistoryChain chain = build_chain(kPD, {tft(1), alld(2)});
  // from mutual cooperation: TFT cooperates, ALLD defects
  CHECK(chain.transition(0, 1) == 1.0);
  CHECK(chain.transition(0, 0) == 0.0);
  CHECK(chain.transition(1, 3) == 1.0);  // (1,2) -> (2,2)
  CHECK(chain.transition(2, 1) == 1.0);  // (2,1) -> (1,2)
  CHECK(chain.transition(3, 3) == 1.0);

  HistoryChain id = build_chain(kPD, {repeat(1), repeat(2)});
  for (std::size_t h = 0; h < 4; h++) {
    for (std::size_t g = 0; g < 4; g++) {
      CHECK(id.transition(h, g) == (h == g ? 1.0 : 0.0));
    }
  }

  StrategyTensor u1 = make_strategy(kPD, 1, 1, std::vector<double>(8, 0.5));
  StrategyTensor u2 = make_strategy(kPD, 2, 1, std::vector<double>(8, 0.5));
  HistoryChain uniform = build_chain(kPD, {u1, u2});
  for (std::size_t h = 0; h < 4; h++) {
    for (std::size_t j = 0; j < 4; j++) CHECK(uniform.step[h * 4 + j] == 0.25);
  }
}

TEST_CASE("build_chain pads mixed memories") {
  std::mt19937_64 rng(5);
  StrategyTensor deep = random_strategy(kPD, 2, 2, rng);
  HistoryChain chain = build_chain(kPD, {tft(1), deep});
  CHECK(chain.memory == 2);
  CHECK(chain.size() == 16);
  CHECK(chain.strategies[0].memory == 2);
  // seat order is normalized even when inputs arrive swapped
  HistoryChain swapped = build_chain(kPD, {deep, tft(1)});
  CHECK(swapped.step == chain.step);
}

TEST_CASE("build_chain rejects malformed line-ups") {
  CHECK_THROWS_AS(build_chain(kPD, {tft(1)}), InvalidArgumentError);
  CHECK_THROWS_AS(build_chain(kPD, {tft(1), tft(1)}), InvalidArgumentError);
  StrategyTensor bad = tft(2);
  bad.probs[0] = 0.7;
  CHECK_THROWS_AS(build_chain(kPD, {tft(1), bad}), InvalidArgumentError);
}

TEST_CASE("recurrent class analysis") {
  HistoryChain chain = build_chain(kPD, {tft(1), alld(2)});
  auto classes = recurrent_classes(chain);
  REQUIRE(classes.size() == 1);
  CHECK(classes[0] == std::vector<std::size_t>{3});

  HistoryChain id = build_chain(kPD, {repeat(1), repeat(2)});
  classes = recurrent_classes(id);
  REQUIRE(classes.size() == 4);
  for (std::size_t h = 0; h < 4; h++) CHECK(classes[h] == std::vector<std::size_t>{h});

  HistoryChain cycle = build_chain(kPD, {tft(1), anti_tft(2)});
  classes = recurrent_classes(cycle);
  REQUIRE(classes.size() == 1);
  CHECK(classes[0] == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("stationary_exact on hand-solvable chains") {
  HistoryChain absorbing = build_chain(kPD, {tft(1), alld(2)});
  auto dists = stationary_exact(absorbing);
  REQUIRE(dists.size() == 1);
  CHECK(dists[0].probs == std::vector<double>{0.0, 0.0, 0.0, 1.0});
  CHECK(dists[0].method == StationaryMethod::exact_class);
  CHECK(dists[0].class_id == 0);
  CHECK(dists[0].residual <= 1e-12);

  HistoryChain id = build_chain(kPD, {repeat(1), repeat(2)});
  dists = stationary_exact(id);
  REQUIRE(dists.size() == 4);
  for (std::size_t h = 0; h < 4; h++) {
    CHECK(dists[h].probs[h] == 1.0);
    CHECK(dists[h].class_id == static_cast<int>(h));
  }

  StrategyTensor u1 = make_strategy(kPD, 1, 1, std::vector<double>(8, 0.5));
  StrategyTensor u2 = make_strategy(kPD, 2, 1, std::vector<double>(8, 0.5));
  dists = stationary_exact(build_chain(kPD, {u1, u2}));
  REQUIRE(dists.size() == 1);
  for (double p : dists[0].probs) CHECK(p == doctest::Approx(0.25).epsilon(1e-14));

  // independent uniform profiles at memory 2 stay uniform over 16 histories
  dists = stationary_exact(build_chain(kPD, {pad_memory(u1, 2), u2}));
  REQUIRE(dists.size() == 1);
  for (double p : dists[0].probs) CHECK(p == doctest::Approx(1.0 / 16).epsilon(1e-14));
}

TEST_CASE("stationary_exact handles the periodic cycle") {
  HistoryChain cycle = build_chain(kPD, {tft(1), anti_tft(2)});
  auto dists = stationary_exact(cycle);
  REQUIRE(dists.size() == 1);
  for (double p : dists[0].probs) CHECK(p == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("stationary_exact uses the sparse path on large classes") {
  std::mt19937_64 rng(4242);
  StrategyTensor s1 = random_strategy(kPD, 1, 5, rng, 0.05);
  StrategyTensor s2 = random_strategy(kPD, 2, 5, rng, 0.05);
  HistoryChain chain = build_chain(kPD, {s1, s2});
  CHECK(chain.size() == 1024);
  auto dists = stationary_exact(chain);
  REQUIRE(dists.size() == 1);
  CHECK(dists[0].residual <= 1e-12);
  double sum = 0.0;
  for (double p : dists[0].probs) {
    CHECK(p >= 0.0);
    sum += p;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<double> uniform(chain.size(), 1.0 / static_cast<double>(chain.size()));
  StationaryDistribution power = stationary_power(chain, uniform);
  CHECK(total_variation(dists[0].probs, power.probs) <= 1e-8);
}

TEST_CASE("stationary_power on absorbing and stationary inputs") {
  HistoryChain chain = build_chain(kPD, {tft(1), alld(2)});
  std::vector<double> uniform(4, 0.25);
  StationaryDistribution dist = stationary_power(chain, uniform);
  CHECK(dist.probs == std::vector<double>{0.0, 0.0, 0.0, 1.0});
  CHECK(dist.method == StationaryMethod::power_iteration);
  CHECK_FALSE(dist.damping_used);
  CHECK(dist.residual <= 1e-12);

  std::vector<double> already = {0.0, 0.0, 0.0, 1.0};
  dist = stationary_power(chain, already);
  CHECK(dist.iterations <= 1);
  CHECK(dist.probs == already);
}

TEST_CASE("stationary_power damps periodic chains and reports it") {
  HistoryChain cycle = build_chain(kPD, {tft(1), anti_tft(2)});
  std::vector<double> corner = {1.0, 0.0, 0.0, 0.0};
  StationaryDistribution dist = stationary_power(cycle, corner);
  CHECK(dist.damping_used);
  CHECK(dist.residual <= 1e-9);
  for (double p : dist.probs) CHECK(p == doctest::Approx(0.25).epsilon(1e-9));

  // the uniform start is already stationary for the permutation chain
  std::vector<double> uniform(4, 0.25);
  dist = stationary_power(cycle, uniform);
  CHECK_FALSE(dist.damping_used);
  CHECK(dist.iterations <= 1);
}

TEST_CASE("stationary_power validates the initial distribution") {
  HistoryChain chain = build_chain(kPD, {tft(1), alld(2)});
  CHECK_THROWS_AS(stationary_power(chain, {0.5, 0.5}), InvalidArgumentError);
  CHECK_THROWS_AS(stationary_power(chain, {0.5, 0.5, 0.5, 0.5}), InvalidArgumentError);
  CHECK_THROWS_AS(stationary_power(chain, {1.5, -0.5, 0.0, 0.0}), InvalidArgumentError);
}

TEST_CASE("simulate is deterministic and matches hand oracles") {
  HistoryChain still = build_chain(kPD, {repeat(1), repeat(2)});
  TrajectorySummary s = simulate(still, 0, 1000, 42);
  CHECK(s.empirical[0] == 1.0);
  CHECK(s.avg_payoffs[0] == doctest::Approx(3.0));
  CHECK(s.avg_payoffs[1] == doctest::Approx(3.0));

  HistoryChain chain = build_chain(kPD, {tft(1), alld(2)});
  TrajectorySummary a = simulate(chain, 0, 100000, 42);
  CHECK(a.empirical[3] >= 1.0 - 10.0 / 100000.0);
  TrajectorySummary b = simulate(chain, 0, 100000, 42);
  CHECK(a.empirical == b.empirical);
  CHECK(a.avg_payoffs == b.avg_payoffs);
  CHECK(a.trajectory == b.trajectory);
  TrajectorySummary c = simulate(chain, 0, 100000, 43);
  CHECK(c.empirical[3] >= 1.0 - 10.0 / 100000.0);

  TrajectorySummary thinned = simulate(chain, 0, 1000, 7, 100);
  CHECK(thinned.trajectory.size() == 10);
  for (std::size_t h : thinned.trajectory) CHECK(h == 3);
}

TEST_CASE("perturbation is explicit and flagged") {
  StrategyTensor p = perturb_strategy(alld(2), 1e-3);
  for (std::size_t h = 0; h < 4; h++) {
    CHECK(p.prob(h, 1) == doctest::Approx(5e-4));
    CHECK(p.prob(h, 2) == doctest::Approx(1.0 - 5e-4));
  }
  HistoryChain chain = build_chain(kPD, {tft(1), alld(2)}, 1e-6);
  CHECK(chain.perturbed);
  CHECK(chain.epsilon == 1e-6);
  CHECK_FALSE(build_chain(kPD, {tft(1), alld(2)}).perturbed);
  // the perturbed absorbing chain becomes ergodic: one class, full support
  auto dists = stationary_exact(chain);
  REQUIRE(dists.size() == 1);
  for (double prob : dists[0].probs) CHECK(prob > 0.0);
  CHECK(dists[0].probs[3] > 0.99);
}

TEST_CASE("monte carlo tracks the exact distribution on an ergodic chain") {
  std::mt19937_64 rng(31337);
  StrategyTensor s1 = random_strategy(kPD, 1, 2, rng, 0.05);
  StrategyTensor s2 = random_strategy(kPD, 2, 2, rng, 0.05);
  HistoryChain chain = build_chain(kPD, {s1, s2});
  auto dists = stationary_exact(chain);
  REQUIRE(dists.size() == 1);
  TrajectorySummary mc = simulate(chain, 0, 1000000, 2024);
  double bound = 5.0 * std::sqrt(static_cast<double>(chain.size()) / 1000000.0);
  CHECK(total_variation(mc.empirical, dists[0].probs) <= bound);
}
