#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "zd/game.hpp"
#include "zd/strategy.hpp"

using namespace zd;

namespace {

const GameSpec kPD = GameSpec::prisoners_dilemma({});

// T_1(1|.) = (1,0,1,0) over ((1,1),(1,2),(2,1),(2,2)): copy the co-player.
StrategyTensor tft() {
  return make_strategy(kPD, 1, 1, {1, 0, 0, 1, 1, 0, 0, 1});
}

StrategyTensor repeat_strategy(int player) {
  StrategyTensor s;
  s.player = player;
  s.memory = 1;
  s.actions_per_player = kPD.actions_per_player();
  HistorySpace space(kPD, 1);
  s.probs.assign(space.size() * 2, 0.0);
  for (std::size_t h = 0; h < space.size(); h++) {
    s.probs[h * 2 + static_cast<std::size_t>(own_previous_action(space, player, h) - 1)] = 1.0;
  }
  return s;
}

}  // namespace

TEST_CASE("own_previous_action reads the newest state") {
  HistorySpace space(kPD, 1);
  // histories enumerate (1,1),(1,2),(2,1),(2,2)
  CHECK(own_previous_action(space, 1, 0) == 1);
  CHECK(own_previous_action(space, 1, 1) == 1);
  CHECK(own_previous_action(space, 1, 2) == 2);
  CHECK(own_previous_action(space, 2, 1) == 2);
  CHECK(own_previous_action(space, 2, 2) == 1);
  HistorySpace deep(kPD, 3);
  // newest profile is the most significant digit
  CHECK(own_previous_action(deep, 1, 2 * 16) == 2);
  CHECK(own_previous_action(deep, 2, 2 * 16) == 1);
  CHECK(own_previous_action(deep, 1, 3) == 1);
}

TEST_CASE("press_dyson of TFT") {
  PressDysonTensor t = press_dyson(tft());
  CHECK(t.value(0, 1) == 0.0);   // (1,1)
  CHECK(t.value(1, 1) == -1.0);  // (1,2)
  CHECK(t.value(2, 1) == 1.0);   // (2,1)
  CHECK(t.value(3, 1) == 0.0);   // (2,2)
  for (std::size_t h = 0; h < 4; h++) CHECK(t.value(h, 2) == -t.value(h, 1));
  CHECK(validate_press_dyson(t).ok());
}

TEST_CASE("press_dyson respects the player seat") {
  // TFT in seat 2 copies player 1: T_2(1|.) = (1,1,0,0)
  StrategyTensor s = make_strategy(kPD, 2, 1, {1, 0, 1, 0, 0, 1, 0, 1});
  s.player = 2;
  PressDysonTensor t = press_dyson(s);
  CHECK(t.value(0, 1) == 0.0);
  CHECK(t.value(1, 1) == 1.0);
  CHECK(t.value(2, 1) == -1.0);
  CHECK(t.value(3, 1) == 0.0);
  CHECK(validate_press_dyson(t).ok());
}

TEST_CASE("press_dyson of Repeat is the zero tensor") {
  for (int player = 1; player <= 2; player++) {
    PressDysonTensor t = press_dyson(repeat_strategy(player));
    for (double v : t.values) CHECK(v == 0.0);
  }
}

TEST_CASE("press_dyson of the uniform strategy") {
  StrategyTensor s = make_strategy(kPD, 1, 1, std::vector<double>(8, 0.5));
  PressDysonTensor t = press_dyson(s);
  HistorySpace space(kPD, 1);
  for (std::size_t h = 0; h < 4; h++) {
    const int prev = own_previous_action(space, 1, h);
    CHECK(t.value(h, prev) == -0.5);
    CHECK(t.value(h, prev == 1 ? 2 : 1) == 0.5);
  }
}

TEST_CASE("from_press_dyson inverts press_dyson") {
  PressDysonTensor zero;
  zero.player = 1;
  zero.memory = 1;
  zero.actions_per_player = {2, 2};
  zero.values.assign(8, 0.0);
  StrategyTensor repeat = from_press_dyson(zero);
  CHECK(repeat.probs == repeat_strategy(1).probs);

  StrategyTensor back = from_press_dyson(press_dyson(tft()));
  CHECK(back.probs == tft().probs);
  CHECK(back.prob(0, 1) == 1.0);
  CHECK(back.prob(1, 1) == 0.0);
  CHECK(back.prob(2, 1) == 1.0);
  CHECK(back.prob(3, 1) == 0.0);
}

TEST_CASE("from_press_dyson rejects infeasible tensors") {
  PressDysonTensor t = press_dyson(tft());
  SUBCASE("magnitude") {
    t.values[2 * 2 + 0] = 1.5;
    t.values[2 * 2 + 1] = -1.5;
    CHECK_THROWS_AS(from_press_dyson(t), InfeasibleTensorError);
    try {
      from_press_dyson(t);
    } catch (const InfeasibleTensorError& e) {
      CHECK(e.history == 2);
      CHECK(e.action == 1);
    }
  }
  SUBCASE("sign") {
    t.values[0] = 0.25;   // repeat-action entry must be <= 0
    t.values[1] = -0.25;
    CHECK_THROWS_AS(from_press_dyson(t), InfeasibleTensorError);
  }
  SUBCASE("normalization") {
    t.values[0] = -0.25;
    CHECK_THROWS_AS(from_press_dyson(t), InfeasibleTensorError);
  }
}

TEST_CASE("round trip is exact on dyadic tables and within an ulp otherwise") {
  std::mt19937_64 rng(20240901);
  for (int trial = 0; trial < 50; trial++) {
    StrategyTensor s;
    s.player = 1 + static_cast<int>(rng() % 2);
    s.memory = 1 + static_cast<int>(rng() % 2);
    s.actions_per_player = {2, 2};
    HistorySpace space = s.history_space();
    s.probs.resize(space.size() * 2);
    for (std::size_t h = 0; h < space.size(); h++) {
      double p = static_cast<double>(rng() % 1025) / 1024.0;  // dyadic
      s.probs[h * 2] = p;
      s.probs[h * 2 + 1] = 1.0 - p;
    }
    StrategyTensor back = from_press_dyson(press_dyson(s));
    CHECK(back.probs == s.probs);
  }
  for (int trial = 0; trial < 50; trial++) {
    StrategyTensor s;
    s.player = 1;
    s.memory = 1;
    s.actions_per_player = {2, 2};
    s.probs.resize(8);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t h = 0; h < 4; h++) {
      double p = unif(rng);
      s.probs[h * 2] = p;
      s.probs[h * 2 + 1] = 1.0 - p;
    }
    StrategyTensor back = from_press_dyson(press_dyson(s));
    for (std::size_t i = 0; i < 8; i++) {
      CHECK(std::abs(back.probs[i] - s.probs[i]) <= 1e-15);
    }
  }
}

TEST_CASE("validate_strategy reports each violation") {
  CHECK(validate_strategy(tft()).ok());

  StrategyTensor s = tft();
  s.probs[0] = 0.7;
  s.probs[1] = 0.4;
  ValidationReport r = validate_strategy(s);
  REQUIRE(r.total_violations == 1);
  CHECK(r.violations[0].constraint == "normalization");
  CHECK(r.violations[0].history == 0);
  CHECK(r.violations[0].magnitude == doctest::Approx(0.1));

  s = tft();
  s.probs[2] = -0.1;
  s.probs[3] = 1.1;
  r = validate_strategy(s);
  REQUIRE(r.total_violations == 2);
  CHECK(r.violations[0].constraint == "range");
  CHECK(r.violations[0].history == 1);
  CHECK(r.violations[0].action == 1);
  CHECK(r.violations[1].constraint == "range");
}

TEST_CASE("validation report caps the listed violations") {
  StrategyTensor s;
  s.player = 1;
  s.memory = 5;  // 1024 histories
  s.actions_per_player = {2, 2};
  s.probs.assign(1024 * 2, 0.4);
  ValidationReport r = validate_strategy(s);
  CHECK(r.total_violations == 1024);
  CHECK(r.violations.size() == kMaxReportedViolations);
}

TEST_CASE("validate_press_dyson checks sign, magnitude and sum") {
  PressDysonTensor t = press_dyson(tft());
  CHECK(validate_press_dyson(t).ok());
  t.values[0] = 0.5;  // (1,1), action 1 repeats
  ValidationReport r = validate_press_dyson(t);
  CHECK(r.total_violations == 2);  // sign flip plus broken sum
}

TEST_CASE("pad_memory replicates rows over older states") {
  StrategyTensor padded = pad_memory(tft(), 2);
  CHECK(padded.memory == 2);
  HistorySpace space(kPD, 2);
  HistorySpace base(kPD, 1);
  for (std::size_t h = 0; h < space.size(); h++) {
    std::size_t head = space.truncate(h, 1);
    CHECK(padded.prob(h, 1) == tft().prob(head, 1));
    CHECK(padded.prob(h, 2) == tft().prob(head, 2));
  }
  CHECK(base.size() == 4);

  CHECK(pad_memory(tft(), 1).probs == tft().probs);
  CHECK_THROWS_AS(pad_memory(padded, 1), InvalidArgumentError);

  StrategyTensor rep3 = pad_memory(repeat_strategy(1), 3);
  PressDysonTensor t = press_dyson(rep3);
  for (double v : t.values) CHECK(v == 0.0);
}

TEST_CASE("pad_memory commutes with press_dyson") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  StrategyTensor s;
  s.player = 2;
  s.memory = 1;
  s.actions_per_player = {2, 2};
  s.probs.resize(8);
  for (std::size_t h = 0; h < 4; h++) {
    double p = unif(rng);
    s.probs[h * 2] = p;
    s.probs[h * 2 + 1] = 1.0 - p;
  }
  PressDysonTensor a = press_dyson(pad_memory(s, 3));
  PressDysonTensor b = pad_memory(press_dyson(s), 3);
  CHECK(a.values == b.values);
}

TEST_CASE("make_strategy validates the table size") {
  CHECK_THROWS_AS(make_strategy(kPD, 1, 1, {1, 0}), InvalidArgumentError);
  CHECK_THROWS_AS(make_strategy(kPD, 3, 1, std::vector<double>(8, 0.5)),
                  InvalidArgumentError);
}
