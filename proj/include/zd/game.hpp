#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "zd/error.hpp"
#include "zd/tolerances.hpp"

namespace zd {

// One action per player, 1-based: actions[a-1] in {1..M_a}.
struct ActionProfile {
  std::vector<int> actions;

  bool operator==(const ActionProfile&) const = default;
};

// The last n action profiles, newest to oldest: states[m-1] holds the
// profile played m rounds ago.
struct History {
  std::vector<ActionProfile> states;

  bool operator==(const History&) const = default;
};

// Temptation/reward/punishment/sucker payoffs of the two-player
// prisoner's dilemma, with T > R > P > S.
struct PrisonersDilemmaParams {
  double R = 3.0;
  double S = 0.0;
  double T = 5.0;
  double P = 1.0;

  void validate_order() const;          // throws unless T > R > P > S
  bool satisfies_2R_gt_TpS() const { return 2.0 * R > T + S; }
  bool satisfies_2P_lt_TpS() const { return 2.0 * P < T + S; }
};

// An N-player one-shot game with dense payoff tables.
//
// Payoff tables are indexed by the lexicographic profile index (player 1
// most significant), so for the 2x2 prisoner's dilemma the profile order is
// (1,1),(1,2),(2,1),(2,2) and player 1's payoffs read (R,S,T,P).
// Player index 0 denotes the constant observable s_0 = 1.
class GameSpec {
 public:
  GameSpec(std::vector<int> actions_per_player,
           std::vector<std::vector<double>> payoffs);

  // Symmetric 2x2 prisoner's dilemma: s_1 = (R,S,T,P), s_2 = (R,T,S,P).
  static GameSpec prisoners_dilemma(const PrisonersDilemmaParams& params);

  int num_players() const { return static_cast<int>(actions_.size()); }
  int num_actions(int player) const;  // player in {1..N}
  const std::vector<int>& actions_per_player() const { return actions_; }
  std::size_t num_profiles() const { return num_profiles_; }

  // s_player(profile); player 0 returns 1. Throws on out-of-range player
  // or invalid profile.
  double payoff(int player, const ActionProfile& profile) const;
  double payoff_by_index(int player, std::size_t profile_index) const;

  std::size_t profile_index(const ActionProfile& profile) const;
  ActionProfile profile_at(std::size_t index) const;
  std::vector<ActionProfile> enumerate_profiles() const;

  // Action of `player` inside an indexed profile, 1-based.
  int action_of(int player, std::size_t profile_index) const;

  bool same_shape(const GameSpec& other) const { return actions_ == other.actions_; }

 private:
  std::vector<int> actions_;                  // M_a, a = 1..N
  std::vector<std::size_t> strides_;          // profile index strides per player
  std::vector<std::vector<double>> payoffs_;  // [player-1][profile_index]
  std::size_t num_profiles_ = 0;
};

// Index space of length-n histories over a fixed action-space shape.
//
// Histories enumerate lexicographically with the newest state most
// significant: index(h) = sum_m profile_index(sigma^(-m)) * P^(n-m).
// Appending a new profile j to history h yields
//   successor(h, j) = j * P^(n-1) + h / P,
// i.e. the oldest state falls off the low end.
class HistorySpace {
 public:
  HistorySpace(std::vector<int> actions_per_player, int memory);
  HistorySpace(const GameSpec& game, int memory)
      : HistorySpace(game.actions_per_player(), memory) {}

  int memory() const { return memory_; }
  const std::vector<int>& actions_per_player() const { return actions_; }
  std::size_t num_profiles() const { return num_profiles_; }
  std::size_t size() const { return size_; }

  std::size_t successor(std::size_t history, std::size_t profile) const {
    return profile * newest_stride_ + history / num_profiles_;
  }

  // Profile index of sigma^(-m), m in {1..memory}.
  std::size_t profile_at_slot(std::size_t history, int m) const;

  std::size_t profile_index(const ActionProfile& profile) const;
  ActionProfile profile_at(std::size_t index) const;

  // Truncation to the newest `shorter` states (used for memory padding).
  std::size_t truncate(std::size_t history, int shorter) const;

  std::size_t index_of(const History& h, const GameSpec& game) const;
  History history_at(std::size_t index, const GameSpec& game) const;

  bool operator==(const HistorySpace&) const = default;

 private:
  std::vector<int> actions_;
  int memory_ = 1;
  std::size_t num_profiles_ = 1;
  std::size_t size_ = 1;
  std::size_t newest_stride_ = 1;  // P^(memory-1)
};

// Lexicographic history enumeration, newest state most significant;
// histories_at(i) == history_at(i) for all i in [0, size).
std::vector<History> enumerate_histories(const GameSpec& game, int memory);

}  // namespace zd
