#include "zd/game.hpp"

#include <cmath>
#include <string>

namespace zd {

namespace {

std::string profile_to_string(const ActionProfile& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.actions.size(); i++) {
    if (i) s += ",";
    s += std::to_string(p.actions[i]);
  }
  return s + ")";
}

std::size_t shape_profile_index(const std::vector<int>& shape, const ActionProfile& p) {
  if (p.actions.size() != shape.size()) {
    throw InvalidArgumentError("profile has wrong number of players");
  }
  std::size_t idx = 0;
  for (std::size_t a = 0; a < shape.size(); a++) {
    int act = p.actions[a];
    if (act < 1 || act > shape[a]) {
      throw InvalidArgumentError("action out of range in profile " + profile_to_string(p));
    }
    idx = idx * static_cast<std::size_t>(shape[a]) + static_cast<std::size_t>(act - 1);
  }
  return idx;
}

ActionProfile shape_profile_at(const std::vector<int>& shape, std::size_t index) {
  ActionProfile p;
  p.actions.resize(shape.size());
  for (std::size_t a = shape.size(); a > 0; a--) {
    p.actions[a - 1] = static_cast<int>(index % static_cast<std::size_t>(shape[a - 1])) + 1;
    index /= static_cast<std::size_t>(shape[a - 1]);
  }
  return p;
}

}  // namespace

void PrisonersDilemmaParams::validate_order() const {
  if (!(T > R && R > P && P > S)) {
    throw InvalidArgumentError("prisoner's dilemma payoffs must satisfy T > R > P > S");
  }
}

GameSpec::GameSpec(std::vector<int> actions_per_player,
                   std::vector<std::vector<double>> payoffs)
    : actions_(std::move(actions_per_player)), payoffs_(std::move(payoffs)) {
  if (actions_.empty()) {
    throw InvalidArgumentError("a game needs at least one player");
  }
  num_profiles_ = 1;
  for (int m : actions_) {
    if (m < 2) throw InvalidArgumentError("every player needs at least 2 actions");
    num_profiles_ *= static_cast<std::size_t>(m);
    if (num_profiles_ > kMaxHistories) {
      throw CapacityError("profile space exceeds capacity");
    }
  }
  // strides: player 1 most significant
  strides_.assign(actions_.size(), 1);
  for (int a = static_cast<int>(actions_.size()) - 2; a >= 0; a--) {
    strides_[a] = strides_[a + 1] * static_cast<std::size_t>(actions_[a + 1]);
  }
  if (payoffs_.size() != actions_.size()) {
    throw InvalidArgumentError("need one payoff table per player");
  }
  for (std::size_t a = 0; a < payoffs_.size(); a++) {
    if (payoffs_[a].size() != num_profiles_) {
      throw InvalidArgumentError("payoff table of player " + std::to_string(a + 1) +
                                 " must have " + std::to_string(num_profiles_) + " entries");
    }
    for (double v : payoffs_[a]) {
      if (!std::isfinite(v)) {
        throw InvalidArgumentError("payoffs must be finite");
      }
    }
  }
}

GameSpec GameSpec::prisoners_dilemma(const PrisonersDilemmaParams& p) {
  p.validate_order();
  return GameSpec({2, 2}, {{p.R, p.S, p.T, p.P}, {p.R, p.T, p.S, p.P}});
}

int GameSpec::num_actions(int player) const {
  if (player < 1 || player > num_players()) {
    throw InvalidArgumentError("player index out of range: " + std::to_string(player));
  }
  return actions_[player - 1];
}

double GameSpec::payoff(int player, const ActionProfile& profile) const {
  return payoff_by_index(player, profile_index(profile));
}

double GameSpec::payoff_by_index(int player, std::size_t profile_index) const {
  if (profile_index >= num_profiles_) {
    throw InvalidArgumentError("profile index out of range");
  }
  if (player == 0) return 1.0;  // s_0 = 1 by convention
  if (player < 0 || player > num_players()) {
    throw InvalidArgumentError("player index out of range: " + std::to_string(player));
  }
  return payoffs_[player - 1][profile_index];
}

std::size_t GameSpec::profile_index(const ActionProfile& profile) const {
  if (profile.actions.size() != actions_.size()) {
    throw InvalidArgumentError("profile has wrong number of players");
  }
  std::size_t idx = 0;
  for (std::size_t a = 0; a < actions_.size(); a++) {
    int act = profile.actions[a];
    if (act < 1 || act > actions_[a]) {
      throw InvalidArgumentError("action out of range in profile " + profile_to_string(profile));
    }
    idx += static_cast<std::size_t>(act - 1) * strides_[a];
  }
  return idx;
}

ActionProfile GameSpec::profile_at(std::size_t index) const {
  if (index >= num_profiles_) {
    throw InvalidArgumentError("profile index out of range");
  }
  ActionProfile p;
  p.actions.resize(actions_.size());
  for (std::size_t a = 0; a < actions_.size(); a++) {
    p.actions[a] = static_cast<int>(index / strides_[a]) % actions_[a] + 1;
  }
  return p;
}

std::vector<ActionProfile> GameSpec::enumerate_profiles() const {
  std::vector<ActionProfile> out;
  out.reserve(num_profiles_);
  for (std::size_t i = 0; i < num_profiles_; i++) out.push_back(profile_at(i));
  return out;
}

int GameSpec::action_of(int player, std::size_t profile_index) const {
  if (player < 1 || player > num_players()) {
    throw InvalidArgumentError("player index out of range: " + std::to_string(player));
  }
  return static_cast<int>(profile_index / strides_[player - 1]) % actions_[player - 1] + 1;
}

HistorySpace::HistorySpace(std::vector<int> actions_per_player, int memory)
    : actions_(std::move(actions_per_player)), memory_(memory) {
  if (memory_ < 1) throw InvalidArgumentError("memory length must be >= 1");
  num_profiles_ = 1;
  for (int m : actions_) {
    if (m < 2) throw InvalidArgumentError("every player needs at least 2 actions");
    num_profiles_ *= static_cast<std::size_t>(m);
  }
  size_ = 1;
  for (int m = 0; m < memory_; m++) {
    if (size_ > kMaxHistories / num_profiles_) {
      throw CapacityError("history space exceeds capacity of 2^24 entries (memory " +
                          std::to_string(memory_) + ")");
    }
    size_ *= num_profiles_;
  }
  newest_stride_ = size_ / num_profiles_;
}

std::size_t HistorySpace::profile_at_slot(std::size_t history, int m) const {
  // slot m=1 is the most significant digit
  std::size_t stride = newest_stride_;
  for (int i = 1; i < m; i++) stride /= num_profiles_;
  return history / stride % num_profiles_;
}

std::size_t HistorySpace::profile_index(const ActionProfile& profile) const {
  return shape_profile_index(actions_, profile);
}

ActionProfile HistorySpace::profile_at(std::size_t index) const {
  if (index >= num_profiles_) throw InvalidArgumentError("profile index out of range");
  return shape_profile_at(actions_, index);
}

std::size_t HistorySpace::truncate(std::size_t history, int shorter) const {
  if (shorter < 1 || shorter > memory_) {
    throw InvalidArgumentError("truncation length out of range");
  }
  std::size_t drop = 1;
  for (int m = shorter; m < memory_; m++) drop *= num_profiles_;
  return history / drop;
}

std::size_t HistorySpace::index_of(const History& h, const GameSpec& game) const {
  if (static_cast<int>(h.states.size()) != memory_) {
    throw InvalidArgumentError("history has wrong length");
  }
  std::size_t idx = 0;
  for (const ActionProfile& p : h.states) {
    idx = idx * num_profiles_ + game.profile_index(p);
  }
  return idx;
}

History HistorySpace::history_at(std::size_t index, const GameSpec& game) const {
  if (index >= size_) throw InvalidArgumentError("history index out of range");
  History h;
  h.states.resize(memory_);
  for (int m = memory_; m >= 1; m--) {
    h.states[m - 1] = game.profile_at(index % num_profiles_);
    index /= num_profiles_;
  }
  return h;
}

std::vector<History> enumerate_histories(const GameSpec& game, int memory) {
  HistorySpace space(game, memory);
  std::vector<History> out;
  out.reserve(space.size());
  for (std::size_t i = 0; i < space.size(); i++) out.push_back(space.history_at(i, game));
  return out;
}

}  // namespace zd
