#include "zd/observable.hpp"

#include <cmath>

#include "zd/error.hpp"

namespace zd {

double evaluate_term(const GameSpec& game, const PayoffTerm& term,
                     std::size_t profile_index) {
  const std::size_t n = static_cast<std::size_t>(game.num_players());
  if (!term.powers.empty() && term.powers.size() != n) {
    throw InvalidArgumentError("payoff term powers must list one exponent per player");
  }
  if (!term.exp_h.empty() && term.exp_h.size() != n) {
    throw InvalidArgumentError("payoff term exp_h must list one tilt per player");
  }
  double v = term.coeff;
  for (std::size_t b = 0; b < n; b++) {
    const double s = game.payoff_by_index(static_cast<int>(b) + 1, profile_index);
    if (!term.powers.empty()) {
      const int k = term.powers[b];
      if (k < 0) throw InvalidArgumentError("payoff term powers must be non-negative");
      for (int i = 0; i < k; i++) v *= s;
    }
    if (!term.exp_h.empty() && term.exp_h[b] != 0.0) v *= std::exp(term.exp_h[b] * s);
  }
  return v;
}

double evaluate_slot(const GameSpec& game, const SlotObservable& slot,
                     std::size_t profile_index) {
  double v = 0.0;
  for (const PayoffTerm& term : slot.terms) v += evaluate_term(game, term, profile_index);
  return v;
}

bool is_nontrivial(const SlotObservable& slot) {
  for (const PayoffTerm& term : slot.terms) {
    if (term.coeff == 0.0) continue;
    for (int k : term.powers) {
      if (k != 0) return true;
    }
    for (double h : term.exp_h) {
      if (h != 0.0) return true;
    }
  }
  return false;
}

}  // namespace zd
