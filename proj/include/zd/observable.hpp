#pragma once

#include <cstddef>
#include <vector>

#include "zd/game.hpp"

namespace zd {

// One summand coeff * prod_b s_b(sigma)^powers[b-1] * e^{exp_h[b-1] s_b(sigma)}
// of a payoff observable. Empty powers/exp_h stand for all-zero vectors;
// otherwise their length must equal the number of players. Powers are
// non-negative.
struct PayoffTerm {
  double coeff = 1.0;
  std::vector<int> powers;
  std::vector<double> exp_h;
};

// Finite sum of payoff monomials/exponentials evaluated on one round slot.
struct SlotObservable {
  std::vector<PayoffTerm> terms;
};

double evaluate_term(const GameSpec& game, const PayoffTerm& term,
                     std::size_t profile_index);
double evaluate_slot(const GameSpec& game, const SlotObservable& slot,
                     std::size_t profile_index);

// True when some term carries a nonzero coefficient on a nonconstant
// monomial; a constant-only observable enforces nothing.
bool is_nontrivial(const SlotObservable& slot);

}  // namespace zd
