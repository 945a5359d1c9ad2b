#pragma once

#include <cstddef>
#include <vector>

#include "zd/game.hpp"
#include "zd/strategy.hpp"
#include "zd/tolerances.hpp"

namespace zd {

// Coefficients of a memory-one ZD strategy of `player`:
//   sum_{sigma_a} c[sigma_a-1] * Tdot_a(sigma_a | sigma) = sum_b alpha[b] * s_b(sigma)
// for every profile sigma, with alpha indexed over {0..N} (alpha[0] scales
// the constant observable s_0 = 1).
struct MemoryOneZDSpec {
  int player = 1;
  std::vector<double> c;
  std::vector<double> alpha;
};

// Per-history bias factors w(h) = e^{K(h) - K_max} in [0,1]; w = 0 marks a
// history outside supp e^K (K = -infinity). At least one entry must be 1.
struct BiasWeights {
  int memory = 1;
  std::vector<double> w;  // HistorySpace order
};

// Per-round-slot factors of a factorable memory-n tensor. factors[0] is G_1,
// a memory-one Press-Dyson vector over profiles (the action-1 entry);
// factors[m-1] for m >= 2 is G_m, a weight in [0,1] per profile.
struct FactorSpec {
  int player = 1;
  std::vector<std::vector<double>> factors;
};

// Canonical two-action solution of the defining linear condition:
//   Tdot_a(1|sigma) = [sum_b alpha_b s_b(sigma)] / (c_1 - c_2),
//   Tdot_a(2|sigma) = -Tdot_a(1|sigma).
// Throws InvalidArgumentError for seats with more than two actions (feed a
// hand-built tensor through recognize_zd instead) and InfeasibleTensorError
// when the solution violates the tensor sign/magnitude constraints.
PressDysonTensor memory_one_zd(const GameSpec& game, const MemoryOneZDSpec& spec);

// Memory-n trigger tensor: base acts only on the exact target history
//   Tdot(sigma_a|h) = base(sigma_a|sigma^(-1)) * prod_m delta_{sigma^(-m), targets[m-1]};
// forces stationary probability 0 on that history. Requires some action with
// base(.|targets[0]) != 0, otherwise the enforcement claim is vacuous.
PressDysonTensor probability_controlling(const PressDysonTensor& base,
                                         const std::vector<ActionProfile>& targets);

// Memory-n biased tensor Tdot(sigma_a|h) = base(sigma_a|sigma^(-1)) * w(h).
// Valid whenever base is valid memory-one since 0 <= w <= 1.
PressDysonTensor biased_zd(const PressDysonTensor& base, const BiasWeights& weights);

// Bias by an indicator on the older states only:
//   w(h) = prod_{m=2..n} delta_{sigma^(-m), condition[m-2]},
// turning base's enforced relation into a conditional expectation.
PressDysonTensor conditional_zd(const PressDysonTensor& base,
                                const std::vector<ActionProfile>& condition);

// Product tensor Tdot(1|h) = prod_m G_m(sigma^(-m)), Tdot(2|h) = -Tdot(1|h),
// for a two-action constructing player.
PressDysonTensor factorable_zd(const GameSpec& game, const FactorSpec& spec);

enum class ZDKind { zd, trivial, non_zd };

struct RecognitionResult {
  ZDKind kind = ZDKind::non_zd;
  std::vector<double> c;      // over {1..M_a}, zero-sum gauge
  std::vector<double> alpha;  // over {0..N}
  double residual = 0.0;      // max-norm over profiles at ||(c,alpha)|| = 1
};

// Least-squares inversion of the defining condition: minimizes the residual
// of sum c_sigma_a Tdot(sigma_a|sigma) = sum alpha_b s_b(sigma) over
// nontrivial alpha, reports the max-norm residual at ||(c,alpha)||_2 = 1
// with the first nonzero coefficient positive. residual <= tol means ZD;
// the all-zero tensor is reported as ZDKind::trivial.
RecognitionResult recognize_zd(const GameSpec& game, const PressDysonTensor& pd,
                               double tol = Tolerances{}.recognition);

}  // namespace zd
