#include "zd/zd_construct.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

namespace zd {

namespace {

void require_valid_memory_one(const PressDysonTensor& base, const char* who) {
  if (base.memory != 1) {
    throw InvalidArgumentError(std::string(who) + " needs a memory-one base tensor");
  }
  ValidationReport r = validate_press_dyson(base);
  if (!r.ok()) {
    const ConstraintViolation& v = r.violations.front();
    throw InfeasibleTensorError(std::string(who) + ": base tensor invalid (" +
                                    v.constraint + " at history " +
                                    std::to_string(v.history) + ")",
                                v.history, v.action);
  }
}

void check_feasible(const PressDysonTensor& t, const char* who) {
  ValidationReport r = validate_press_dyson(t);
  if (!r.ok()) {
    const ConstraintViolation& v = r.violations.front();
    throw InfeasibleTensorError(std::string(who) + ": resulting tensor violates the " +
                                    v.constraint + " constraint at history " +
                                    std::to_string(v.history) + " (magnitude " +
                                    std::to_string(v.magnitude) + ")",
                                v.history, v.action);
  }
}

}  // namespace

PressDysonTensor memory_one_zd(const GameSpec& game, const MemoryOneZDSpec& spec) {
  const int N = game.num_players();
  if (spec.player < 1 || spec.player > N) {
    throw InvalidArgumentError("constructing player out of range");
  }
  if (game.num_actions(spec.player) != 2) {
    throw InvalidArgumentError(
        "memory_one_zd supports two-action seats only; build the tensor "
        "directly and classify it with recognize_zd");
  }
  if (spec.c.size() != 2) {
    throw InvalidArgumentError("coefficient vector c needs one entry per action");
  }
  if (spec.alpha.size() != static_cast<std::size_t>(N) + 1) {
    throw InvalidArgumentError("coefficient vector alpha needs N+1 entries");
  }
  bool nontrivial = false;
  for (double a : spec.alpha) nontrivial = nontrivial || a != 0.0;
  if (!nontrivial) {
    throw InvalidArgumentError("alpha must not be identically zero");
  }
  const double dc = spec.c[0] - spec.c[1];
  if (dc == 0.0) {
    throw InvalidArgumentError("c_1 = c_2 leaves the tensor undetermined");
  }

  PressDysonTensor t;
  t.player = spec.player;
  t.memory = 1;
  t.actions_per_player = game.actions_per_player();
  t.values.resize(game.num_profiles() * 2);
  for (std::size_t p = 0; p < game.num_profiles(); p++) {
    double rhs = 0.0;
    for (int b = 0; b <= N; b++) rhs += spec.alpha[b] * game.payoff_by_index(b, p);
    t.values[p * 2] = rhs / dc;
    t.values[p * 2 + 1] = -rhs / dc;
  }
  check_feasible(t, "memory_one_zd");
  return t;
}

PressDysonTensor probability_controlling(const PressDysonTensor& base,
                                         const std::vector<ActionProfile>& targets) {
  require_valid_memory_one(base, "probability_controlling");
  if (targets.empty()) {
    throw InvalidArgumentError("probability_controlling needs at least one target state");
  }
  const HistorySpace base_space = base.history_space();
  const std::size_t M = static_cast<std::size_t>(base.num_actions());
  const std::size_t newest = base_space.profile_index(targets.front());
  bool active = false;
  for (std::size_t a = 0; a < M; a++) active = active || base.values[newest * M + a] != 0.0;
  if (!active) {
    throw InvalidArgumentError(
        "base tensor vanishes on the newest target state; the trigger "
        "enforces nothing");
  }

  const int n = static_cast<int>(targets.size());
  PressDysonTensor t;
  t.player = base.player;
  t.memory = n;
  t.actions_per_player = base.actions_per_player;
  const HistorySpace space(base.actions_per_player, n);
  t.values.assign(space.size() * M, 0.0);
  std::size_t target_history = 0;
  for (const ActionProfile& p : targets) {
    target_history = target_history * space.num_profiles() + space.profile_index(p);
  }
  for (std::size_t a = 0; a < M; a++) {
    t.values[target_history * M + a] = base.values[newest * M + a];
  }
  return t;
}

PressDysonTensor biased_zd(const PressDysonTensor& base, const BiasWeights& weights) {
  require_valid_memory_one(base, "biased_zd");
  if (weights.memory < 1) throw InvalidArgumentError("bias weights need memory >= 1");
  const HistorySpace space(base.actions_per_player, weights.memory);
  if (weights.w.size() != space.size()) {
    throw InvalidArgumentError("bias weights need one entry per history (" +
                               std::to_string(space.size()) + ")");
  }
  double wmax = 0.0;
  for (double w : weights.w) {
    if (!(w >= 0.0 && w <= 1.0)) {
      throw InvalidArgumentError("bias weights must lie in [0,1]");
    }
    wmax = std::max(wmax, w);
  }
  if (std::abs(wmax - 1.0) > 1e-12) {
    throw InvalidArgumentError(
        "bias weights must attain 1 somewhere (store e^{K - K_max}, and K "
        "cannot be -infinity everywhere)");
  }

  PressDysonTensor t;
  t.player = base.player;
  t.memory = weights.memory;
  t.actions_per_player = base.actions_per_player;
  const std::size_t M = static_cast<std::size_t>(base.num_actions());
  t.values.resize(space.size() * M);
  for (std::size_t h = 0; h < space.size(); h++) {
    const std::size_t newest = space.profile_at_slot(h, 1);
    for (std::size_t a = 0; a < M; a++) {
      t.values[h * M + a] = base.values[newest * M + a] * weights.w[h];
    }
  }
  return t;
}

PressDysonTensor conditional_zd(const PressDysonTensor& base,
                                const std::vector<ActionProfile>& condition) {
  require_valid_memory_one(base, "conditional_zd");
  const int n = static_cast<int>(condition.size()) + 1;
  const HistorySpace space(base.actions_per_player, n);
  BiasWeights weights;
  weights.memory = n;
  weights.w.assign(space.size(), 1.0);
  for (std::size_t h = 0; h < space.size(); h++) {
    for (int m = 2; m <= n; m++) {
      if (space.profile_at_slot(h, m) != space.profile_index(condition[m - 2])) {
        weights.w[h] = 0.0;
        break;
      }
    }
  }
  return biased_zd(base, weights);
}

PressDysonTensor factorable_zd(const GameSpec& game, const FactorSpec& spec) {
  const int N = game.num_players();
  if (spec.player < 1 || spec.player > N) {
    throw InvalidArgumentError("constructing player out of range");
  }
  if (game.num_actions(spec.player) != 2) {
    throw InvalidArgumentError("factorable_zd supports two-action seats only");
  }
  if (spec.factors.empty()) {
    throw InvalidArgumentError("factorable_zd needs at least the G_1 factor");
  }
  const std::size_t P = game.num_profiles();
  for (std::size_t m = 0; m < spec.factors.size(); m++) {
    if (spec.factors[m].size() != P) {
      throw InvalidArgumentError("factor " + std::to_string(m + 1) +
                                 " needs one value per profile");
    }
    if (m == 0) continue;
    for (double g : spec.factors[m]) {
      if (!(g >= 0.0 && g <= 1.0)) {
        throw InvalidArgumentError("G_" + std::to_string(m + 1) +
                                   " must lie in [0,1]");
      }
    }
  }

  const int n = static_cast<int>(spec.factors.size());
  PressDysonTensor t;
  t.player = spec.player;
  t.memory = n;
  t.actions_per_player = game.actions_per_player();
  const HistorySpace space(t.actions_per_player, n);
  t.values.resize(space.size() * 2);
  for (std::size_t h = 0; h < space.size(); h++) {
    double v = 1.0;
    for (int m = 1; m <= n; m++) v *= spec.factors[m - 1][space.profile_at_slot(h, m)];
    t.values[h * 2] = v;
    t.values[h * 2 + 1] = -v;
  }
  check_feasible(t, "factorable_zd");
  return t;
}

RecognitionResult recognize_zd(const GameSpec& game, const PressDysonTensor& pd,
                               double tol) {
  if (pd.memory != 1) {
    throw InvalidArgumentError("recognize_zd works on memory-one tensors");
  }
  if (pd.actions_per_player != game.actions_per_player()) {
    throw InvalidArgumentError("tensor does not match the game's action shape");
  }
  const int N = game.num_players();
  const std::size_t P = game.num_profiles();
  const int M = pd.num_actions();

  RecognitionResult out;
  out.c.assign(static_cast<std::size_t>(M), 0.0);
  out.alpha.assign(static_cast<std::size_t>(N) + 1, 0.0);

  double vmax = 0.0;
  for (double v : pd.values) vmax = std::max(vmax, std::abs(v));
  if (vmax <= 1e-12) {
    // Repeat: the defining condition holds only with alpha = 0, excluded by
    // the nontriviality clause.
    out.kind = ZDKind::trivial;
    return out;
  }

  Eigen::MatrixXd B(P, M);
  for (std::size_t p = 0; p < P; p++) {
    for (int a = 1; a <= M; a++) B(p, a - 1) = pd.value(p, a);
  }
  Eigen::MatrixXd S(P, N + 1);
  for (std::size_t p = 0; p < P; p++) {
    for (int b = 0; b <= N; b++) S(p, b) = game.payoff_by_index(b, p);
  }

  // Minimize ||B c - S alpha|| over unit alpha: the optimum projects S alpha
  // off range(B), so alpha is the smallest right singular vector of P_perp S.
  Eigen::JacobiSVD<Eigen::MatrixXd> svdB(B, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svdB.setThreshold(1e-12);
  const Eigen::Index rank = svdB.rank();
  Eigen::MatrixXd U = svdB.matrixU().leftCols(rank);
  Eigen::MatrixXd A = S - U * (U.transpose() * S);
  Eigen::JacobiSVD<Eigen::MatrixXd> svdA(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd alpha = svdA.matrixV().col(N);
  Eigen::VectorXd c = svdB.solve(S * alpha);

  double norm = std::sqrt(c.squaredNorm() + alpha.squaredNorm());
  c /= norm;
  alpha /= norm;
  double lead = 0.0;
  for (Eigen::Index i = 0; i < c.size() && lead == 0.0; i++) {
    if (std::abs(c(i)) > 1e-12) lead = c(i);
  }
  for (Eigen::Index i = 0; i < alpha.size() && lead == 0.0; i++) {
    if (std::abs(alpha(i)) > 1e-12) lead = alpha(i);
  }
  if (lead < 0.0) {
    c = -c;
    alpha = -alpha;
  }

  out.residual = (B * c - S * alpha).lpNorm<Eigen::Infinity>();
  out.kind = out.residual <= tol ? ZDKind::zd : ZDKind::non_zd;
  for (int a = 0; a < M; a++) out.c[a] = c(a);
  for (int b = 0; b <= N; b++) out.alpha[b] = alpha(b);
  return out;
}

}  // namespace zd
