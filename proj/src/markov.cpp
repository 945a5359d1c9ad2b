#include "zd/markov.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <random>

#include "zd/kernels.hpp"
#include "zd/random.hpp"

namespace zd {

namespace {

constexpr std::size_t kDenseSolveLimit = 512;

double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); i++) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double chain_residual(const HistoryChain& chain, const std::vector<double>& pi) {
  std::vector<double> next(pi.size());
  kernels::apply_transition_omp(pi.data(), chain.step.data(), next.data(), pi.size(),
                                chain.game.num_profiles());
  return sup_distance(next, pi);
}

}  // namespace

double HistoryChain::transition(std::size_t from, std::size_t to) const {
  const HistorySpace sp = space();
  const std::size_t j = to / (sp.size() / sp.num_profiles());
  if (sp.successor(from, j) != to) return 0.0;
  return step[from * game.num_profiles() + j];
}

StrategyTensor perturb_strategy(const StrategyTensor& s, double eps) {
  if (eps < 0.0 || eps > 1.0) {
    throw InvalidArgumentError("perturbation rate must lie in [0,1]");
  }
  StrategyTensor out = s;
  const double uniform = 1.0 / static_cast<double>(s.num_actions());
  for (double& p : out.probs) p = (1.0 - eps) * p + eps * uniform;
  return out;
}

HistoryChain build_chain(const GameSpec& game, const std::vector<StrategyTensor>& strategies,
                         double eps) {
  const int N = game.num_players();
  if (strategies.size() != static_cast<std::size_t>(N)) {
    throw InvalidArgumentError("need exactly one strategy per player");
  }
  std::vector<const StrategyTensor*> by_seat(N, nullptr);
  int memory = 1;
  for (const StrategyTensor& s : strategies) {
    if (s.player < 1 || s.player > N || by_seat[s.player - 1] != nullptr) {
      throw InvalidArgumentError("strategies must cover each seat exactly once");
    }
    if (s.actions_per_player != game.actions_per_player()) {
      throw InvalidArgumentError("strategy action shape does not match the game");
    }
    ValidationReport r = validate_strategy(s);
    if (!r.ok()) {
      throw InvalidArgumentError("strategy for player " + std::to_string(s.player) +
                                 " is invalid (" + r.violations.front().constraint + ")");
    }
    by_seat[s.player - 1] = &s;
    memory = std::max(memory, s.memory);
  }

  HistoryChain chain;
  chain.game = game;
  chain.memory = memory;
  chain.perturbed = eps > 0.0;
  chain.epsilon = eps;
  for (int a = 0; a < N; a++) {
    StrategyTensor padded = pad_memory(*by_seat[a], memory);
    chain.strategies.push_back(eps > 0.0 ? perturb_strategy(padded, eps) : padded);
  }

  const HistorySpace space(game, memory);
  const std::size_t P = game.num_profiles();
  chain.step.resize(space.size() * P);
  const std::int64_t H = static_cast<std::int64_t>(space.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t h = 0; h < H; h++) {
    for (std::size_t j = 0; j < P; j++) {
      double prob = 1.0;
      for (int a = 0; a < N; a++) {
        prob *= chain.strategies[a].prob(static_cast<std::size_t>(h),
                                         game.action_of(a + 1, j));
      }
      chain.step[static_cast<std::size_t>(h) * P + j] = prob;
    }
  }
  return chain;
}

std::vector<std::vector<std::size_t>> recurrent_classes(const HistoryChain& chain) {
  const HistorySpace space = chain.space();
  const std::size_t H = space.size();
  const std::size_t P = chain.game.num_profiles();

  // iterative Tarjan over the support graph
  std::vector<std::int32_t> index(H, -1), lowlink(H, 0);
  std::vector<std::int32_t> scc_of(H, -1);
  std::vector<bool> on_stack(H, false);
  std::vector<std::size_t> stack;
  std::int32_t next_index = 0;
  std::int32_t num_sccs = 0;

  struct Frame {
    std::size_t node;
    std::size_t edge;
  };
  std::vector<Frame> frames;

  for (std::size_t root = 0; root < H; root++) {
    if (index[root] != -1) continue;
    frames.push_back({root, 0});
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.edge < P) {
        const std::size_t j = f.edge++;
        if (chain.step[f.node * P + j] <= 0.0) continue;
        const std::size_t next = space.successor(f.node, j);
        if (index[next] == -1) {
          index[next] = lowlink[next] = next_index++;
          stack.push_back(next);
          on_stack[next] = true;
          frames.push_back({next, 0});
        } else if (on_stack[next]) {
          lowlink[f.node] = std::min(lowlink[f.node], index[next]);
        }
      } else {
        const std::size_t node = f.node;
        frames.pop_back();
        if (!frames.empty()) {
          lowlink[frames.back().node] =
              std::min(lowlink[frames.back().node], lowlink[node]);
        }
        if (lowlink[node] == index[node]) {
          while (true) {
            const std::size_t member = stack.back();
            stack.pop_back();
            on_stack[member] = false;
            scc_of[member] = num_sccs;
            if (member == node) break;
          }
          num_sccs++;
        }
      }
    }
  }

  // a class is recurrent iff no member leaves its SCC
  std::vector<bool> closed(num_sccs, true);
  for (std::size_t h = 0; h < H; h++) {
    for (std::size_t j = 0; j < P; j++) {
      if (chain.step[h * P + j] <= 0.0) continue;
      const std::size_t next = space.successor(h, j);
      if (scc_of[next] != scc_of[h]) closed[scc_of[h]] = false;
    }
  }

  std::vector<std::vector<std::size_t>> classes(num_sccs);
  for (std::size_t h = 0; h < H; h++) {
    if (closed[scc_of[h]]) classes[scc_of[h]].push_back(h);
  }
  classes.erase(std::remove_if(classes.begin(), classes.end(),
                               [](const std::vector<std::size_t>& c) { return c.empty(); }),
                classes.end());
  std::sort(classes.begin(), classes.end());
  return classes;
}

namespace {

// pi M = pi on one closed class, as the local system A x = e_0 with
// A = (M_C^T - I) whose first row is replaced by ones (the normalization).
std::vector<double> solve_class(const HistoryChain& chain,
                                const std::vector<std::size_t>& members) {
  const HistorySpace space = chain.space();
  const std::size_t P = chain.game.num_profiles();
  const std::size_t m = members.size();
  std::vector<std::int64_t> local(space.size(), -1);
  for (std::size_t i = 0; i < m; i++) local[members[i]] = static_cast<std::int64_t>(i);

  Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
  b(0) = 1.0;
  Eigen::VectorXd x(m);

  auto apply_A = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd Av = Eigen::VectorXd::Zero(m);
    for (std::size_t i = 0; i < m; i++) {
      const std::size_t h = members[i];
      for (std::size_t j = 0; j < P; j++) {
        const double p = chain.step[h * P + j];
        if (p <= 0.0) continue;
        const std::int64_t to = local[space.successor(h, j)];
        if (to > 0) Av(to) += p * v(i);
      }
      if (i > 0) Av(i) -= v(i);
      Av(0) += v(i);  // normalization row
    }
    return Av;
  };

  // one step of iterative refinement presses the residual to rounding level
  auto refine = [&](auto&& solve_with) {
    x = solve_with(b);
    Eigen::VectorXd r = b - apply_A(x);
    x += solve_with(r);
  };

  if (m <= kDenseSolveLimit) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
    for (std::size_t i = 0; i < m; i++) {
      const std::size_t h = members[i];
      for (std::size_t j = 0; j < P; j++) {
        const double p = chain.step[h * P + j];
        if (p <= 0.0) continue;
        const std::int64_t to = local[space.successor(h, j)];
        if (to > 0) A(to, i) += p;
      }
      if (i > 0) A(i, i) -= 1.0;
      A(0, i) = 1.0;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    refine([&](const Eigen::VectorXd& rhs) { return lu.solve(rhs).eval(); });
  } else {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(m * (P + 2));
    std::vector<double> diag(m, 0.0);
    for (std::size_t i = 0; i < m; i++) {
      const std::size_t h = members[i];
      triplets.emplace_back(0, static_cast<int>(i), 1.0);
      for (std::size_t j = 0; j < P; j++) {
        const double p = chain.step[h * P + j];
        if (p <= 0.0) continue;
        const std::int64_t to = local[space.successor(h, j)];
        if (to > 0) triplets.emplace_back(static_cast<int>(to), static_cast<int>(i), p);
      }
      if (i > 0) triplets.emplace_back(static_cast<int>(i), static_cast<int>(i), -1.0);
    }
    Eigen::SparseMatrix<double> A(m, m);
    A.setFromTriplets(triplets.begin(), triplets.end());
    A.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success) {
      throw SolverError("sparse factorization of a recurrent class failed", 0.0);
    }
    refine([&](const Eigen::VectorXd& rhs) { return lu.solve(rhs).eval(); });
  }

  std::vector<double> probs(m);
  double sum = 0.0;
  for (std::size_t i = 0; i < m; i++) {
    probs[i] = std::max(x(i), 0.0);  // clamp solver dust
    sum += probs[i];
  }
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw SolverError("stationary solve produced a non-normalizable vector", sum);
  }
  for (double& p : probs) p /= sum;
  return probs;
}

}  // namespace

std::vector<StationaryDistribution> stationary_exact(const HistoryChain& chain) {
  std::vector<StationaryDistribution> out;
  const std::vector<std::vector<std::size_t>> classes = recurrent_classes(chain);
  for (std::size_t c = 0; c < classes.size(); c++) {
    std::vector<double> local = solve_class(chain, classes[c]);
    StationaryDistribution dist;
    dist.method = StationaryMethod::exact_class;
    dist.class_id = static_cast<int>(c);
    dist.probs.assign(chain.size(), 0.0);
    for (std::size_t i = 0; i < classes[c].size(); i++) {
      dist.probs[classes[c][i]] = local[i];
    }
    dist.residual = chain_residual(chain, dist.probs);
    if (dist.residual > Tolerances{}.stationary_residual) {
      throw SolverError("stationary solve residual " + std::to_string(dist.residual) +
                            " exceeds tolerance on class " + std::to_string(c),
                        dist.residual);
    }
    out.push_back(std::move(dist));
  }
  return out;
}

StationaryDistribution stationary_power(const HistoryChain& chain,
                                        const std::vector<double>& initial,
                                        std::size_t max_iters, double tol) {
  const std::size_t H = chain.size();
  if (initial.size() != H) {
    throw InvalidArgumentError("initial distribution has wrong length");
  }
  double sum = 0.0;
  for (double p : initial) {
    if (p < 0.0) throw InvalidArgumentError("initial distribution must be nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw InvalidArgumentError("initial distribution must sum to 1");
  }

  StationaryDistribution dist;
  dist.method = StationaryMethod::power_iteration;
  std::vector<double> cur = initial;
  std::vector<double> next(H);

  constexpr std::size_t kWindow = 512;
  double window_min = 0.0, prev_window_min = 0.0;
  bool damped = false;
  std::size_t iter = 0;
  for (; iter < max_iters; iter++) {
    kernels::apply_transition_omp(cur.data(), chain.step.data(), next.data(), H,
                                  chain.game.num_profiles());
    if (damped) {
      for (std::size_t h = 0; h < H; h++) next[h] = 0.5 * (next[h] + cur[h]);
    }
    const double delta = sup_distance(next, cur);
    cur.swap(next);
    if (delta < tol) {
      iter++;
      break;
    }
    // stall detection: a periodic chain keeps its window minima flat, so a
    // window that fails to shrink switches to the lazy half-step
    if (iter % kWindow == 0) {
      if (!damped && iter > 0 && prev_window_min > 0.0 && window_min >= 0.9 * prev_window_min) {
        damped = true;
      }
      prev_window_min = window_min;
      window_min = delta;
    } else {
      window_min = std::min(window_min, delta);
    }
  }

  dist.probs = std::move(cur);
  dist.damping_used = damped;
  dist.iterations = iter;
  dist.residual = chain_residual(chain, dist.probs);
  if (dist.residual > Tolerances{}.stationary_residual) {
    throw SolverError("power iteration failed to converge within " +
                          std::to_string(max_iters) + " iterations (residual " +
                          std::to_string(dist.residual) + ")",
                      dist.residual);
  }
  return dist;
}

TrajectorySummary simulate(const HistoryChain& chain, std::size_t initial,
                           std::size_t rounds, std::uint64_t seed, std::size_t thin) {
  const std::size_t H = chain.size();
  const std::size_t P = chain.game.num_profiles();
  if (initial >= H) throw InvalidArgumentError("initial history index out of range");
  if (rounds < 1) throw InvalidArgumentError("need at least one round");
  if (thin < 1) throw InvalidArgumentError("thinning factor must be >= 1");

  TrajectorySummary out;
  out.rounds = rounds;
  out.seed = seed;
  out.thin = thin;
  out.empirical.assign(H, 0.0);
  out.avg_payoffs.assign(chain.game.num_players(), 0.0);
  out.trajectory.reserve(rounds / thin);

  std::mt19937_64 rng(seed);
  const HistorySpace space = chain.space();
  std::size_t cur = initial;
  for (std::size_t round = 1; round <= rounds; round++) {
    const double u = uniform_double(rng);
    const double* row = chain.step.data() + cur * P;
    double cum = 0.0;
    std::size_t j = P - 1;
    for (std::size_t k = 0; k < P; k++) {
      cum += row[k];
      if (u < cum) {
        j = k;
        break;
      }
    }
    for (int a = 1; a <= chain.game.num_players(); a++) {
      out.avg_payoffs[a - 1] += chain.game.payoff_by_index(a, j);
    }
    cur = space.successor(cur, j);
    out.empirical[cur] += 1.0;
    if (round % thin == 0) out.trajectory.push_back(cur);
  }
  for (double& e : out.empirical) e /= static_cast<double>(rounds);
  for (double& s : out.avg_payoffs) s /= static_cast<double>(rounds);
  return out;
}

}  // namespace zd
