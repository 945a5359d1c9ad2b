#include "zd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "zd/kernels.hpp"

namespace zd {

namespace {

// Below this ensemble mass D = <w> the biased relation value is numerically
// meaningless and the check switches to the degenerate-support branch.
constexpr double kEnsembleMassFloor = 1e-12;

int memory_from_size(std::size_t size, std::size_t num_profiles) {
  int n = 0;
  std::size_t s = 1;
  while (s < size) {
    s *= num_profiles;
    n++;
  }
  if (n == 0 || s != size) {
    throw InvalidArgumentError(
        "distribution length is not a positive power of the profile count");
  }
  return n;
}

HistorySpace space_for(const GameSpec& game, const StationaryDistribution& dist,
                       int min_memory) {
  const int n = memory_from_size(dist.probs.size(), game.num_profiles());
  if (n < min_memory) {
    throw InvalidArgumentError("stationary distribution covers fewer rounds than the relation");
  }
  return HistorySpace(game, n);
}

// <f>_pi with f given per profile slot: f_table[m-1][profile of sigma^(-m)].
double slot_product_expectation(const HistorySpace& space,
                                const std::vector<std::vector<double>>& f_table,
                                const std::vector<double>& pi) {
  std::vector<double> f(space.size());
  for (std::size_t h = 0; h < space.size(); h++) {
    double v = 1.0;
    for (std::size_t m = 0; m < f_table.size(); m++) {
      v *= f_table[m][space.profile_at_slot(h, static_cast<int>(m) + 1)];
    }
    f[h] = v;
  }
  return kernels::expectation_omp(pi.data(), f.data(), space.size());
}

void require_dists(const std::vector<StationaryDistribution>& dists) {
  if (dists.empty()) throw InvalidArgumentError("no stationary distributions supplied");
}

}  // namespace

std::string to_string(RelationBranch branch) {
  switch (branch) {
    case RelationBranch::relation:
      return "relation";
    case RelationBranch::degenerate_support:
      return "degenerate-support";
    case RelationBranch::vacuous:
      return "vacuous";
  }
  return "relation";
}

std::vector<double> akin_residual(const PressDysonTensor& pd,
                                  const StationaryDistribution& pi) {
  const HistorySpace space = pd.history_space();
  if (pi.probs.size() != space.size()) {
    throw InvalidArgumentError("akin_residual: distribution and tensor sizes differ");
  }
  const int actions = pd.num_actions();
  std::vector<double> out(actions, 0.0);
  std::vector<double> f(space.size());
  for (int a = 1; a <= actions; a++) {
    for (std::size_t h = 0; h < space.size(); h++) f[h] = pd.value(h, a);
    out[a - 1] = kernels::expectation_omp(pi.probs.data(), f.data(), space.size());
  }
  return out;
}

RelationReport biased_relation(const GameSpec& game, const std::vector<double>& alpha,
                               const BiasWeights& weights,
                               const std::vector<StationaryDistribution>& dists,
                               const Tolerances& tol) {
  const int players = game.num_players();
  if (alpha.size() != static_cast<std::size_t>(players) + 1) {
    throw InvalidArgumentError("biased_relation: alpha needs one entry per player plus alpha_0");
  }
  bool nontrivial = false;
  for (int b = 1; b <= players; b++) nontrivial = nontrivial || alpha[b] != 0.0;
  if (!nontrivial) {
    throw InvalidArgumentError("biased_relation: alpha carries no payoff coefficient");
  }
  const HistorySpace wspace(game, weights.memory);
  if (weights.w.size() != wspace.size()) {
    throw InvalidArgumentError("biased_relation: weight table length mismatch");
  }
  require_dists(dists);

  RelationReport report;
  report.relation = "biased";
  report.relation_tolerance = tol.relation;
  report.support_tolerance = tol.support_mass;
  report.pass = true;
  for (const StationaryDistribution& dist : dists) {
    const HistorySpace space = space_for(game, dist, weights.memory);
    const std::size_t size = space.size();
    std::vector<double> w(size), wa(size);
    for (std::size_t h = 0; h < size; h++) {
      const double wh = weights.w[space.truncate(h, weights.memory)];
      double a = alpha[0];
      const std::size_t newest = space.profile_at_slot(h, 1);
      for (int b = 1; b <= players; b++) a += alpha[b] * game.payoff_by_index(b, newest);
      w[h] = wh;
      wa[h] = wh * a;
    }
    RelationEntry entry;
    entry.class_id = dist.class_id;
    const double mass = kernels::expectation_omp(dist.probs.data(), w.data(), size);
    entry.ensemble_mass = mass;
    if (mass >= kEnsembleMassFloor) {
      entry.branch = RelationBranch::relation;
      entry.value = kernels::expectation_omp(dist.probs.data(), wa.data(), size) / mass;
      entry.residual = std::abs(entry.value);
      entry.pass = entry.residual <= tol.relation;
    } else {
      entry.branch = RelationBranch::degenerate_support;
      double support = 0.0;
      for (std::size_t h = 0; h < size; h++) {
        if (w[h] > 0.0) support = std::max(support, dist.probs[h]);
      }
      entry.residual = support;
      entry.pass = support <= tol.support_mass;
    }
    report.pass = report.pass && entry.pass;
    report.entries.push_back(entry);
  }
  return report;
}

RelationReport correlation_relation(const GameSpec& game, const FactorSpec& factors,
                                    const std::vector<StationaryDistribution>& dists,
                                    const Tolerances& tol) {
  const int n = static_cast<int>(factors.factors.size());
  if (n == 0) throw InvalidArgumentError("correlation_relation: no factors");
  bool vacuous = false;
  for (const std::vector<double>& row : factors.factors) {
    if (row.size() != game.num_profiles()) {
      throw InvalidArgumentError("correlation_relation: factor row length mismatch");
    }
    bool all_zero = true;
    for (double v : row) all_zero = all_zero && v == 0.0;
    vacuous = vacuous || all_zero;
  }
  require_dists(dists);

  RelationReport report;
  report.relation = "correlation";
  report.relation_tolerance = tol.relation;
  report.pass = true;
  for (const StationaryDistribution& dist : dists) {
    const HistorySpace space = space_for(game, dist, n);
    RelationEntry entry;
    entry.class_id = dist.class_id;
    entry.branch = vacuous ? RelationBranch::vacuous : RelationBranch::relation;
    entry.value = slot_product_expectation(space, factors.factors, dist.probs);
    entry.residual = std::abs(entry.value);
    entry.pass = entry.residual <= tol.relation;
    report.pass = report.pass && entry.pass;
    report.entries.push_back(entry);
  }
  return report;
}

RelationReport h_sweep(const GameSpec& game, const std::string& family, int n,
                       const std::vector<std::vector<double>>& h_grid,
                       const std::vector<StationaryDistribution>& dists,
                       const Tolerances& tol) {
  bool plus = false;
  if (family == "tftn2") {
    plus = true;
  } else if (family != "tftn") {
    throw InvalidArgumentError("h_sweep: family must be tftn or tftn2");
  }
  if (n < 1) throw InvalidArgumentError("h_sweep: memory length must be >= 1");
  if (game.num_players() != 2 || game.num_actions(1) != 2 || game.num_actions(2) != 2) {
    throw InvalidArgumentError("h_sweep: the tftn families live on 2x2 games");
  }
  std::vector<double> s1(4), s2(4);
  double smax = 0.0;
  for (std::size_t p = 0; p < 4; p++) {
    s1[p] = game.payoff_by_index(1, p);
    s2[p] = game.payoff_by_index(2, p);
    smax = std::max(smax, std::max(std::abs(s1[p]), std::abs(s2[p])));
  }
  if (s2[0] != s1[0] || s2[1] != s1[2] || s2[2] != s1[1] || s2[3] != s1[3]) {
    throw InvalidArgumentError("h_sweep: payoffs must be symmetric");
  }
  const double T = s1[2];
  const double S = s1[1];
  if (T == S) throw InvalidArgumentError("h_sweep: degenerate payoffs T = S");
  for (const std::vector<double>& h : h_grid) {
    if (h.size() != static_cast<std::size_t>(n)) {
      throw InvalidArgumentError("h_sweep: h vectors must have one entry per round slot");
    }
    for (double hm : h) {
      if (std::abs(hm) * smax > 500.0) {
        throw RangeLimitError(
            "h_sweep: |h| * max|s| exceeds 500; rescale payoffs or shrink h");
      }
    }
  }
  require_dists(dists);

  RelationReport report;
  report.relation = "h_sweep";
  report.relation_tolerance = tol.h_relation;
  report.pass = true;
  for (const std::vector<double>& h : h_grid) {
    std::vector<std::vector<double>> f_table(n, std::vector<double>(4));
    for (int m = 1; m <= n; m++) {
      const double hm = h[m - 1];
      std::vector<double>& row = f_table[m - 1];
      for (std::size_t p = 0; p < 4; p++) {
        if (m == 1) {
          row[p] = hm == 0.0 ? (s1[p] - s2[p]) / (T - S)
                             : (std::exp(hm * s1[p]) - std::exp(hm * s2[p])) /
                                   (std::exp(hm * T) - std::exp(hm * S));
        } else {
          const double up = plus ? s1[p] : s2[p];
          const double down = plus ? s2[p] : s1[p];
          row[p] = hm == 0.0 ? (up - down + (T - S)) / (2.0 * (T - S))
                             : (std::exp(hm * up) - std::exp(hm * down) +
                                (std::exp(hm * T) - std::exp(hm * S))) /
                                   (2.0 * (std::exp(hm * T) - std::exp(hm * S)));
        }
      }
    }
    std::ostringstream label;
    label << "h=(";
    for (int m = 0; m < n; m++) label << (m ? "," : "") << h[m];
    label << ")";
    for (const StationaryDistribution& dist : dists) {
      const HistorySpace space = space_for(game, dist, n);
      RelationEntry entry;
      entry.class_id = dist.class_id;
      entry.label = label.str();
      entry.value = slot_product_expectation(space, f_table, dist.probs);
      entry.residual = std::abs(entry.value);
      entry.pass = entry.residual <= tol.h_relation;
      report.pass = report.pass && entry.pass;
      report.entries.push_back(entry);
    }
  }
  return report;
}

RelationReport deformed_relation(const GameSpec& game,
                                 const std::vector<SlotObservable>& slots,
                                 const std::vector<StationaryDistribution>& dists,
                                 const Tolerances& tol) {
  if (slots.empty()) throw InvalidArgumentError("deformed_relation: no slot observables");
  if (!is_nontrivial(slots[0])) {
    throw InvalidArgumentError("deformed_relation: the newest-slot observable is constant");
  }
  require_dists(dists);
  const int n = static_cast<int>(slots.size());
  std::vector<std::vector<double>> f_table(n, std::vector<double>(game.num_profiles()));
  for (int m = 0; m < n; m++) {
    for (std::size_t p = 0; p < game.num_profiles(); p++) {
      f_table[m][p] = evaluate_slot(game, slots[m], p);
    }
  }

  RelationReport report;
  report.relation = "deformed";
  report.relation_tolerance = tol.relation;
  report.pass = true;
  for (const StationaryDistribution& dist : dists) {
    const HistorySpace space = space_for(game, dist, n);
    RelationEntry entry;
    entry.class_id = dist.class_id;
    entry.value = slot_product_expectation(space, f_table, dist.probs);
    entry.residual = std::abs(entry.value);
    entry.pass = entry.residual <= tol.relation;
    report.pass = report.pass && entry.pass;
    report.entries.push_back(entry);
  }
  return report;
}

}  // namespace zd
