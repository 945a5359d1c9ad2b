#include "zd/catalog.hpp"

#include <algorithm>
#include <cmath>

namespace zd {

namespace {

struct PayoffRows {
  // payoffs per profile (1,1),(1,2),(2,1),(2,2), seat-adjusted:
  // own = constructing player's payoffs, opp = the co-player's.
  std::vector<double> own;
  std::vector<double> opp;
};

PayoffRows seat_payoffs(const PrisonersDilemmaParams& p, int player) {
  if (player != 1 && player != 2) {
    throw InvalidArgumentError("catalog members exist for seats 1 and 2 only");
  }
  std::vector<double> s1 = {p.R, p.S, p.T, p.P};
  std::vector<double> s2 = {p.R, p.T, p.S, p.P};
  if (player == 1) return {s1, s2};
  return {s2, s1};
}

void require_2R(const std::string& name, const PrisonersDilemmaParams& p) {
  if (!p.satisfies_2R_gt_TpS()) {
    throw InfeasibleTensorError(name + " requires 2R > T+S", 0, 0);
  }
}

void require_2P(const std::string& name, const PrisonersDilemmaParams& p) {
  if (!p.satisfies_2P_lt_TpS()) {
    throw InfeasibleTensorError(name + " requires 2P < T+S", 0, 0);
  }
}

std::vector<double> g1_row(const std::string& name, const PrisonersDilemmaParams& p,
                           int player) {
  PayoffRows s = seat_payoffs(p, player);
  std::vector<double> row(4);
  for (int i = 0; i < 4; i++) {
    if (name == "g1_equalizer_P") {
      row[i] = -(s.opp[i] - p.P) / (p.T - p.P);
    } else if (name == "g1_equalizer_R") {
      require_2R(name, p);
      row[i] = -(s.opp[i] - p.R) / (p.R - p.S);
    } else if (name == "g1_fair" || name == "tft" || name == "tftn" ||
               name == "tftn2" || name.rfind("gm_", 0) == 0) {
      row[i] = (s.own[i] - s.opp[i]) / (p.T - p.S);
    } else if (name == "g1_sum_TS") {
      require_2R(name, p);
      require_2P(name, p);
      row[i] = -(s.own[i] + s.opp[i] - (p.T + p.S)) / catalog_payoff_bound(p);
    } else {
      throw InvalidArgumentError("no memory-one core for catalog member " + name);
    }
  }
  return row;
}

std::vector<double> gm_row(const std::string& name, const PrisonersDilemmaParams& p,
                           int player) {
  PayoffRows s = seat_payoffs(p, player);
  std::vector<double> row(4);
  for (int i = 0; i < 4; i++) {
    if (name == "gm_avg_above_P") {
      require_2R(name, p);
      require_2P(name, p);
      row[i] = (s.own[i] + s.opp[i] - 2.0 * p.P) / (2.0 * (p.R - p.P));
    } else if (name == "gm_fair_plus" || name == "tftn2") {
      row[i] = (s.own[i] - s.opp[i] + (p.T - p.S)) / (2.0 * (p.T - p.S));
    } else if (name == "gm_fair_minus" || name == "tftn") {
      row[i] = (s.opp[i] - s.own[i] + (p.T - p.S)) / (2.0 * (p.T - p.S));
    } else if (name == "gm_s1_above_S") {
      row[i] = (s.own[i] - p.S) / (p.T - p.S);
    } else if (name == "gm_s1_below_T") {
      row[i] = (p.T - s.own[i]) / (p.T - p.S);
    } else if (name == "gm_s2_above_S") {
      row[i] = (s.opp[i] - p.S) / (p.T - p.S);
    } else if (name == "gm_s2_below_T") {
      row[i] = (p.T - s.opp[i]) / (p.T - p.S);
    } else {
      // memory-one members carry no weight on older slots
      row[i] = 1.0;
    }
  }
  return row;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"repeat", "identity", "Tdot_a(sigma_a|h) = 0",
       "none (Repeat enforces nothing; every stationary state is kept)",
       "T > R > P > S"},
      {"tft", "memory-one", "Tdot_1(1|sigma) = [s_1 - s_2]/(T-S)",
       "<s_1> = <s_2>", "T > R > P > S"},
      {"grim", "trigger",
       "Tdot_1(sigma_1|h) = tft(sigma_1|(1,2)) * prod_{m=1..n} delta(sigma^(-m),(1,2))",
       "P_st((1,2),...,(1,2)) = 0", "T > R > P > S"},
      {"tftn", "factor",
       "Tdot_1(1|h) = [s_1-s_2]/(T-S) (sigma^(-1)) * prod_{m=2..n} "
       "[s_2-s_1+(T-S)]/(2(T-S)) (sigma^(-m))",
       "<[s_1-s_2](sigma^(-1)) * prod_{m=2..n} [s_2-s_1+(T-S)](sigma^(-m))> = 0",
       "T > R > P > S"},
      {"tftn2", "factor",
       "Tdot_1(1|h) = [s_1-s_2]/(T-S) (sigma^(-1)) * prod_{m=2..n} "
       "[s_1-s_2+(T-S)]/(2(T-S)) (sigma^(-m))",
       "<[s_1-s_2](sigma^(-1)) * prod_{m=2..n} [s_1-s_2+(T-S)](sigma^(-m))> = 0",
       "T > R > P > S"},
      {"g1_equalizer_P", "memory-one", "Tdot_1(1|sigma) = -[s_2 - P]/(T-P)",
       "<s_2> = P", "T > R > P > S"},
      {"g1_equalizer_R", "memory-one", "Tdot_1(1|sigma) = -[s_2 - R]/(R-S)",
       "<s_2> = R", "2R > T+S"},
      {"g1_fair", "memory-one", "Tdot_1(1|sigma) = [s_1 - s_2]/(T-S)",
       "<s_1> = <s_2>", "T > R > P > S"},
      {"g1_sum_TS", "memory-one",
       "Tdot_1(1|sigma) = -[s_1 + s_2 - (T+S)]/B, B = max{2R-(T+S), (T+S)-2P}",
       "<s_1> + <s_2> = T+S", "2R > T+S and 2P < T+S"},
      {"gm_avg_above_P", "factor", "G_m(sigma) = [s_1 + s_2 - 2P]/(2(R-P))",
       "<[s_1-s_2](sigma^(-1)) * prod_{m=2..n} [s_1+s_2-2P](sigma^(-m))> = 0",
       "2R > T+S and 2P < T+S"},
      {"gm_fair_plus", "factor", "G_m(sigma) = [s_1 - s_2 + (T-S)]/(2(T-S))",
       "<[s_1-s_2](sigma^(-1)) * prod_{m=2..n} [s_1-s_2+(T-S)](sigma^(-m))> = 0",
       "T > R > P > S"},
      {"gm_fair_minus", "factor", "G_m(sigma) = [s_2 - s_1 + (T-S)]/(2(T-S))",
       "<[s_1-s_2](sigma^(-1)) * prod_{m=2..n} [s_2-s_1+(T-S)](sigma^(-m))> = 0",
       "T > R > P > S"},
      {"gm_s1_above_S", "factor", "G_m(sigma) = [s_1 - S]/(T-S)",
       "<[s_1-s_2](sigma^(-1)) * prod_{m=2..n} [s_1-S](sigma^(-m))> = 0",
       "T > R > P > S"},
      {"gm_s1_below_T", "factor", "G_m(sigma) = [T - s_1]/(T-S)",
       "<[s_1-s_2](sigma^(-1)) * prod_{m=2..n} [T-s_1](sigma^(-m))> = 0",
       "T > R > P > S"},
      {"gm_s2_above_S", "factor", "G_m(sigma) = [s_2 - S]/(T-S)",
       "<[s_1-s_2](sigma^(-1)) * prod_{m=2..n} [s_2-S](sigma^(-m))> = 0",
       "T > R > P > S"},
      {"gm_s2_below_T", "factor", "G_m(sigma) = [T - s_2]/(T-S)",
       "<[s_1-s_2](sigma^(-1)) * prod_{m=2..n} [T-s_2](sigma^(-m))> = 0",
       "T > R > P > S"},
  };
  return entries;
}

bool is_catalog_name(const std::string& name) {
  for (const CatalogEntry& e : catalog()) {
    if (e.name == name) return true;
  }
  return false;
}

double catalog_payoff_bound(const PrisonersDilemmaParams& p) {
  return std::max(2.0 * p.R - (p.T + p.S), (p.T + p.S) - 2.0 * p.P);
}

FactorSpec builtin_factors(const std::string& name, const PrisonersDilemmaParams& params,
                           int n, int player) {
  if (!is_catalog_name(name) || name == "repeat" || name == "grim") {
    throw InvalidArgumentError("catalog member " + name + " has no factor form");
  }
  if (n < 1) throw InvalidArgumentError("memory length must be >= 1");
  params.validate_order();
  FactorSpec spec;
  spec.player = player;
  spec.factors.push_back(g1_row(name, params, player));
  for (int m = 2; m <= n; m++) spec.factors.push_back(gm_row(name, params, player));
  return spec;
}

PressDysonTensor builtin(const std::string& name, const PrisonersDilemmaParams& params,
                         int n, int player) {
  if (!is_catalog_name(name)) {
    throw InvalidArgumentError("unknown catalog member " + name);
  }
  if (n < 1) throw InvalidArgumentError("memory length must be >= 1");
  params.validate_order();
  const GameSpec game = GameSpec::prisoners_dilemma(params);
  if (name == "repeat") {
    PressDysonTensor t;
    t.player = player;
    t.memory = n;
    t.actions_per_player = game.actions_per_player();
    t.values.assign(HistorySpace(game, n).size() * 2, 0.0);
    return t;
  }
  if (name == "grim") {
    PressDysonTensor base = builtin("tft", params, 1, player);
    ActionProfile exploited = player == 1 ? ActionProfile{{1, 2}} : ActionProfile{{2, 1}};
    return probability_controlling(base, std::vector<ActionProfile>(n, exploited));
  }
  return factorable_zd(game, builtin_factors(name, params, n, player));
}

std::vector<double> builtin_alpha(const std::string& name,
                                  const PrisonersDilemmaParams& params, int player) {
  params.validate_order();
  std::vector<double> alpha(3, 0.0);
  const double self = player == 1 ? 1.0 : -1.0;
  if (name == "g1_fair" || name == "tft" || name == "tftn" || name == "tftn2" ||
      name.rfind("gm_", 0) == 0) {
    alpha[1] = self / (params.T - params.S);
    alpha[2] = -self / (params.T - params.S);
  } else if (name == "g1_equalizer_P") {
    alpha[0] = params.P / (params.T - params.P);
    alpha[player == 1 ? 2 : 1] = -1.0 / (params.T - params.P);
  } else if (name == "g1_equalizer_R") {
    require_2R(name, params);
    alpha[0] = params.R / (params.R - params.S);
    alpha[player == 1 ? 2 : 1] = -1.0 / (params.R - params.S);
  } else if (name == "g1_sum_TS") {
    require_2R(name, params);
    require_2P(name, params);
    const double B = catalog_payoff_bound(params);
    alpha[0] = (params.T + params.S) / B;
    alpha[1] = -1.0 / B;
    alpha[2] = -1.0 / B;
  } else {
    throw InvalidArgumentError("catalog member " + name +
                               " enforces no linear payoff relation");
  }
  return alpha;
}

}  // namespace zd
