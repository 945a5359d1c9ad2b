#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <utility>

#include "cli/output.hpp"
#include "json.hpp"
#include "zd/catalog.hpp"
#include "zd/markov.hpp"
#include "zd/random.hpp"
#include "zd/verify.hpp"

namespace zd::cli {

namespace {

using nlohmann::json;

std::vector<StrategyTensor> tensors_of(const RunConfig& cfg) {
  std::vector<StrategyTensor> out;
  out.reserve(cfg.strategies.size());
  for (const StrategyConfig& s : cfg.strategies) out.push_back(s.tensor);
  return out;
}

std::vector<StationaryDistribution> solve(const RunConfig& cfg, const HistoryChain& chain) {
  if (cfg.task.method == "power") {
    std::vector<double> init;
    if (cfg.task.initial) {
      if (*cfg.task.initial >= chain.size()) {
        throw ConfigError("config: task.initial out of range");
      }
      init.assign(chain.size(), 0.0);
      init[*cfg.task.initial] = 1.0;
    } else {
      init.assign(chain.size(), 1.0 / static_cast<double>(chain.size()));
    }
    return {stationary_power(chain, init, cfg.tol.power_max_iters, cfg.tol.power_tol)};
  }
  return stationary_exact(chain);
}

std::string short_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

json entry_json(const RelationEntry& e) {
  json je;
  je["class_id"] = e.class_id;
  je["branch"] = to_string(e.branch);
  if (!e.label.empty()) je["label"] = e.label;
  je["value"] = e.value;
  je["residual"] = e.residual;
  je["ensemble_mass"] = e.ensemble_mass;
  je["pass"] = e.pass;
  return je;
}

json check_json(int player, const RelationReport& rep, const char* expected_branch) {
  json c;
  c["check"] = rep.relation;
  if (player > 0) c["player"] = player;
  c["relation_tolerance"] = rep.relation_tolerance;
  c["support_tolerance"] = rep.support_tolerance;
  if (expected_branch != nullptr) c["expected_branch"] = expected_branch;
  c["pass"] = rep.pass;
  json entries = json::array();
  for (const RelationEntry& e : rep.entries) entries.push_back(entry_json(e));
  c["entries"] = entries;
  return c;
}

void csv_rows(std::string& out, std::size_t matchup, int player, const RelationReport& rep) {
  for (const RelationEntry& e : rep.entries) {
    out += std::to_string(matchup) + ",";
    out += (player > 0 ? std::to_string(player) : std::string()) + ",";
    out += rep.relation + ",";
    out += std::to_string(e.class_id) + ",";
    out += to_string(e.branch) + ",";
    out += "\"" + e.label + "\",";
    out += fmt_double(e.value) + ",";
    out += fmt_double(e.residual) + ",";
    out += fmt_double(e.ensemble_mass) + ",";
    out += e.pass ? "true" : "false";
    out += "\n";
  }
}

RelationReport akin_report(const PressDysonTensor& pd_t,
                           const std::vector<StationaryDistribution>& dists, double tol) {
  RelationReport rep;
  rep.relation = "akin";
  rep.relation_tolerance = tol;
  rep.support_tolerance = 0.0;
  rep.pass = true;
  for (const StationaryDistribution& d : dists) {
    double worst = 0.0;
    for (double v : akin_residual(pd_t, d)) {
      if (std::abs(v) > std::abs(worst)) worst = v;
    }
    RelationEntry e;
    e.class_id = d.class_id;
    e.branch = RelationBranch::relation;
    e.value = worst;
    e.residual = std::abs(worst);
    e.pass = e.residual <= tol;
    rep.pass = rep.pass && e.pass;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

BiasWeights unit_weights(const GameSpec& game) {
  return BiasWeights{1, std::vector<double>(game.num_profiles(), 1.0)};
}

std::vector<std::vector<double>> default_h_grid(int n) {
  const std::vector<double> axis = n <= 3 ? std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0}
                                          : std::vector<double>{-0.5, 0.0, 0.5};
  std::vector<std::vector<double>> grid;
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  std::vector<double> cur(static_cast<std::size_t>(n), 0.0);
  while (true) {
    for (std::size_t i = 0; i < idx.size(); i++) cur[i] = axis[idx[i]];
    grid.push_back(cur);
    int k = n - 1;
    while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == axis.size()) {
      idx[static_cast<std::size_t>(k)] = 0;
      k--;
    }
    if (k < 0) break;
  }
  return grid;
}

struct Agg {
  std::size_t pass = 0;
  std::size_t total = 0;
  double max_residual = 0.0;
};

void absorb(std::map<std::string, Agg>& agg, const RelationReport& rep) {
  Agg& a = agg[rep.relation];
  for (const RelationEntry& e : rep.entries) {
    a.total++;
    if (e.pass) a.pass++;
    a.max_residual = std::max(a.max_residual, e.residual);
  }
}

}  // namespace

int cmd_validate(const RunConfig& cfg, const CommandOptions&) {
  json out;
  out["schema_version"] = 1;
  out["metadata"] = metadata_json(cfg);
  json arr = json::array();
  bool all = true;
  for (std::size_t i = 0; i < cfg.strategies.size(); i++) {
    const StrategyConfig& s = cfg.strategies[i];
    const ValidationReport r = validate_strategy(s.tensor, cfg.tol.exact);
    json e;
    e["index"] = i;
    e["player"] = s.player;
    e["kind"] = s.kind;
    if (!s.name.empty()) e["name"] = s.name;
    e["memory"] = s.tensor.memory;
    e["valid"] = r.ok();
    e["total_violations"] = r.total_violations;
    json vs = json::array();
    for (const ConstraintViolation& v : r.violations) {
      json jv;
      jv["constraint"] = v.constraint;
      jv["history"] = v.history;
      jv["action"] = v.action;
      jv["magnitude"] = v.magnitude;
      jv["detail"] = v.detail;
      vs.push_back(jv);
    }
    e["violations"] = vs;
    arr.push_back(e);
    all = all && r.ok();
  }
  out["strategies"] = arr;
  out["pass"] = all;
  std::cout << out.dump(2) << "\n";
  return all ? 0 : 1;
}

int cmd_stationary(const RunConfig& cfg, const CommandOptions& opt) {
  const HistoryChain chain = build_chain(cfg.game, tensors_of(cfg), cfg.task.epsilon);
  const std::vector<StationaryDistribution> dists = solve(cfg, chain);
  bool damping = false;
  for (const StationaryDistribution& d : dists) damping = damping || d.damping_used;

  json meta = metadata_json(cfg);
  meta["method"] = cfg.task.method;
  meta["damping_used"] = damping;

  json out;
  out["schema_version"] = 1;
  out["metadata"] = meta;
  out["memory"] = chain.memory;
  out["num_histories"] = chain.size();
  out["num_classes"] = dists.size();
  json arr = json::array();
  for (const StationaryDistribution& d : dists) {
    json jd;
    jd["class_id"] = d.class_id;
    jd["damping_used"] = d.damping_used;
    jd["residual"] = d.residual;
    jd["iterations"] = d.iterations;
    jd["probs"] = d.probs;
    arr.push_back(jd);
  }
  out["distributions"] = arr;

  if (opt.write_json) {
    const std::string path = join_path(opt.out_dir, "stationary.json");
    write_file(path, out.dump(2) + "\n");
    std::cout << "wrote " << path << "\n";
  }
  if (opt.write_csv) {
    const HistorySpace space = chain.space();
    std::string csv = csv_metadata(meta);
    csv += "class_id,history," + history_columns(cfg.game, chain.memory) + ",probability\n";
    for (const StationaryDistribution& d : dists) {
      for (std::size_t h = 0; h < d.probs.size(); h++) {
        csv += std::to_string(d.class_id) + "," + std::to_string(h) + "," +
               history_cells(space, cfg.game, h) + "," + fmt_double(d.probs[h]) + "\n";
      }
    }
    const std::string path = join_path(opt.out_dir, "stationary.csv");
    write_file(path, csv);
    std::cout << "wrote " << path << "\n";
  }
  std::cout << "stationary: " << dists.size() << (dists.size() == 1 ? " class" : " classes")
            << " over " << chain.size() << " histories"
            << (damping ? " (damping used)" : "") << "\n";
  return 0;
}

int cmd_simulate(const RunConfig& cfg, const CommandOptions& opt) {
  const HistoryChain chain = build_chain(cfg.game, tensors_of(cfg), cfg.task.epsilon);
  const std::size_t initial = cfg.task.initial.value_or(0);
  const std::size_t thin = cfg.task.thin > 0 ? cfg.task.thin : cfg.task.rounds;
  const TrajectorySummary t = simulate(chain, initial, cfg.task.rounds, cfg.task.seed, thin);

  json out;
  out["schema_version"] = 1;
  out["metadata"] = metadata_json(cfg);
  out["memory"] = chain.memory;
  out["initial"] = initial;
  out["rounds"] = t.rounds;
  out["empirical"] = t.empirical;
  out["avg_payoffs"] = t.avg_payoffs;
  if (cfg.task.thin > 0) {
    out["thin"] = t.thin;
    out["trajectory"] = t.trajectory;
  }

  if (opt.write_json) {
    const std::string path = join_path(opt.out_dir, "simulate.json");
    write_file(path, out.dump(2) + "\n");
    std::cout << "wrote " << path << "\n";
  }
  if (opt.write_csv) {
    const HistorySpace space = chain.space();
    std::string csv = csv_metadata(out["metadata"]);
    csv += "history," + history_columns(cfg.game, chain.memory) + ",empirical\n";
    for (std::size_t h = 0; h < t.empirical.size(); h++) {
      csv += std::to_string(h) + "," + history_cells(space, cfg.game, h) + "," +
             fmt_double(t.empirical[h]) + "\n";
    }
    const std::string path = join_path(opt.out_dir, "simulate.csv");
    write_file(path, csv);
    std::cout << "wrote " << path << "\n";
  }
  std::string payoffs;
  for (double p : t.avg_payoffs) {
    if (!payoffs.empty()) payoffs += ", ";
    payoffs += short_double(p);
  }
  std::cout << "simulate: " << t.rounds << " rounds from history " << initial
            << ", avg payoffs (" << payoffs << ")\n";
  return 0;
}

int cmd_verify(const RunConfig& cfg, const CommandOptions& opt) {
  const GameSpec& game = cfg.game;
  const OpponentsConfig& op = cfg.task.opponents;

  std::vector<std::vector<StrategyTensor>> matchups;
  int opponent_seat = 0;
  if (op.count > 0) {
    if (cfg.strategies.size() != 1) {
      throw ConfigError("config: opponent batches pair one configured strategy with the free seat");
    }
    if (game.num_players() != 2) {
      throw ConfigError("config: opponent batches need a two-player game");
    }
    opponent_seat = cfg.strategies[0].player == 1 ? 2 : 1;
    std::mt19937_64 rng(op.seed);
    for (int k = 0; k < op.count; k++) {
      matchups.push_back(
          {cfg.strategies[0].tensor,
           random_strategy(game, opponent_seat, op.memory, rng, op.min_prob)});
    }
  } else {
    matchups.push_back(tensors_of(cfg));
  }

  const auto enabled = [&](const char* kind) {
    if (cfg.task.checks.empty()) return true;
    return std::find(cfg.task.checks.begin(), cfg.task.checks.end(), kind) !=
           cfg.task.checks.end();
  };

  bool all = true;
  std::map<std::string, Agg> agg;
  std::string csv;
  json jmatchups = json::array();

  for (std::size_t mi = 0; mi < matchups.size(); mi++) {
    const HistoryChain chain = build_chain(game, matchups[mi], cfg.task.epsilon);
    const std::vector<StationaryDistribution> dists = solve(cfg, chain);

    json jm;
    jm["index"] = mi;
    jm["memory"] = chain.memory;
    jm["num_classes"] = dists.size();
    if (op.count > 0) {
      json jo;
      jo["player"] = opponent_seat;
      jo["memory"] = op.memory;
      jo["min_prob"] = op.min_prob;
      jm["opponent"] = jo;
    }
    json jchecks = json::array();

    const auto record = [&](int player, const RelationReport& rep, const char* expected) {
      all = all && rep.pass;
      absorb(agg, rep);
      jchecks.push_back(check_json(player, rep, expected));
      csv_rows(csv, mi, player, rep);
    };

    if (enabled("akin")) {
      for (const StrategyTensor& st : chain.strategies) {
        record(st.player, akin_report(press_dyson(st), dists, cfg.tol.relation), nullptr);
      }
    }
    for (const StrategyConfig& s : cfg.strategies) {
      const VerificationPlan& plan = s.plan;
      if (enabled("biased") && plan.alpha) {
        const BiasWeights weights = plan.weights ? *plan.weights : unit_weights(game);
        const RelationReport rep = biased_relation(game, *plan.alpha, weights, dists, cfg.tol);
        record(s.player, rep, plan.expect_degenerate ? "degenerate_support" : nullptr);
      }
      if (enabled("correlation") && plan.factors) {
        record(s.player, correlation_relation(game, *plan.factors, dists, cfg.tol), nullptr);
      }
      if (enabled("h_sweep") && plan.family) {
        const int n = s.tensor.memory;
        const std::vector<std::vector<double>>& grid =
            cfg.task.h_grid.empty() ? default_h_grid(n) : cfg.task.h_grid;
        record(s.player, h_sweep(game, *plan.family, n, grid, dists, cfg.tol), nullptr);
      }
    }
    if (enabled("deformed") && !cfg.task.deformed_slots.empty()) {
      record(0, deformed_relation(game, cfg.task.deformed_slots, dists, cfg.tol), nullptr);
    }

    jm["checks"] = jchecks;
    jmatchups.push_back(jm);
  }

  json meta = metadata_json(cfg);
  meta["method"] = cfg.task.method;
  meta["num_matchups"] = matchups.size();

  json out;
  out["schema_version"] = 1;
  out["metadata"] = meta;
  out["matchups"] = jmatchups;
  json jsummary;
  for (const auto& [kind, a] : agg) {
    json js;
    js["pass"] = a.pass;
    js["total"] = a.total;
    js["max_residual"] = a.max_residual;
    jsummary[kind] = js;
  }
  out["summary"] = jsummary;
  out["pass"] = all;

  if (opt.write_json) {
    const std::string path = join_path(opt.out_dir, "verify.json");
    write_file(path, out.dump(2) + "\n");
    std::cout << "wrote " << path << "\n";
  }
  if (opt.write_csv) {
    std::string full = csv_metadata(meta);
    full += "matchup,player,check,class_id,branch,label,value,residual,ensemble_mass,pass\n";
    full += csv;
    const std::string path = join_path(opt.out_dir, "verify.csv");
    write_file(path, full);
    std::cout << "wrote " << path << "\n";
  }

  std::cout << "verify: " << matchups.size()
            << (matchups.size() == 1 ? " matchup" : " matchups") << "\n";
  for (const auto& [kind, a] : agg) {
    std::cout << "  " << kind << ": " << a.pass << "/" << a.total
              << " entries pass, max residual " << short_double(a.max_residual) << "\n";
  }
  std::cout << (all ? "PASS" : "FAIL") << "\n";
  return all ? 0 : 1;
}

int cmd_catalog(const std::string& name, const std::string& format) {
  std::vector<const CatalogEntry*> selected;
  for (const CatalogEntry& e : catalog()) {
    if (name.empty() || e.name == name) selected.push_back(&e);
  }
  if (selected.empty()) {
    std::cerr << "unknown catalog member " << name << "\n";
    return 2;
  }
  if (format == "json") {
    json arr = json::array();
    for (const CatalogEntry* e : selected) {
      json je;
      je["name"] = e->name;
      je["kind"] = e->kind;
      je["formula"] = e->formula;
      je["relation"] = e->relation;
      je["constraints"] = e->constraints;
      arr.push_back(je);
    }
    std::cout << arr.dump(2) << "\n";
    return 0;
  }
  for (const CatalogEntry* e : selected) {
    std::cout << e->name << "  [" << e->kind << "]\n";
    std::cout << "  formula:     " << e->formula << "\n";
    std::cout << "  relation:    " << e->relation << "\n";
    std::cout << "  constraints: " << e->constraints << "\n";
  }
  return 0;
}

}  // namespace zd::cli
