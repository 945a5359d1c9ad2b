#include "cli/config.hpp"

#include <fstream>
#include <random>
#include <utility>

#include "json.hpp"
#include "zd/catalog.hpp"
#include "zd/random.hpp"

namespace zd::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    fail(where + " is missing \"" + key + "\"");
  }
  return obj.at(key);
}

double as_number(const json& v, const std::string& what) {
  if (!v.is_number()) fail(what + " must be a number");
  return v.get<double>();
}

std::int64_t as_int(const json& v, const std::string& what) {
  if (!v.is_number_integer()) fail(what + " must be an integer");
  return v.get<std::int64_t>();
}

std::uint64_t as_seed(const json& v, const std::string& what) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
  fail(what + " must be a non-negative integer");
}

std::string as_string(const json& v, const std::string& what) {
  if (!v.is_string()) fail(what + " must be a string");
  return v.get<std::string>();
}

std::vector<double> as_doubles(const json& v, const std::string& what) {
  if (!v.is_array()) fail(what + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& el : v) out.push_back(as_number(el, what + " entries"));
  return out;
}

GameSpec parse_game(const json& root, bool* is_pd, PrisonersDilemmaParams* pd) {
  *is_pd = true;
  *pd = PrisonersDilemmaParams{};
  if (!root.contains("game")) return GameSpec::prisoners_dilemma(*pd);
  const json& g = root.at("game");
  if (!g.is_object()) fail("\"game\" must be an object");
  if (g.contains("preset")) {
    if (as_string(g.at("preset"), "game.preset") != "pd") {
      fail("unknown game preset (only \"pd\" exists)");
    }
    PrisonersDilemmaParams p;
    if (g.contains("R")) p.R = as_number(g.at("R"), "game.R");
    if (g.contains("S")) p.S = as_number(g.at("S"), "game.S");
    if (g.contains("T")) p.T = as_number(g.at("T"), "game.T");
    if (g.contains("P")) p.P = as_number(g.at("P"), "game.P");
    p.validate_order();
    *pd = p;
    return GameSpec::prisoners_dilemma(p);
  }
  const json& actions = field(g, "actions", "game");
  const json& payoffs = field(g, "payoffs", "game");
  if (!actions.is_array() || actions.empty()) fail("game.actions must be a non-empty array");
  std::vector<int> acts;
  for (const json& a : actions) acts.push_back(static_cast<int>(as_int(a, "game.actions")));
  if (!payoffs.is_array()) fail("game.payoffs must be an array of per-player rows");
  std::vector<std::vector<double>> pays;
  for (const json& row : payoffs) pays.push_back(as_doubles(row, "game.payoffs rows"));
  *is_pd = false;
  return GameSpec(std::move(acts), std::move(pays));
}

ActionProfile parse_profile(const json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) fail(what + " must be an action array like [1,2]");
  ActionProfile p;
  for (const json& a : v) p.actions.push_back(static_cast<int>(as_int(a, what)));
  return p;
}

std::vector<ActionProfile> parse_profiles(const json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) fail(what + " must be a non-empty array of action profiles");
  std::vector<ActionProfile> out;
  for (const json& el : v) out.push_back(parse_profile(el, what));
  return out;
}

BiasWeights parse_weights(const json& v, const std::string& what) {
  if (!v.is_object()) fail(what + " must be an object with memory and w");
  BiasWeights w;
  w.memory = static_cast<int>(as_int(field(v, "memory", what), what + ".memory"));
  w.w = as_doubles(field(v, "w", what), what + ".w");
  return w;
}

std::vector<SlotObservable> parse_slots(const json& v) {
  if (!v.is_array() || v.empty()) {
    fail("task.deformed_slots must be a non-empty array of slots");
  }
  std::vector<SlotObservable> out;
  for (const json& slot : v) {
    if (!slot.is_array() || slot.empty()) {
      fail("each deformed slot must be a non-empty array of terms");
    }
    SlotObservable so;
    for (const json& term : slot) {
      if (!term.is_object()) fail("deformed terms must be objects");
      PayoffTerm t;
      if (term.contains("coeff")) t.coeff = as_number(term.at("coeff"), "term.coeff");
      if (term.contains("powers")) {
        for (const json& p : term.at("powers")) {
          t.powers.push_back(static_cast<int>(as_int(p, "term.powers")));
        }
      }
      if (term.contains("exp_h")) t.exp_h = as_doubles(term.at("exp_h"), "term.exp_h");
      so.terms.push_back(std::move(t));
    }
    out.push_back(std::move(so));
  }
  return out;
}

// Indicator on the single history (targets[0] newest, ..., targets[n-1] oldest).
BiasWeights indicator_weights(const GameSpec& game, const std::vector<ActionProfile>& targets) {
  const int n = static_cast<int>(targets.size());
  HistorySpace space(game, n);
  std::size_t idx = 0;
  for (const ActionProfile& t : targets) idx = idx * game.num_profiles() + game.profile_index(t);
  BiasWeights w{n, std::vector<double>(space.size(), 0.0)};
  w.w[idx] = 1.0;
  return w;
}

// Indicator on the older slots matching `condition`, any newest state.
BiasWeights condition_weights(const GameSpec& game, const std::vector<ActionProfile>& condition) {
  const int n = static_cast<int>(condition.size()) + 1;
  HistorySpace space(game, n);
  BiasWeights w{n, std::vector<double>(space.size(), 0.0)};
  for (std::size_t h = 0; h < space.size(); h++) {
    bool match = true;
    for (int m = 2; m <= n && match; m++) {
      match = space.profile_at_slot(h, m) == game.profile_index(condition[m - 2]);
    }
    if (match) w.w[h] = 1.0;
  }
  return w;
}

struct BaseSpec {
  PressDysonTensor tensor;
  std::vector<double> alpha;
};

BaseSpec parse_base(const json& v, const GameSpec& game, bool is_pd,
                    const PrisonersDilemmaParams& pd, int player, const std::string& where) {
  if (v.is_string()) {
    if (!is_pd) fail("catalog bases need the pd game preset");
    const std::string name = v.get<std::string>();
    return {builtin(name, pd, 1, player), builtin_alpha(name, pd, player)};
  }
  if (!v.is_object()) fail(where + ".base must be a catalog name or a {c, alpha} object");
  MemoryOneZDSpec spec;
  spec.player = player;
  spec.c = as_doubles(field(v, "c", where + ".base"), where + ".base.c");
  spec.alpha = as_doubles(field(v, "alpha", where + ".base"), where + ".base.alpha");
  return {memory_one_zd(game, spec), spec.alpha};
}

bool padded_core(const FactorSpec& f) {
  for (std::size_t m = 1; m < f.factors.size(); m++) {
    for (double v : f.factors[m]) {
      if (v != 1.0) return false;
    }
  }
  return true;
}

StrategyConfig parse_strategy(const json& s, std::size_t index, const GameSpec& game,
                              bool is_pd, const PrisonersDilemmaParams& pd) {
  const std::string where = "strategies[" + std::to_string(index) + "]";
  if (!s.is_object()) fail(where + " must be an object");
  StrategyConfig out;
  out.player = static_cast<int>(as_int(field(s, "player", where), where + ".player"));
  if (out.player < 1 || out.player > game.num_players()) fail(where + ".player out of range");

  const int kinds = static_cast<int>(s.contains("builtin")) + s.contains("tensor") +
                    s.contains("random") + s.contains("constructor");
  if (kinds != 1) {
    fail(where + " needs exactly one of builtin, tensor, random, constructor");
  }

  if (s.contains("builtin")) {
    out.kind = "builtin";
    const json& b = s.at("builtin");
    out.name = as_string(field(b, "name", where + ".builtin"), where + ".builtin.name");
    const int n =
        b.contains("memory")
            ? static_cast<int>(as_int(b.at("memory"), where + ".builtin.memory"))
            : 1;
    if (n < 1) fail(where + ".builtin.memory must be >= 1");
    if (!is_pd) fail("builtin strategies need the pd game preset");
    out.tensor = from_press_dyson(builtin(out.name, pd, n, out.player));
    if (out.name == "grim") {
      const ActionProfile exploited =
          out.player == 1 ? ActionProfile{{1, 2}} : ActionProfile{{2, 1}};
      out.plan.weights = indicator_weights(game, std::vector<ActionProfile>(n, exploited));
      out.plan.alpha = builtin_alpha("tft", pd, out.player);
      out.plan.expect_degenerate = true;
    } else if (out.name != "repeat") {
      FactorSpec f = builtin_factors(out.name, pd, n, out.player);
      if (padded_core(f)) out.plan.alpha = builtin_alpha(out.name, pd, out.player);
      out.plan.factors = std::move(f);
      if (out.name == "tftn" || out.name == "tftn2") out.plan.family = out.name;
    }
  } else if (s.contains("tensor")) {
    out.kind = "tensor";
    const json& t = s.at("tensor");
    const int n = static_cast<int>(as_int(field(t, "memory", where + ".tensor"),
                                          where + ".tensor.memory"));
    if (n < 1) fail(where + ".tensor.memory must be >= 1");
    const json& rows = field(t, "rows", where + ".tensor");
    HistorySpace space(game, n);
    if (!rows.is_array() || rows.size() != space.size()) {
      fail(where + ".tensor.rows needs one probability row per history (" +
           std::to_string(space.size()) + ")");
    }
    const std::size_t M = static_cast<std::size_t>(game.num_actions(out.player));
    std::vector<double> probs;
    probs.reserve(space.size() * M);
    for (const json& row : rows) {
      std::vector<double> r = as_doubles(row, where + ".tensor.rows");
      if (r.size() != M) fail(where + ".tensor.rows entries need one probability per action");
      probs.insert(probs.end(), r.begin(), r.end());
    }
    out.tensor = make_strategy(game, out.player, n, std::move(probs));
  } else if (s.contains("random")) {
    out.kind = "random";
    const json& r = s.at("random");
    const int n = r.contains("memory")
                      ? static_cast<int>(as_int(r.at("memory"), where + ".random.memory"))
                      : 1;
    if (n < 1) fail(where + ".random.memory must be >= 1");
    const std::uint64_t seed =
        r.contains("seed") ? as_seed(r.at("seed"), where + ".random.seed") : 1;
    const double min_prob =
        r.contains("min_prob") ? as_number(r.at("min_prob"), where + ".random.min_prob") : 0.0;
    std::mt19937_64 rng(seed);
    out.tensor = random_strategy(game, out.player, n, rng, min_prob);
  } else {
    out.kind = "constructor";
    const json& c = s.at("constructor");
    out.name = as_string(field(c, "kind", where + ".constructor"), where + ".constructor.kind");
    const std::string cw = where + ".constructor";
    if (out.name == "memory_one_zd") {
      MemoryOneZDSpec spec;
      spec.player = out.player;
      spec.c = as_doubles(field(c, "c", cw), cw + ".c");
      spec.alpha = as_doubles(field(c, "alpha", cw), cw + ".alpha");
      out.tensor = from_press_dyson(memory_one_zd(game, spec));
      out.plan.alpha = std::move(spec.alpha);
    } else if (out.name == "probability_controlling") {
      BaseSpec base = parse_base(field(c, "base", cw), game, is_pd, pd, out.player, cw);
      std::vector<ActionProfile> targets = parse_profiles(field(c, "targets", cw), cw + ".targets");
      out.tensor = from_press_dyson(probability_controlling(base.tensor, targets));
      out.plan.weights = indicator_weights(game, targets);
      out.plan.alpha = std::move(base.alpha);
      out.plan.expect_degenerate = true;
    } else if (out.name == "biased_zd") {
      BaseSpec base = parse_base(field(c, "base", cw), game, is_pd, pd, out.player, cw);
      BiasWeights w = parse_weights(field(c, "weights", cw), cw + ".weights");
      out.tensor = from_press_dyson(biased_zd(base.tensor, w));
      out.plan.weights = std::move(w);
      out.plan.alpha = std::move(base.alpha);
    } else if (out.name == "conditional_zd") {
      BaseSpec base = parse_base(field(c, "base", cw), game, is_pd, pd, out.player, cw);
      std::vector<ActionProfile> condition =
          parse_profiles(field(c, "condition", cw), cw + ".condition");
      out.tensor = from_press_dyson(conditional_zd(base.tensor, condition));
      out.plan.weights = condition_weights(game, condition);
      out.plan.alpha = std::move(base.alpha);
    } else if (out.name == "factorable_zd") {
      const json& rows = field(c, "factors", cw);
      if (!rows.is_array() || rows.empty()) fail(cw + ".factors must be a non-empty array of rows");
      FactorSpec f;
      f.player = out.player;
      for (const json& row : rows) f.factors.push_back(as_doubles(row, cw + ".factors rows"));
      out.tensor = from_press_dyson(factorable_zd(game, f));
      out.plan.factors = std::move(f);
    } else {
      fail(cw + ".kind \"" + out.name + "\" is unknown");
    }
  }

  if (s.contains("claims")) {
    const json& cl = s.at("claims");
    if (!cl.is_object()) fail(where + ".claims must be an object");
    if (cl.contains("alpha")) {
      out.plan.alpha = as_doubles(cl.at("alpha"), where + ".claims.alpha");
    }
    if (cl.contains("weights")) {
      out.plan.weights = parse_weights(cl.at("weights"), where + ".claims.weights");
    }
    if (cl.contains("factors")) {
      const json& rows = cl.at("factors");
      if (!rows.is_array() || rows.empty()) {
        fail(where + ".claims.factors must be a non-empty array of rows");
      }
      FactorSpec f;
      f.player = out.player;
      for (const json& row : rows) {
        f.factors.push_back(as_doubles(row, where + ".claims.factors rows"));
      }
      out.plan.factors = std::move(f);
    }
  }
  return out;
}

TaskConfig parse_task(const json& root) {
  TaskConfig t;
  if (!root.contains("task")) return t;
  const json& v = root.at("task");
  if (!v.is_object()) fail("\"task\" must be an object");
  if (v.contains("seed")) t.seed = as_seed(v.at("seed"), "task.seed");
  if (v.contains("rounds")) {
    const std::int64_t r = as_int(v.at("rounds"), "task.rounds");
    if (r < 1) fail("task.rounds must be >= 1");
    t.rounds = static_cast<std::size_t>(r);
  }
  if (v.contains("thin")) {
    const std::int64_t r = as_int(v.at("thin"), "task.thin");
    if (r < 0) fail("task.thin must be >= 0");
    t.thin = static_cast<std::size_t>(r);
  }
  if (v.contains("epsilon")) {
    t.epsilon = as_number(v.at("epsilon"), "task.epsilon");
    if (t.epsilon < 0.0 || t.epsilon >= 1.0) fail("task.epsilon must lie in [0, 1)");
  }
  if (v.contains("initial")) {
    const json& init = v.at("initial");
    if (init.is_string()) {
      if (init.get<std::string>() != "uniform") {
        fail("task.initial must be a history index or \"uniform\"");
      }
    } else {
      const std::int64_t i = as_int(init, "task.initial");
      if (i < 0) fail("task.initial must be >= 0");
      t.initial = static_cast<std::size_t>(i);
    }
  }
  if (v.contains("method")) {
    t.method = as_string(v.at("method"), "task.method");
    if (t.method != "exact" && t.method != "power") {
      fail("task.method must be \"exact\" or \"power\"");
    }
  }
  if (v.contains("opponents")) {
    const json& o = v.at("opponents");
    if (!o.is_object()) fail("task.opponents must be an object");
    if (o.contains("count")) {
      const std::int64_t c = as_int(o.at("count"), "task.opponents.count");
      if (c < 0) fail("task.opponents.count must be >= 0");
      t.opponents.count = static_cast<int>(c);
    }
    if (o.contains("memory")) {
      const std::int64_t m = as_int(o.at("memory"), "task.opponents.memory");
      if (m < 1) fail("task.opponents.memory must be >= 1");
      t.opponents.memory = static_cast<int>(m);
    }
    if (o.contains("seed")) t.opponents.seed = as_seed(o.at("seed"), "task.opponents.seed");
    if (o.contains("min_prob")) {
      t.opponents.min_prob = as_number(o.at("min_prob"), "task.opponents.min_prob");
      if (t.opponents.min_prob < 0.0) fail("task.opponents.min_prob must be >= 0");
    }
  }
  if (v.contains("checks")) {
    const json& c = v.at("checks");
    if (!c.is_array()) fail("task.checks must be an array of check names");
    for (const json& name : c) {
      const std::string ck = as_string(name, "task.checks");
      if (ck != "akin" && ck != "biased" && ck != "correlation" && ck != "h_sweep" &&
          ck != "deformed") {
        fail("unknown check \"" + ck + "\"");
      }
      t.checks.push_back(ck);
    }
  }
  if (v.contains("h_grid")) {
    const json& g = v.at("h_grid");
    if (!g.is_array() || g.empty()) fail("task.h_grid must be a non-empty array of h vectors");
    for (const json& row : g) t.h_grid.push_back(as_doubles(row, "task.h_grid rows"));
  }
  if (v.contains("deformed_slots")) t.deformed_slots = parse_slots(v.at("deformed_slots"));
  return t;
}

Tolerances parse_tolerances(const json& root) {
  Tolerances t;
  if (!root.contains("tolerances")) return t;
  const json& v = root.at("tolerances");
  if (!v.is_object()) fail("\"tolerances\" must be an object");
  for (const auto& [key, val] : v.items()) {
    if (key == "exact") {
      t.exact = as_number(val, "tolerances.exact");
    } else if (key == "relation") {
      t.relation = as_number(val, "tolerances.relation");
    } else if (key == "support_mass") {
      t.support_mass = as_number(val, "tolerances.support_mass");
    } else if (key == "stationary_sum") {
      t.stationary_sum = as_number(val, "tolerances.stationary_sum");
    } else if (key == "stationary_residual") {
      t.stationary_residual = as_number(val, "tolerances.stationary_residual");
    } else if (key == "h_relation") {
      t.h_relation = as_number(val, "tolerances.h_relation");
    } else if (key == "fd_derivative") {
      t.fd_derivative = as_number(val, "tolerances.fd_derivative");
    } else if (key == "recognition") {
      t.recognition = as_number(val, "tolerances.recognition");
    } else if (key == "power_tol") {
      t.power_tol = as_number(val, "tolerances.power_tol");
    } else if (key == "power_max_iters") {
      const std::int64_t it = as_int(val, "tolerances.power_max_iters");
      if (it < 1) fail("tolerances.power_max_iters must be >= 1");
      t.power_max_iters = static_cast<std::size_t>(it);
    } else {
      fail("unknown tolerance \"" + key + "\"");
    }
  }
  return t;
}

}  // namespace

std::uint64_t fnv1a(const void* data, std::size_t size) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < size; i++) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open " + path);
  std::string raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  RunConfig cfg;
  cfg.source_path = path;
  cfg.config_hash = fnv1a(raw.data(), raw.size());

  json root;
  try {
    root = json::parse(raw);
  } catch (const json::exception& e) {
    fail(path + " is not valid JSON: " + std::string(e.what()));
  }
  if (!root.is_object()) fail("top level must be an object");
  if (!root.contains("schema_version") ||
      static_cast<int>(as_int(root.at("schema_version"), "schema_version")) != 1) {
    fail("unsupported schema_version (expected 1)");
  }

  cfg.game = parse_game(root, &cfg.game_is_pd, &cfg.pd);
  const json& strategies = field(root, "strategies", "top level");
  if (!strategies.is_array() || strategies.empty()) {
    fail("\"strategies\" must be a non-empty array");
  }
  for (std::size_t i = 0; i < strategies.size(); i++) {
    cfg.strategies.push_back(parse_strategy(strategies[i], i, cfg.game, cfg.game_is_pd, cfg.pd));
  }
  cfg.task = parse_task(root);
  cfg.tol = parse_tolerances(root);
  return cfg;
}

}  // namespace zd::cli
