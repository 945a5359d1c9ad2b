#include "cli/output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace zd::cli {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::json tolerances_json(const Tolerances& t) {
  nlohmann::json j;
  j["exact"] = t.exact;
  j["relation"] = t.relation;
  j["support_mass"] = t.support_mass;
  j["stationary_sum"] = t.stationary_sum;
  j["stationary_residual"] = t.stationary_residual;
  j["h_relation"] = t.h_relation;
  j["fd_derivative"] = t.fd_derivative;
  j["recognition"] = t.recognition;
  j["power_tol"] = t.power_tol;
  j["power_max_iters"] = t.power_max_iters;
  return j;
}

nlohmann::json metadata_json(const RunConfig& cfg) {
  nlohmann::json m;
  m["config_hash"] = hex64(cfg.config_hash);
  m["version"] = kVersion;
  m["seed"] = cfg.task.seed;
  m["epsilon"] = cfg.task.epsilon;
  m["perturbed"] = cfg.task.epsilon > 0.0;
  m["tolerances"] = tolerances_json(cfg.tol);
  return m;
}

namespace {

std::string scalar_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

std::string csv_metadata(const nlohmann::json& metadata) {
  std::string out;
  for (const auto& [key, value] : metadata.items()) {
    if (value.is_object()) {
      for (const auto& [sub, sv] : value.items()) {
        out += "# " + key + "." + sub + "=" + scalar_text(sv) + "\n";
      }
    } else {
      out += "# " + key + "=" + scalar_text(value) + "\n";
    }
  }
  return out;
}

std::string history_columns(const GameSpec& game, int memory) {
  std::string out;
  for (int m = 1; m <= memory; m++) {
    for (int a = 1; a <= game.num_players(); a++) {
      if (!out.empty()) out += ",";
      out += "p" + std::to_string(a) + "_m" + std::to_string(m);
    }
  }
  return out;
}

std::string history_cells(const HistorySpace& space, const GameSpec& game, std::size_t h) {
  std::string out;
  for (int m = 1; m <= space.memory(); m++) {
    const std::size_t profile = space.profile_at_slot(h, m);
    for (int a = 1; a <= game.num_players(); a++) {
      if (!out.empty()) out += ",";
      out += std::to_string(game.action_of(a, profile));
    }
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out << content;
  if (!out) throw Error("write to " + path + " failed");
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

}  // namespace zd::cli
