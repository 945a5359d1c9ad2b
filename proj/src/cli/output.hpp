#pragma once

#include <cstdint>
#include <string>

#include "cli/config.hpp"
#include "json.hpp"

namespace zd::cli {

std::string hex64(std::uint64_t v);

// Shortest 17-significant-digit form, round-trip safe.
std::string fmt_double(double v);

nlohmann::json tolerances_json(const Tolerances& t);

// Shared report header: config hash, library version, seed, perturbation.
nlohmann::json metadata_json(const RunConfig& cfg);

// "# key=value" comment lines mirroring the metadata, keys sorted, nested
// objects flattened with a dot.
std::string csv_metadata(const nlohmann::json& metadata);

// Flattened history columns, newest slot first: p1_m1,p2_m1,p1_m2,...
std::string history_columns(const GameSpec& game, int memory);
std::string history_cells(const HistorySpace& space, const GameSpec& game, std::size_t h);

void write_file(const std::string& path, const std::string& content);
std::string join_path(const std::string& dir, const std::string& name);

}  // namespace zd::cli
