#pragma once

#include <string>

#include "cli/config.hpp"

namespace zd::cli {

struct CommandOptions {
  std::string out_dir = ".";
  bool write_json = true;
  bool write_csv = true;
};

// Exit codes: 0 success, 1 failed checks or numerical failure. Bad input
// (including anything the library rejects while building) escapes as an
// exception for the caller to map to exit 2.
int cmd_validate(const RunConfig& cfg, const CommandOptions& opt);
int cmd_stationary(const RunConfig& cfg, const CommandOptions& opt);
int cmd_simulate(const RunConfig& cfg, const CommandOptions& opt);
int cmd_verify(const RunConfig& cfg, const CommandOptions& opt);

// name empty: the full listing. Unknown names return 2.
int cmd_catalog(const std::string& name, const std::string& format);

}  // namespace zd::cli
