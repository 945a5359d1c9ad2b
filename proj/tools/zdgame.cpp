#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "cli/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"memory-n zero-determinant strategies: construction, stationary behavior, verification"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string format = "both";
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::string catalog_name;
  std::string catalog_format = "text";

  CLI::App* validate = app.add_subcommand("validate", "check tensor constraints, report violations");
  CLI::App* stationary =
      app.add_subcommand("stationary", "stationary distributions of the configured match-up");
  CLI::App* simulate = app.add_subcommand("simulate", "seeded Monte Carlo play");
  CLI::App* verify =
      app.add_subcommand("verify", "check every relation the configuration promises");
  CLI::App* cat = app.add_subcommand("catalog", "list the builtin strategy members");

  for (CLI::App* sub : {validate, stationary, simulate, verify}) {
    sub->add_option("--config", config_path, "run configuration JSON")->required();
    sub->add_option("--out", out_dir, "output directory (default $ZDGAME_OUT, then .)");
    sub->add_option("--seed", seed, "override the task seed");
    sub->add_option("--tol", tol, "override the relation tolerance");
    sub->add_option("--format", format, "json, csv, or both")
        ->check(CLI::IsMember({"json", "csv", "both"}));
  }
  cat->add_option("name", catalog_name, "print a single member");
  cat->add_option("--format", catalog_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (sub == cat) return zd::cli::cmd_catalog(catalog_name, catalog_format);

  zd::cli::CommandOptions opt;
  if (!out_dir.empty()) {
    opt.out_dir = out_dir;
  } else if (const char* env = std::getenv("ZDGAME_OUT"); env != nullptr && *env != '\0') {
    opt.out_dir = env;
  }
  opt.write_json = format != "csv";
  opt.write_csv = format != "json";

  zd::cli::RunConfig cfg;
  try {
    cfg = zd::cli::load_config(config_path);
  } catch (const zd::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  if (sub->count("--seed") > 0) cfg.task.seed = seed;
  if (sub->count("--tol") > 0) cfg.tol.relation = tol;

  try {
    if (sub == validate) return zd::cli::cmd_validate(cfg, opt);
    if (sub == stationary) return zd::cli::cmd_stationary(cfg, opt);
    if (sub == simulate) return zd::cli::cmd_simulate(cfg, opt);
    return zd::cli::cmd_verify(cfg, opt);
  } catch (const zd::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << " (residual " << e.residual << ")\n";
    return 1;
  } catch (const zd::RangeLimitError& e) {
    std::cerr << "range limit: " << e.what() << "\n";
    return 1;
  } catch (const zd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
