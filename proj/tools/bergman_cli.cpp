#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bergman/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Truncated Toeplitz operators on weighted Bergman spaces of the ball"};
  app.require_subcommand(1, 1);

  std::string config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  const std::pair<const char*, const char*> commands[] = {
      {"build", "Write one operator file per symbol and lambda"},
      {"verify", "Run the structural checks and write report.json"},
      {"trace-table", "Write block traces as CSV"},
      {"sequence", "Write normalized trace sequences (k = (n))"},
      {"witness", "Find the blocks where configured pairs fail to commute"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "Output directory");
    sub->add_option("--seed", seed, "Run seed");
    sub->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : bergman::kExitConfig;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  return bergman::run_command(name, config, {out, seed, jobs}, std::cout, std::cerr);
}
