#include "hypokinetic/errors.hpp"
#include "hypokinetic/scenario.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace hypokinetic;

namespace {

int execute(const std::string& file, const std::string& preset_name, const std::string& out,
            std::optional<std::uint64_t> seed, RunMode mode)
{
  Scenario s;
  try {
    if (!preset_name.empty()) {
      s = preset(preset_name);
    } else if (!file.empty()) {
      s = parse_scenario(std::filesystem::path(file));
    } else {
      std::cerr << "error: give a scenario file or --preset\n";
      return 2;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  if (!out.empty()) s.output_directory = out;
  if (seed) s.seed = *seed;

  const RunSummary r = run_scenario(s, mode);
  if (!r.message.empty()) std::cerr << "error: " << r.message << '\n';
  for (const CheckResult& c : r.checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.measured << ' ' << c.relation << ' '
              << c.bound << '\n';
  }
  std::cout << "output: " << s.output_directory.string() << '\n';
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"hypokinetic: decay to equilibrium of f_t + T f = L f"};
  app.require_subcommand(0, 1);

  std::string out;
  std::optional<std::uint64_t> seed;
  std::string batch;
  app.add_option("--out", out, "output directory");
  app.add_option("--seed", seed, "seed for the random property samples");
  app.add_option("--batch", batch, "run every *.cfg in this directory concurrently");

  std::string run_file, run_preset;
  auto* run_cmd = app.add_subcommand("run", "run a scenario and verify the decay estimates");
  run_cmd->add_option("scenario", run_file, "scenario file");
  run_cmd->add_option("--preset", run_preset, "run a built-in preset instead of a file");

  std::string check_file, check_preset;
  auto* check_cmd = app.add_subcommand("check", "hypotheses and constants only, no evolution");
  check_cmd->add_option("scenario", check_file, "scenario file");
  check_cmd->add_option("--preset", check_preset, "check a built-in preset instead of a file");

  std::string config_name;
  auto* presets_cmd = app.add_subcommand("presets", "list the built-in presets");
  presets_cmd->add_option("--show", config_name, "print the configuration of one preset");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (!batch.empty()) {
    return run_batch(batch, out.empty() ? std::filesystem::path("out") : std::filesystem::path(out), seed);
  }
  if (*presets_cmd) {
    if (!config_name.empty()) {
      try {
        std::cout << to_config_text(preset(config_name));
      } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
      }
      return 0;
    }
    std::cout << list_presets();
    return 0;
  }
  if (*run_cmd) return execute(run_file, run_preset, out, seed, RunMode::Full);
  if (*check_cmd) return execute(check_file, check_preset, out, seed, RunMode::CheckOnly);
  std::cout << app.help();
  return 0;
}
