#pragma once

#include "hypokinetic/grid.hpp"
#include "hypokinetic/hypo.hpp"
#include "hypokinetic/model.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hypokinetic {

enum class InitialPreset { DensityWave, ShiftedMaxwellian, OddMode };

/// One run configuration.  Fields left unset in a file take the defaults of the
/// selected equilibrium case (see apply_defaults).
struct Scenario
{
  std::string name = "scenario";
  EquilibriumCase equilibrium = EquilibriumCase::Maxwellian;

  // Maxwellian: V = C (1 + x^2)^{k/2};  fast diffusion: V = (1 + x^2)^beta
  double potential_k = 2.0;
  double potential_beta = 1.2;
  std::optional<double> potential_C;  ///< unset: solve for C (Maxwellian)
  bool solve_C = false;
  double fd_k = 3.0;

  std::size_t nx = 0;
  std::size_t nv = 0;
  double lx = 0.0;
  double lv = 0.0;
  VelocityQuadrature v_quadrature = VelocityQuadrature::Uniform;

  double dt = 0.01;
  double t_end = 20.0;
  std::size_t record_every = 1;
  bool transport = true;

  std::optional<double> eps;  ///< unset: optimized
  std::optional<double> a;    ///< unset: optimized
  std::optional<double> lambda;  ///< unset: ledger value
  std::vector<double> theta_grid = default_theta_grid();
  std::size_t c4_samples = 100;
  double gap_safety = 0.99;

  InitialPreset initial = InitialPreset::DensityWave;
  double amplitude = 0.1;

  std::filesystem::path output_directory = "out";
  bool dump_snapshots = false;
  std::size_t snapshot_every = 100;

  std::uint64_t seed = 1;
};

/// Fills the grid fields that are still zero with the defaults of the case.
void apply_defaults(Scenario& s);

/// Throws ValidationError naming the offending field.
void validate(const Scenario& s);

/// Flat "section.key = value" text, '#' comments.  Unknown keys are rejected
/// (ParseError with the line), bad values raise ValidationError.
Scenario parse_scenario(std::istream& is, const std::string& name = "scenario");
Scenario parse_scenario(const std::filesystem::path& path);

/// The inverse of parse_scenario.
std::string to_config_text(const Scenario& s);

struct PresetInfo
{
  std::string name;
  std::string description;
};

const std::vector<PresetInfo>& preset_catalog();
/// Throws ValidationError for unknown names.
Scenario preset(const std::string& name);
std::string list_presets();

/// Unit-mass initial datum; throws ValidationError("initial.amplitude") if not positive.
PhaseField initial_datum(const Scenario& s, const EquilibriumModel& model, const PhaseGrid& grid);

struct CheckResult
{
  std::string name;
  bool passed = false;
  double measured = 0.0;
  std::string relation;  ///< e.g. "<=", ">="
  double bound = 0.0;
};

struct RunSummary
{
  int exit_code = 0;
  std::vector<CheckResult> checks;
  ConstantsLedger ledger;
  std::string message;  ///< error text when exit_code == 2
};

enum class RunMode { Full, CheckOnly };

/// Builds model and grid, certifies hypotheses, computes the constant chain,
/// optionally evolves, and writes trajectory.csv, constants.txt and report.txt
/// into the output directory.  Exit code 0: all checks pass, 1: a check
/// failed, 2: configuration or model error.
RunSummary run_scenario(const Scenario& s, RunMode mode = RunMode::Full);

/// Runs every *.cfg in `dir` concurrently, each into output_root/<stem>.
/// Returns the largest exit code.
int run_batch(const std::filesystem::path& dir, const std::filesystem::path& output_root,
              std::optional<std::uint64_t> seed);

}  // namespace hypokinetic
