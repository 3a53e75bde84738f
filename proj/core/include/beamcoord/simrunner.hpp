// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "beamcoord/linkeval.hpp"
#include "beamcoord/scenario.hpp"
#include "beamcoord/selection.hpp"

namespace beamcoord {

enum class SweepVariable : std::uint8_t {
  kClusterRadius = 0,
  kErrorRadiusLessInformed = 1,  ///< every observer except the most informed
  kErrorRadiusAll = 2,
};

const char* sweep_name(SweepVariable v);
SweepVariable sweep_from_name(std::string_view name);  // throws on unknown

/// Full experiment description: scenario, strategies, sweep, trial budget
/// and seeding. Defaults mirror the paper-scale setup; desk_preset() is a
/// lighter profile for quick runs.
struct ExperimentConfig {
  ScenarioConfig scenario;
  std::vector<Strategy> strategies{Strategy::kUncoordinated, Strategy::kNaive,
                                   Strategy::kStatistical, Strategy::kRobust};
  SweepVariable sweep = SweepVariable::kErrorRadiusLessInformed;
  std::vector<double> sweep_values{0, 2, 4, 6, 8, 10, 12};
  /// Default error radius per observer (UE and reflector nodes; the BS
  /// node stays exact). Empty means all zero. The sweep overrides these
  /// for the observers it targets.
  std::vector<double> error_radii;
  std::size_t trials = 10000;
  std::size_t monte_carlo_iterations = 64;  ///< M, per coordinated selection
  std::uint64_t seed = 1;
  std::size_t threads = 0;  ///< 0 = hardware concurrency

  void validate() const;
};

ExperimentConfig paper_preset();
ExperimentConfig desk_preset();

/// Parses a flat "key = value" config file ('#' starts a comment; list
/// values are comma-separated). Unknown keys are rejected. Values override
/// the given base config.
ExperimentConfig load_experiment_config(const std::string& path,
                                        ExperimentConfig base);

/// Applies one "key = value" entry; throws std::invalid_argument on
/// unknown keys or malformed values.
void apply_config_entry(ExperimentConfig& cfg, std::string_view key,
                        std::string_view value);

struct ResultRecord {
  std::string strategy;
  std::string sweep_variable;
  double sweep_value = 0.0;
  double mean_rate_per_ue = 0.0;  ///< averaged over trials and UEs
  double std_err = 0.0;           ///< of the per-trial mean over UEs
  std::size_t trials_used = 0;
  double wall_time_s = 0.0;  ///< not part of the CSV schema
};

struct TrialOutcome {
  RateRecord rates;
  BeamAssignment assignment;
  bool skipped = false;  ///< geometry stayed degenerate after 100 retries
};

/// One full pipeline pass for one (sweep value, strategy, trial): scenario
/// draw, beliefs, hierarchical selection (least informed UE first), one
/// channel realization per UE and the ZF SINR evaluation. All randomness
/// derives from (cfg.seed, trial_index), so every strategy sees the same
/// geometry, beliefs and channels for a given trial.
TrialOutcome run_trial(const ExperimentConfig& cfg, double sweep_value,
                       Strategy strategy, std::size_t trial_index);

inline constexpr const char* kCsvHeader =
    "strategy,sweep_variable,sweep_value,mean_rate_per_ue,std_err,trials";

void write_csv_row(std::ostream& out, const ResultRecord& record);

/// Runs trials for every (strategy, sweep value) pair, strategy-major, and
/// aggregates the mean rate per UE. Trials run concurrently; aggregation
/// is a reduction in trial-index order, so results do not depend on the
/// thread count. If csv_path is nonempty the CSV is written incrementally
/// (header first, one flushed row per finished pair). on_result, when set,
/// is called after each row.
std::vector<ResultRecord> run_experiment(
    const ExperimentConfig& cfg, const std::string& csv_path,
    const std::function<void(const ResultRecord&)>& on_result = {});

}  // namespace beamcoord
