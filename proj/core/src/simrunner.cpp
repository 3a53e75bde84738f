// SPDX-License-Identifier: Apache-2.0
#include "beamcoord/simrunner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace beamcoord {

namespace {

constexpr int kMaxScenarioRetries = 100;

std::vector<double> observer_radii(const ExperimentConfig& cfg,
                                   double sweep_value) {
  std::vector<double> radii = cfg.error_radii;
  radii.resize(cfg.scenario.num_ues, 0.0);
  switch (cfg.sweep) {
    case SweepVariable::kClusterRadius:
      break;
    case SweepVariable::kErrorRadiusLessInformed:
      for (std::size_t u = 1; u < radii.size(); ++u) radii[u] = sweep_value;
      break;
    case SweepVariable::kErrorRadiusAll:
      for (double& r : radii) r = sweep_value;
      break;
  }
  return radii;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Runs fn(i) for i in [0, count) on the requested number of threads. Work
// items are independent; callers index into preallocated storage, so the
// outcome does not depend on scheduling.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  threads = std::min(threads, count);

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

void ExperimentConfig::validate() const {
  scenario.validate();
  if (strategies.empty()) {
    throw std::invalid_argument("strategies must be nonempty");
  }
  if (sweep_values.empty()) {
    throw std::invalid_argument("sweep_values must be nonempty");
  }
  for (double v : sweep_values) {
    if (v < 0.0) throw std::invalid_argument("sweep values must be >= 0");
  }
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (monte_carlo_iterations < 1) {
    throw std::invalid_argument("monte_carlo_iterations must be >= 1");
  }
  if (error_radii.size() > scenario.num_ues) {
    throw std::invalid_argument("more error radii than UEs");
  }
  for (double r : error_radii) {
    if (r < 0.0) throw std::invalid_argument("error radii must be >= 0");
  }
}

TrialOutcome run_trial(const ExperimentConfig& cfg, double sweep_value,
                       Strategy strategy, std::size_t trial_index) {
  ScenarioConfig scenario = cfg.scenario;
  if (cfg.sweep == SweepVariable::kClusterRadius) {
    scenario.cluster_radius = sweep_value;
  }
  const std::vector<double> radii = observer_radii(cfg, sweep_value);
  const std::size_t num_ues = scenario.num_ues;

  ErrorModel em(num_ues, scenario.num_paths);
  for (std::size_t u = 0; u < num_ues; ++u) {
    em.set_observer_radius(u, radii[u]);
  }

  const Codebook cb_ue = build_codebook(scenario.m_ue, scenario.n_ue,
                                        ArraySide::kUe);
  const Codebook cb_bs = build_codebook(scenario.m_bs, scenario.n_bs,
                                        ArraySide::kBs);

  TrialOutcome out;
  for (int attempt = 0; attempt < kMaxScenarioRetries; ++attempt) {
    try {
      Rng scenario_rng(derive_seed(
          cfg.seed, {stream_tag::kScenario, trial_index,
                     static_cast<std::uint64_t>(attempt)}));
      const std::vector<PositionMatrix> truth =
          sample_scenario(scenario, scenario_rng);
      for (const PositionMatrix& p : truth) angles_from_positions(p);

      Rng belief_rng(derive_seed(cfg.seed, {stream_tag::kBeliefs, trial_index}));
      const std::vector<BeliefSet> beliefs =
          build_beliefs(truth, em, belief_rng);

      SelectionContext base;
      base.beliefs = &beliefs;
      base.config = &scenario;
      base.cb_ue = &cb_ue;
      base.cb_bs = &cb_bs;
      base.monte_carlo_iterations = cfg.monte_carlo_iterations;
      base.noise_power = scenario.noise_power;
      base.seed_base = derive_seed(cfg.seed, {stream_tag::kTrial, trial_index});

      out.assignment.pairs.assign(num_ues, {});
      for (std::size_t w = num_ues; w-- > 0;) {
        out.assignment.pairs[w] = select_beams(base.at_rank(w), strategy);
      }

      std::vector<ChannelRealization> channels;
      channels.reserve(num_ues);
      for (std::size_t u = 0; u < num_ues; ++u) {
        Rng channel_rng(
            derive_seed(cfg.seed, {stream_tag::kChannel, trial_index, u}));
        channels.push_back(draw_channel(truth[u], scenario.path_power_profile,
                                        scenario, channel_rng));
      }

      out.rates = evaluate_sinr(channels, out.assignment, cb_ue, cb_bs,
                                scenario.noise_power);
      out.skipped = false;
      return out;
    } catch (const DegenerateGeometry&) {
      continue;  // resample the scenario
    }
  }
  out.skipped = true;
  return out;
}

void write_csv_row(std::ostream& out, const ResultRecord& record) {
  out << record.strategy << ',' << record.sweep_variable << ','
      << format_double(record.sweep_value) << ','
      << format_double(record.mean_rate_per_ue) << ','
      << format_double(record.std_err) << ',' << record.trials_used << '\n';
}

std::vector<ResultRecord> run_experiment(
    const ExperimentConfig& cfg, const std::string& csv_path,
    const std::function<void(const ResultRecord&)>& on_result) {
  cfg.validate();

  std::ofstream csv;
  if (!csv_path.empty()) {
    csv.open(csv_path, std::ios::trunc);
    if (!csv) {
      throw std::runtime_error("cannot open CSV output: " + csv_path);
    }
    csv << kCsvHeader << '\n' << std::flush;
  }

  std::vector<ResultRecord> records;
  records.reserve(cfg.strategies.size() * cfg.sweep_values.size());

  for (Strategy strategy : cfg.strategies) {
    for (double value : cfg.sweep_values) {
      const auto start = std::chrono::steady_clock::now();

      // One slot per trial; the reduction below runs in index order, so
      // the aggregate does not depend on the thread count.
      std::vector<std::optional<double>> trial_mean(cfg.trials);
      parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
        const TrialOutcome outcome = run_trial(cfg, value, strategy, t);
        if (outcome.skipped) return;
        double sum = 0.0;
        for (double r : outcome.rates.rate) sum += r;
        trial_mean[t] = sum / static_cast<double>(outcome.rates.rate.size());
      });

      std::size_t used = 0;
      double mean = 0.0;
      for (const auto& m : trial_mean) {
        if (m) {
          ++used;
          mean += *m;
        }
      }
      if (used > 0) mean /= static_cast<double>(used);
      double var = 0.0;
      for (const auto& m : trial_mean) {
        if (m) var += (*m - mean) * (*m - mean);
      }
      const double std_err =
          used > 1 ? std::sqrt(var / (static_cast<double>(used - 1) *
                                      static_cast<double>(used)))
                   : 0.0;

      ResultRecord record;
      record.strategy = strategy_name(strategy);
      record.sweep_variable = sweep_name(cfg.sweep);
      record.sweep_value = value;
      record.mean_rate_per_ue = mean;
      record.std_err = std_err;
      record.trials_used = used;
      record.wall_time_s =
          std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                        start)
              .count();
      records.push_back(record);

      if (csv.is_open()) {
        write_csv_row(csv, record);
        csv << std::flush;
        if (!csv) {
          throw std::runtime_error("CSV write failed: " + csv_path);
        }
      }
      if (on_result) on_result(record);
    }
  }
  return records;
}

}  // namespace beamcoord
