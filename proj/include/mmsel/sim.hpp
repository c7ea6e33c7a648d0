#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mmsel/channel.hpp"
#include "mmsel/greedy.hpp"
#include "mmsel/instance.hpp"
#include "mmsel/lig.hpp"
#include "mmsel/mcmc.hpp"

namespace mmsel {

enum class Algorithm { Exhaustive, Mcmc, Lig, Ngub1, Ngub2 };

Algorithm algorithm_from_string(const std::string& name);
std::string to_string(Algorithm algo);

enum class WeightPolicy { Uniform, InverseThroughput };

WeightPolicy weight_policy_from_string(const std::string& name);
std::string to_string(WeightPolicy policy);

/**
 * Mobile-network simulation: `runs` independent drops, each `slots`
 * slots of mobility + fresh RSS, each slot scheduled
 * `schedules_per_slot` times by the chosen algorithm. The inverse-
 * throughput policy reweights every schedule by 1 / (1 byte-equivalent
 * + cumulative bits served), which trades peak rate for fairness.
 */
struct SimConfig {
  Scenario scenario = Scenario::preset(ScenarioKind::InH);
  int n_aps = 4;
  int n_ues = 10;
  Algorithm algorithm = Algorithm::Ngub1;
  WeightPolicy weight_policy = WeightPolicy::Uniform;
  int slots = 2000;
  int schedules_per_slot = 1;
  int runs = 20;
  std::uint64_t seed = 1;
  double ue_speed_m_per_slot = 1.0;
  double bandwidth_hz = 400e6;
  double noise_figure_db = 7.0;
  // Optional override; by default links below the thermal noise floor
  // are treated as unusable.
  std::optional<double> rss_threshold_dbm;

  McmcParams mcmc;      // per-schedule seeds are derived internally
  LigParams lig;
  GreedyParams greedy;
  // Game thresholds in dBm; defaults are the noise floor and a tenth of
  // it (10 dB below).
  std::optional<double> lig_s_t_dbm;
  std::optional<double> lig_i_th_dbm;
  std::uint64_t exhaustive_cap = 1000000;

  double noise_watts() const;
  void validate() const;
};

SimConfig sim_config_from_json(std::istream& in);
SimConfig sim_config_from_file(const std::string& path);

struct SimReport {
  int n_ues = 0;
  int runs = 0;
  std::vector<double> run_throughput;  // per-user throughput of each run
  std::vector<std::vector<double>> run_ue_throughput;  // [run][ue]
  std::vector<double> mu_u;     // mean per-UE throughput over runs
  std::vector<double> sigma_u;  // population std over runs
  double mu = 0.0;              // mean per-user throughput
  double sigma = 0.0;
  double jfi = 0.0;             // fairness of mu_u
  double wall_clock_s = 0.0;    // not part of any CSV
};

/**
 * Runs the simulation. Deterministic for a fixed (config, seed): every
 * run draws from its own seed, so results are independent of the thread
 * count (MMSEL_THREADS, default 1).
 */
SimReport run_simulation(const SimConfig& config);

// CSV schemas (first line carries the schema version):
//   summary.csv: run,per_user_throughput_bps
//   per_ue.csv:  ue,mean_throughput_bps,std_throughput_bps
void write_summary_csv(const SimReport& report, std::ostream& out);
void write_per_ue_csv(const SimReport& report, std::ostream& out);

// Schedules one instance with the configured algorithm; `schedule_seed`
// feeds the randomized algorithms. Exposed for the CLI and tests.
Selection schedule_once(const Instance& inst, const SimConfig& config,
                        std::uint64_t schedule_seed);

}  // namespace mmsel
