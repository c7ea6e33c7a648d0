#include "mmsel/sim.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "mmsel/common.hpp"
#include "mmsel/exhaustive.hpp"

namespace mmsel {

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "exhaustive") return Algorithm::Exhaustive;
  if (name == "mcmc") return Algorithm::Mcmc;
  if (name == "lig") return Algorithm::Lig;
  if (name == "ngub1") return Algorithm::Ngub1;
  if (name == "ngub2") return Algorithm::Ngub2;
  throw std::invalid_argument("unknown algorithm: " + name);
}

std::string to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::Exhaustive:
      return "exhaustive";
    case Algorithm::Mcmc:
      return "mcmc";
    case Algorithm::Lig:
      return "lig";
    case Algorithm::Ngub1:
      return "ngub1";
    case Algorithm::Ngub2:
      return "ngub2";
  }
  return "?";
}

WeightPolicy weight_policy_from_string(const std::string& name) {
  if (name == "uniform") return WeightPolicy::Uniform;
  if (name == "inverse_throughput") return WeightPolicy::InverseThroughput;
  throw std::invalid_argument("unknown weight policy: " + name);
}

std::string to_string(WeightPolicy policy) {
  return policy == WeightPolicy::Uniform ? "uniform" : "inverse_throughput";
}

double SimConfig::noise_watts() const {
  // Thermal floor: -174 dBm/Hz plus bandwidth and the noise figure.
  return dbm_to_watts(-174.0 + 10.0 * std::log10(bandwidth_hz) +
                      noise_figure_db);
}

void SimConfig::validate() const {
  scenario.validate();
  if (n_aps <= 0 || n_ues <= 0) {
    throw std::invalid_argument("SimConfig: AP/UE counts must be positive");
  }
  if (slots < 1 || schedules_per_slot < 1 || runs < 1) {
    throw std::invalid_argument(
        "SimConfig: slots, schedules_per_slot and runs must be >= 1");
  }
  if (!(bandwidth_hz > 0.0) || ue_speed_m_per_slot < 0.0) {
    throw std::invalid_argument("SimConfig: bandwidth/speed invalid");
  }
}

namespace {

using nlohmann::json;

template <typename T>
void read_if(const json& j, const char* field, T& out) {
  if (j.contains(field)) out = j.at(field).get<T>();
}

}  // namespace

SimConfig sim_config_from_json(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("sim config: ") + e.what());
  }
  SimConfig cfg;
  std::string scenario = "InH";
  double carrier = 60.0;
  read_if(j, "scenario", scenario);
  read_if(j, "carrier_ghz", carrier);
  cfg.scenario = Scenario::preset(scenario_kind_from_string(scenario), carrier);
  read_if(j, "tx_power_dbm", cfg.scenario.tx_power_dbm);
  read_if(j, "n_aps", cfg.n_aps);
  read_if(j, "n_ues", cfg.n_ues);
  if (j.contains("algorithm")) {
    cfg.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
  }
  if (j.contains("weight_policy")) {
    cfg.weight_policy =
        weight_policy_from_string(j.at("weight_policy").get<std::string>());
  }
  read_if(j, "slots", cfg.slots);
  read_if(j, "schedules_per_slot", cfg.schedules_per_slot);
  read_if(j, "runs", cfg.runs);
  read_if(j, "seed", cfg.seed);
  read_if(j, "ue_speed_m_per_slot", cfg.ue_speed_m_per_slot);
  read_if(j, "bandwidth_hz", cfg.bandwidth_hz);
  read_if(j, "noise_figure_db", cfg.noise_figure_db);
  if (j.contains("rss_threshold_dbm") && !j.at("rss_threshold_dbm").is_null()) {
    cfg.rss_threshold_dbm = j.at("rss_threshold_dbm").get<double>();
  }
  if (j.contains("mcmc")) {
    const json& m = j.at("mcmc");
    double alpha0 = 1.0;
    read_if(m, "alpha0", alpha0);
    cfg.mcmc.alpha = AnnealSchedule::log_anneal(alpha0);
    read_if(m, "iters", cfg.mcmc.max_iters);
  }
  if (j.contains("lig")) {
    const json& l = j.at("lig");
    double beta0 = 1.0;
    read_if(l, "beta0", beta0);
    cfg.lig.beta = AnnealSchedule::log_anneal(beta0);
    read_if(l, "iters", cfg.lig.max_iters);
    if (l.contains("s_t_dbm")) cfg.lig_s_t_dbm = l.at("s_t_dbm").get<double>();
    if (l.contains("i_th_dbm")) {
      cfg.lig_i_th_dbm = l.at("i_th_dbm").get<double>();
    }
  }
  if (j.contains("greedy")) {
    const json& g = j.at("greedy");
    read_if(g, "improvement_rounds", cfg.greedy.improvement_rounds);
    read_if(g, "j_passes", cfg.greedy.j_passes);
  }
  cfg.validate();
  return cfg;
}

SimConfig sim_config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open sim config: " + path);
  }
  return sim_config_from_json(in);
}

Selection schedule_once(const Instance& inst, const SimConfig& config,
                        std::uint64_t schedule_seed) {
  switch (config.algorithm) {
    case Algorithm::Exhaustive:
      return exhaustive_select(inst, config.exhaustive_cap).selection;
    case Algorithm::Mcmc: {
      McmcParams params = config.mcmc;
      params.seed = schedule_seed;
      params.record_trace = false;
      return mcmc_select(inst, params).selection;
    }
    case Algorithm::Lig: {
      const double s_t = config.lig_s_t_dbm
                             ? dbm_to_watts(*config.lig_s_t_dbm)
                             : inst.noise_power;
      const double i_th = config.lig_i_th_dbm
                              ? dbm_to_watts(*config.lig_i_th_dbm)
                              : inst.noise_power / 10.0;
      const Game game = build_game(inst, s_t, i_th);
      LigParams params = config.lig;
      params.seed = schedule_seed;
      params.record_trace = false;
      return lig_select(game, params).selection;
    }
    case Algorithm::Ngub1:
      return ngub1(inst, config.greedy);
    case Algorithm::Ngub2: {
      GreedyParams params = config.greedy;
      params.seed = schedule_seed;
      return ngub2(inst, params);
    }
  }
  throw std::logic_error("schedule_once: unhandled algorithm");
}

namespace {

int thread_count() {
  const char* env = std::getenv("MMSEL_THREADS");
  if (!env) return 1;
  const int n = std::atoi(env);
  if (n < 1) {
    throw std::invalid_argument("MMSEL_THREADS must be a positive integer");
  }
  return n;
}

// One independent drop; fills the per-UE throughput row for this run.
std::vector<double> simulate_run(const SimConfig& config, int run) {
  std::seed_seq seq{config.seed, static_cast<std::uint64_t>(run)};
  std::mt19937_64 rng(seq);

  Topology topo =
      make_grid_topology(config.scenario, config.n_aps, config.n_ues, rng);
  const double noise = config.noise_watts();
  const double threshold = config.rss_threshold_dbm
                               ? dbm_to_watts(*config.rss_threshold_dbm)
                               : noise;

  std::vector<double> cumulative(config.n_ues, 0.0);  // bits served
  std::vector<double> accumulated(config.n_ues, 0.0);
  for (int slot = 0; slot < config.slots; ++slot) {
    random_walk_step(topo.ue_pos, config.ue_speed_m_per_slot,
                     config.scenario.arena_edge_m, rng);
    Instance inst;
    inst.rss = generate_rss(config.scenario, topo, rng);
    inst.noise_power = noise;
    inst.bandwidth = config.bandwidth_hz;
    inst.rss_threshold = threshold;
    inst.weights.assign(config.n_ues, 1.0);

    for (int k = 0; k < config.schedules_per_slot; ++k) {
      if (config.weight_policy == WeightPolicy::InverseThroughput) {
        for (int u = 0; u < config.n_ues; ++u) {
          inst.weights[u] = 1.0 / (1.0 + cumulative[u]);
        }
      }
      const std::uint64_t schedule_seed = rng();
      const Selection sel = schedule_once(inst, config, schedule_seed);
      const std::vector<double> rates = per_ue_rates(inst, sel);
      for (int u = 0; u < config.n_ues; ++u) {
        accumulated[u] += rates[u];
        cumulative[u] += rates[u];  // one unit of airtime per schedule
      }
    }
  }
  const double denom =
      static_cast<double>(config.slots) * config.schedules_per_slot;
  for (double& v : accumulated) v /= denom;
  return accumulated;
}

}  // namespace

SimReport run_simulation(const SimConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  SimReport report;
  report.n_ues = config.n_ues;
  report.runs = config.runs;
  report.run_ue_throughput.assign(config.runs, {});

  const int workers = std::min(thread_count(), config.runs);
  if (workers <= 1) {
    for (int r = 0; r < config.runs; ++r) {
      report.run_ue_throughput[r] = simulate_run(config, r);
    }
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        while (true) {
          const int r = next.fetch_add(1);
          if (r >= config.runs) return;
          report.run_ue_throughput[r] = simulate_run(config, r);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  // Aggregates over runs: per-UE means and stds, then the scalar view.
  report.mu_u.assign(config.n_ues, 0.0);
  report.sigma_u.assign(config.n_ues, 0.0);
  for (const auto& row : report.run_ue_throughput) {
    for (int u = 0; u < config.n_ues; ++u) report.mu_u[u] += row[u];
  }
  for (double& v : report.mu_u) v /= config.runs;
  for (const auto& row : report.run_ue_throughput) {
    for (int u = 0; u < config.n_ues; ++u) {
      const double d = row[u] - report.mu_u[u];
      report.sigma_u[u] += d * d;
    }
  }
  for (double& v : report.sigma_u) v = std::sqrt(v / config.runs);

  report.run_throughput.resize(config.runs);
  for (int r = 0; r < config.runs; ++r) {
    double sum = 0.0;
    for (double v : report.run_ue_throughput[r]) sum += v;
    report.run_throughput[r] = sum / config.n_ues;
  }
  report.mu = 0.0;
  for (double v : report.run_throughput) report.mu += v;
  report.mu /= config.runs;
  report.sigma = 0.0;
  for (double v : report.run_throughput) {
    const double d = v - report.mu;
    report.sigma += d * d;
  }
  report.sigma = std::sqrt(report.sigma / config.runs);
  report.jfi = jain_fairness_index(report.mu_u);

  report.wall_clock_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

namespace {

// 17 significant digits: byte-stable and round-trip exact.
std::string csv_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

void write_summary_csv(const SimReport& report, std::ostream& out) {
  out << "schema_version,1\n";
  out << "run,per_user_throughput_bps\n";
  for (int r = 0; r < report.runs; ++r) {
    out << r << ',' << csv_double(report.run_throughput[r]) << '\n';
  }
}

void write_per_ue_csv(const SimReport& report, std::ostream& out) {
  out << "schema_version,1\n";
  out << "ue,mean_throughput_bps,std_throughput_bps\n";
  for (int u = 0; u < report.n_ues; ++u) {
    out << u << ',' << csv_double(report.mu_u[u]) << ','
        << csv_double(report.sigma_u[u]) << '\n';
  }
}

}  // namespace mmsel
