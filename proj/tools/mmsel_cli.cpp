// Command-line front end: solve one instance, run the mobile simulation,
// verify the graph reduction, or benchmark the selection algorithms.
//
// Machine-readable results go to stdout and are byte-identical for equal
// (arguments, seed); wall-clock timings go to stderr.

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mmsel/common.hpp"
#include "mmsel/exhaustive.hpp"
#include "mmsel/greedy.hpp"
#include "mmsel/instance.hpp"
#include "mmsel/lig.hpp"
#include "mmsel/mcmc.hpp"
#include "mmsel/reduction.hpp"
#include "mmsel/sim.hpp"

namespace {

using nlohmann::json;

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

json selection_to_json(const mmsel::Selection& sel) {
  json arr = json::array();
  for (std::size_t a = 0; a < sel.size(); ++a) {
    if (sel[a]) {
      arr.push_back({{"ap", a}, {"beam", sel[a]->beam}, {"ue", sel[a]->ue}});
    } else {
      arr.push_back(nullptr);
    }
  }
  return arr;
}

void print_selection_text(const mmsel::Selection& sel) {
  for (std::size_t a = 0; a < sel.size(); ++a) {
    if (sel[a]) {
      std::cout << "ap " << a << ": beam " << sel[a]->beam << " -> ue "
                << sel[a]->ue << "\n";
    } else {
      std::cout << "ap " << a << ": silent\n";
    }
  }
}

struct SolveOptions {
  std::string instance_path;
  std::string algorithm = "ngub1";
  std::uint64_t seed = 0;
  int iters = 5000;
  double alpha0 = 1.0;
  double beta0 = 1.0;
  double s_t_dbm = 0.0;
  bool s_t_set = false;
  double i_th_dbm = 0.0;
  bool i_th_set = false;
  bool best_response = false;
  int rounds = -1;
  int j_passes = -1;
  std::string trace_path;
  bool json_out = false;
};

int run_solve(const SolveOptions& opt) {
  const mmsel::Instance inst = mmsel::load_instance_file(opt.instance_path);
  const mmsel::Algorithm algo = mmsel::algorithm_from_string(opt.algorithm);

  mmsel::Selection sel;
  double rate = 0.0;
  switch (algo) {
    case mmsel::Algorithm::Exhaustive: {
      const auto res = mmsel::exhaustive_select(inst);
      sel = res.selection;
      rate = res.rate;
      break;
    }
    case mmsel::Algorithm::Mcmc: {
      mmsel::McmcParams params;
      params.alpha = mmsel::AnnealSchedule::log_anneal(opt.alpha0);
      params.max_iters = opt.iters;
      params.seed = opt.seed;
      params.record_trace = !opt.trace_path.empty();
      const auto res = mmsel::mcmc_select(inst, params);
      sel = res.selection;
      rate = res.rate;
      if (!opt.trace_path.empty()) {
        std::ofstream out(opt.trace_path);
        if (!out) throw std::runtime_error("cannot open " + opt.trace_path);
        res.trace.write_csv(out);
      }
      break;
    }
    case mmsel::Algorithm::Lig: {
      const double s_t = opt.s_t_set ? mmsel::dbm_to_watts(opt.s_t_dbm)
                                     : inst.noise_power;
      const double i_th = opt.i_th_set ? mmsel::dbm_to_watts(opt.i_th_dbm)
                                       : inst.noise_power / 10.0;
      const mmsel::Game game = mmsel::build_game(inst, s_t, i_th);
      mmsel::LigParams params;
      params.beta = mmsel::AnnealSchedule::log_anneal(opt.beta0);
      params.max_iters = opt.iters;
      params.seed = opt.seed;
      params.best_response = opt.best_response;
      params.record_trace = !opt.trace_path.empty();
      const auto res = mmsel::lig_select(game, params);
      sel = res.selection;
      rate = res.psi;
      if (!opt.trace_path.empty()) {
        std::ofstream out(opt.trace_path);
        if (!out) throw std::runtime_error("cannot open " + opt.trace_path);
        res.trace.write_csv(out);
      }
      break;
    }
    case mmsel::Algorithm::Ngub1: {
      mmsel::GreedyParams params;
      params.improvement_rounds = opt.rounds;
      sel = mmsel::ngub1(inst, params);
      rate = mmsel::weighted_sum_rate(inst, sel);
      break;
    }
    case mmsel::Algorithm::Ngub2: {
      mmsel::GreedyParams params;
      params.j_passes = opt.j_passes;
      params.seed = opt.seed;
      sel = mmsel::ngub2(inst, params);
      rate = mmsel::weighted_sum_rate(inst, sel);
      break;
    }
  }

  if (opt.json_out) {
    json out;
    out["algorithm"] = opt.algorithm;
    out["seed"] = opt.seed;
    out["rate_bps"] = rate;
    out["selection"] = selection_to_json(sel);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "algorithm: " << opt.algorithm << "\n";
    std::cout << "rate_bps: " << fmt(rate) << "\n";
    print_selection_text(sel);
  }
  return 0;
}

struct SimulateOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool json_out = false;
};

int run_simulate(const SimulateOptions& opt) {
  mmsel::SimConfig config = mmsel::sim_config_from_file(opt.config_path);
  if (opt.seed_set) config.seed = opt.seed;
  const mmsel::SimReport report = mmsel::run_simulation(config);

  {
    std::ofstream out(opt.out_dir + "/summary.csv");
    if (!out) throw std::runtime_error("cannot write summary.csv");
    mmsel::write_summary_csv(report, out);
  }
  {
    std::ofstream out(opt.out_dir + "/per_ue.csv");
    if (!out) throw std::runtime_error("cannot write per_ue.csv");
    mmsel::write_per_ue_csv(report, out);
  }

  if (opt.json_out) {
    json out;
    out["algorithm"] = mmsel::to_string(config.algorithm);
    out["weight_policy"] = mmsel::to_string(config.weight_policy);
    out["runs"] = config.runs;
    out["slots"] = config.slots;
    out["schedules_per_slot"] = config.schedules_per_slot;
    out["seed"] = config.seed;
    out["mean_throughput_bps"] = report.mu;
    out["std_throughput_bps"] = report.sigma;
    out["jfi"] = report.jfi;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "algorithm: " << mmsel::to_string(config.algorithm) << "\n";
    std::cout << "weight_policy: " << mmsel::to_string(config.weight_policy)
              << "\n";
    std::cout << "runs: " << config.runs << " slots: " << config.slots
              << " schedules_per_slot: " << config.schedules_per_slot << "\n";
    std::cout << "seed: " << config.seed << "\n";
    std::cout << "mean_throughput_bps: " << fmt(report.mu) << "\n";
    std::cout << "std_throughput_bps: " << fmt(report.sigma) << "\n";
    std::cout << "jfi: " << fmt(report.jfi) << "\n";
  }
  std::cerr << "wall_clock_s: " << report.wall_clock_s << "\n";
  return 0;
}

struct VerifyOptions {
  std::string graph_path;
  double n = 1e6;
  double eps = 0.999;
  bool json_out = false;
};

int run_verify(const VerifyOptions& opt) {
  mmsel::Gadget gadget;
  gadget.graph = mmsel::load_graph_file(opt.graph_path);
  gadget.n = opt.n;
  gadget.eps = opt.eps;
  const bool ok = mmsel::verify_reduction(gadget);
  const mmsel::MisResult mis = mmsel::brute_force_mis(gadget.graph);

  if (opt.json_out) {
    json out;
    out["verified"] = ok;
    out["nodes"] = gadget.graph.n;
    out["n"] = gadget.n;
    out["eps"] = gadget.eps;
    out["mis_size"] = mis.size;
    out["mis_count"] = mis.sets.size();
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "verified: " << (ok ? "true" : "false") << "\n";
    std::cout << "nodes: " << gadget.graph.n << "\n";
    std::cout << "mis_size: " << mis.size << "\n";
    std::cout << "mis_count: " << mis.sets.size() << "\n";
  }
  return ok ? 0 : 2;
}

struct BenchOptions {
  int n_aps = 4;
  int n_ues = 10;
  std::string scenario = "InH";
  std::uint64_t seed = 1;
  std::string algorithms = "ngub1,ngub2";
  bool json_out = false;
};

int run_bench(const BenchOptions& opt) {
  mmsel::Scenario sc = mmsel::Scenario::preset(
      mmsel::scenario_kind_from_string(opt.scenario));
  std::mt19937_64 rng(opt.seed);
  const mmsel::Topology topo =
      mmsel::make_grid_topology(sc, opt.n_aps, opt.n_ues, rng);

  mmsel::SimConfig defaults;
  mmsel::Instance inst;
  inst.rss = mmsel::generate_rss(sc, topo, rng);
  inst.bandwidth = defaults.bandwidth_hz;
  inst.noise_power =
      mmsel::dbm_to_watts(-174.0 + 10.0 * std::log10(inst.bandwidth) +
                          defaults.noise_figure_db);
  inst.rss_threshold = inst.noise_power;
  inst.weights.assign(opt.n_ues, 1.0);

  std::vector<std::string> names;
  std::stringstream ss(opt.algorithms);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (!token.empty()) names.push_back(token);
  }
  if (names.empty()) throw std::invalid_argument("no algorithms given");

  json rows = json::array();
  for (const std::string& name : names) {
    mmsel::SimConfig cfg = defaults;
    cfg.algorithm = mmsel::algorithm_from_string(name);
    const auto start = std::chrono::steady_clock::now();
    const mmsel::Selection sel = mmsel::schedule_once(inst, cfg, opt.seed);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const double rate = mmsel::weighted_sum_rate(inst, sel);
    rows.push_back({{"algorithm", name}, {"rate_bps", rate}});
    std::cerr << name << " wall_clock_s: " << seconds << "\n";
  }

  if (opt.json_out) {
    std::cout << rows.dump(2) << "\n";
  } else {
    for (const auto& row : rows) {
      std::cout << row.at("algorithm").get<std::string>() << " rate_bps: "
                << fmt(row.at("rate_bps").get<double>()) << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint beam and user selection toolkit"};
  app.require_subcommand(1);

  SolveOptions solve_opt;
  CLI::App* solve = app.add_subcommand("solve", "Schedule one instance file");
  solve->add_option("--instance", solve_opt.instance_path, "Instance JSON")
      ->required();
  solve->add_option("--algorithm", solve_opt.algorithm,
                    "exhaustive|mcmc|lig|ngub1|ngub2");
  solve->add_option("--seed", solve_opt.seed, "RNG seed");
  solve->add_option("--iters", solve_opt.iters, "Search iterations");
  solve->add_option("--alpha0", solve_opt.alpha0, "Log-schedule multiplier");
  solve->add_option("--beta0", solve_opt.beta0, "Log-schedule multiplier");
  solve->add_option("--lig-s-t-dbm", solve_opt.s_t_dbm,
                    "Player eligibility threshold (default: noise floor)")
      ->trigger_on_parse()
      ->each([&](const std::string&) { solve_opt.s_t_set = true; });
  solve->add_option("--lig-i-th-dbm", solve_opt.i_th_dbm,
                    "Interference coupling threshold (default: noise/10)")
      ->trigger_on_parse()
      ->each([&](const std::string&) { solve_opt.i_th_set = true; });
  solve->add_flag("--lig-best-response", solve_opt.best_response,
                  "Best-response baseline instead of sampling");
  solve->add_option("--rounds", solve_opt.rounds,
                    "Improvement rounds (default 3*n_aps)");
  solve->add_option("--j-passes", solve_opt.j_passes,
                    "Randomized passes (default max(10, n_aps^2))");
  solve->add_option("--trace", solve_opt.trace_path, "Write iteration CSV");
  solve->add_flag("--json", solve_opt.json_out, "JSON output");

  SimulateOptions sim_opt;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Run the mobile-network simulation");
  simulate->add_option("--config", sim_opt.config_path, "Config JSON")
      ->required();
  simulate->add_option("--out-dir", sim_opt.out_dir, "CSV output directory");
  simulate->add_option("--seed", sim_opt.seed, "Override the config seed")
      ->trigger_on_parse()
      ->each([&](const std::string&) { sim_opt.seed_set = true; });
  simulate->add_flag("--json", sim_opt.json_out, "JSON output");

  VerifyOptions verify_opt;
  CLI::App* verify = app.add_subcommand(
      "verify-reduction",
      "Check rate-optimal subsets against maximum independent sets");
  verify->add_option("--graph", verify_opt.graph_path, "Edge-list file")
      ->required();
  verify->add_option("--n", verify_opt.n, "Gadget SNR");
  verify->add_option("--eps", verify_opt.eps, "Gadget interference fraction");
  verify->add_flag("--json", verify_opt.json_out, "JSON output");

  BenchOptions bench_opt;
  CLI::App* bench =
      app.add_subcommand("bench", "Time the algorithms on one generated slot");
  bench->add_option("--n-aps", bench_opt.n_aps, "AP count (perfect square)");
  bench->add_option("--n-ues", bench_opt.n_ues, "UE count");
  bench->add_option("--scenario", bench_opt.scenario, "InH|UMi|UMa|RMa");
  bench->add_option("--seed", bench_opt.seed, "RNG seed");
  bench->add_option("--algorithms", bench_opt.algorithms,
                    "Comma-separated list");
  bench->add_flag("--json", bench_opt.json_out, "JSON output");

  CLI11_PARSE(app, argc, argv);

  const bool json_err = solve_opt.json_out || sim_opt.json_out ||
                        verify_opt.json_out || bench_opt.json_out;
  try {
    if (*solve) return run_solve(solve_opt);
    if (*simulate) return run_simulate(sim_opt);
    if (*verify) return run_verify(verify_opt);
    if (*bench) return run_bench(bench_opt);
  } catch (const std::exception& e) {
    if (json_err) {
      std::cout << json{{"error", e.what()}}.dump() << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return 1;
  }
  return 0;
}
