#include "mmsel/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "mmsel/common.hpp"

namespace mmsel {

RssTensor::RssTensor(int beams, int ues, int aps, double fill)
    : n_beams(beams),
      n_ues(ues),
      n_aps(aps),
      s(static_cast<std::size_t>(beams) * ues * aps, fill) {}

void RssTensor::validate() const {
  if (n_beams <= 0 || n_ues <= 0 || n_aps <= 0) {
    throw std::invalid_argument("RssTensor: dimensions must be positive");
  }
  if (s.size() != static_cast<std::size_t>(n_beams) * n_ues * n_aps) {
    throw std::invalid_argument("RssTensor: data size does not match dims");
  }
  for (double v : s) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("RssTensor: entries must be finite and >= 0");
    }
  }
}

void Instance::validate() const {
  rss.validate();
  if (weights.size() != static_cast<std::size_t>(rss.n_ues)) {
    throw std::invalid_argument("Instance: weights size must equal n_ues");
  }
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument("Instance: weights must be finite and >= 0");
    }
  }
  if (!std::isfinite(noise_power) || noise_power <= 0.0) {
    throw std::invalid_argument("Instance: noise power must be positive");
  }
  if (!std::isfinite(bandwidth) || bandwidth <= 0.0) {
    throw std::invalid_argument("Instance: bandwidth must be positive");
  }
  if (!std::isfinite(rss_threshold) || rss_threshold < 0.0) {
    throw std::invalid_argument("Instance: RSS threshold must be >= 0");
  }
}

void validate_selection(const Instance& inst, const Selection& sel) {
  if (sel.size() != static_cast<std::size_t>(inst.n_aps())) {
    throw std::invalid_argument("Selection: one entry per AP required");
  }
  std::unordered_set<int> seen;
  for (const auto& e : sel) {
    if (!e) continue;
    if (e->beam < 0 || e->beam >= inst.n_beams()) {
      throw std::invalid_argument("Selection: beam index out of range");
    }
    if (e->ue < 0 || e->ue >= inst.n_ues()) {
      throw std::invalid_argument("Selection: UE index out of range");
    }
    if (!seen.insert(e->ue).second) {
      throw std::invalid_argument("Selection: a UE is served by two APs");
    }
  }
}

void validate_beam_vector(const Instance& inst, const BeamVector& b) {
  if (b.size() != static_cast<std::size_t>(inst.n_aps())) {
    throw std::invalid_argument("BeamVector: one beam per AP required");
  }
  for (int v : b) {
    if (v < 0 || v >= inst.n_beams()) {
      throw std::invalid_argument("BeamVector: beam index out of range");
    }
  }
}

void validate_ue_vector(const Instance& inst, const UeVector& u) {
  if (u.size() != static_cast<std::size_t>(inst.n_aps())) {
    throw std::invalid_argument("UeVector: one UE per AP required");
  }
  std::unordered_set<int> seen;
  for (int v : u) {
    if (v < 0 || v >= inst.n_ues()) {
      throw std::invalid_argument("UeVector: UE index out of range");
    }
    if (!seen.insert(v).second) {
      throw std::invalid_argument("UeVector: UE indices must be distinct");
    }
  }
}

Selection selection_from_vectors(const BeamVector& b, const UeVector& u) {
  if (b.size() != u.size()) {
    throw std::invalid_argument("selection_from_vectors: size mismatch");
  }
  Selection sel(b.size());
  for (std::size_t a = 0; a < b.size(); ++a) {
    sel[a] = BeamUe{b[a], u[a]};
  }
  return sel;
}

namespace {

// SINR -> rate for one active link of a validated selection.
double link_rate(const Instance& inst, const Selection& sel, int a) {
  const auto& e = *sel[a];
  double interference = 0.0;
  for (int a2 = 0; a2 < inst.n_aps(); ++a2) {
    if (a2 == a || !sel[a2]) continue;
    interference += inst.rss.at(sel[a2]->beam, e.ue, a2);
  }
  const double sinr =
      inst.rss.at(e.beam, e.ue, a) / (inst.noise_power + interference);
  return inst.bandwidth * std::log2(1.0 + sinr);
}

}  // namespace

double weighted_sum_rate(const Instance& inst, const Selection& sel) {
  validate_selection(inst, sel);
  double total = 0.0;
  for (int a = 0; a < inst.n_aps(); ++a) {
    if (!sel[a]) continue;
    total += inst.weights[sel[a]->ue] * link_rate(inst, sel, a);
  }
  return total;
}

double rate_given_vectors(const Instance& inst, const BeamVector& b,
                          const UeVector& u) {
  validate_beam_vector(inst, b);
  validate_ue_vector(inst, u);
  if (inst.n_ues() < inst.n_aps()) {
    throw std::invalid_argument(
        "rate_given_vectors: needs n_ues >= n_aps for an injective UE vector");
  }
  return weighted_sum_rate(inst, selection_from_vectors(b, u));
}

std::vector<double> per_ue_rates(const Instance& inst, const Selection& sel) {
  validate_selection(inst, sel);
  std::vector<double> rates(inst.n_ues(), 0.0);
  for (int a = 0; a < inst.n_aps(); ++a) {
    if (!sel[a]) continue;
    rates[sel[a]->ue] = link_rate(inst, sel, a);
  }
  return rates;
}

double jain_fairness_index(const std::vector<double>& x) {
  if (x.empty()) {
    throw std::invalid_argument("jain_fairness_index: empty vector");
  }
  double sum = 0.0, sumsq = 0.0;
  for (double v : x) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument(
          "jain_fairness_index: entries must be finite and >= 0");
    }
    sum += v;
    sumsq += v * v;
  }
  if (sumsq == 0.0) {
    throw std::invalid_argument("jain_fairness_index: all-zero vector");
  }
  return sum * sum / (static_cast<double>(x.size()) * sumsq);
}

namespace {

using nlohmann::json;

json power_to_json(double watts) {
  if (watts == 0.0) return nullptr;  // dBm of 0 W is -inf; JSON carries null
  return watts_to_dbm(watts);
}

double power_from_json(const json& j, const char* field) {
  if (j.is_null()) return 0.0;
  if (!j.is_number()) {
    throw std::invalid_argument(std::string("instance file: ") + field +
                                " must be a number or null");
  }
  return dbm_to_watts(j.get<double>());
}

}  // namespace

Instance load_instance(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("instance file: ") + e.what());
  }
  for (const char* field :
       {"n_aps", "n_ues", "n_beams", "noise_dbm", "bandwidth_hz", "weights",
        "rss_dbm"}) {
    if (!j.contains(field)) {
      throw std::invalid_argument(std::string("instance file: missing field ") +
                                  field);
    }
  }
  Instance inst;
  const int n_aps = j.at("n_aps").get<int>();
  const int n_ues = j.at("n_ues").get<int>();
  const int n_beams = j.at("n_beams").get<int>();
  if (n_aps <= 0 || n_ues <= 0 || n_beams <= 0) {
    throw std::invalid_argument("instance file: dimensions must be positive");
  }
  inst.rss = RssTensor(n_beams, n_ues, n_aps);
  inst.noise_power = dbm_to_watts(j.at("noise_dbm").get<double>());
  inst.bandwidth = j.at("bandwidth_hz").get<double>();
  inst.rss_threshold = j.contains("rss_threshold_dbm")
                           ? power_from_json(j.at("rss_threshold_dbm"),
                                             "rss_threshold_dbm")
                           : 0.0;
  inst.weights = j.at("weights").get<std::vector<double>>();
  const auto& rss = j.at("rss_dbm");
  if (!rss.is_array() || rss.size() != inst.rss.s.size()) {
    throw std::invalid_argument(
        "instance file: rss_dbm must hold n_beams*n_ues*n_aps entries");
  }
  for (std::size_t i = 0; i < inst.rss.s.size(); ++i) {
    inst.rss.s[i] = power_from_json(rss[i], "rss_dbm");
  }
  inst.validate();
  return inst;
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open instance file: " + path);
  }
  return load_instance(in);
}

void save_instance(const Instance& inst, std::ostream& out) {
  inst.validate();
  json j;
  j["n_aps"] = inst.n_aps();
  j["n_ues"] = inst.n_ues();
  j["n_beams"] = inst.n_beams();
  j["noise_dbm"] = watts_to_dbm(inst.noise_power);
  j["bandwidth_hz"] = inst.bandwidth;
  j["rss_threshold_dbm"] = power_to_json(inst.rss_threshold);
  j["weights"] = inst.weights;
  json rss = json::array();
  for (double v : inst.rss.s) rss.push_back(power_to_json(v));
  j["rss_dbm"] = std::move(rss);
  out << j.dump(2) << "\n";
}

void save_instance_file(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::invalid_argument("cannot open output file: " + path);
  }
  save_instance(inst, out);
}

}  // namespace mmsel
