#include "nlkpp/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "nlkpp/error.hpp"

namespace nlkpp {

using json = nlohmann::ordered_json;

const std::vector<std::string>& report_inputs() {
  static const std::vector<std::string> files = {
      "critical.json", "coeffs.json", "periodic.json", "stability.json",
      "eigsplit.json", "front.json",  "simulate.json"};
  return files;
}

namespace {

json load(const std::filesystem::path& p) {
  std::ifstream is(p);
  try {
    return json::parse(is);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::validation, "corrupt_artifact", p.string() + ": " + e.what());
  }
}

json pick(const json& j, std::initializer_list<const char*> keys) {
  json out = json::object();
  for (const char* k : keys) {
    if (j.contains(k)) out[k] = j[k];
  }
  return out;
}

}  // namespace

std::string build_report(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> absent;
  json in = json::object();
  for (const auto& f : report_inputs()) {
    const fs::path p = fs::path(dir) / f;
    if (fs::exists(p)) {
      in[f.substr(0, f.size() - 5)] = load(p);
    } else {
      absent.push_back(f);
    }
  }
  if (absent.size() == report_inputs().size()) {
    std::string list;
    for (const auto& f : absent) list += (list.empty() ? "" : ", ") + f;
    throw Error(ErrorKind::precondition, "missing_artifact",
                "no run outputs in " + dir + " (absent: " + list + ")");
  }
  const json marker = "absent";
  json r;
  r["directory"] = dir;
  r["absent"] = absent;

  r["critical"] = in.contains("critical")
                      ? pick(in["critical"], {"a", "k_c", "mu_c", "phi_kc", "phi_2kc", "zeta"})
                      : marker;

  if (in.contains("coeffs")) {
    const json& res = in["coeffs"]["residuals"];
    double worst = 0.0;
    for (const auto& [k, v] : res.items()) {
      if (v.is_number()) worst = std::max(worst, v.get<double>());
    }
    r["identities"] = {{"residuals", res},
                       {"max_residual", worst},
                       {"all_below_1e-9", worst < 1e-9}};
  } else {
    r["identities"] = marker;
  }

  r["periodic"] = in.contains("periodic")
                      ? pick(in["periodic"], {"eps", "delta", "Gamma", "residual", "iterations",
                                              "c1", "c1_over_sqrt_Gamma"})
                      : marker;

  r["stability_boundary"] =
      in.contains("stability") ? in["stability"]["boundary"] : marker;

  r["eigsplit"] = in.contains("eigsplit")
                      ? pick(in["eigsplit"], {"s", "s_min", "splitting", "spectral_gap",
                                              "inner_product"})
                      : marker;

  r["front"] = in.contains("front")
                   ? pick(in["front"], {"s", "s_min", "q_star", "chi_plus", "shoot_residual",
                                        "monotone", "max_dVdZ"})
                   : marker;

  if (in.contains("simulate") && in["simulate"].contains("front") &&
      in["simulate"]["front"].is_object()) {
    const json& sim = in["simulate"];
    json cmp;
    cmp["measured_speed"] = sim["front"]["speed"];
    cmp["measured_wake_amplitude"] = sim["front"]["wake_amplitude"];
    if (sim.contains("prediction")) {
      cmp["predicted_speed"] = sim["prediction"]["speed"];
      const double ms = sim["front"]["speed"].get<double>();
      const double ps = sim["prediction"]["speed"].get<double>();
      cmp["speed_rel_error"] = std::abs(ms - ps) / std::abs(ps);
    } else {
      cmp["predicted_speed"] = marker;
    }
    r["front_speed"] = cmp;
  } else {
    r["front_speed"] = marker;
  }
  return r.dump(2);
}

}  // namespace nlkpp
