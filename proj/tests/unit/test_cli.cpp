#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "nlkpp/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream o, e;
  const int c = nlkpp::run_cli(args, o, e);
  return {c, o.str(), e.str()};
}

fs::path fresh(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("nlkpp_cli_" + name);
  fs::remove_all(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}

}  // namespace

TEST_CASE("critical happy path") {
  const auto d = fresh("critical");
  const auto r = run({"critical", "--a", "0.7", "--out", d.string()});
  CHECK(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(std::abs(j["k_c"].get<double>() - 1.262811975365474) < 1e-12);
  for (const char* k : {"a", "k_c", "mu_c", "phi_kc", "phi_2kc", "zeta"}) CHECK(j.contains(k));
  CHECK(fs::exists(d / "critical.json"));
}

TEST_CASE("error paths carry codes and exit statuses") {
  const auto d = fresh("errors").string();
  auto r = run({"critical", "--a", "0.5", "--out", d});
  CHECK(r.code == 2);
  CHECK(r.err.find("[kernel_domain]") != std::string::npos);

  r = run({"front", "--a", "0.7", "--s", "0.1", "--out", d});
  CHECK(r.code == 3);
  CHECK(r.err.find("[speed_below_min]") != std::string::npos);
  CHECK(r.err.find("s_min = 1.39404") != std::string::npos);

  r = run({"bogus"});
  CHECK(r.code == 2);
  CHECK(r.err.find("[unknown_subcommand]") != std::string::npos);

  r = run({"critical", "--a", "abc", "--out", d});
  CHECK(r.code == 2);
  CHECK(r.err.find("[invalid_parameter]") != std::string::npos);

  r = run({"critical", "--a", "0.7", "--out", "/proc/nlkpp/out"});
  CHECK(r.code == 2);
  CHECK(r.err.find("[output_not_writable]") != std::string::npos);

  r = run({"simulate", "--N", "1000", "--out", d});
  CHECK(r.code == 2);
  CHECK(r.err.find("[invalid_grid]") != std::string::npos);
}

TEST_CASE("process exit status") {
  const std::string cmd = std::string(NLKPP_CLI_PATH) + " critical --a 0.5 2>/dev/null >/dev/null";
  const int st = std::system(cmd.c_str());
  CHECK(WIFEXITED(st));
  CHECK(WEXITSTATUS(st) == 2);
}

TEST_CASE("config file merges under explicit flags") {
  const auto d = fresh("config");
  fs::create_directories(d);
  const auto cfg = d / "run.cfg";
  std::ofstream(cfg) << "# shared settings\na = 0.75\neps = 0.05\n";
  auto r = run({"critical", "--config", cfg.string(), "--out", d.string()});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["a"].get<double>() == 0.75);
  r = run({"critical", "--config", cfg.string(), "--a", "0.7", "--out", d.string()});
  CHECK(json::parse(r.out)["a"].get<double>() == 0.7);
  std::ofstream(d / "bad.cfg") << "a 0.7\n";
  r = run({"critical", "--config", (d / "bad.cfg").string(), "--out", d.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("[invalid_config]") != std::string::npos);
}

TEST_CASE("output directory from the environment") {
  const auto d = fresh("env");
  setenv("NLKPP_OUT_DIR", d.string().c_str(), 1);
  CHECK(run({"critical"}).code == 0);
  unsetenv("NLKPP_OUT_DIR");
  CHECK(fs::exists(d / "critical.json"));
}

TEST_CASE("outputs are deterministic") {
  const auto d1 = fresh("det1"), d2 = fresh("det2");
  for (const auto& d : {d1, d2}) {
    CHECK(run({"coeffs", "--out", d.string()}).code == 0);
    CHECK(run({"front", "--out", d.string()}).code == 0);
    CHECK(run({"simulate", "--L", "100", "--N", "256", "--T", "2", "--backend", "elliptic",
               "--out", d.string()}).code == 0);
  }
  for (const char* f : {"coeffs.json", "front.json", "front.csv", "simulate.json", "field.bin",
                        "field.json"}) {
    CHECK(slurp(d1 / f) == slurp(d2 / f));
  }
  const auto side = json::parse(slurp(d1 / "field.json"));
  for (const char* k : {"L", "N", "dt", "stride", "times", "a", "mu", "backend", "ic"}) {
    CHECK(side.contains(k));
  }
  CHECK(side["backend"] == "elliptic");
}

TEST_CASE("report: empty, partial and full directories") {
  const auto empty = fresh("rep_empty");
  fs::create_directories(empty);
  auto r = run({"report", "--dir", empty.string(), "--out", empty.string()});
  CHECK(r.code == 3);
  CHECK(r.err.find("[missing_artifact]") != std::string::npos);
  CHECK(r.err.find("coeffs.json") != std::string::npos);

  const auto part = fresh("rep_part");
  CHECK(run({"critical", "--out", part.string()}).code == 0);
  r = run({"report", "--out", part.string()});
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["identities"] == "absent");
  CHECK(j["stability_boundary"] == "absent");
  CHECK(j["critical"]["mu_c"].get<double>() > 24.0);

  for (std::vector<std::string> a : {std::vector<std::string>{"coeffs"}, {"periodic"}, {"front"},
                                     {"eigsplit"}}) {
    a.push_back("--out");
    a.push_back(part.string());
    CHECK(run(a).code == 0);
  }
  r = run({"report", "--out", part.string()});
  j = json::parse(r.out);
  CHECK(j["identities"]["all_below_1e-9"] == true);
  CHECK(j["identities"]["max_residual"].get<double>() < 1e-9);
  CHECK(fs::exists(part / "summary.json"));
}
