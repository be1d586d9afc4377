#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(HUBLAX_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("hublax_cli_" + name);
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST_CASE("verify emits passing reports") {
  const Run r = run("verify --u 1 --seed 7 --K 4");
  CHECK(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["seed"] == 7);
  CHECK(j["cutoff_K"] == 4);
  CHECK(j["all_passed"] == true);
  CHECK(j["reports"].size() > 0);
  CHECK(j["reports"][0].contains("identity_name"));
}

TEST_CASE("identical inputs give identical bytes") {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  CHECK(run("verify --seed 3 --K 3 --samples 2 --out " + a.string()).status == 0);
  CHECK(run("verify --seed 3 --K 3 --samples 2 --out " + b.string()).status == 0);
  CHECK(slurp(a / "verify.json") == slurp(b / "verify.json"));
  CHECK(run("commute --n 2 --pairs 3 --out " + a.string()).out == run("commute --n 2 --pairs 3").out);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("ness with checks, lindblad and a rho dump") {
  const fs::path d = scratch("ness");
  const Run r = run("ness --n 4 --gammaL 1 --gammaR 0.5 --u 1 --lindblad --checks --dump-rho rho.bin --out " + d.string());
  CHECK(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(j["driving"]["n"] == 4);
  CHECK(j["driving"]["K"] == 3);
  CHECK(j["passed"] == true);
  CHECK(j["diagnostics"]["lindblad_residual"].get<double>() < 1e-9);
  CHECK(fs::file_size(d / "rho.bin") == 8 + 8 + 256 * 256 * 16 + 8);
  CHECK(fs::exists(d / "ness.json"));
  fs::remove_all(d);
}

TEST_CASE("domain errors and unwritable output") {
  CHECK(run("ness --n 2 --gammaL 0").status == 2);
  CHECK(run("ness --n 1").status == 2);
  CHECK(run("ness --n 2 --out /proc/hublax_no_such_dir").status == 3);
  CHECK(run("oracle --n 4").status == 4);
  CHECK(run("ness --bogus 1").status != 0);
  CHECK(run("").status != 0);
}

TEST_CASE("config file values are overridden by flags") {
  const fs::path d = scratch("cfg");
  fs::create_directories(d);
  std::ofstream(d / "run.toml") << "[ness]\nn = 3\ngammaL = 1.3\nu = 2\n";
  const json a = json::parse(run("--config " + (d / "run.toml").string() + " ness").out);
  CHECK(a["driving"]["n"] == 3);
  CHECK(a["driving"]["gammaL"] == 1.3);
  const json b = json::parse(run("--config " + (d / "run.toml").string() + " ness --n 2").out);
  CHECK(b["driving"]["n"] == 2);
  CHECK(b["driving"]["u"] == 2.0);
  fs::remove_all(d);
}

TEST_CASE("oracle agrees at n = 2") {
  const Run r = run("oracle --n 2 --gammaL 1 --gammaR 0.7 --muL 0.3 --muR -0.4 --u 2");
  CHECK(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(j["null_dimension"] == 1);
  CHECK(j["frobenius_distance"].get<double>() <= 1e-9);
}

TEST_CASE("observe writes csv and plain data") {
  const fs::path d = scratch("observe");
  const Run r = run("observe --n 4 --route transfer --occupation --scaling-n 2,3,4 --out " + d.string());
  CHECK(r.status == 0);
  const std::string csv = slurp(d / "profile.csv");
  CHECK(csv.rfind("site,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  CHECK(fs::exists(d / "currents.csv"));
  CHECK(fs::exists(d / "profile.dat"));
  CHECK(fs::exists(d / "scaling.dat"));
  const json j = json::parse(r.out);
  CHECK(j["scaling"]["fit"]["points"] == 3);
  fs::remove_all(d);
}

TEST_CASE("sweep output order does not depend on the thread count") {
  const std::string args = "sweep --n 2,3 --u 1,2 --gammaR 0.5,1";
  const Run one = run(args + " --threads 1");
  const Run three = run(args + " --threads 3");
  CHECK(one.status == 0);
  CHECK(one.out == three.out);
  const json j = json::parse(one.out);
  CHECK(j["results"].size() == 8);
}
