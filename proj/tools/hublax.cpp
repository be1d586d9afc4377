#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>
#include <tuple>

#include <CLI11.hpp>

#include "hublax/algebra_verifier.hpp"
#include "hublax/lindblad_oracle.hpp"
#include "hublax/ness_engine.hpp"
#include "hublax/observables.hpp"
#include "hublax/report_io.hpp"
#include "hublax/transfer_commutativity.hpp"

namespace fs = std::filesystem;
using namespace hublax;

namespace {

enum Exit : int {
  kOk = 0,
  kCheckFailed = 1,
  kBadDomain = 2,
  kUnwritable = 3,
  kTooLarge = 4,
  kInconsistent = 5,
};

struct OutputPathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string out;
  double tol = kDefaultTol;
  std::uint64_t seed = 42;
};

struct Driving {
  double gamma_L = 1.0, gamma_R = 1.0, mu_L = 0.0, mu_R = 0.0, u = 1.0;
  int n = 2;
  int K = 0;

  DrivingConfig cfg() const { return {gamma_L, gamma_R, mu_L, mu_R, u, n}; }
};

void add_common(CLI::App* sub, Common& c, bool with_seed) {
  sub->add_option("--out", c.out, "Directory for output files (created if missing)");
  sub->add_option("--tol", c.tol, "Relative residual tolerance")->capture_default_str();
  if (with_seed) sub->add_option("--seed", c.seed, "Sampling seed")->capture_default_str();
}

void add_driving(CLI::App* sub, Driving& d) {
  sub->add_option("--n", d.n, "Number of sites")->capture_default_str();
  sub->add_option("--gammaL", d.gamma_L, "Left source rate")->capture_default_str();
  sub->add_option("--gammaR", d.gamma_R, "Right sink rate")->capture_default_str();
  sub->add_option("--muL", d.mu_L, "Left boundary chemical potential")->capture_default_str();
  sub->add_option("--muR", d.mu_R, "Right boundary chemical potential")->capture_default_str();
  sub->add_option("--u", d.u, "Interaction u = U / 2t")->capture_default_str();
  sub->add_option("--K", d.K, "Auxiliary cutoff (0: floor(n/2) + 1)")->capture_default_str();
}

fs::path prepare_out(const std::string& dir) {
  if (dir.empty()) return {};
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path probe = fs::path(dir) / ".hublax_write_probe";
  std::ofstream os(probe);
  if (ec || !os) throw OutputPathError("output directory '" + dir + "' is not writable");
  os.close();
  fs::remove(probe, ec);
  return fs::path(dir);
}

void write_text(const fs::path& dir, const std::string& name, const std::string& text) {
  if (dir.empty()) return;
  std::ofstream os(dir / name);
  if (!os) throw OutputPathError("cannot write '" + (dir / name).string() + "'");
  os << text;
}

json envelope(const std::string& command, const Common& c) {
  return json{{"schema_version", kSchemaVersion}, {"command", command}, {"tol", c.tol}};
}

int emit(const fs::path& dir, const std::string& command, const json& doc) {
  const std::string text = doc.dump(2) + "\n";
  std::cout << text;
  write_text(dir, command + ".json", text);
  return kOk;
}

json driving_echo(const DrivingConfig& cfg, int K) {
  const DrivingParams p = map_driving_to_params(cfg);
  json j = cfg;
  j["K"] = K;
  j["lambda"] = complex_json(p.lambda);
  j["omega"] = complex_json(p.omega);
  j["eta"] = p.eta;
  return j;
}

int run_verify(const Common& c, std::optional<double> u_fixed, int K, int samples) {
  const fs::path dir = prepare_out(c.out);
  std::vector<LaxParams> points = sample_params(c.seed, samples);
  if (u_fixed)
    for (auto& p : points) p.u = *u_fixed;
  // Degenerate points: lambda = 0 and u = 0.
  LaxParams zero_lambda = points.front();
  zero_lambda.lambda = 0.0;
  LaxParams zero_u = points.front();
  zero_u.u = 0.0;
  points.push_back(zero_lambda);
  points.push_back(zero_u);

  json doc = envelope("verify", c);
  doc["seed"] = c.seed;
  doc["cutoff_K"] = K;
  doc["build_cutoff"] = K + kEdgeMargin;
  json reports = json::array();
  bool ok = true;
  for (const auto& p : points) {
    for (const auto& r : verify_params(p, K, c.tol)) {
      ok = ok && r.passed;
      reports.push_back(r);
    }
  }
  doc["reports"] = reports;
  doc["all_passed"] = ok;
  emit(dir, "verify", doc);
  return ok ? kOk : kCheckFailed;
}

int run_ness(const Common& c, const Driving& d, bool lindblad, bool checks, const std::string& dump) {
  const fs::path dir = prepare_out(c.out);
  const DrivingConfig cfg = d.cfg();
  cfg.validate();
  const NessResult res = build_ness(cfg, d.K, lindblad);
  const auto& diag = res.diagnostics;

  json doc = envelope("ness", c);
  doc["driving"] = driving_echo(cfg, res.cutoff_K);
  doc["diagnostics"] = diag;
  bool ok = diag.trace_error <= 1e-12 && diag.hermiticity <= c.tol && diag.min_eigenvalue >= -c.tol;
  if (diag.lindblad_residual) ok = ok && *diag.lindblad_residual <= c.tol;
  if (checks) {
    const DoubleLax dl = build_double_lax(cfg, res.cutoff_K);
    auto [left, right] = check_boundary_conditions(dl, cfg, c.tol);
    const ResidualReport tele = check_telescoping(dl, cfg.n_sites, c.tol);
    doc["checks"] = json::array({left, right, tele});
    ok = ok && left.passed && right.passed && tele.passed;
  }
  doc["passed"] = ok;
  if (!dump.empty()) {
    const fs::path target = dir.empty() ? fs::path(dump) : dir / dump;
    try {
      write_rho_binary(target.string(), DenseMatrix(res.rho));
    } catch (const std::runtime_error& e) {
      throw OutputPathError(e.what());
    }
    doc["rho_dump"] = target.string();
  }
  emit(dir, "ness", doc);
  return ok ? kOk : kCheckFailed;
}

int run_oracle(const Common& c, const Driving& d) {
  const fs::path dir = prepare_out(c.out);
  const DrivingConfig cfg = d.cfg();
  cfg.validate();
  if (cfg.n_sites > kOracleMaxSites)
    throw SizeRefusal("oracle is limited to n <= " + std::to_string(kOracleMaxSites));
  const LindbladSpec spec = make_lindblad_spec(cfg);
  const OracleResult oracle = fixed_point_oracle(spec);
  const NessResult ness = build_ness(cfg, d.K);
  const DenseMatrix mpo(ness.rho);
  const double dist = (oracle.rho - mpo).norm();

  json doc = envelope("oracle", c);
  doc["driving"] = driving_echo(cfg, ness.cutoff_K);
  doc["null_dimension"] = oracle.null_dimension;
  doc["sigma_max"] = oracle.sigma_max;
  doc["smallest_singular_values"] = oracle.smallest_singular_values;
  doc["frobenius_distance"] = dist;
  doc["passed"] = dist <= 1e-9;
  emit(dir, "oracle", doc);
  return dist <= 1e-9 ? kOk : kCheckFailed;
}

std::string profile_csv(const ObservableSet& o) {
  std::ostringstream os;
  os.precision(17);
  os << "site,sigma_z,tau_z\n";
  for (std::size_t i = 0; i < o.densities.size(); ++i)
    os << i + 1 << "," << o.densities[i][0] << "," << o.densities[i][1] << "\n";
  return os.str();
}

std::string currents_csv(const ObservableSet& o) {
  std::ostringstream os;
  os.precision(17);
  os << "bond,J_sigma,J_tau\n";
  for (std::size_t i = 0; i < o.currents.size(); ++i)
    os << i + 1 << "," << o.currents[i][0] << "," << o.currents[i][1] << "\n";
  return os.str();
}

int run_observe(const Common& c, const Driving& d, std::string route, bool occupation,
                const std::vector<int>& scaling_n) {
  const fs::path dir = prepare_out(c.out);
  const DrivingConfig cfg = d.cfg();
  cfg.validate();
  if (route == "auto") route = cfg.n_sites <= 5 ? "dense" : "transfer";
  const ObservableSet obs =
      route == "dense" ? profile_and_currents(build_ness(cfg, d.K)) : profile_and_currents_transfer(cfg, d.K);

  json doc = envelope("observe", c);
  doc["driving"] = driving_echo(cfg, d.K > 0 ? d.K : exact_cutoff(cfg.n_sites));
  doc["observables"] = obs;
  std::vector<double> sz;
  for (const auto& p : obs.densities) sz.push_back(p[0]);
  doc["cosine_fit_sigma"] = cosine_fit(sz);
  if (occupation) {
    json occ = json::array();
    for (const auto& p : obs.densities) occ.push_back({(p[0] + 1.0) / 2.0, (p[1] + 1.0) / 2.0});
    doc["occupation"] = occ;
  }
  bool ok = obs.current_uniformity <= 1e-9 && obs.max_imag <= c.tol;

  std::ostringstream scaling_dat;
  scaling_dat.precision(17);
  if (!scaling_n.empty()) {
    std::vector<std::pair<double, double>> series;
    json pts = json::array();
    for (int n : scaling_n) {
      DrivingConfig cn = cfg;
      cn.n_sites = n;
      const ObservableSet o = profile_and_currents_transfer(cn);
      series.emplace_back(n, o.currents.front()[0]);
      pts.push_back({{"n", n}, {"J_sigma", o.currents.front()[0]}, {"uniformity", o.current_uniformity}});
      scaling_dat << n << " " << o.currents.front()[0] << "\n";
    }
    doc["scaling"] = {{"series", pts}, {"fit", scaling_fit(series)}};
  }
  doc["passed"] = ok;

  write_text(dir, "profile.csv", profile_csv(obs));
  write_text(dir, "currents.csv", currents_csv(obs));
  std::ostringstream prof;
  prof.precision(17);
  prof << "# site sigma_z tau_z\n";
  for (std::size_t i = 0; i < obs.densities.size(); ++i)
    prof << i + 1 << " " << obs.densities[i][0] << " " << obs.densities[i][1] << "\n";
  write_text(dir, "profile.dat", prof.str());
  if (!scaling_n.empty()) write_text(dir, "scaling.dat", "# n J_sigma\n" + scaling_dat.str());
  emit(dir, "observe", doc);
  return ok ? kOk : kCheckFailed;
}

int run_commute(const Common& c, int n, double u, int pairs, int K) {
  const fs::path dir = prepare_out(c.out);
  if (n < 1) throw DomainError("commute needs n >= 1");
  const auto reports = check_commutativity(n, u, sample_pairs(c.seed, pairs), K, c.tol);
  json doc = envelope("commute", c);
  doc["seed"] = c.seed;
  doc["n"] = n;
  doc["u"] = u;
  doc["cutoff_K"] = K > 0 ? K : exact_cutoff(n);
  doc["tier"] = "conjecture";
  doc["reports"] = reports;
  double worst = 0.0;
  for (const auto& r : reports) worst = std::max(worst, r.relative());
  doc["max_relative"] = worst;
  doc["all_passed"] = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
  emit(dir, "commute", doc);
  return kOk;  // conjecture tier never fails the command
}

int run_sweep(const Common& c, const std::vector<int>& ns, const std::vector<double>& us,
              const std::vector<double>& gls, const std::vector<double>& grs, double mu_L, double mu_R,
              unsigned threads) {
  const fs::path dir = prepare_out(c.out);
  std::vector<DrivingConfig> configs;
  for (int n : ns)
    for (double u : us)
      for (double gl : gls)
        for (double gr : grs) configs.push_back({gl, gr, mu_L, mu_R, u, n});
  for (const auto& cfg : configs) cfg.validate();
  auto key = [](const DrivingConfig& x) {
    return std::make_tuple(x.u, x.gamma_L, x.gamma_R, x.mu_L, x.mu_R, x.n_sites);
  };
  std::sort(configs.begin(), configs.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });

  std::vector<ObservableSet> results(configs.size());
  std::vector<std::string> errors(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        results[i] = profile_and_currents_transfer(configs[i]);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(configs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  json doc = envelope("sweep", c);
  json rows = json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "n,u,gammaL,gammaR,muL,muR,J_sigma,J_tau,uniformity\n";
  bool ok = true;
  std::map<std::tuple<double, double, double, double, double>, std::vector<std::pair<double, double>>> groups;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const auto& cfg = configs[i];
    if (!errors[i].empty()) {
      rows.push_back({{"driving", cfg}, {"error", errors[i]}});
      ok = false;
      continue;
    }
    const auto& o = results[i];
    const double js = o.currents.front()[0], jt = o.currents.front()[1];
    rows.push_back({{"driving", cfg}, {"J_sigma", js}, {"J_tau", jt}, {"uniformity", o.current_uniformity}});
    ok = ok && o.current_uniformity <= 1e-9;
    csv << cfg.n_sites << "," << cfg.u << "," << cfg.gamma_L << "," << cfg.gamma_R << "," << cfg.mu_L << ","
        << cfg.mu_R << "," << js << "," << jt << "," << o.current_uniformity << "\n";
    groups[{cfg.u, cfg.gamma_L, cfg.gamma_R, cfg.mu_L, cfg.mu_R}].emplace_back(cfg.n_sites, js);
  }
  json fits = json::array();
  for (const auto& [g, series] : groups) {
    if (series.size() < 3) continue;
    json f = {{"u", std::get<0>(g)}, {"gammaL", std::get<1>(g)}, {"gammaR", std::get<2>(g)},
              {"muL", std::get<3>(g)}, {"muR", std::get<4>(g)}};
    try {
      f["fit"] = scaling_fit(series);
    } catch (const DomainError& e) {
      f["fit_error"] = e.what();
    }
    fits.push_back(f);
  }
  doc["results"] = rows;
  doc["scaling_fits"] = fits;
  doc["passed"] = ok;
  write_text(dir, "sweep.csv", csv.str());
  emit(dir, "sweep", doc);
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lax representation and boundary-driven steady state of the 1D Hubbard chain"};
  app.set_config("--config", "", "Key-value (TOML/INI) config file; command-line flags take precedence");
  app.require_subcommand(1);

  Common common;
  Driving driving;

  auto* verify = app.add_subcommand("verify", "Check the Lax algebra identities at random parameters");
  add_common(verify, common, true);
  std::optional<double> verify_u;
  int verify_K = 4, verify_samples = 5;
  verify->add_option("--u", verify_u, "Fix u for every sample");
  verify->add_option("--K", verify_K, "Levels checked (operators built at K + 2)")->capture_default_str();
  verify->add_option("--samples", verify_samples, "Random parameter points")->capture_default_str();

  auto* ness = app.add_subcommand("ness", "Build the steady state from the Lax MPO");
  add_common(ness, common, false);
  add_driving(ness, driving);
  bool ness_lindblad = false, ness_checks = false;
  std::string ness_dump;
  ness->add_flag("--lindblad", ness_lindblad, "Also report |L rho| / |rho|");
  ness->add_flag("--checks", ness_checks, "Also run the boundary and telescoping checks");
  ness->add_option("--dump-rho", ness_dump, "Write rho as a binary file (relative to --out)");

  auto* oracle = app.add_subcommand("oracle", "Compare with the dense Lindblad null space (n <= 3)");
  add_common(oracle, common, false);
  add_driving(oracle, driving);

  auto* observe = app.add_subcommand("observe", "Density profile, currents and scaling");
  add_common(observe, common, false);
  add_driving(observe, driving);
  std::string route = "auto";
  bool occupation = false;
  std::vector<int> scaling_n;
  observe->add_option("--route", route, "dense, transfer or auto")
      ->check(CLI::IsMember({"auto", "dense", "transfer"}))
      ->capture_default_str();
  observe->add_flag("--occupation", occupation, "Also report (1 + <s^z>) / 2");
  observe->add_option("--scaling-n", scaling_n, "Chain lengths for the current scaling fit")->delimiter(',');

  auto* commute = app.add_subcommand("commute", "Commutator of transfer matrices at random parameter pairs");
  add_common(commute, common, true);
  int commute_n = 3, commute_pairs = 20, commute_K = 0;
  double commute_u = 1.0;
  commute->add_option("--n", commute_n, "Number of sites")->capture_default_str();
  commute->add_option("--u", commute_u, "Interaction")->capture_default_str();
  commute->add_option("--pairs", commute_pairs, "Random pairs")->capture_default_str();
  commute->add_option("--K", commute_K, "Auxiliary cutoff (0: auto)")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Currents over a grid of configurations on a worker pool");
  add_common(sweep, common, false);
  std::vector<int> sweep_n{4, 5, 6};
  std::vector<double> sweep_u{1.0}, sweep_gl{1.0}, sweep_gr{1.0};
  double sweep_muL = 0.0, sweep_muR = 0.0;
  unsigned sweep_threads = std::max(1u, std::thread::hardware_concurrency());
  sweep->add_option("--n", sweep_n, "Chain lengths")->delimiter(',')->capture_default_str();
  sweep->add_option("--u", sweep_u, "Interactions")->delimiter(',')->capture_default_str();
  sweep->add_option("--gammaL", sweep_gl, "Left rates")->delimiter(',')->capture_default_str();
  sweep->add_option("--gammaR", sweep_gr, "Right rates")->delimiter(',')->capture_default_str();
  sweep->add_option("--muL", sweep_muL, "Left chemical potential")->capture_default_str();
  sweep->add_option("--muR", sweep_muR, "Right chemical potential")->capture_default_str();
  sweep->add_option("--threads", sweep_threads, "Worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*verify) return run_verify(common, verify_u, verify_K, verify_samples);
    if (*ness) return run_ness(common, driving, ness_lindblad, ness_checks, ness_dump);
    if (*oracle) return run_oracle(common, driving);
    if (*observe) return run_observe(common, driving, route, occupation, scaling_n);
    if (*commute) return run_commute(common, commute_n, commute_u, commute_pairs, commute_K);
    if (*sweep) return run_sweep(common, sweep_n, sweep_u, sweep_gl, sweep_gr, sweep_muL, sweep_muR, sweep_threads);
  } catch (const DomainError& e) {
    std::cerr << "invalid parameter: " << e.what() << "\n";
    return kBadDomain;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kBadDomain;
  } catch (const OutputPathError& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return kUnwritable;
  } catch (const SizeRefusal& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kTooLarge;
  } catch (const std::runtime_error& e) {
    std::cerr << "numerical inconsistency: " << e.what() << "\n";
    return kInconsistent;
  }
  return kOk;
}
