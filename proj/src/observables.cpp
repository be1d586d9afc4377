#include "hublax/observables.hpp"

#include <cmath>
#include <numbers>

#include "hublax/linalg.hpp"
#include "hublax/mpo.hpp"

namespace hublax {

namespace {

const Complex kI(0.0, 1.0);

double fit_r2(const Eigen::VectorXd& y, const Eigen::VectorXd& pred) {
  const double mean = y.mean();
  const double ss_tot = (y.array() - mean).square().sum();
  const double ss_res = (y - pred).squaredNorm();
  return ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
}

}  // namespace

Complex expectation(const PhysicalOperator& rho, const PhysicalOperator& obs) {
  linalg::require_same_square(rho, obs, "expectation");
  return rho.cwiseProduct(PhysicalOperator(obs.transpose())).sum();
}

PhysicalOperator current_operator(const PhysicalSpace& space, int j, Species species) {
  if (j < 1 || j >= space.n_sites) throw DomainError("bond " + std::to_string(j) + " out of range 1.." +
                                                     std::to_string(space.n_sites - 1));
  const PhysicalOperator a = site_operator(space, j, species, Pauli::Plus) *
                             site_operator(space, j + 1, species, Pauli::Minus);
  return PhysicalOperator(4.0 * kI * (a - PhysicalOperator(a.adjoint())));
}

double current_uniformity(const std::vector<std::array<double, 2>>& currents) {
  double worst = 0.0;
  for (std::size_t s = 0; s < 2; ++s) {
    if (currents.empty()) break;
    const double ref = currents.front()[s];
    for (const auto& c : currents) {
      const double diff = std::abs(c[s] - ref);
      worst = std::max(worst, ref != 0.0 ? diff / std::abs(ref) : diff);
    }
  }
  return worst;
}

ObservableSet profile_and_currents(const NessResult& ness) {
  const int n = ness.cfg.n_sites;
  const PhysicalSpace space{n};
  ObservableSet out;
  out.cfg = ness.cfg;
  out.route = "dense";
  auto real = [&](Complex z) {
    out.max_imag = std::max(out.max_imag, std::abs(z.imag()));
    return z.real();
  };
  for (int j = 1; j <= n; ++j) {
    out.densities.push_back({real(expectation(ness.rho, site_operator(space, j, Species::Sigma, Pauli::Z))),
                             real(expectation(ness.rho, site_operator(space, j, Species::Tau, Pauli::Z)))});
  }
  for (int j = 1; j < n; ++j) {
    out.currents.push_back({real(expectation(ness.rho, current_operator(space, j, Species::Sigma))),
                            real(expectation(ness.rho, current_operator(space, j, Species::Tau)))});
  }
  out.current_uniformity = current_uniformity(out.currents);
  return out;
}

ObservableSet profile_and_currents_transfer(const DrivingConfig& cfg, int K) {
  cfg.validate();
  const int n = cfg.n_sites;
  const int cutoff = K > 0 ? K : exact_cutoff(n);
  const LaxParams p = lax_params(cfg);
  const LaxFamily fam = build_family(cutoff, p);
  const LaxFamily conj = build_family(cutoff, conjugate(p));
  const LocalOperator M1 = filter_local(map_driving_to_params(cfg).eta);
  auto expect = [&](const std::map<int, LocalOperator>& ops) { return transfer_expectation(fam, conj, n, M1, ops); };
  const Complex Z = expect({});

  ObservableSet out;
  out.cfg = cfg;
  out.route = "transfer";
  auto real = [&](Complex z) {
    out.max_imag = std::max(out.max_imag, std::abs(z.imag()));
    return z.real();
  };
  const Species species[2] = {Species::Sigma, Species::Tau};
  for (int j = 1; j <= n; ++j) {
    std::array<double, 2> d{};
    for (int s = 0; s < 2; ++s) d[s] = real(expect({{j, local_operator(species[s], Pauli::Z)}}) / Z);
    out.densities.push_back(d);
  }
  for (int j = 1; j < n; ++j) {
    std::array<double, 2> c{};
    for (int s = 0; s < 2; ++s) {
      const LocalOperator up = local_operator(species[s], Pauli::Plus);
      const LocalOperator dn = local_operator(species[s], Pauli::Minus);
      const Complex a = expect({{j, up}, {j + 1, dn}});
      const Complex b = expect({{j, dn}, {j + 1, up}});
      c[s] = real(4.0 * kI * (a - b) / Z);
    }
    out.currents.push_back(c);
  }
  out.current_uniformity = current_uniformity(out.currents);
  return out;
}

ScalingFit scaling_fit(const std::vector<std::pair<double, double>>& series) {
  if (series.size() < 3) throw DomainError("scaling fit needs at least 3 points");
  const bool positive = series.front().second > 0.0;
  for (const auto& [n, J] : series) {
    if (J == 0.0 || (J > 0.0) != positive) throw DomainError("current changes sign across the series; fit refused");
    if (n <= 0.0) throw DomainError("chain lengths must be positive");
  }
  const auto m = static_cast<Index>(series.size());
  Eigen::MatrixXd A(m, 2);
  Eigen::VectorXd y(m);
  for (Index i = 0; i < m; ++i) {
    A(i, 0) = std::log(series[static_cast<std::size_t>(i)].first);
    A(i, 1) = 1.0;
    y(i) = std::log(std::abs(series[static_cast<std::size_t>(i)].second));
  }
  const Eigen::Vector2d coef = A.colPivHouseholderQr().solve(y);
  ScalingFit fit;
  fit.exponent = coef(0);
  fit.log_prefactor = coef(1);
  fit.r_squared = fit_r2(y, A * coef);
  fit.points = static_cast<int>(m);
  return fit;
}

CosineFit cosine_fit(const std::vector<double>& profile) {
  const auto n = static_cast<Index>(profile.size());
  if (n < 2) throw DomainError("cosine fit needs at least 2 sites");
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd y(n);
  for (Index j = 0; j < n; ++j) {
    A(j, 0) = std::cos(std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(n));
    A(j, 1) = 1.0;
    y(j) = profile[static_cast<std::size_t>(j)];
  }
  const Eigen::Vector2d coef = A.colPivHouseholderQr().solve(y);
  return {coef(0), coef(1), fit_r2(y, A * coef)};
}

}  // namespace hublax
