#include <doctest.h>

#include <cmath>

#include "hublax/linalg.hpp"
#include "hublax/observables.hpp"

using namespace hublax;
namespace la = hublax::linalg;

namespace {

DrivingConfig cfg(int n, double u, double gl, double gr, double ml, double mr) {
  DrivingConfig c;
  c.n_sites = n;
  c.u = u;
  c.gamma_L = gl;
  c.gamma_R = gr;
  c.mu_L = ml;
  c.mu_R = mr;
  return c;
}

}  // namespace

TEST_CASE("continuity equation holds at operator level") {
  const int n = 4;
  const PhysicalSpace sp{n};
  const PhysicalOperator H = build_hamiltonian({n, 1.3, 0.4, -0.2});
  const Complex I(0.0, 1.0);
  for (Species s : {Species::Sigma, Species::Tau}) {
    for (int j = 2; j < n; ++j) {
      const PhysicalOperator lhs = I * la::commutator(H, site_operator(sp, j, s, Pauli::Z));
      const PhysicalOperator rhs = current_operator(sp, j - 1, s) - current_operator(sp, j, s);
      CHECK(la::norms(PhysicalOperator(lhs - rhs)).frobenius < 1e-12);
    }
    const PhysicalOperator first = I * la::commutator(H, site_operator(sp, 1, s, Pauli::Z));
    CHECK(la::norms(PhysicalOperator(first + current_operator(sp, 1, s))).frobenius < 1e-12);
  }
  CHECK_THROWS_AS(current_operator(sp, 0, Species::Sigma), DomainError);
  CHECK_THROWS_AS(current_operator(sp, 4, Species::Sigma), DomainError);
}

TEST_CASE("current operator is Hermitian") {
  const PhysicalOperator J = current_operator(PhysicalSpace{3}, 2, Species::Tau);
  CHECK(la::norms(PhysicalOperator(J - PhysicalOperator(J.adjoint()))).frobenius == 0.0);
}

TEST_CASE("uniform currents and symmetries on the dense route") {
  for (int n = 2; n <= 5; ++n) {
    const ObservableSet o = profile_and_currents(build_ness(cfg(n, 1.0, 1.0, 1.0, 0.0, 0.0), 0));
    CHECK(o.route == "dense");
    CHECK(o.densities.size() == static_cast<std::size_t>(n));
    CHECK(o.currents.size() == static_cast<std::size_t>(n - 1));
    CHECK(o.current_uniformity <= 1e-9);
    CHECK(o.max_imag <= 1e-10);
    CHECK(o.currents[0][0] > 0.0);
    for (const auto& c : o.currents) CHECK(std::abs(c[0] - c[1]) <= 1e-10 * std::abs(c[0]));
    for (int j = 0; j < n; ++j)
      CHECK(std::abs(o.densities[static_cast<std::size_t>(j)][0] + o.densities[static_cast<std::size_t>(n - 1 - j)][0]) <=
            1e-9);
  }
}

TEST_CASE("transfer route agrees with the dense route") {
  for (const DrivingConfig& c : {cfg(3, 1.0, 1.3, 0.6, 0.2, -0.1), cfg(4, 2.0, 1.0, 0.5, 0.0, 0.3)}) {
    const ObservableSet a = profile_and_currents(build_ness(c, 0));
    const ObservableSet b = profile_and_currents_transfer(c);
    CHECK(b.route == "transfer");
    for (std::size_t j = 0; j < a.densities.size(); ++j)
      for (int s = 0; s < 2; ++s) CHECK(std::abs(a.densities[j][s] - b.densities[j][s]) < 1e-10);
    for (std::size_t j = 0; j < a.currents.size(); ++j)
      for (int s = 0; s < 2; ++s) CHECK(std::abs(a.currents[j][s] - b.currents[j][s]) < 1e-10);
  }
}

TEST_CASE("transfer currents match the frozen dense reference for n = 4, 5, 6") {
  const double frozen[] = {1.0534716679968077, 0.8932613306243204, 0.7338171695483333};
  for (int n = 4; n <= 6; ++n) {
    const ObservableSet o = profile_and_currents_transfer(cfg(n, 1.0, 1.0, 1.0, 0.0, 0.0));
    CHECK(o.currents[0][0] == doctest::Approx(frozen[n - 4]).epsilon(1e-9));
    CHECK(o.current_uniformity <= 1e-9);
  }
}

TEST_CASE("scaling fit") {
  std::vector<std::pair<double, double>> a, b;
  for (int n = 2; n <= 8; ++n) {
    a.emplace_back(n, 3.0 / (n * n));
    b.emplace_back(n, -0.5 / n);
  }
  const ScalingFit fa = scaling_fit(a);
  CHECK(std::abs(fa.exponent + 2.0) < 1e-10);
  CHECK(fa.r_squared == doctest::Approx(1.0));
  CHECK(fa.points == 7);
  CHECK(std::abs(scaling_fit(b).exponent + 1.0) < 1e-10);
  CHECK_THROWS_AS(scaling_fit({{2, 1.0}, {3, 0.5}}), DomainError);
  CHECK_THROWS_AS(scaling_fit({{2, 1.0}, {3, -0.5}, {4, 0.2}}), DomainError);
}

TEST_CASE("cosine fit recovers an exact profile") {
  std::vector<double> p;
  const int n = 6;
  for (int j = 1; j <= n; ++j) p.push_back(0.3 * std::cos(M_PI * (j - 0.5) / n) - 0.1);
  const CosineFit f = cosine_fit(p);
  CHECK(f.amplitude == doctest::Approx(0.3));
  CHECK(f.offset == doctest::Approx(-0.1));
  CHECK(f.r_squared == doctest::Approx(1.0));
}

TEST_CASE("uniformity helper") {
  CHECK(current_uniformity({{1.0, 1.0}, {1.0, 1.0}}) == 0.0);
  CHECK(current_uniformity({{1.0, 2.0}, {1.5, 2.0}}) == doctest::Approx(0.5));
}
