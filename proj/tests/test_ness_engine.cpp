#include <doctest.h>

#include <random>

#include "hublax/lindblad_oracle.hpp"
#include "hublax/linalg.hpp"
#include "hublax/ness_engine.hpp"

using namespace hublax;
namespace la = hublax::linalg;

namespace {

double fro(const PhysicalOperator& a) { return la::norms(a).frobenius; }

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

TEST_CASE("parameter map") {
  const DrivingParams a = map_driving_to_params(cfg(3, 1.0, 1.0, 2.0, 0.0, 0.0));
  CHECK(std::abs(a.lambda - Complex(1.0 / 3.0)) < 1e-15);
  CHECK(std::abs(a.omega - Complex(0.0, 0.75)) < 1e-15);
  CHECK(a.eta == doctest::Approx(0.5 * std::log(0.5)));
  const DrivingParams b = map_driving_to_params(cfg(3, 1.0, 1.0, 1.0, 0.3, 0.3));
  CHECK(std::abs(b.lambda - Complex(0.0, 0.3)) < 1e-15);
  CHECK(b.eta == 0.0);
  CHECK_THROWS_AS(map_driving_to_params(cfg(3, 1.0, 0.0, 1.0, 0.0, 0.0)), DomainError);
}

TEST_CASE("validation messages mention uniqueness") {
  try {
    cfg(2, 1.0, 0.0, 1.0, 0.0, 0.0).validate();
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("unique") != std::string::npos);
  }
  CHECK_THROWS_AS(cfg(1, 1.0, 1.0, 1.0, 0.0, 0.0).validate(), DomainError);
  CHECK_THROWS_AS(cfg(2, 1.0, 1.0, -1.0, 0.0, 0.0).validate(), DomainError);
}

TEST_CASE("filter M") {
  const LocalOperator m = filter_local(0.4);
  CHECK(std::abs(m(0, 0) - std::exp(0.8)) < 1e-14);
  CHECK(std::abs(m(1, 1) - 1.0) < 1e-15);
  CHECK(std::abs(m(3, 3) - std::exp(-0.8)) < 1e-14);
  CHECK(fro(PhysicalOperator(filter_M(3, 0.0) - la::identity<Complex>(64))) == 0.0);
}

TEST_CASE("Omega for one site is the identity") {
  const LaxFamily f = build_family(2, LaxParams{Complex(0.3, 0.2), Complex(0.1, 0.6), 1.0});
  const PhysicalOperator o = contract_omega(f, 1);
  CHECK(fro(PhysicalOperator(o - la::identity<Complex>(4))) < 1e-14);
}

TEST_CASE("Omega is independent of the cutoff once exact, and of the gauge") {
  const LaxParams p{Complex(0.4, -0.5), Complex(0.2, 0.7), 2.0};
  for (int n = 2; n <= 5; ++n) {
    const int K = exact_cutoff(n);
    const PhysicalOperator a = contract_omega(build_family(K, p), n);
    const PhysicalOperator b = contract_omega(build_family(K + 1, p), n, false);
    CHECK(fro(PhysicalOperator(a - b)) <= 1e-13 * fro(b));
    LaxParams g = p;
    g.gauge_xi = Complex(0.8, 0.5);
    const PhysicalOperator c = contract_omega(build_family(K, g), n);
    CHECK(fro(PhysicalOperator(a - c)) <= 1e-12 * fro(a));
  }
}

TEST_CASE("too small a cutoff is refused") {
  const LaxParams p{Complex(0.4, -0.5), Complex(0.2, 0.7), 1.0};
  CHECK_THROWS_AS(build_omega(p, 4, 1), TruncationError);
  CHECK_NOTHROW(build_omega(p, 4, 2));
}

TEST_CASE("MPO site forms agree") {
  const LaxFamily f = build_family(3, LaxParams{Complex(0.4, -0.5), Complex(0.2, 0.7), 1.0});
  const MpoSite a = lax_site(f.L), b = factored_lax_site(f);
  const std::vector<const MpoSite*> sa(3, &a), sb(3, &b);
  const PhysicalOperator x = contract_boundary(sa, 0, 0), y = contract_boundary(sb, 0, 0);
  CHECK(fro(PhysicalOperator(x - y)) < 1e-12 * fro(x));
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(64);
  for (Index i = 0; i < 64; ++i) v(i) = Complex(g(rng), g(rng));
  CHECK((apply_to_vector(sa, 0, 0, v) - x * v).norm() < 1e-12 * (x * v).norm());
  CHECK_THROWS_AS(apply_to_vector(sa, 0, 0, Eigen::VectorXcd(10)), DimensionError);
}

TEST_CASE("steady state: diagnostics and sectors") {
  for (const DrivingConfig& c : {cfg(2, 1.0, 1.0, 0.5, 0.0, 0.0), cfg(3, 2.0, 1.0, 0.7, 0.3, -0.4),
                                 cfg(4, 0.5, 1.3, 0.6, 0.2, -0.1)}) {
    const NessResult r = build_ness(c, 0, true);
    CHECK(r.cutoff_K == exact_cutoff(c.n_sites));
    const auto& d = r.diagnostics;
    CHECK(d.hermiticity <= 1e-10);
    CHECK(d.min_eigenvalue >= -1e-10);
    CHECK(d.trace_error <= 1e-12);
    CHECK(d.m_commutator <= 1e-10);
    CHECK(d.sector_leakage <= 1e-12);
    REQUIRE(d.lindblad_residual.has_value());
    CHECK(*d.lindblad_residual <= 1e-9);
  }
}

TEST_CASE("telescoping and boundary equations") {
  const DrivingConfig c = cfg(3, 1.0, 1.3, 0.6, 0.2, -0.1);
  const DoubleLax dl = build_double_lax(c, 0);
  CHECK(check_telescoping(dl, 3).passed);
  const auto [l, r] = check_boundary_conditions(dl, c);
  CHECK(l.passed);
  CHECK(r.passed);
  CHECK(check_telescoping_full(lax_params(c), map_driving_to_params(c).eta, 3).passed);

  LaxParams bad = lax_params(c);
  bad.lambda *= 1.05;
  const auto [bl, br] = check_boundary_conditions(build_double_lax(bad, map_driving_to_params(c).eta, 2), c);
  CHECK(std::max(bl.relative(), br.relative()) > 1e-4);
}

TEST_CASE("the opposite sign of lambda fails from n = 3") {
  const DrivingConfig c = cfg(3, 1.0, 1.3, 0.6, 0.2, -0.1);
  LaxParams flipped = lax_params(c);
  flipped.lambda = -flipped.lambda;
  const double eta = map_driving_to_params(c).eta;
  const PhysicalOperator O = build_omega(flipped, 3, 2);
  PhysicalOperator R = O * PhysicalOperator(O.adjoint()) * filter_M(3, eta);
  R /= R.diagonal().sum();
  const double res = fro(apply_lindbladian(make_lindblad_spec(c), R)) / fro(R);
  CHECK(res > 1e-4);

  DrivingConfig c2 = c;
  c2.n_sites = 2;
  LaxParams f2 = lax_params(c2);
  f2.lambda = -f2.lambda;
  const PhysicalOperator O2 = build_omega(f2, 2, 1);
  PhysicalOperator R2 = O2 * PhysicalOperator(O2.adjoint()) * filter_M(2, eta);
  R2 /= R2.diagonal().sum();
  CHECK(fro(apply_lindbladian(make_lindblad_spec(c2), R2)) / fro(R2) < 1e-10);
}

TEST_CASE("doubled contraction reproduces Omega Omega^dag M") {
  const DrivingConfig c = cfg(3, 1.0, 1.0, 0.5, 0.1, 0.0);
  const NessResult r = build_ness(c, 0);
  const PhysicalOperator R = contract_double(build_double_lax(c, 0), 3);
  const PhysicalOperator rho = R / R.diagonal().sum();
  CHECK(fro(PhysicalOperator(rho - r.rho)) < 1e-12);
}
