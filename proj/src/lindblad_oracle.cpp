#include "hublax/lindblad_oracle.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "hublax/linalg.hpp"

namespace hublax {

LindbladSpec make_lindblad_spec(const DrivingConfig& cfg) {
  cfg.validate();
  const PhysicalSpace space{cfg.n_sites};
  const int n = cfg.n_sites;
  LindbladSpec spec;
  spec.cfg = cfg;
  spec.H = build_hamiltonian(cfg.hamiltonian());
  const double gl = std::sqrt(cfg.gamma_L), gr = std::sqrt(cfg.gamma_R);
  spec.jumps = {PhysicalOperator(gl * site_operator(space, 1, Species::Sigma, Pauli::Plus)),
                PhysicalOperator(gl * site_operator(space, 1, Species::Tau, Pauli::Plus)),
                PhysicalOperator(gr * site_operator(space, n, Species::Sigma, Pauli::Minus)),
                PhysicalOperator(gr * site_operator(space, n, Species::Tau, Pauli::Minus))};
  return spec;
}

PhysicalOperator apply_lindbladian(const LindbladSpec& spec, const PhysicalOperator& rho) {
  linalg::require_same_square(spec.H, rho, "apply_lindbladian");
  PhysicalOperator out = Complex(0.0, -1.0) * linalg::commutator(spec.H, rho);
  for (const auto& L : spec.jumps) out += dissipator(L, rho);
  return out;
}

DenseMatrix apply_lindbladian(const LindbladSpec& spec, const DenseMatrix& rho) {
  linalg::require_same_square(spec.H, rho, "apply_lindbladian");
  DenseMatrix out = Complex(0.0, -1.0) * (spec.H * rho - rho * spec.H);
  for (const auto& L : spec.jumps) {
    const PhysicalOperator Ld = L.adjoint();
    const PhysicalOperator LdL = Ld * L;
    out += 2.0 * (L * (rho * Ld)) - LdL * rho - rho * LdL;
  }
  return out;
}

DenseMatrix superoperator(const LindbladSpec& spec) {
  if (spec.cfg.n_sites > kOracleMaxSites) {
    throw SizeRefusal("superoperator: n = " + std::to_string(spec.cfg.n_sites) + " exceeds the dense limit of " +
                      std::to_string(kOracleMaxSites) + " sites");
  }
  const Index D = spec.H.rows();
  const PhysicalOperator I = linalg::identity<Complex>(D);
  auto tr = [](const PhysicalOperator& a) { return PhysicalOperator(a.transpose()); };
  PhysicalOperator S = Complex(0.0, -1.0) * (linalg::kron(spec.H, I) - linalg::kron(I, tr(spec.H)));
  for (const auto& L : spec.jumps) {
    const PhysicalOperator LdL = L.adjoint() * L;
    const PhysicalOperator Lbar = L.conjugate();
    S += 2.0 * linalg::kron(L, Lbar) - linalg::kron(LdL, I) - linalg::kron(I, tr(LdL));
  }
  return DenseMatrix(S);
}

OracleResult fixed_point_oracle(const LindbladSpec& spec, double rel_threshold) {
  const DenseMatrix S = superoperator(spec);
  Eigen::BDCSVD<DenseMatrix> svd(S, Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();  // descending
  OracleResult res;
  res.sigma_max = sv(0);
  res.threshold = rel_threshold * res.sigma_max;
  for (Index i = sv.size() - 1; i >= 0 && sv(i) <= res.threshold; --i) ++res.null_dimension;
  for (Index i = sv.size() - 1; i >= std::max<Index>(0, sv.size() - 4); --i) res.smallest_singular_values.push_back(sv(i));
  if (res.null_dimension != 1) {
    throw UniquenessViolation("steady state null space has dimension " + std::to_string(res.null_dimension) +
                              " (expected 1)");
  }
  const Index D = spec.H.rows();
  const Eigen::VectorXcd v = svd.matrixV().col(sv.size() - 1);
  DenseMatrix rho(D, D);
  for (Index i = 0; i < D; ++i)
    for (Index j = 0; j < D; ++j) rho(i, j) = v(i * D + j);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace();
  res.rho = std::move(rho);
  return res;
}

double max_real_eigenvalue(const DenseMatrix& superop) {
  Eigen::ComplexEigenSolver<DenseMatrix> es(superop, false);
  return es.eigenvalues().real().maxCoeff();
}

}  // namespace hublax
