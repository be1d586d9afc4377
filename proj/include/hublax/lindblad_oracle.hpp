#pragma once

#include <array>
#include <vector>

#include "hublax/ness_engine.hpp"

namespace hublax {

// H plus jump operators sqrt(G_L) sigma^+_1, sqrt(G_L) tau^+_1, sqrt(G_R) sigma^-_n, sqrt(G_R) tau^-_n.
struct LindbladSpec {
  DrivingConfig cfg;
  PhysicalOperator H;
  std::array<PhysicalOperator, 4> jumps;
};

LindbladSpec make_lindblad_spec(const DrivingConfig& cfg);

// 2 L rho L^dag - {L^dag L, rho}
template <typename Mat>
Mat dissipator(const Mat& L, const Mat& rho) {
  const Mat Ld = L.adjoint();
  const Mat LdL = Ld * L;
  return Mat(2.0 * (L * rho * Ld) - LdL * rho - rho * LdL);
}

PhysicalOperator apply_lindbladian(const LindbladSpec& spec, const PhysicalOperator& rho);
DenseMatrix apply_lindbladian(const LindbladSpec& spec, const DenseMatrix& rho);

inline constexpr int kOracleMaxSites = 3;

// Row-stacked superoperator: vec(A rho B) = (A (x) B^T) vec(rho), vec index i * D + j.
DenseMatrix superoperator(const LindbladSpec& spec);

struct OracleResult {
  DenseMatrix rho;
  int null_dimension = 0;
  double sigma_max = 0.0;
  double threshold = 0.0;
  std::vector<double> smallest_singular_values;  // ascending, up to 4
};

// Null space of the superoperator via SVD (threshold 1e-10 sigma_max). Refuses n > 3;
// throws UniquenessViolation unless the null space is one-dimensional.
OracleResult fixed_point_oracle(const LindbladSpec& spec, double rel_threshold = 1e-10);

double max_real_eigenvalue(const DenseMatrix& superop);

}  // namespace hublax
