#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hublax/hubbard_model.hpp"
#include "hublax/lax_builder.hpp"
#include "hublax/mpo.hpp"
#include "hublax/residual.hpp"

namespace hublax {

struct DrivingConfig {
  double gamma_L = 1.0;
  double gamma_R = 1.0;
  double mu_L = 0.0;
  double mu_R = 0.0;
  double u = 1.0;
  int n_sites = 2;

  // Rejects non-positive rates (the steady state is unique only with both baths
  // active) and n < 2.
  void validate() const;
  HamiltonianSpec hamiltonian() const { return {n_sites, u, mu_L, mu_R}; }
};

struct DrivingParams {
  Complex lambda;
  Complex omega;
  double eta = 0.0;
};

// lambda = (G_R - G_L + i(mu_L + mu_R)) / (G_L + G_R - i(mu_L - mu_R)),
// omega  = (mu_L - mu_R + i(G_L + G_R)) / 4,  eta = log(G_L / G_R) / 2.
DrivingParams map_driving_to_params(const DrivingConfig& cfg);
LaxParams lax_params(const DrivingConfig& cfg, Complex gauge_xi = 1.0);

int exact_cutoff(int n_sites);

// exp(eta (sigma^z + tau^z)) on one site, and its n-site product.
LocalOperator filter_local(double eta);
PhysicalOperator filter_M(int n_sites, double eta);

// <0^+| L_1 ... L_n |0^+> from a prebuilt family (no exactness check).
PhysicalOperator contract_omega(const LaxFamily& family, int n_sites, bool prune = true);
// Builds the family at cutoff K. Below exact_cutoff(n) a warning is printed and the
// result is compared against K + 1; a mismatch throws TruncationError.
PhysicalOperator build_omega(const LaxParams& params, int n_sites, int K, double tol = 1e-13);

struct NessDiagnostics {
  double hermiticity = 0.0;     // |rho - rho^dag|_F / |rho|_F
  double min_eigenvalue = 0.0;  // over magnetization sectors
  double trace_error = 0.0;
  double m_commutator = 0.0;    // |[Omega Omega^dag, M]|_F / |Omega Omega^dag M|_F
  double sector_leakage = 0.0;  // weight of rho outside the (N_sigma, N_tau) blocks
  std::optional<double> lindblad_residual;
};

struct NessResult {
  DrivingConfig cfg;
  PhysicalOperator omega;
  PhysicalOperator rho;
  double eta = 0.0;
  LaxParams lax;
  int cutoff_K = 0;
  NessDiagnostics diagnostics;
};

NessResult build_ness(const DrivingConfig& cfg, int K, bool with_lindblad_residual = false);

// Minimum eigenvalue of a Hermitian operator that is block diagonal in the
// (N_sigma, N_tau) magnetization sectors; leakage receives the Frobenius weight
// outside the blocks.
double sector_min_eigenvalue(const PhysicalOperator& rho, int n_sites, double* leakage = nullptr);

// Doubled Lax operators on H_a (x) H_a (x) H_p built from a family and its conjugate.
struct DoubleLax {
  LaxFamily family;
  LaxFamily conj;
  double eta = 0.0;
  LocalOperator M1;

  Index aux_dim() const { return family.space.dim() * family.space.dim(); }
  Index origin() const { return 0; }  // (0^+, 0^+)
};

DoubleLax build_double_lax(const DrivingConfig& cfg, int K, std::optional<double> eta_override = std::nullopt);
DoubleLax build_double_lax(const LaxParams& params, double eta, int K);

enum class DoubleKind {
  Plain,         // LL
  Tilde,         // L~ (x) Lbar - L (x) L~bar
  TildePlusLY,   // LL~ + LL YY
  TildePlusYL,   // LL~ + YY LL
};

MpoSite double_site(const DoubleLax& dl, DoubleKind kind);
AuxOperator double_Y(const DoubleLax& dl);
// <0+,0+| LL_1 ... LL_n |0+,0+>.
PhysicalOperator contract_double(const DoubleLax& dl, int n_sites);

// sum_j [h_{j,j+1}, R] against the boundary terms, contracted between <0+,0+| and |0+,0+>.
ResidualReport check_telescoping(const DoubleLax& dl, int n_sites, double tol = kDefaultTol);
// Uncontracted n = 2 identity on H_a^2 (x) H_p^2, families built at K + 2 and
// residuals restricted to levels <= K.
ResidualReport check_telescoping_full(const LaxParams& params, double eta, int K, double tol = kDefaultTol);
// Left (bra) and right (ket) boundary equations.
std::pair<ResidualReport, ResidualReport> check_boundary_conditions(const DoubleLax& dl, const DrivingConfig& cfg,
                                                                    double tol = kDefaultTol);

}  // namespace hublax
