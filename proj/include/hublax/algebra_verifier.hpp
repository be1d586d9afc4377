#pragma once

#include <cstdint>
#include <vector>

#include "hublax/lax_builder.hpp"
#include "hublax/residual.hpp"

namespace hublax {

// Families must be built at cutoff >= K + 2; residuals are measured on levels <= K.
inline constexpr int kEdgeMargin = 2;

ResidualReport check_id1(const LaxFamily& family, int K, double tol = kDefaultTol);
ResidualReport check_id2(const LaxFamily& family, int K, double tol = kDefaultTol);
ResidualReport check_id3(const LaxFamily& family, int K, double tol = kDefaultTol);
// [S^s, T^t] and [X, Y].
std::pair<ResidualReport, ResidualReport> check_id4_id5(const LaxFamily& family, int K, double tol = kDefaultTol);
ResidualReport check_gLOD(const LaxFamily& family, int K, double tol = kDefaultTol);
// [{S^+, S^-}, S^s] and [{S^+, S^-}, T^t].
ResidualReport check_center(const LaxFamily& family, int K, double tol = kDefaultTol);

std::vector<ResidualReport> verify_family(const LaxFamily& family, int K, double tol = kDefaultTol);
std::vector<ResidualReport> verify_params(const LaxParams& p, int K, double tol = kDefaultTol);

// lambda, omega uniform on the annulus 0.3 <= |z| <= 1.5; u from {+-0.5, +-1, +-2}.
std::vector<LaxParams> sample_params(std::uint64_t seed, int count);

}  // namespace hublax
