#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hublax/residual.hpp"

namespace hublax {

struct SpectralPoint {
  Complex lambda;
  Complex omega;
};
using SpectralPair = std::pair<SpectralPoint, SpectralPoint>;

// Both points drawn from the annulus 0.3 <= |z| <= 1.5.
std::vector<SpectralPair> sample_pairs(std::uint64_t seed, int count);

// |[Omega(l, w), Omega(l', w')]|_F / (|Omega| |Omega'|) per pair, tier "conjecture".
// K <= 0 selects floor(n/2) + 1.
std::vector<ResidualReport> check_commutativity(int n_sites, double u, const std::vector<SpectralPair>& pairs,
                                                int K = 0, double tol = kDefaultTol, Complex gauge_xi = 1.0);

}  // namespace hublax
