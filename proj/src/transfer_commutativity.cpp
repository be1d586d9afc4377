#include "hublax/transfer_commutativity.hpp"

#include <numbers>
#include <random>

#include "hublax/linalg.hpp"
#include "hublax/ness_engine.hpp"

namespace hublax {

std::vector<SpectralPair> sample_pairs(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius2(0.3 * 0.3, 1.5 * 1.5);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  auto z = [&] { return std::polar(std::sqrt(radius2(rng)), angle(rng)); };
  std::vector<SpectralPair> out;
  for (int i = 0; i < count; ++i) {
    SpectralPoint a{z(), z()};
    SpectralPoint b{z(), z()};
    out.emplace_back(a, b);
  }
  return out;
}

std::vector<ResidualReport> check_commutativity(int n_sites, double u, const std::vector<SpectralPair>& pairs, int K,
                                                double tol, Complex gauge_xi) {
  const int cutoff = K > 0 ? K : exact_cutoff(n_sites);
  std::vector<ResidualReport> out;
  for (const auto& [a, b] : pairs) {
    const LaxParams pa{a.lambda, a.omega, u, gauge_xi};
    const LaxParams pb{b.lambda, b.omega, u, gauge_xi};
    const PhysicalOperator A = build_omega(pa, n_sites, cutoff);
    const PhysicalOperator B = build_omega(pb, n_sites, cutoff);
    const double scale = linalg::norms(A).frobenius * linalg::norms(B).frobenius;
    ResidualReport r = make_report("commutativity", pa, cutoff, linalg::norms(linalg::commutator(A, B)), scale, tol);
    r.partner = pb;
    r.tier = "conjecture";
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace hublax
