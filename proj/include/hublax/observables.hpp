#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "hublax/ness_engine.hpp"

namespace hublax {

// tr(rho O).
Complex expectation(const PhysicalOperator& rho, const PhysicalOperator& obs);

// J_{j,j+1} = 4i (s^+_j s^-_{j+1} - s^-_j s^+_{j+1}); positive for flow towards site n.
// Satisfies i[H, s^z_j] = J_{j-1,j} - J_{j,j+1}.
PhysicalOperator current_operator(const PhysicalSpace& space, int j, Species species);

struct ObservableSet {
  DrivingConfig cfg;
  std::string route;                               // "dense" or "transfer"
  std::vector<std::array<double, 2>> densities;    // (<sigma^z_j>, <tau^z_j>), j = 1..n
  std::vector<std::array<double, 2>> currents;     // (J^sigma, J^tau) per bond
  double max_imag = 0.0;                           // largest discarded imaginary part
  double current_uniformity = 0.0;                 // max_j |J_j - J_1| / |J_1|, both species
};

ObservableSet profile_and_currents(const NessResult& ness);
// Expectations via the doubled transfer matrix; never forms an operator on 4^n.
ObservableSet profile_and_currents_transfer(const DrivingConfig& cfg, int K = 0);

double current_uniformity(const std::vector<std::array<double, 2>>& currents);

struct ScalingFit {
  double exponent = 0.0;
  double log_prefactor = 0.0;
  double r_squared = 0.0;
  int points = 0;
};

// Least-squares slope of log|J| against log n. Needs >= 3 points of one sign.
ScalingFit scaling_fit(const std::vector<std::pair<double, double>>& series);

struct CosineFit {
  double amplitude = 0.0;
  double offset = 0.0;
  double r_squared = 0.0;
};

// profile_j ~ a cos(pi (j - 1/2) / n) + b, j = 1..n.
CosineFit cosine_fit(const std::vector<double>& profile);

}  // namespace hublax
