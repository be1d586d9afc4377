#pragma once

#include "hublax/types.hpp"

namespace hublax {

// Single-qubit Pauli component; Identity is the 2x2 identity.
Eigen::Matrix2cd pauli(Pauli p);
// sigma^s (x) tau^t on one ladder site.
LocalOperator local_basis(Pauli s, Pauli t);
LocalOperator local_operator(Species species, Pauli p);

struct PhysicalSpace {
  int n_sites = 1;
  Index dim() const { return Index{1} << (2 * n_sites); }
};

// Sites are numbered 1..n; site 1 is the most significant tensor factor.
PhysicalOperator embed_local(const PhysicalSpace& space, int j, const LocalOperator& op);
PhysicalOperator site_operator(const PhysicalSpace& space, int j, Species species, Pauli p);

struct HamiltonianSpec {
  int n_sites = 2;
  double u = 0.0;
  double mu_L = 0.0;
  double mu_R = 0.0;
};

// 2 s^+_j s^-_{j+1} + 2 s^-_j s^+_{j+1} for one species.
PhysicalOperator hopping_term(const PhysicalSpace& space, int j, Species species);
// h_{j,j+1} = h^sigma + h^tau + (u/2)(sigma^z_j tau^z_j + sigma^z_{j+1} tau^z_{j+1}).
PhysicalOperator bond_hamiltonian(const PhysicalSpace& space, int j, double u);
// (u/2) sigma^z_j tau^z_j + (mu/2)(sigma^z_j + tau^z_j), used for h_L (j = 1) and h_R (j = n).
LocalOperator boundary_local(double u, double mu);
PhysicalOperator build_hamiltonian(const HamiltonianSpec& spec);

PhysicalOperator spin_flip_G(const PhysicalSpace& space);
PhysicalOperator magnetization(const PhysicalSpace& space, Species species);

}  // namespace hublax
