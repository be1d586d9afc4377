#include "hublax/hubbard_model.hpp"

#include <string>

#include "hublax/linalg.hpp"

namespace hublax {

Eigen::Matrix2cd pauli(Pauli p) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  switch (p) {
    case Pauli::Plus: m(0, 1) = 1.0; break;
    case Pauli::Minus: m(1, 0) = 1.0; break;
    case Pauli::Identity: m = Eigen::Matrix2cd::Identity(); break;
    case Pauli::Z: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
  }
  return m;
}

LocalOperator local_basis(Pauli s, Pauli t) {
  return LocalOperator(Eigen::kroneckerProduct(pauli(s), pauli(t)).eval());
}

LocalOperator local_operator(Species species, Pauli p) {
  return species == Species::Sigma ? local_basis(p, Pauli::Identity) : local_basis(Pauli::Identity, p);
}

PhysicalOperator embed_local(const PhysicalSpace& space, int j, const LocalOperator& op) {
  if (j < 1 || j > space.n_sites)
    throw DomainError("site " + std::to_string(j) + " out of range 1.." + std::to_string(space.n_sites));
  const Index left = Index{1} << (2 * (j - 1));
  const Index right = Index{1} << (2 * (space.n_sites - j));
  PhysicalOperator local = linalg::from_dense<Complex>(op);
  return linalg::kron(linalg::kron(linalg::identity<Complex>(left), local), linalg::identity<Complex>(right));
}

PhysicalOperator site_operator(const PhysicalSpace& space, int j, Species species, Pauli p) {
  return embed_local(space, j, local_operator(species, p));
}

PhysicalOperator hopping_term(const PhysicalSpace& space, int j, Species species) {
  if (j < 1 || j >= space.n_sites) throw DomainError("bond " + std::to_string(j) + " out of range");
  const PhysicalOperator a = site_operator(space, j, species, Pauli::Plus);
  const PhysicalOperator b = site_operator(space, j + 1, species, Pauli::Minus);
  PhysicalOperator h = 2.0 * (a * b);
  h += 2.0 * PhysicalOperator(linalg::dagger(a) * linalg::dagger(b));
  return h;
}

PhysicalOperator bond_hamiltonian(const PhysicalSpace& space, int j, double u) {
  PhysicalOperator h = hopping_term(space, j, Species::Sigma) + hopping_term(space, j, Species::Tau);
  const LocalOperator zz = local_basis(Pauli::Z, Pauli::Z);
  h += (u / 2.0) * (embed_local(space, j, zz) + embed_local(space, j + 1, zz));
  return h;
}

LocalOperator boundary_local(double u, double mu) {
  return (u / 2.0) * local_basis(Pauli::Z, Pauli::Z) +
         (mu / 2.0) * (local_operator(Species::Sigma, Pauli::Z) + local_operator(Species::Tau, Pauli::Z));
}

PhysicalOperator build_hamiltonian(const HamiltonianSpec& spec) {
  if (spec.n_sites < 2) throw DomainError("Hamiltonian needs n >= 2 sites, got " + std::to_string(spec.n_sites));
  const PhysicalSpace space{spec.n_sites};
  PhysicalOperator H(space.dim(), space.dim());
  for (int j = 1; j < spec.n_sites; ++j) H += bond_hamiltonian(space, j, spec.u);
  H += embed_local(space, 1, boundary_local(spec.u, spec.mu_L));
  H += embed_local(space, spec.n_sites, boundary_local(spec.u, spec.mu_R));
  return linalg::pruned(std::move(H));
}

PhysicalOperator spin_flip_G(const PhysicalSpace& space) {
  LocalOperator swap = LocalOperator::Zero();
  swap(0, 0) = swap(3, 3) = 1.0;
  swap(1, 2) = swap(2, 1) = 1.0;
  PhysicalOperator g = linalg::identity<Complex>(1);
  const PhysicalOperator s = linalg::from_dense<Complex>(swap);
  for (int j = 0; j < space.n_sites; ++j) g = linalg::kron(g, s);
  return g;
}

PhysicalOperator magnetization(const PhysicalSpace& space, Species species) {
  PhysicalOperator m(space.dim(), space.dim());
  for (int j = 1; j <= space.n_sites; ++j) m += site_operator(space, j, species, Pauli::Z);
  return m;
}

}  // namespace hublax
