#pragma once

#include <functional>
#include <map>
#include <vector>

#include "hublax/aux_space.hpp"
#include "hublax/lax_builder.hpp"
#include "hublax/types.hpp"

namespace hublax {

// One site of a matrix-product operator: sum over terms of aux (x) local.
struct MpoTerm {
  AuxOperator aux;
  LocalOperator local;
};
using MpoSite = std::vector<MpoTerm>;

// keep(aux_index, sites_done) decides whether a partial path may continue.
using PathFilter = std::function<bool(Index, int)>;

// Level after j of n sites must be <= min(j, n - j) for the path to close on 0^+.
PathFilter reachability_filter(const AuxSpace& space, int n_sites);

MpoSite lax_site(const std::array<AuxOperator, 16>& components);
// Same operator as lax_site(family.L), rebuilt from the factored product
// (S (x) sigma)(T (x) tau)(X (x) 1) and decomposed over local matrix units.
MpoSite factored_lax_site(const LaxFamily& family);

// <bra| W_1 ... W_n |ket> as an operator on 4^n.
PhysicalOperator contract_boundary(const std::vector<const MpoSite*>& sites, Index bra, Index ket,
                                   const PathFilter& keep = {});
// Same contraction applied to a vector without forming the operator.
Eigen::VectorXcd apply_to_vector(const std::vector<const MpoSite*>& sites, Index bra, Index ket,
                                 const Eigen::VectorXcd& v, const PathFilter& keep = {});

// tr(Omega Omega^dag M O) for O a product of single-site operators (sites 1-based; missing = identity).
// conj must be the family at conjugated parameters.
Complex transfer_expectation(const LaxFamily& family, const LaxFamily& conj, int n_sites, const LocalOperator& M1,
                             const std::map<int, LocalOperator>& ops);

}  // namespace hublax
