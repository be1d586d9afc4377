#include "hublax/mpo.hpp"

#include <algorithm>

#include "hublax/hubbard_model.hpp"
#include "hublax/linalg.hpp"

namespace hublax {

namespace {

// Local matrices summed over terms for each aux transition (a -> b) reachable from `active`.
template <typename Active>
std::map<std::pair<Index, Index>, LocalOperator> transitions(const MpoSite& site, const Active& active) {
  std::map<std::pair<Index, Index>, LocalOperator> out;
  for (const auto& term : site) {
    for (Index col = 0; col < term.aux.outerSize(); ++col) {
      for (AuxOperator::InnerIterator it(term.aux, col); it; ++it) {
        if (!active.count(it.row())) continue;
        auto [pos, fresh] = out.try_emplace({it.row(), it.col()}, LocalOperator::Zero());
        pos->second += it.value() * term.local;
      }
    }
  }
  return out;
}

}  // namespace

PathFilter reachability_filter(const AuxSpace& space, int n_sites) {
  return [&space, n_sites](Index a, int done) {
    return space.twice_level(a) <= 2 * std::min(done, n_sites - done);
  };
}

MpoSite lax_site(const std::array<AuxOperator, 16>& components) {
  MpoSite site;
  for (Pauli s : kPaulis) {
    for (Pauli t : kPaulis) {
      const auto& aux = components[static_cast<std::size_t>(4 * index_of(s) + index_of(t))];
      if (aux.nonZeros() > 0) site.push_back({aux, local_basis(s, t)});
    }
  }
  return site;
}

MpoSite factored_lax_site(const LaxFamily& f) {
  const Index d = f.space.dim();
  using linalg::kron;
  const PhysicalOperator I2 = linalg::identity<Complex>(2);
  auto sp = [](Pauli p) { return linalg::from_dense<Complex>(pauli(p)); };
  AuxOperator s_part(4 * d, 4 * d), t_part(4 * d, 4 * d);
  for (Pauli p : kPaulis) {
    const auto i = static_cast<std::size_t>(index_of(p));
    s_part += kron(f.S[i], kron(sp(p), I2));
    t_part += kron(f.T[i], kron(I2, sp(p)));
  }
  const AuxOperator x_part = kron(f.X, linalg::identity<Complex>(4));
  const AuxOperator full = s_part * t_part * x_part;

  std::array<std::vector<Triplet>, 16> units;
  for (Index col = 0; col < full.outerSize(); ++col) {
    for (AuxOperator::InnerIterator it(full, col); it; ++it) {
      const Index p = it.row() % 4, q = it.col() % 4;
      units[static_cast<std::size_t>(4 * p + q)].emplace_back(it.row() / 4, it.col() / 4, it.value());
    }
  }
  MpoSite site;
  for (Index p = 0; p < 4; ++p) {
    for (Index q = 0; q < 4; ++q) {
      const auto& trips = units[static_cast<std::size_t>(4 * p + q)];
      if (trips.empty()) continue;
      AuxOperator aux(d, d);
      aux.setFromTriplets(trips.begin(), trips.end());
      LocalOperator e = LocalOperator::Zero();
      e(p, q) = 1.0;
      site.push_back({aux, e});
    }
  }
  return site;
}

PhysicalOperator contract_boundary(const std::vector<const MpoSite*>& sites, Index bra, Index ket,
                                   const PathFilter& keep) {
  std::map<Index, PhysicalOperator> cur;
  cur.emplace(bra, linalg::identity<Complex>(1));
  Index dim = 1;
  int done = 0;
  for (const MpoSite* site : sites) {
    ++done;
    std::map<Index, std::vector<Triplet>> trips;
    for (const auto& [ab, local] : transitions(*site, cur)) {
      const auto [a, b] = ab;
      if (keep && !keep(b, done)) continue;
      auto& out = trips[b];
      const PhysicalOperator& op = cur.at(a);
      for (Index col = 0; col < op.outerSize(); ++col) {
        for (PhysicalOperator::InnerIterator it(op, col); it; ++it) {
          for (Index q = 0; q < 4; ++q) {
            for (Index p = 0; p < 4; ++p) {
              if (local(p, q) == Complex(0.0)) continue;
              out.emplace_back(4 * it.row() + p, 4 * it.col() + q, it.value() * local(p, q));
            }
          }
        }
      }
    }
    dim *= 4;
    std::map<Index, PhysicalOperator> next;
    for (auto& [b, t] : trips) {
      PhysicalOperator m(dim, dim);
      m.setFromTriplets(t.begin(), t.end());
      next.emplace(b, linalg::pruned(std::move(m)));
    }
    cur = std::move(next);
  }
  auto it = cur.find(ket);
  if (it == cur.end()) return PhysicalOperator(dim, dim);
  return it->second;
}

Eigen::VectorXcd apply_to_vector(const std::vector<const MpoSite*>& sites, Index bra, Index ket,
                                 const Eigen::VectorXcd& v, const PathFilter& keep) {
  const int n = static_cast<int>(sites.size());
  const Index dim = Index{1} << (2 * n);
  if (v.size() != dim) throw DimensionError("apply_to_vector: vector size " + std::to_string(v.size()) +
                                            " does not match 4^" + std::to_string(n));
  std::map<Index, Eigen::VectorXcd> cur;
  cur.emplace(bra, v);
  for (int j = 0; j < n; ++j) {
    const Index left = Index{1} << (2 * j);
    const Index right = Index{1} << (2 * (n - j - 1));
    std::map<Index, Eigen::VectorXcd> next;
    for (const auto& [ab, local] : transitions(*sites[static_cast<std::size_t>(j)], cur)) {
      const auto [a, b] = ab;
      if (keep && !keep(b, j + 1)) continue;
      auto [pos, fresh] = next.try_emplace(b, Eigen::VectorXcd::Zero(dim));
      Eigen::VectorXcd& out = pos->second;
      const Eigen::VectorXcd& in = cur.at(a);
      for (Index l = 0; l < left; ++l) {
        for (Index r = 0; r < right; ++r) {
          const Index base = l * 4 * right + r;
          Eigen::Vector4cd x;
          for (Index q = 0; q < 4; ++q) x(q) = in(base + q * right);
          const Eigen::Vector4cd y = local * x;
          for (Index p = 0; p < 4; ++p) out(base + p * right) += y(p);
        }
      }
    }
    cur = std::move(next);
  }
  auto it = cur.find(ket);
  if (it == cur.end()) return Eigen::VectorXcd::Zero(dim);
  return it->second;
}

Complex transfer_expectation(const LaxFamily& f, const LaxFamily& conj, int n_sites, const LocalOperator& M1,
                             const std::map<int, LocalOperator>& ops) {
  const Index d = f.space.dim();
  if (conj.space.dim() != d) throw DimensionError("transfer_expectation: family and conjugate cutoffs differ");
  std::array<AuxOperator, 16> LT;
  std::array<LocalOperator, 16> basis;
  for (std::size_t i = 0; i < 16; ++i) {
    LT[i] = f.L[i].transpose();
    basis[i] = local_basis(kPaulis[i / 4], kPaulis[i % 4]);
  }
  DenseMatrix v = DenseMatrix::Zero(d, d);
  v(0, 0) = 1.0;
  for (int j = 1; j <= n_sites; ++j) {
    auto it = ops.find(j);
    const LocalOperator O = it == ops.end() ? LocalOperator::Identity() : it->second;
    const LocalOperator MO = M1 * O;
    DenseMatrix next = DenseMatrix::Zero(d, d);
    for (std::size_t a = 0; a < 16; ++a) {
      if (f.L[a].nonZeros() == 0) continue;
      DenseMatrix left;
      bool have_left = false;
      for (std::size_t b = 0; b < 16; ++b) {
        if (conj.L[b].nonZeros() == 0) continue;
        const Complex c = (basis[a] * basis[b].transpose() * MO).trace();
        if (c == Complex(0.0)) continue;
        if (!have_left) {
          left = LT[a] * v;
          have_left = true;
        }
        next += c * (left * conj.L[b]);
      }
    }
    v = std::move(next);
  }
  return v(0, 0);
}

}  // namespace hublax
