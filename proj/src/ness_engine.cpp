#include "hublax/ness_engine.hpp"

#include <cmath>
#include <iostream>
#include <map>

#include "hublax/lindblad_oracle.hpp"
#include "hublax/linalg.hpp"

namespace hublax {

namespace {

const Complex kI(0.0, 1.0);

double rel(double num, double den) { return den > 0.0 ? num / den : num; }

std::vector<const MpoSite*> repeat(const MpoSite& site, int n) {
  return std::vector<const MpoSite*>(static_cast<std::size_t>(n), &site);
}

PathFilter double_filter(const AuxSpace& space, int n) {
  const Index d = space.dim();
  return [&space, d, n](Index A, int done) {
    const int cap = 2 * std::min(done, n - done);
    return space.twice_level(A / d) <= cap && space.twice_level(A % d) <= cap;
  };
}

std::array<LocalOperator, 16> pauli_basis() {
  std::array<LocalOperator, 16> b;
  for (std::size_t i = 0; i < 16; ++i) b[i] = local_basis(kPaulis[i / 4], kPaulis[i % 4]);
  return b;
}

double fro2(const LocalOperator& m) { return m.squaredNorm(); }

}  // namespace

void DrivingConfig::validate() const {
  if (!(gamma_L > 0.0) || !(gamma_R > 0.0)) {
    throw DomainError("coupling rates must be positive (gammaL = " + std::to_string(gamma_L) +
                      ", gammaR = " + std::to_string(gamma_R) +
                      "): the steady state is unique only when both baths are active");
  }
  if (n_sites < 2) throw DomainError("driven chain needs n >= 2 sites, got " + std::to_string(n_sites));
}

DrivingParams map_driving_to_params(const DrivingConfig& cfg) {
  if (!(cfg.gamma_L > 0.0) || !(cfg.gamma_R > 0.0))
    throw DomainError("coupling rates must be positive for the parameter map");
  const double gl = cfg.gamma_L, gr = cfg.gamma_R;
  DrivingParams p;
  p.lambda = Complex(gr - gl, cfg.mu_L + cfg.mu_R) / Complex(gl + gr, -(cfg.mu_L - cfg.mu_R));
  p.omega = 0.25 * Complex(cfg.mu_L - cfg.mu_R, gl + gr);
  p.eta = 0.5 * std::log(gl / gr);
  return p;
}

LaxParams lax_params(const DrivingConfig& cfg, Complex gauge_xi) {
  const DrivingParams d = map_driving_to_params(cfg);
  return LaxParams{d.lambda, d.omega, cfg.u, gauge_xi};
}

int exact_cutoff(int n_sites) { return n_sites / 2 + 1; }

LocalOperator filter_local(double eta) {
  LocalOperator m = LocalOperator::Zero();
  m(0, 0) = std::exp(2.0 * eta);
  m(1, 1) = m(2, 2) = 1.0;
  m(3, 3) = std::exp(-2.0 * eta);
  return m;
}

PhysicalOperator filter_M(int n_sites, double eta) {
  PhysicalOperator m = linalg::identity<Complex>(1);
  const PhysicalOperator local = linalg::from_dense<Complex>(filter_local(eta));
  for (int j = 0; j < n_sites; ++j) m = linalg::kron(m, local);
  return m;
}

PhysicalOperator contract_omega(const LaxFamily& family, int n_sites, bool prune) {
  const MpoSite site = lax_site(family.L);
  const Index top = family.space.index(vtx(0, Sign::Plus));
  PathFilter keep;
  if (prune) keep = reachability_filter(family.space, n_sites);
  return contract_boundary(repeat(site, n_sites), top, top, keep);
}

PhysicalOperator build_omega(const LaxParams& params, int n_sites, int K, double tol) {
  if (n_sites < 1) throw DomainError("Omega needs n >= 1");
  const PhysicalOperator omega = contract_omega(build_family(K, params), n_sites, true);
  if (K < exact_cutoff(n_sites)) {
    std::cerr << "warning: cutoff K = " << K << " is below the exactness bound " << exact_cutoff(n_sites)
              << " for n = " << n_sites << "; comparing against K + 1\n";
    const PhysicalOperator wider = contract_omega(build_family(K + 1, params), n_sites, false);
    const double diff = linalg::norms(PhysicalOperator(omega - wider)).frobenius;
    const double scale = linalg::norms(wider).frobenius;
    if (diff > tol * scale) {
      throw TruncationError("Omega at K = " + std::to_string(K) + " differs from K + 1 (relative " +
                            std::to_string(rel(diff, scale)) + ")");
    }
  }
  return omega;
}

double sector_min_eigenvalue(const PhysicalOperator& rho, int n_sites, double* leakage) {
  std::map<std::pair<int, int>, std::vector<Index>> sectors;
  const Index dim = Index{1} << (2 * n_sites);
  std::vector<std::pair<int, int>> label(static_cast<std::size_t>(dim));
  for (Index i = 0; i < dim; ++i) {
    int ns = 0, nt = 0;
    for (int j = 0; j < n_sites; ++j) {
      const Index local = (i >> (2 * j)) & 3;
      ns += (local & 2) ? 0 : 1;
      nt += (local & 1) ? 0 : 1;
    }
    label[static_cast<std::size_t>(i)] = {ns, nt};
    sectors[{ns, nt}].push_back(i);
  }
  double outside = 0.0;
  for (Index c = 0; c < rho.outerSize(); ++c)
    for (PhysicalOperator::InnerIterator it(rho, c); it; ++it)
      if (label[static_cast<std::size_t>(it.row())] != label[static_cast<std::size_t>(it.col())])
        outside += std::norm(it.value());
  if (leakage) *leakage = std::sqrt(outside);
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& [key, idx] : sectors) {
    const DenseMatrix block(linalg::restrict_to<Complex>(rho, idx));
    const DenseMatrix herm = 0.5 * (block + block.adjoint());
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(herm, Eigen::EigenvaluesOnly);
    lo = std::min(lo, es.eigenvalues().minCoeff());
  }
  return lo;
}

NessResult build_ness(const DrivingConfig& cfg, int K, bool with_lindblad_residual) {
  cfg.validate();
  NessResult res;
  res.cfg = cfg;
  res.cutoff_K = K > 0 ? K : exact_cutoff(cfg.n_sites);
  res.lax = lax_params(cfg);
  res.eta = map_driving_to_params(cfg).eta;
  res.omega = build_omega(res.lax, cfg.n_sites, res.cutoff_K);

  const PhysicalOperator M = filter_M(cfg.n_sites, res.eta);
  const PhysicalOperator OOd = res.omega * PhysicalOperator(res.omega.adjoint());
  const PhysicalOperator R = OOd * M;
  const Complex tr = R.diagonal().sum();
  if (std::abs(tr) == 0.0) throw TruncationError("tr R vanished: inconsistent steady state construction");
  res.rho = linalg::pruned(PhysicalOperator(R / tr));

  auto& d = res.diagnostics;
  const double rho_norm = linalg::norms(res.rho).frobenius;
  d.hermiticity = rel(linalg::norms(PhysicalOperator(res.rho - PhysicalOperator(res.rho.adjoint()))).frobenius, rho_norm);
  d.trace_error = std::abs(res.rho.diagonal().sum() - Complex(1.0));
  d.m_commutator = rel(linalg::norms(linalg::commutator(OOd, M)).frobenius, linalg::norms(R).frobenius);
  d.min_eigenvalue = sector_min_eigenvalue(res.rho, cfg.n_sites, &d.sector_leakage);
  d.sector_leakage = rel(d.sector_leakage, rho_norm);
  if (with_lindblad_residual) {
    const LindbladSpec spec = make_lindblad_spec(cfg);
    d.lindblad_residual = rel(linalg::norms(apply_lindbladian(spec, res.rho)).frobenius, rho_norm);
  }
  return res;
}

DoubleLax build_double_lax(const LaxParams& params, double eta, int K) {
  DoubleLax dl;
  dl.family = build_family(K, params);
  dl.conj = build_family(K, conjugate(params));
  dl.eta = eta;
  dl.M1 = filter_local(eta);
  return dl;
}

DoubleLax build_double_lax(const DrivingConfig& cfg, int K, std::optional<double> eta_override) {
  cfg.validate();
  const double eta = eta_override ? *eta_override : map_driving_to_params(cfg).eta;
  return build_double_lax(lax_params(cfg), eta, K > 0 ? K : exact_cutoff(cfg.n_sites));
}

AuxOperator double_Y(const DoubleLax& dl) {
  const Index d = dl.family.space.dim();
  const AuxOperator I = linalg::identity<Complex>(d);
  return AuxOperator(linalg::kron(dl.family.Y, I) - linalg::kron(I, dl.conj.Y));
}

MpoSite double_site(const DoubleLax& dl, DoubleKind kind) {
  const auto basis = pauli_basis();
  const AuxOperator YY = kind == DoubleKind::Plain || kind == DoubleKind::Tilde ? AuxOperator() : double_Y(dl);
  MpoSite site;
  for (std::size_t a = 0; a < 16; ++a) {
    for (std::size_t b = 0; b < 16; ++b) {
      const LocalOperator P = basis[a] * basis[b].transpose() * dl.M1;
      if (P.isZero(0.0)) continue;
      const AuxOperator& L = dl.family.L[a];
      const AuxOperator& Lc = dl.conj.L[b];
      if (kind == DoubleKind::Plain) {
        if (L.nonZeros() == 0 || Lc.nonZeros() == 0) continue;
        site.push_back({linalg::kron(L, Lc), P});
        continue;
      }
      AuxOperator aux = linalg::kron(dl.family.Ltilde[a], Lc) - linalg::kron(L, dl.conj.Ltilde[b]);
      if (kind == DoubleKind::TildePlusLY) aux += linalg::kron(L, Lc) * YY;
      if (kind == DoubleKind::TildePlusYL) aux += YY * linalg::kron(L, Lc);
      aux = linalg::pruned(std::move(aux));
      if (aux.nonZeros() > 0) site.push_back({aux, P});
    }
  }
  return site;
}

PhysicalOperator contract_double(const DoubleLax& dl, int n_sites) {
  const MpoSite site = double_site(dl, DoubleKind::Plain);
  return contract_boundary(repeat(site, n_sites), dl.origin(), dl.origin(), double_filter(dl.family.space, n_sites));
}

ResidualReport check_telescoping(const DoubleLax& dl, int n_sites, double tol) {
  if (n_sites < 2) throw DomainError("telescoping needs n >= 2");
  const MpoSite plain = double_site(dl, DoubleKind::Plain);
  const MpoSite first = double_site(dl, DoubleKind::TildePlusLY);
  const MpoSite last = double_site(dl, DoubleKind::TildePlusYL);
  const PathFilter keep = double_filter(dl.family.space, n_sites);
  const Index o = dl.origin();

  auto sites = repeat(plain, n_sites);
  const PhysicalOperator R = contract_boundary(sites, o, o, keep);
  sites.front() = &first;
  const PhysicalOperator A = contract_boundary(sites, o, o, keep);
  sites.front() = &plain;
  sites.back() = &last;
  const PhysicalOperator B = contract_boundary(sites, o, o, keep);

  const PhysicalSpace space{n_sites};
  PhysicalOperator lhs(space.dim(), space.dim());
  for (int j = 1; j < n_sites; ++j) lhs += linalg::commutator(bond_hamiltonian(space, j, dl.family.params.u), R);
  const PhysicalOperator residual = lhs - A + B;
  const double scale = std::max({linalg::norms(lhs).frobenius, linalg::norms(A).frobenius, linalg::norms(B).frobenius});
  return make_report("telescoping", dl.family.params, dl.family.space.cutoff(), linalg::norms(residual), scale, tol);
}

ResidualReport check_telescoping_full(const LaxParams& params, double eta, int K, double tol) {
  const DoubleLax dl = build_double_lax(params, eta, K + 2);
  const Index D = dl.aux_dim();
  const PhysicalOperator I4 = linalg::identity<Complex>(4);
  auto full = [&](const MpoSite& site, bool first) {
    AuxOperator out(D * 16, D * 16);
    for (const auto& term : site) {
      const PhysicalOperator loc = linalg::from_dense<Complex>(term.local);
      out += linalg::kron(term.aux, first ? linalg::kron(loc, I4) : linalg::kron(I4, loc));
    }
    return out;
  };
  const MpoSite plain = double_site(dl, DoubleKind::Plain);
  const MpoSite tilde = double_site(dl, DoubleKind::Tilde);
  const AuxOperator L1 = full(plain, true), L2 = full(plain, false);
  const AuxOperator T1 = full(tilde, true), T2 = full(tilde, false);
  const AuxOperator YY = linalg::kron(double_Y(dl), linalg::identity<Complex>(16));
  const AuxOperator H =
      linalg::kron(linalg::identity<Complex>(D), bond_hamiltonian(PhysicalSpace{2}, 1, params.u));
  const AuxOperator LL = L1 * L2;
  const AuxOperator lhs = linalg::commutator(H, LL);
  const AuxOperator a = AuxOperator(T1 + YY * L1) * L2;
  const AuxOperator b = L1 * AuxOperator(T2 + L2 * YY);

  const AuxSpace& sp = dl.family.space;
  const Index d = sp.dim();
  std::vector<Index> keep;
  for (Index x = 0; x < d; ++x)
    for (Index y = 0; y < d; ++y)
      if (sp.twice_level(x) <= 2 * K && sp.twice_level(y) <= 2 * K)
        for (Index p = 0; p < 16; ++p) keep.push_back((x * d + y) * 16 + p);
  auto proj = [&](const AuxOperator& m) { return linalg::restrict_to<Complex>(m, keep); };
  const double scale = std::max({linalg::norms(proj(lhs)).frobenius, linalg::norms(proj(a)).frobenius,
                                 linalg::norms(proj(b)).frobenius});
  return make_report("telescoping_full", params, K, linalg::norms(proj(AuxOperator(lhs - a + b))), scale, tol);
}

std::pair<ResidualReport, ResidualReport> check_boundary_conditions(const DoubleLax& dl, const DrivingConfig& cfg,
                                                                    double tol) {
  const Index d = dl.family.space.dim();
  const auto basis = pauli_basis();
  std::array<DenseMatrix, 16> L, Lt, Lc, Ltc;
  for (std::size_t i = 0; i < 16; ++i) {
    L[i] = DenseMatrix(dl.family.L[i]);
    Lt[i] = DenseMatrix(dl.family.Ltilde[i]);
    Lc[i] = DenseMatrix(dl.conj.L[i]);
    Ltc[i] = DenseMatrix(dl.conj.Ltilde[i]);
  }
  const Eigen::VectorXcd y = DenseMatrix(dl.family.Y).diagonal();
  const Eigen::VectorXcd yc = DenseMatrix(dl.conj.Y).diagonal();

  const auto cells = static_cast<std::size_t>(d * d);
  std::vector<LocalOperator> lb(cells, LocalOperator::Zero()), ltb(cells, LocalOperator::Zero());
  std::vector<LocalOperator> lk(cells, LocalOperator::Zero()), ltk(cells, LocalOperator::Zero());
  for (std::size_t a = 0; a < 16; ++a) {
    for (std::size_t b = 0; b < 16; ++b) {
      const LocalOperator P = basis[a] * basis[b].transpose() * dl.M1;
      if (P.isZero(0.0)) continue;
      for (Index x = 0; x < d; ++x) {
        for (Index z = 0; z < d; ++z) {
          const auto c = static_cast<std::size_t>(x * d + z);
          lb[c] += L[a](0, x) * Lc[b](0, z) * P;
          ltb[c] += (Lt[a](0, x) * Lc[b](0, z) - L[a](0, x) * Ltc[b](0, z)) * P;
          lk[c] += L[a](x, 0) * Lc[b](z, 0) * P;
          ltk[c] += (Lt[a](x, 0) * Lc[b](z, 0) - L[a](x, 0) * Ltc[b](z, 0)) * P;
        }
      }
    }
  }

  const LocalOperator hL = boundary_local(cfg.u, cfg.mu_L);
  const LocalOperator hR = boundary_local(cfg.u, cfg.mu_R);
  const LocalOperator sp = local_operator(Species::Sigma, Pauli::Plus), tp = local_operator(Species::Tau, Pauli::Plus);
  const LocalOperator sm = local_operator(Species::Sigma, Pauli::Minus), tm = local_operator(Species::Tau, Pauli::Minus);

  auto evaluate = [&](bool left) {
    double res = 0.0, res_max = 0.0;
    double t_tilde = 0.0, t_y = 0.0, t_h = 0.0, t_d = 0.0;
    for (Index x = 0; x < d; ++x) {
      for (Index z = 0; z < d; ++z) {
        const auto c = static_cast<std::size_t>(x * d + z);
        const Complex yy = y(x) - yc(z);
        const LocalOperator& R = left ? lb[c] : lk[c];
        const LocalOperator tilde = left ? ltb[c] : LocalOperator(-ltk[c]);
        const LocalOperator ypart = left ? LocalOperator(yy * R) : LocalOperator(-yy * R);
        const LocalOperator& h = left ? hL : hR;
        const LocalOperator hpart = h * R - R * h;
        const LocalOperator dpart = left ? LocalOperator(kI * cfg.gamma_L * (dissipator(sp, R) + dissipator(tp, R)))
                                         : LocalOperator(kI * cfg.gamma_R * (dissipator(sm, R) + dissipator(tm, R)));
        const LocalOperator total = tilde + ypart + hpart + dpart;
        res += fro2(total);
        res_max = std::max(res_max, total.cwiseAbs().maxCoeff());
        t_tilde += fro2(tilde);
        t_y += fro2(ypart);
        t_h += fro2(hpart);
        t_d += fro2(dpart);
      }
    }
    const double scale = std::sqrt(std::max({t_tilde, t_y, t_h, t_d}));
    return make_report(left ? "boundary_left" : "boundary_right", dl.family.params, dl.family.space.cutoff(),
                       {std::sqrt(res), res_max}, scale, tol);
  };
  return {evaluate(true), evaluate(false)};
}

}  // namespace hublax
