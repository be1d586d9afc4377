#include "hublax/algebra_verifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hublax/hubbard_model.hpp"
#include "hublax/linalg.hpp"

namespace hublax {

namespace {

using linalg::kron;

PhysicalOperator sparse_local(const DenseMatrix& m) { return linalg::from_dense<Complex>(m); }

AuxOperator lift(const AuxOperator& aux, const DenseMatrix& local) { return kron(aux, sparse_local(local)); }

void require_margin(const LaxFamily& f, int K, const char* what) {
  if (K < 1 || f.space.cutoff() < K + kEdgeMargin) {
    throw TruncationError(std::string(what) + ": family cutoff " + std::to_string(f.space.cutoff()) +
                          " too small to check levels <= " + std::to_string(K));
  }
}

// Aux levels <= K, expanded over a local factor of size local_dim.
std::vector<Index> kept(const AuxSpace& space, int K, Index local_dim) {
  std::vector<Index> out;
  for (Index a : space.indices_up_to(2 * K))
    for (Index p = 0; p < local_dim; ++p) out.push_back(a * local_dim + p);
  return out;
}

struct Accumulator {
  double sq = 0.0;
  double max_abs = 0.0;
  double scale = 0.0;

  void residual(const AuxOperator& r) {
    const auto n = linalg::norms(r);
    sq += n.frobenius * n.frobenius;
    max_abs = std::max(max_abs, n.max_abs);
  }
  void operand(const AuxOperator& o) { scale = std::max(scale, linalg::norms(o).frobenius); }
  linalg::Norms norms() const { return {std::sqrt(sq), max_abs}; }
};

DenseMatrix pair_local(Pauli a, Pauli b) { return Eigen::kroneckerProduct(pauli(a), pauli(b)).eval(); }

ResidualReport check_single_species(const LaxFamily& f, int K, double tol, bool tau) {
  require_margin(f, K, tau ? "id2" : "id1");
  const AuxQuad& S = tau ? f.T : f.S;
  const AuxQuad& AX = tau ? f.hatted.TacuteX : f.hatted.SacuteX;
  const AuxQuad& XB = tau ? f.hatted.XTgrave : f.hatted.XSgrave;
  const Index d = f.space.dim();
  AuxOperator prod(4 * d, 4 * d), rhs(4 * d, 4 * d);
  for (Pauli a : kPaulis) {
    for (Pauli b : kPaulis) {
      const auto ia = static_cast<std::size_t>(index_of(a));
      const auto ib = static_cast<std::size_t>(index_of(b));
      const DenseMatrix loc = pair_local(a, b);
      prod += lift(S[ia] * f.X * S[ib], loc);
      rhs += lift(AX[ia] * S[ib] - S[ia] * XB[ib], loc);
    }
  }
  const DenseMatrix hop = 2.0 * (pair_local(Pauli::Plus, Pauli::Minus) + pair_local(Pauli::Minus, Pauli::Plus));
  const AuxOperator H = lift(linalg::identity<Complex>(d), hop);
  const AuxOperator lhs = linalg::commutator(H, prod);
  const auto keep = kept(f.space, K, 4);
  Accumulator acc;
  acc.residual(linalg::restrict_to<Complex>(lhs - rhs, keep));
  acc.operand(linalg::restrict_to<Complex>(lhs, keep));
  acc.operand(linalg::restrict_to<Complex>(rhs, keep));
  return make_report(tau ? "id2" : "id1", f.params, K, acc.norms(), acc.scale, tol);
}

AuxOperator full_lax(const std::array<AuxOperator, 16>& comps, const DenseMatrix& left, const DenseMatrix& right,
                     bool first) {
  const Index d = comps[0].rows();
  const Index ld = left.rows() * right.rows() * 4;
  AuxOperator out(d * ld, d * ld);
  for (Pauli s : kPaulis) {
    for (Pauli t : kPaulis) {
      const DenseMatrix b = local_basis(s, t);
      const DenseMatrix loc = first ? DenseMatrix(Eigen::kroneckerProduct(b, right).eval())
                                    : DenseMatrix(Eigen::kroneckerProduct(left, b).eval());
      out += lift(comps[static_cast<std::size_t>(4 * index_of(s) + index_of(t))], loc);
    }
  }
  return out;
}

}  // namespace

ResidualReport check_id1(const LaxFamily& family, int K, double tol) {
  return check_single_species(family, K, tol, false);
}

ResidualReport check_id2(const LaxFamily& family, int K, double tol) {
  return check_single_species(family, K, tol, true);
}

ResidualReport check_id3(const LaxFamily& f, int K, double tol) {
  require_margin(f, K, "id3");
  const Index d = f.space.dim();
  const auto& h = f.hatted;
  AuxOperator lhs(4 * d, 4 * d), st(4 * d, 4 * d);
  const auto levels = f.space.indices_up_to(2 * K);
  Accumulator acc;
  // The two sides cancel identically at u = 0; the individual products set the scale.
  auto term_scale = [&](const AuxOperator& a, const DenseMatrix& loc) {
    acc.scale = std::max(acc.scale, linalg::norms(linalg::restrict_to<Complex>(a, levels)).frobenius * loc.norm());
  };
  for (std::size_t s = 0; s < 4; ++s) {
    const AuxOperator Sacute = h.SacuteX[s] * f.X_inv;
    const AuxOperator Sgrave = f.X_inv * h.XSgrave[s];
    for (std::size_t t = 0; t < 4; ++t) {
      const AuxOperator Tacute = h.TacuteX[t] * f.X_inv;
      const AuxOperator Tgrave = f.X_inv * h.XTgrave[t];
      const DenseMatrix loc = local_basis(kPaulis[s], kPaulis[t]);
      const AuxOperator parts[4] = {f.S[s] * Tacute, f.T[t] * Sacute, Sgrave * f.T[t], Tgrave * f.S[s]};
      for (const auto& part : parts) term_scale(part, loc);
      const AuxOperator term = parts[0] + parts[1] - parts[2] - parts[3];
      lhs += lift(term, loc);
      st += lift(f.S[s] * f.T[t], loc);
    }
  }
  AuxOperator gen = lift(f.Y, DenseMatrix::Identity(4, 4));
  gen -= lift(linalg::identity<Complex>(d), f.params.u * DenseMatrix(local_basis(Pauli::Z, Pauli::Z)));
  const AuxOperator rhs = linalg::commutator(gen, st);
  const auto keep = kept(f.space, K, 4);
  acc.residual(linalg::restrict_to<Complex>(lhs - rhs, keep));
  acc.operand(linalg::restrict_to<Complex>(lhs, keep));
  acc.operand(linalg::restrict_to<Complex>(rhs, keep));
  return make_report("id3", f.params, K, acc.norms(), acc.scale, tol);
}

std::pair<ResidualReport, ResidualReport> check_id4_id5(const LaxFamily& f, int K, double tol) {
  require_margin(f, K, "id4");
  const auto keep = f.space.indices_up_to(2 * K);
  Accumulator st;
  for (const auto& s : f.S) {
    for (const auto& t : f.T) {
      st.residual(linalg::restrict_to<Complex>(linalg::commutator(s, t), keep));
      st.operand(linalg::restrict_to<Complex>(AuxOperator(s * t), keep));
    }
  }
  Accumulator xy;
  xy.residual(linalg::restrict_to<Complex>(linalg::commutator(f.X, f.Y), keep));
  xy.operand(linalg::restrict_to<Complex>(AuxOperator(f.X * f.Y), keep));
  return {make_report("id4", f.params, K, st.norms(), st.scale, tol),
          make_report("id5", f.params, K, xy.norms(), xy.scale, tol)};
}

ResidualReport check_gLOD(const LaxFamily& f, int K, double tol) {
  require_margin(f, K, "gLOD");
  const Index d = f.space.dim();
  const DenseMatrix I4 = DenseMatrix::Identity(4, 4);
  const DenseMatrix one = DenseMatrix::Identity(1, 1);
  const AuxOperator L1 = full_lax(f.L, one, I4, true);
  const AuxOperator L2 = full_lax(f.L, I4, one, false);
  const AuxOperator Lt1 = full_lax(f.Ltilde, one, I4, true);
  const AuxOperator Lt2 = full_lax(f.Ltilde, I4, one, false);
  const AuxOperator Y = lift(f.Y, DenseMatrix::Identity(16, 16));
  const PhysicalOperator h = bond_hamiltonian(PhysicalSpace{2}, 1, f.params.u);
  const AuxOperator H = kron(linalg::identity<Complex>(d), h);
  const AuxOperator LL = L1 * L2;
  const AuxOperator lhs = linalg::commutator(H, LL);
  const AuxOperator a = AuxOperator(Lt1 + Y * L1) * L2;
  const AuxOperator b = L1 * AuxOperator(Lt2 + L2 * Y);
  const auto keep = kept(f.space, K, 16);
  Accumulator acc;
  acc.residual(linalg::restrict_to<Complex>(AuxOperator(lhs - a + b), keep));
  acc.operand(linalg::restrict_to<Complex>(lhs, keep));
  acc.operand(linalg::restrict_to<Complex>(a, keep));
  acc.operand(linalg::restrict_to<Complex>(b, keep));
  return make_report("gLOD", f.params, K, acc.norms(), acc.scale, tol);
}

ResidualReport check_center(const LaxFamily& f, int K, double tol) {
  require_margin(f, K, "center");
  const auto keep = f.space.indices_up_to(2 * K);
  const auto ip = static_cast<std::size_t>(index_of(Pauli::Plus));
  const auto im = static_cast<std::size_t>(index_of(Pauli::Minus));
  const AuxOperator A = linalg::anticommutator(f.S[ip], f.S[im]);
  Accumulator acc;
  for (const auto* quad : {&f.S, &f.T}) {
    for (const auto& o : *quad) {
      acc.residual(linalg::restrict_to<Complex>(linalg::commutator(A, o), keep));
      acc.operand(linalg::restrict_to<Complex>(AuxOperator(A * o), keep));
    }
  }
  return make_report("center", f.params, K, acc.norms(), acc.scale, tol);
}

std::vector<ResidualReport> verify_family(const LaxFamily& family, int K, double tol) {
  std::vector<ResidualReport> out;
  out.push_back(check_id1(family, K, tol));
  out.push_back(check_id2(family, K, tol));
  out.push_back(check_id3(family, K, tol));
  auto [id4, id5] = check_id4_id5(family, K, tol);
  out.push_back(id4);
  out.push_back(id5);
  out.push_back(check_center(family, K, tol));
  out.push_back(check_gLOD(family, K, tol));
  return out;
}

std::vector<ResidualReport> verify_params(const LaxParams& p, int K, double tol) {
  return verify_family(build_family(K + kEdgeMargin, p), K, tol);
}

std::vector<LaxParams> sample_params(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius2(0.3 * 0.3, 1.5 * 1.5);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_int_distribution<int> pick(0, 5);
  const double us[6] = {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0};
  auto annulus = [&] { return std::polar(std::sqrt(radius2(rng)), angle(rng)); };
  std::vector<LaxParams> out;
  for (int i = 0; i < count; ++i) {
    LaxParams p;
    p.lambda = annulus();
    p.omega = annulus();
    p.u = us[pick(rng)];
    out.push_back(p);
  }
  return out;
}

}  // namespace hublax
