#include "hublax/lax_builder.hpp"

#include <cmath>

#include "hublax/linalg.hpp"

namespace hublax {

namespace {

const double kSqrt2 = std::sqrt(2.0);

double alt(int k) { return k % 2 == 0 ? 1.0 : -1.0; }

// Collects entries by vertex, silently dropping any that fall outside the truncation.
class Builder {
 public:
  explicit Builder(const AuxSpace& space) : space_(space) {}

  void put(const AuxVertex& row, const AuxVertex& col, Complex value) {
    auto r = space_.find(row);
    auto c = space_.find(col);
    if (r && c) trips_.emplace_back(*r, *c, value);
  }
  void diag(const AuxVertex& v, Complex value) { put(v, v, value); }

  AuxOperator build() const {
    AuxOperator m(space_.dim(), space_.dim());
    m.setFromTriplets(trips_.begin(), trips_.end());
    return linalg::pruned(std::move(m));
  }

 private:
  const AuxSpace& space_;
  std::vector<Triplet> trips_;
};

constexpr Sign P = Sign::Plus;
constexpr Sign M = Sign::Minus;

AuxOperator gauge_matrix(const AuxSpace& space, Complex xi, bool inverse) {
  Builder b(space);
  for (Index i = 0; i < space.dim(); ++i) {
    const AuxVertex& v = space.vertex(i);
    Complex f = 1.0;
    if (!v.half_integer() && v.twice_level >= 2) f = v.sign == P ? xi : 1.0 / xi;
    b.diag(v, inverse ? 1.0 / f : f);
  }
  return b.build();
}

}  // namespace

LaxParams conjugate(const LaxParams& p) {
  return LaxParams{std::conj(p.lambda), std::conj(p.omega), p.u, std::conj(p.gauge_xi)};
}

XkBlock xk_block(int k, const LaxParams& p) {
  const Complex w = p.omega;
  const Complex l2 = 1.0 - p.lambda * p.lambda;
  const double ku = k * p.u;
  XkBlock b;
  b.k = k;
  b.m(0, 0) = -(w + ku) * w;
  b.m(0, 1) = 1.0 - (w + ku) * w * l2;
  b.m(1, 0) = -ku * w;
  b.m(1, 1) = 1.0 - ku * w * l2;
  return b;
}

AuxQuad build_S(const AuxSpace& space, const LaxParams& p) {
  const int K = space.cutoff();
  Builder sp(space), sm(space), s0(space), sz(space);
  for (int k = 0; k <= K + 1; ++k) {
    sp.put(vtx(2 * k, P), vtx(2 * k + 1, P), kSqrt2);
    sp.put(vtx(2 * k + 1, M), vtx(2 * k + 2, M), kSqrt2);
    sm.put(vtx(2 * k + 1, P), vtx(2 * k, P), kSqrt2 * alt(k));
    sm.put(vtx(2 * k + 2, M), vtx(2 * k + 1, M), kSqrt2 * alt(k));
  }
  // Plaquette p = {p^+, (p+1/2)^+, (p+1/2)^-, (p+1)^-}. S^0 is the identity on even
  // plaquettes and lambda on the (p+1/2)^+, (p+1)^- corners of odd ones; S^z swaps
  // the roles of even and odd.
  for (int k = 0; k <= K + 1; ++k) {
    for (Sign s : {P, M}) s0.diag(vtx(4 * k + 1, s), 1.0);
    s0.diag(vtx(4 * k, P), 1.0);
    s0.diag(vtx(4 * k + 2, M), 1.0);
    if (k >= 1) {
      s0.diag(vtx(4 * k - 1, P), p.lambda);
      s0.diag(vtx(4 * k, M), p.lambda);
      for (Sign s : {P, M}) sz.diag(vtx(4 * k - 1, s), 1.0);
      sz.diag(vtx(4 * k - 2, P), 1.0);
      sz.diag(vtx(4 * k, M), 1.0);
    }
    sz.diag(vtx(4 * k + 1, P), p.lambda);
    sz.diag(vtx(4 * k + 2, M), p.lambda);
  }
  return {sp.build(), sm.build(), s0.build(), sz.build()};
}

AuxQuad build_T(const AuxQuad& S, const AuxOperator& G) {
  AuxQuad T;
  for (std::size_t i = 0; i < 4; ++i) T[i] = AuxOperator(G * S[i] * G);
  return T;
}

std::pair<AuxOperator, std::vector<XkBlock>> build_X(const AuxSpace& space, const LaxParams& p) {
  const int K = space.cutoff();
  Builder x(space);
  std::vector<XkBlock> blocks;
  x.diag(vtx(0, P), 1.0);
  for (int k = 0; k <= K; ++k) {
    blocks.push_back(xk_block(k, p));
    if (k == 0) continue;
    const XkBlock& b = blocks.back();
    const Sign order[2] = {M, P};
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) x.put(vtx(2 * k, order[r]), vtx(2 * k, order[c]), alt(k) * b.m(r, c));
    }
  }
  for (int k = 0; k < K; ++k) {
    for (Sign s : {P, M}) x.diag(vtx(2 * k + 1, s), p.omega * alt(k));
  }
  return {x.build(), std::move(blocks)};
}

AuxOperator invert_X(const AuxSpace& space, const AuxOperator& X) {
  Builder inv(space);
  auto entry = [&](const AuxVertex& r, const AuxVertex& c) { return X.coeff(space.index(r), space.index(c)); };
  auto invert_scalar = [](Complex v, const std::string& where) {
    if (std::abs(v) == 0.0) throw SingularRepresentation("X is singular at " + where + " (omega == 0?)");
    return 1.0 / v;
  };
  inv.diag(vtx(0, P), invert_scalar(entry(vtx(0, P), vtx(0, P)), "0+"));
  for (int t = 1; t <= 2 * space.cutoff(); ++t) {
    if (t % 2 == 1) {
      for (Sign s : {P, M}) inv.diag(vtx(t, s), invert_scalar(entry(vtx(t, s), vtx(t, s)), vtx(t, s).label()));
      continue;
    }
    const Sign order[2] = {M, P};
    Eigen::Matrix2cd b;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) b(r, c) = entry(vtx(t, order[r]), vtx(t, order[c]));
    const Complex det = b.determinant();
    if (std::abs(det) == 0.0) throw SingularRepresentation("X block at level " + std::to_string(t / 2) + " is singular");
    Eigen::Matrix2cd adj;
    adj << b(1, 1), -b(0, 1), -b(1, 0), b(0, 0);
    const Eigen::Matrix2cd bi = adj / det;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) inv.put(vtx(t, order[r]), vtx(t, order[c]), bi(r, c));
  }
  return inv.build();
}

AuxOperator build_Y(const AuxSpace& space, const LaxParams& p) {
  Builder y(space);
  const Complex v = -2.0 * p.lambda * p.u;
  for (int k = 0; k <= space.cutoff(); ++k) {
    y.diag(vtx(2 * k, P), v);
    if (k >= 1) y.diag(vtx(2 * k, M), v);
  }
  return y.build();
}

HattedOperators build_hatted(const AuxSpace& space, const LaxParams& p, const AuxOperator& G) {
  const int K = space.cutoff();
  const Complex w = p.omega;
  const Complex lam = p.lambda;
  const double c = 2.0 * kSqrt2;
  Builder ap(space), am(space), bp(space), bm(space), d0(space), dz(space);
  for (int k = 1; k <= K + 1; ++k) {
    const XkBlock b = xk_block(k, p);
    ap.put(vtx(2 * k, M), vtx(2 * k + 1, P), -c * alt(k) * b.mp());
    am.put(vtx(2 * k, P), vtx(2 * k - 1, M), -c * b.pm());
    bp.put(vtx(2 * k - 1, M), vtx(2 * k, P), c * alt(k) * b.mp());
    bm.put(vtx(2 * k + 1, P), vtx(2 * k, M), -c * b.pm());
  }
  for (int k = 0; k <= K + 1; ++k) {
    if (k >= 1) {
      d0.diag(vtx(4 * k - 2, P), 2.0 * w);
      d0.diag(vtx(4 * k, M), -2.0 * w);
      d0.diag(vtx(4 * k - 1, P), -2.0 * xk_block(2 * k - 1, p).pp());
      d0.diag(vtx(4 * k - 1, M), -2.0 * xk_block(2 * k, p).mm());
      dz.diag(vtx(4 * k - 2, P), 2.0 * lam * w);
      dz.diag(vtx(4 * k - 1, M), -2.0 * lam * xk_block(2 * k, p).mm());
    }
    d0.diag(vtx(4 * k, P), -2.0 * lam * w);
    d0.diag(vtx(4 * k + 1, M), 2.0 * lam * xk_block(2 * k + 1, p).mm());
    dz.diag(vtx(4 * k + 2, M), 2.0 * w);
    dz.diag(vtx(4 * k, P), -2.0 * w);
    dz.diag(vtx(4 * k + 1, P), 2.0 * xk_block(2 * k, p).pp());
    dz.diag(vtx(4 * k + 1, M), 2.0 * xk_block(2 * k + 1, p).mm());
  }
  HattedOperators h;
  const AuxOperator D0 = d0.build();
  const AuxOperator Dz = dz.build();
  h.SacuteX = {ap.build(), am.build(), D0, Dz};
  h.XSgrave = {bp.build(), bm.build(), D0, Dz};
  for (std::size_t i = 0; i < 4; ++i) {
    h.TacuteX[i] = AuxOperator(G * h.SacuteX[i] * G);
    h.XTgrave[i] = AuxOperator(G * h.XSgrave[i] * G);
  }
  return h;
}

LaxComponents build_components(int cutoff, const LaxParams& p) {
  LaxComponents c;
  c.params = p;
  c.space = build_aux_space(cutoff);
  c.G = spin_flip_aux(c.space);
  c.S = build_S(c.space, p);
  c.T = build_T(c.S, c.G);
  std::tie(c.X, c.blocks) = build_X(c.space, p);
  c.Y = build_Y(c.space, p);
  c.hatted = build_hatted(c.space, p, c.G);

  if (p.gauge_xi != Complex(1.0, 0.0)) {
    if (std::abs(p.gauge_xi) == 0.0) throw DomainError("gauge parameter xi must be nonzero");
    const AuxOperator D = gauge_matrix(c.space, p.gauge_xi, false);
    const AuxOperator Di = gauge_matrix(c.space, p.gauge_xi, true);
    auto g = [&](AuxOperator& o) { o = AuxOperator(Di * o * D); };
    for (auto* quad : {&c.S, &c.T, &c.hatted.SacuteX, &c.hatted.XSgrave, &c.hatted.TacuteX, &c.hatted.XTgrave})
      for (auto& o : *quad) g(o);
    g(c.X);
    g(c.Y);
  }
  return c;
}

LaxFamily assemble_lax(LaxComponents components) {
  if (std::abs(components.params.omega) == 0.0)
    throw SingularRepresentation("omega == 0: X is not invertible, Lax derivative undefined");
  LaxFamily f;
  static_cast<LaxComponents&>(f) = std::move(components);
  f.X_inv = invert_X(f.space, f.X);
  const auto& h = f.hatted;
  for (std::size_t s = 0; s < 4; ++s) {
    for (std::size_t t = 0; t < 4; ++t) {
      const AuxOperator ST = f.S[s] * f.T[t];
      const AuxOperator STX = ST * f.X;
      AuxOperator lt = f.S[s] * h.TacuteX[t];
      lt += f.T[t] * h.SacuteX[s];
      lt += f.X_inv * h.XSgrave[s] * f.T[t] * f.X;
      lt += f.X_inv * h.XTgrave[t] * f.S[s] * f.X;
      lt -= f.Y * STX;
      lt -= ST * f.Y * f.X;
      f.L[4 * s + t] = linalg::pruned(AuxOperator(STX));
      f.Ltilde[4 * s + t] = linalg::pruned(AuxOperator(0.5 * lt));
    }
  }
  return f;
}

LaxFamily build_family(int cutoff, const LaxParams& p) { return assemble_lax(build_components(cutoff, p)); }

}  // namespace hublax
