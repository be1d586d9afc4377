#include <doctest.h>

#include <cmath>

#include "hublax/algebra_verifier.hpp"
#include "hublax/lax_builder.hpp"
#include "hublax/linalg.hpp"

using namespace hublax;
namespace la = hublax::linalg;

namespace {

const LaxParams kP{Complex(0.7, 0.3), Complex(0.5, -0.8), 1.0};
const double r2 = std::sqrt(2.0);

Complex at(const AuxSpace& s, const AuxOperator& op, const char* row, const char* col) {
  return op.coeff(s.index(AuxVertex::parse(row)), s.index(AuxVertex::parse(col)));
}

double fro(const AuxOperator& a) { return la::norms(a).frobenius; }

bool close(Complex a, Complex b, double tol = 1e-13) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("S entries") {
  const AuxSpace s(3);
  const AuxQuad S = build_S(s, kP);
  CHECK(close(at(s, S[0], "0+", "1/2+"), r2));
  CHECK(close(at(s, S[0], "1/2-", "1-"), r2));
  CHECK(close(at(s, S[1], "3/2+", "1+"), -r2));
  CHECK(close(at(s, S[1], "1/2+", "0+"), r2));
  CHECK(at(s, S[3], "0+", "0+") == Complex(0.0));
  CHECK(close(at(s, S[3], "1-", "1-"), kP.lambda));
  CHECK(close(at(s, S[2], "0+", "0+"), 1.0));
  // S^+ has no edge leaving the cutoff
  CHECK(S[0].nonZeros() == 6);
}

TEST_CASE("T is the G image of S and commutes with it") {
  const AuxSpace s(4);
  const AuxOperator G = spin_flip_aux(s);
  const AuxQuad S = build_S(s, kP);
  const AuxQuad T = build_T(S, G);
  CHECK(close(at(s, T[0], "0+", "1/2-"), r2));
  CHECK(close(at(s, T[2], "1/2+", "1/2+"), at(s, S[2], "1/2-", "1/2-")));
  CHECK(close(at(s, T[2], "1/2+", "1/2+"), 1.0));
  for (int a = 0; a < 4; ++a) {
    CHECK(fro(AuxOperator(T[a] - G * S[a] * G)) == 0.0);
    for (int b = 0; b < 4; ++b) CHECK(fro(la::commutator(S[a], T[b])) < 1e-14);
  }
}

TEST_CASE("X entries and blocks") {
  const AuxSpace s(3);
  const auto [X, blocks] = build_X(s, kP);
  const Complex w = kP.omega, l = kP.lambda;
  CHECK(close(at(s, X, "1/2+", "1/2+"), w));
  CHECK(close(at(s, X, "3/2-", "3/2-"), -w));
  CHECK(close(at(s, X, "0+", "0+"), 1.0));
  CHECK(close(at(s, X, "1-", "1+"), -(1.0 - (w + kP.u) * w * (1.0 - l * l))));
  CHECK(close(at(s, X, "2+", "2-"), -2.0 * kP.u * w));
  REQUIRE(blocks.size() == 4);
  CHECK(blocks[0].pp() == Complex(1.0));
  CHECK(close(blocks[0].mm(), -w * w, 1e-15));
}

TEST_CASE("X_k determinant and recurrences over random parameters") {
  for (const LaxParams& p : sample_params(11, 6)) {
    const Complex w = p.omega, l = p.lambda;
    CHECK(xk_block(0, p).pp() == Complex(1.0));
    CHECK(xk_block(0, p).mm() == -w * w);
    for (int k = 0; k <= 20; ++k) {
      const XkBlock b = xk_block(k, p);
      const XkBlock c = xk_block(k + 1, p);
      CHECK(close(b.m.determinant(), -w * w, 1e-12));
      CHECK(close(c.mm() - b.mm(), -p.u * w, 1e-12));
      CHECK(close(c.pp() - b.pp(), -p.u * w * (1.0 - l * l), 1e-12));
      CHECK(close(b.pm(), -double(k) * p.u * w, 1e-12));
    }
  }
}

TEST_CASE("Y entries; G commutes with X and Y; X commutes with Y") {
  const AuxSpace s(3);
  const AuxOperator Y = build_Y(s, kP);
  CHECK(close(at(s, Y, "0+", "0+"), -2.0 * kP.lambda * kP.u));
  CHECK(close(at(s, Y, "2-", "2-"), -2.0 * kP.lambda * kP.u));
  CHECK(at(s, Y, "1/2-", "1/2-") == Complex(0.0));
  const AuxOperator X = build_X(s, kP).first;
  const AuxOperator G = spin_flip_aux(s);
  CHECK(fro(la::commutator(X, Y)) < 1e-14);
  CHECK(fro(la::commutator(G, X)) == 0.0);
  CHECK(fro(la::commutator(G, Y)) == 0.0);
}

TEST_CASE("hatted operators") {
  const AuxSpace s(3);
  const AuxOperator G = spin_flip_aux(s);
  const HattedOperators h = build_hatted(s, kP, G);
  const XkBlock x1 = xk_block(1, kP);
  // -2 sqrt2 (-1)^1 X^{-+}_1 in the (-,+) ordering convention
  CHECK(close(at(s, h.SacuteX[0], "1-", "3/2+"), 2.0 * r2 * x1.mp()));
  CHECK(close(at(s, h.SacuteX[3], "1/2+", "1/2+"), 2.0));
  CHECK(fro(AuxOperator(h.SacuteX[2] - h.XSgrave[2])) == 0.0);
  CHECK(fro(AuxOperator(h.SacuteX[3] - h.XSgrave[3])) == 0.0);
  for (int a = 0; a < 4; ++a) CHECK(fro(AuxOperator(h.TacuteX[a] - G * h.SacuteX[a] * G)) == 0.0);
}

TEST_CASE("assembled family") {
  const LaxFamily f = build_family(4, kP);
  const AuxSpace& s = f.space;
  CHECK(close(at(s, f.l(Pauli::Identity, Pauli::Identity), "0+", "0+"), 1.0));
  const AuxOperator XiX = f.X_inv * f.X;
  CHECK(fro(AuxOperator(XiX - la::identity<Complex>(s.dim()))) < 1e-13);
  for (int k = 1; k <= 4; ++k) {
    const Index m = s.index(vtx(2 * k, Sign::Minus)), pl = s.index(vtx(2 * k, Sign::Plus));
    Eigen::Matrix2cd inv;
    inv << f.X_inv.coeff(m, m), f.X_inv.coeff(m, pl), f.X_inv.coeff(pl, m), f.X_inv.coeff(pl, pl);
    CHECK(close(inv.determinant(), -1.0 / (kP.omega * kP.omega), 1e-12));
  }
  for (int st = 0; st < 16; ++st) {
    const int a = st / 4, b = st % 4;
    CHECK(fro(AuxOperator(f.L[static_cast<std::size_t>(st)] - f.S[a] * f.T[b] * f.X)) < 1e-14);
  }
}

TEST_CASE("omega = 0 is singular") {
  LaxParams p = kP;
  p.omega = 0.0;
  CHECK_THROWS_AS(build_family(3, p), SingularRepresentation);
}

TEST_CASE("anticommutator {S+, S-} is level diagonal") {
  const AuxSpace s(4);
  const AuxQuad S = build_S(s, kP);
  const AuxOperator A = la::anticommutator(S[0], S[1]);
  for (Index k = 0; k < A.outerSize(); ++k)
    for (AuxOperator::InnerIterator it(A, k); it; ++it)
      if (std::abs(it.value()) > 1e-14) CHECK(s.twice_level(it.row()) == s.twice_level(it.col()));
}

TEST_CASE("gauge acts as a diagonal similarity on every component") {
  LaxParams g = kP;
  g.gauge_xi = Complex(1.3, -0.4);
  const LaxFamily a = build_family(4, kP), b = build_family(4, g);
  const AuxSpace& s = a.space;
  std::vector<Triplet> t;
  for (Index i = 0; i < s.dim(); ++i) {
    const AuxVertex& v = s.vertex(i);
    Complex d = 1.0;
    if (!v.half_integer() && v.twice_level >= 2) d = v.sign == Sign::Plus ? g.gauge_xi : 1.0 / g.gauge_xi;
    t.emplace_back(i, i, d);
  }
  AuxOperator D(s.dim(), s.dim()), Di(s.dim(), s.dim());
  D.setFromTriplets(t.begin(), t.end());
  for (auto& x : t) x = Triplet(x.row(), x.col(), 1.0 / x.value());
  Di.setFromTriplets(t.begin(), t.end());
  for (int st = 0; st < 16; ++st) {
    const AuxOperator expect = Di * a.L[static_cast<std::size_t>(st)] * D;
    CHECK(fro(AuxOperator(b.L[static_cast<std::size_t>(st)] - expect)) < 1e-12 * std::max(1.0, fro(expect)));
  }
}
