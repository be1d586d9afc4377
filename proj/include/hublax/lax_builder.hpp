#pragma once

#include <array>
#include <utility>
#include <vector>

#include "hublax/aux_space.hpp"
#include "hublax/types.hpp"

namespace hublax {

struct LaxParams {
  Complex lambda{0.0, 0.0};  // spectral parameter
  Complex omega{0.0, 0.0};   // representation parameter
  double u = 0.0;            // U / (2 t_h)
  // |k^+-> -> xi^{+-1} |k^+-> on integer levels k >= 1; 1 reproduces the printed gauge.
  Complex gauge_xi{1.0, 0.0};
};

LaxParams conjugate(const LaxParams& p);

// 2x2 block on span(k^-, k^+), rows and columns ordered (-, +). The (-1)^k sign
// carried by X is not included.
struct XkBlock {
  int k = 0;
  Eigen::Matrix2cd m;

  Complex mm() const { return m(0, 0); }
  Complex mp() const { return m(0, 1); }
  Complex pm() const { return m(1, 0); }
  Complex pp() const { return m(1, 1); }
};

XkBlock xk_block(int k, const LaxParams& p);

using AuxQuad = std::array<AuxOperator, 4>;  // indexed by index_of(Pauli)

AuxQuad build_S(const AuxSpace& space, const LaxParams& p);
AuxQuad build_T(const AuxQuad& S, const AuxOperator& G);
std::pair<AuxOperator, std::vector<XkBlock>> build_X(const AuxSpace& space, const LaxParams& p);
// Blockwise inverse of any operator with the X sparsity pattern.
AuxOperator invert_X(const AuxSpace& space, const AuxOperator& X);
AuxOperator build_Y(const AuxSpace& space, const LaxParams& p);

// Products S'^s X and X S`^s, and their G-conjugates for the T family.
struct HattedOperators {
  AuxQuad SacuteX;
  AuxQuad XSgrave;
  AuxQuad TacuteX;
  AuxQuad XTgrave;
};

HattedOperators build_hatted(const AuxSpace& space, const LaxParams& p, const AuxOperator& G);

// Everything needed by assemble_lax. Fields are public and mutable so that
// individual operators can be replaced before assembly.
struct LaxComponents {
  LaxParams params;
  AuxSpace space{1};
  AuxOperator G;
  AuxQuad S;
  AuxQuad T;
  AuxOperator X;
  AuxOperator Y;
  std::vector<XkBlock> blocks;  // k = 0..cutoff, printed gauge
  HattedOperators hatted;
};

LaxComponents build_components(int cutoff, const LaxParams& p);

struct LaxFamily : LaxComponents {
  AuxOperator X_inv;
  std::array<AuxOperator, 16> L;       // coefficient of sigma^s tau^t, index 4 s + t
  std::array<AuxOperator, 16> Ltilde;

  const AuxOperator& l(Pauli s, Pauli t) const { return L[static_cast<std::size_t>(4 * index_of(s) + index_of(t))]; }
  const AuxOperator& ltilde(Pauli s, Pauli t) const {
    return Ltilde[static_cast<std::size_t>(4 * index_of(s) + index_of(t))];
  }
};

// Throws SingularRepresentation when omega == 0.
LaxFamily assemble_lax(LaxComponents components);
LaxFamily build_family(int cutoff, const LaxParams& p);

}  // namespace hublax
