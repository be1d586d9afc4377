#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace hublax {

// Scalar and operator conventions shared by every module.
// - Physical site basis is sigma (x) tau with the ordering
//   (s_up t_up, s_up t_dn, s_dn t_up, s_dn t_dn); site 1 is the most significant factor.
// - sigma^+ = |up><dn|, sigma^z = diag(1, -1).
// - Auxiliary operators act on the truncated vertex space of AuxSpace.
using Complex = std::complex<double>;
using Index = Eigen::Index;

template <typename Scalar>
using SparseOperator = Eigen::SparseMatrix<Scalar>;
template <typename Scalar>
using DenseOperator = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using AuxOperator = SparseOperator<Complex>;
using PhysicalOperator = SparseOperator<Complex>;
using DenseMatrix = DenseOperator<Complex>;
using LocalOperator = Eigen::Matrix4cd;  // one ladder site (sigma x tau)
using Triplet = Eigen::Triplet<Complex>;

// Component labels J = {+, -, 0, z}; 0 is the identity.
enum class Pauli { Plus = 0, Minus = 1, Identity = 2, Z = 3 };
inline constexpr Pauli kPaulis[4] = {Pauli::Plus, Pauli::Minus, Pauli::Identity, Pauli::Z};

inline constexpr int index_of(Pauli p) { return static_cast<int>(p); }
inline const char* to_string(Pauli p) {
  switch (p) {
    case Pauli::Plus: return "+";
    case Pauli::Minus: return "-";
    case Pauli::Identity: return "0";
    case Pauli::Z: return "z";
  }
  return "?";
}

enum class Species { Sigma, Tau };

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parameter outside the documented domain (negative rates, n too small, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// omega == 0 makes X non-invertible.
class SingularRepresentation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SizeRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UniquenessViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hublax
