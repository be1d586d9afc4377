#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "hublax/types.hpp"

// Small operator algebra over Eigen dense and sparse matrices. Every function
// is templated on the matrix type so the same code serves auxiliary (sparse)
// and physical (sparse or dense) operators.
namespace hublax::linalg {

// Upper bound on the side length produced by kron(); larger requests are refused.
inline constexpr Index kDefaultMaxDim = Index{1} << 24;

template <typename Mat>
std::string shape_of(const Mat& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

template <typename A, typename B>
void require_composable(const A& a, const B& b, const char* op) {
  if (a.cols() != b.rows()) {
    throw DimensionError(std::string(op) + ": cannot compose " + shape_of(a) + " with " + shape_of(b));
  }
}

template <typename A, typename B>
void require_same_square(const A& a, const B& b, const char* op) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DimensionError(std::string(op) + ": operands must be square of equal size, got " + shape_of(a) +
                         " and " + shape_of(b));
  }
}

template <typename Mat>
Mat compose(const Mat& a, const Mat& b) {
  require_composable(a, b, "compose");
  return Mat(a * b);
}

template <typename Mat>
Mat commutator(const Mat& a, const Mat& b) {
  require_same_square(a, b, "commutator");
  return Mat(a * b - b * a);
}

template <typename Mat>
Mat anticommutator(const Mat& a, const Mat& b) {
  require_same_square(a, b, "anticommutator");
  return Mat(a * b + b * a);
}

template <typename Mat>
Mat dagger(const Mat& a) {
  return Mat(a.adjoint());
}

// Row-major tensor convention: combined index = i_a * dim_b + i_b.
template <typename Mat>
Mat kron(const Mat& a, const Mat& b, Index max_dim = kDefaultMaxDim) {
  const double rows = static_cast<double>(a.rows()) * static_cast<double>(b.rows());
  const double cols = static_cast<double>(a.cols()) * static_cast<double>(b.cols());
  if (rows > static_cast<double>(max_dim) || cols > static_cast<double>(max_dim)) {
    throw SizeRefusal("kron: result " + std::to_string(static_cast<long long>(rows)) + "x" +
                      std::to_string(static_cast<long long>(cols)) + " exceeds maximum dimension " +
                      std::to_string(max_dim));
  }
  if constexpr (std::is_base_of_v<Eigen::SparseMatrixBase<Mat>, Mat>) {
    Mat out = Eigen::kroneckerProduct(a, b).eval();
    out.makeCompressed();
    return out;
  } else {
    return Mat(Eigen::kroneckerProduct(a, b).eval());
  }
}

struct Norms {
  double frobenius = 0.0;
  double max_abs = 0.0;
};

template <typename Mat>
Norms norms(const Mat& a) {
  Norms n;
  if constexpr (std::is_base_of_v<Eigen::SparseMatrixBase<Mat>, Mat>) {
    double sq = 0.0;
    for (Index k = 0; k < a.outerSize(); ++k) {
      for (typename Mat::InnerIterator it(a, k); it; ++it) {
        const double m = std::abs(it.value());
        sq += m * m;
        n.max_abs = std::max(n.max_abs, m);
      }
    }
    n.frobenius = std::sqrt(sq);
  } else {
    n.frobenius = a.norm();
    n.max_abs = a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
  }
  return n;
}

// Drops stored entries with modulus <= threshold (threshold 0 removes explicit zeros).
template <typename Scalar>
SparseOperator<Scalar> pruned(SparseOperator<Scalar> a, double threshold = 0.0) {
  a.prune([threshold](Index, Index, const Scalar& v) { return std::abs(v) > threshold; });
  a.makeCompressed();
  return a;
}

template <typename Scalar>
SparseOperator<Scalar> identity(Index dim) {
  SparseOperator<Scalar> id(dim, dim);
  id.setIdentity();
  return id;
}

template <typename Scalar>
SparseOperator<Scalar> from_dense(const DenseOperator<Scalar>& d, double threshold = 0.0) {
  return pruned<Scalar>(d.sparseView(), threshold);
}

// Keeps rows and columns listed in `keep` (in order); the result is keep.size() square.
template <typename Scalar>
SparseOperator<Scalar> restrict_to(const SparseOperator<Scalar>& a, const std::vector<Index>& keep) {
  std::vector<Index> position(static_cast<std::size_t>(a.rows()), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) position[static_cast<std::size_t>(keep[i])] = static_cast<Index>(i);
  std::vector<Eigen::Triplet<Scalar>> trips;
  for (Index k = 0; k < a.outerSize(); ++k) {
    for (typename SparseOperator<Scalar>::InnerIterator it(a, k); it; ++it) {
      const Index r = position[static_cast<std::size_t>(it.row())];
      const Index c = position[static_cast<std::size_t>(it.col())];
      if (r >= 0 && c >= 0) trips.emplace_back(r, c, it.value());
    }
  }
  const auto n = static_cast<Index>(keep.size());
  SparseOperator<Scalar> out(n, n);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

}  // namespace hublax::linalg
