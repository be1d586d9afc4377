#pragma once

#include <optional>
#include <string>

#include "hublax/lax_builder.hpp"
#include "hublax/linalg.hpp"

namespace hublax {

inline constexpr double kDefaultTol = 1e-10;

struct ResidualReport {
  std::string name;
  LaxParams params;
  std::optional<LaxParams> partner;  // second parameter point for two-point checks
  int cutoff_K = 0;
  double residual_fro = 0.0;
  double residual_max = 0.0;
  double operand_scale = 0.0;  // largest Frobenius norm among the terms
  double tol = kDefaultTol;
  bool passed = false;
  std::string tier = "identity";  // "identity" gates, "conjecture" is informative

  double relative() const { return operand_scale > 0.0 ? residual_fro / operand_scale : residual_fro; }
};

inline ResidualReport make_report(std::string name, const LaxParams& params, int K, const linalg::Norms& residual,
                                  double scale, double tol) {
  ResidualReport r;
  r.name = std::move(name);
  r.params = params;
  r.cutoff_K = K;
  r.residual_fro = residual.frobenius;
  r.residual_max = residual.max_abs;
  r.operand_scale = scale;
  r.tol = tol;
  r.passed = residual.frobenius <= tol * scale;
  return r;
}

}  // namespace hublax
