#include <doctest.h>

#include "hublax/transfer_commutativity.hpp"

using namespace hublax;

TEST_CASE("self commutation vanishes") {
  const SpectralPoint p{Complex(0.5, 0.4), Complex(-0.3, 0.9)};
  const auto r = check_commutativity(3, 1.0, {{p, p}});
  REQUIRE(r.size() == 1);
  CHECK(r[0].residual_fro < 1e-12 * r[0].operand_scale);
  CHECK(r[0].tier == "conjecture");
  REQUIRE(r[0].partner.has_value());
}

TEST_CASE("commuting family on random pairs") {
  const auto pairs = sample_pairs(42, 4);
  for (int n = 2; n <= 3; ++n)
    for (double u : {0.5, 2.0})
      for (const auto& r : check_commutativity(n, u, pairs)) CHECK_MESSAGE(r.passed, "relative " << r.relative());
}

TEST_CASE("lambda = 0 slice") {
  auto pairs = sample_pairs(9, 3);
  for (auto& pr : pairs) pr.first.lambda = pr.second.lambda = 0.0;
  for (const auto& r : check_commutativity(3, 1.0, pairs)) CHECK(r.passed);
}

TEST_CASE("residuals are gauge invariant") {
  const auto pairs = sample_pairs(5, 2);
  const auto a = check_commutativity(3, 1.0, pairs);
  const auto b = check_commutativity(3, 1.0, pairs, 0, kDefaultTol, Complex(0.7, 0.4));
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i].relative() - b[i].relative()) < 1e-12);
}

TEST_CASE("pair sampling is deterministic") {
  const auto a = sample_pairs(1, 3), b = sample_pairs(1, 3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].first.lambda == b[i].first.lambda);
    CHECK(a[i].second.omega == b[i].second.omega);
    CHECK(std::abs(a[i].first.omega) >= 0.3);
    CHECK(std::abs(a[i].second.lambda) <= 1.5);
  }
}
