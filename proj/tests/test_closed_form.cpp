#include <doctest.h>

#include <cmath>

#include "tokgraph/closed_form.hpp"
#include "tokgraph/error.hpp"
#include "tokgraph/reconcile.hpp"

using namespace tokgraph;

namespace {

double mae_poly(double t) { return 2 - 15 * t / 4 + 9 * t * t / 2 - 11 * t * t * t / 4 + t * t * t * t; }

const Reconciliation* find(const BoundReport& r, const std::string& quantity) {
  for (const auto& x : r.reconciliation)
    if (x.quantity == quantity) return &x;
  return nullptr;
}

}  // namespace

TEST_SUITE("closed_form") {

TEST_CASE("two-class MAE edge weights and polynomial") {
  const ClosedForm f = closed_form_bounds({2, 10, 2}, PartitionKind::mae_like());
  CHECK(f.intra == doctest::Approx(0.0045).epsilon(1e-15));
  CHECK(f.inter == doctest::Approx(0.0005).epsilon(1e-15));
  CHECK(f.bound_exact);
  CHECK(std::abs(f.bound - 1.4096) <= 1e-12);
  for (double t : {0.0, 0.1, 0.37, 0.5, 1.0}) CHECK(std::abs(mae_bound_polynomial(t) - mae_poly(t)) <= 1e-14);
}

TEST_CASE("multi-class MAE intra weight") {
  const ClosedForm f = closed_form_bounds({3, 10, 1}, PartitionKind::mae_like());
  CHECK(f.intra == doctest::Approx(0.003).epsilon(1e-15));
  CHECK_FALSE(f.bound_exact);
  CHECK(f.series_order >= 0);
}

TEST_CASE("unsupported closed forms") {
  CHECK_THROWS_AS(closed_form_bounds({1, 10, 0}, PartitionKind::mae_like()), ValidationError);
  CHECK_THROWS_AS(closed_form_bounds({2, 2, 0}, PartitionKind::from_blocks({{0, 1, 2, 3}})), ValidationError);
}

TEST_CASE("reconcile MAE against the edge-weight forms") {
  const BoundReport r = reconcile({2, 10, 2}, PartitionKind::mae_like());
  const Reconciliation* intra = find(r, "w_intra");
  const Reconciliation* inter = find(r, "w_inter");
  REQUIRE(intra);
  REQUIRE(inter);
  REQUIRE(intra->ratio);
  CHECK(std::abs(*intra->ratio - 1.0) <= 1e-9);
  CHECK(intra->agrees);
  REQUIRE(inter->ratio);
  REQUIRE(inter->constant_factor);
  CHECK(*inter->constant_factor == "1/1");
  CHECK(r.sum_lambda_sq == doctest::Approx(1.4096).epsilon(1e-12));
  CHECK(r.alpha == doctest::Approx(0.064).epsilon(1e-12));
  CHECK(r.bound_raw - mae_poly(0.2) == doctest::Approx(0.2 * 0.8).epsilon(1e-12));
  REQUIRE(r.sum_lambda_sq_eigen);
  CHECK(std::abs(*r.sum_lambda_sq_eigen - r.sum_lambda_sq) <= 1e-8);
}

TEST_CASE("class partition without overlap has zero inter weight") {
  const BoundReport r = reconcile({2, 10, 0}, PartitionKind::class_wise());
  REQUIRE(r.inter_weight);
  CHECK(*r.inter_weight == 0.0);
  CHECK(r.alpha == 0.0);
  REQUIRE(r.closed);
  CHECK(r.closed->inter == 0.0);
}

TEST_CASE("labeling error equals the intermediate cross term") {
  for (const auto& kind : {PartitionKind::mae_like(), PartitionKind::class_wise(), PartitionKind::cross_class(2)}) {
    const BoundReport r = reconcile({2, 12, 4}, kind, 1.0, 2.5, false);
    REQUIRE(r.composition);
    CHECK(r.composition->alpha == doctest::Approx(r.alpha).epsilon(1e-12));
  }
}

TEST_CASE("reconcile_value ratios") {
  const Reconciliation half = reconcile_value("q", "c", 1.0, 2.0);
  REQUIRE(half.constant_factor);
  CHECK(*half.constant_factor == "1/2");
  CHECK_FALSE(half.agrees);
  const Reconciliation zero = reconcile_value("q", "c", 0.0, 0.0);
  REQUIRE(zero.ratio);
  CHECK(*zero.ratio == 1.0);
  CHECK(zero.agrees);
}

TEST_CASE("report json carries constants and spec") {
  const auto j = to_json(reconcile({2, 10, 2}, PartitionKind::class_wise()));
  CHECK(j["constants"]["c1"] == 1.0);
  CHECK(j["constants"]["c2"] == 2.5);
  CHECK(j["spec"]["points_per_class"] == 10);
  CHECK(j["partition"] == "class");
}

}  // TEST_SUITE
