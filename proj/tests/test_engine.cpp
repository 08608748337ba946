#include "doctest.h"

#include "wonder/blowup.hpp"
#include "wonder/engine.hpp"
#include "wonder/errors.hpp"
#include "wonder/models.hpp"

using namespace wonder;

namespace {

void check_ring(const WonderRing& ring, const std::vector<Index>& dims) {
  CHECK(ring.dims() == dims);
  CHECK(ring.li().poincare == dims);
  CHECK(!find_axiom_violation(ring.algebra()).has_value());
  const auto sc = socle_check(ring.algebra(), ring.diagram().socle_degree());
  REQUIRE(sc.ok());
  CHECK(pd_verdict(*sc.pairing).is_pd);
}

}  // namespace

TEST_CASE("two points on P1 need no blow-up") {
  WonderRing ring(fm_power({Fiber::P1, 2}));
  check_ring(ring, {1, 2, 1});
  CHECK(ring.build_stats().cap_hits == 0);
}

TEST_CASE("three points on P1") {
  WonderRing ring(fm_power({Fiber::P1, 3}));
  check_ring(ring, {1, 4, 4, 1});
  CHECK(ring.build_stats().measure_failures == 0);
  // For a curve blown up in a threefold E^3 = -deg N; the small diagonal has
  // N = T_P1 ⊕ T_P1 of degree 4.
  const auto& alg = ring.algebra();
  const RatVector e = ring.exceptional(ring.diagram().element_index("D123"));
  const auto names = ring.names();
  const RatVector pt = alg.multiply(alg.multiply(names.at("h1"), names.at("h2")), names.at("h3"));
  const Index top = alg.offset(3);
  REQUIRE(!pt(top).is_zero());
  const RatVector e3 = alg.power(e, 3);
  CHECK(e3(top) / pt(top) == Rat(-4));
}

TEST_CASE("pinned model on (P1)^2") {
  WonderRing ring(keel_model(2));
  check_ring(ring, {1, 5, 1});
}

TEST_CASE("ring products agree with the rewriting system") {
  WonderRing ring(fm_power({Fiber::P1, 3}));
  const auto& alg = ring.algebra();
  RewriteStats stats;
  for (Index a = 0; a < alg.dim(); ++a)
    for (Index b = 0; b < alg.dim(); ++b) {
      const RatVector direct = ring.multiply_basis(a, b, &stats);
      CHECK(direct == alg.multiply(alg.basis(a), alg.basis(b)));
    }
  CHECK(stats.measure_failures == 0);
  CHECK(stats.cap_hits == 0);
}

TEST_CASE("a tiny rewrite cap is reported") {
  CHECK_THROWS_AS(WonderRing(fm_power({Fiber::P1, 3}), 0), ComputationError);
}

TEST_CASE("single-center diagrams match the direct blow-up") {
  for (std::uint64_t seed = 0; seed < 8; ++seed)
    for (bool broken : {false, true}) {
      const auto data = synthetic_blowup_data(seed, broken, broken);
      const auto direct = blow_up(data.y, data.z, data.pullback, data.pushforward, data.chern);
      WonderRing ring(single_center_diagram(data));
      CHECK(ring.dims() == direct.algebra.dims());
      const auto a = socle_check(ring.algebra(), data.y.top_degree());
      const auto b = socle_check(direct.algebra, data.y.top_degree());
      REQUIRE(a.ok());
      REQUIRE(b.ok());
      CHECK(pd_verdict(*a.pairing).discrepancy == pd_verdict(*b.pairing).discrepancy);
    }
  WonderRing broken(single_center_diagram(broken_center_data()));
  CHECK(broken.dims() == std::vector<Index>{1, 3, 5, 3, 1});
  const auto sc = socle_check(broken.algebra(), 4);
  REQUIRE(sc.ok());
  CHECK(!pd_verdict(*sc.pairing).is_pd);
}

TEST_CASE("product of two point blow-ups") {
  WonderRing ring(product_diagram(single_center_diagram(point_in_p2(), "P"),
                                  single_center_diagram(point_in_p2(), "Q")));
  check_ring(ring, {1, 4, 6, 4, 1});
  const auto names = ring.names();
  const auto& alg = ring.algebra();
  // E_P^2 E_Q^2 = (-pt)(-pt) = pt x pt = h^2 k^2 relative to the ambient.
  const RatVector lhs = alg.multiply(alg.power(names.at("E_P"), 2), alg.power(names.at("E_Q"), 2));
  CHECK(lhs == ring.ambient_class(ring.diagram().burrow(ring.diagram().ambient()).algebra.basis(
                   ring.diagram().burrow(ring.diagram().ambient()).algebra.dim() - 1)));
}
