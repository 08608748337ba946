#include "doctest.h"

#include "wonder/duality.hpp"
#include "wonder/models.hpp"

using namespace wonder;

namespace {

// Discrepancy of A ⊗ B from the factors: dim - rank, where ranks multiply.
std::vector<Index> tensor_discrepancy(const GradedAlgebra& a, const GradedAlgebra& b) {
  const auto pa = pd_summary(a, a.top_degree());
  const auto pb = pd_summary(b, b.top_degree());
  std::vector<Index> out(a.dims().size() + b.dims().size() - 1, 0);
  for (size_t i = 0; i < a.dims().size(); ++i)
    for (size_t j = 0; j < b.dims().size(); ++j) {
      const Index ra = a.dims()[i] - pa.discrepancy[i];
      const Index rb = b.dims()[j] - pb.discrepancy[j];
      out[i + j] += a.dims()[i] * b.dims()[j] - ra * rb;
    }
  return out;
}

Index total(const std::vector<Index>& v) {
  Index s = 0;
  for (Index x : v) s += x;
  return s;
}

}  // namespace

TEST_CASE("Poincare duality models have clean reports") {
  for (const auto& dg : {fm_power({Fiber::P1, 3}), keel_model(2), fm_power({Fiber::Curve, 3, 2, 2})}) {
    WonderRing ring(dg);
    const auto eq = pd_equivalence_report(ring);
    CHECK(eq.ok());
    CHECK(eq.ring.pd);
    CHECK(eq.contributing_pd);
    CHECK(eq.failing.empty());
    const auto blocks = block_structure_check(ring);
    CHECK(blocks.ok());
    CHECK(blocks.order.size() == ring.li().summands.size());
    const auto table = discrepancy_table(ring);
    CHECK(table.sums_match);
    CHECK(total(table.ring) == 0);
  }
}

TEST_CASE("a broken center breaks the ring") {
  WonderRing ring(single_center_diagram(broken_center_data()));
  const auto eq = pd_equivalence_report(ring);
  CHECK(!eq.ring.pd);
  CHECK(!eq.contributing_pd);
  CHECK(eq.failing == std::vector<std::string>{"Z"});
  CHECK(eq.ok());
  const auto table = discrepancy_table(ring);
  REQUIRE(table.has_socle);
  CHECK(table.sums_match);
  CHECK(table.block_sum == table.ring);
  CHECK(total(table.ring) > 0);
}

TEST_CASE("synthetic broken inputs keep the equivalence") {
  for (std::uint64_t seed = 0; seed < 6; ++seed)
    for (bool bc : {false, true})
      for (bool ba : {false, true}) {
        WonderRing ring(single_center_diagram(synthetic_blowup_data(seed, bc, ba)));
        const auto eq = pd_equivalence_report(ring);
        CHECK(eq.ok());
        CHECK(eq.ring.pd == (!bc && !ba));
        const auto table = discrepancy_table(ring);
        REQUIRE(table.has_socle);
        CHECK(table.sums_match);
      }
}

TEST_CASE("discrepancies of two broken burrows add up") {
  const auto a = single_center_diagram(broken_center_data(), "P");
  const auto b = single_center_diagram(broken_center_data(), "Q");
  WonderRing ra(a), rb(b), prod(product_diagram(a, b));
  const auto eq = pd_equivalence_report(prod);
  CHECK(eq.ok());
  CHECK(!eq.ring.pd);
  const auto table = discrepancy_table(prod);
  CHECK(table.sums_match);
  CHECK(table.ring == tensor_discrepancy(ra.algebra(), rb.algebra()));
}

TEST_CASE("an empty building set gives a single block") {
  const auto y = synthetic_broken({1, 3, 3, 1}, 1, 5);
  WonderRing ring(ambient_only_diagram(y));
  CHECK(ring.li().summands.size() == 1);
  CHECK(ring.algebra() == y);
  const auto table = discrepancy_table(ring);
  CHECK(table.sums_match);
  CHECK(table.by_summand.size() == 1);
  CHECK(table.ring == pd_summary(y, 3).discrepancy);
  CHECK(table.ring == std::vector<Index>{0, 1, 1, 0});
}

TEST_CASE("kernel elements of a broken ambient survive the blow-up") {
  const auto broken = ambient_only_diagram(synthetic_broken({1, 2, 2, 1}, 1, 7));
  WonderRing ring(product_diagram(single_center_diagram(point_in_p2(), "P"), broken));
  const auto& y = ring.diagram().burrow(ring.diagram().ambient()).algebra;
  const auto [pull, push] = ambient_maps(ring);
  const auto report = pullback_transfer_check(y, ring.algebra(), pull, push);
  for (const auto& f : report.hypothesis_failures) MESSAGE(f);
  for (const auto& f : report.conclusion_failures) MESSAGE(f);
  CHECK(report.ok());
  CHECK(report.kernel_elements > 0);
}

TEST_CASE("transfer on a Poincare duality ambient has no kernel") {
  WonderRing ring(fm_power({Fiber::P1, 3}));
  const auto& y = ring.diagram().burrow(ring.diagram().ambient()).algebra;
  const auto [pull, push] = ambient_maps(ring);
  const auto report = pullback_transfer_check(y, ring.algebra(), pull, push);
  CHECK(report.ok());
  CHECK(report.kernel_elements == 0);
}

TEST_CASE("a zero pushforward violates the hypotheses") {
  WonderRing ring(single_center_diagram(point_in_p2()));
  const auto& y = ring.diagram().burrow(ring.diagram().ambient()).algebra;
  const auto [pull, push] = ambient_maps(ring);
  const GradedMap zero(ring.algebra().dims(), y.dims(), 0,
                       zero_matrix<Rat>(y.dim(), ring.algebra().dim()));
  const auto report = pullback_transfer_check(y, ring.algebra(), pull, zero);
  CHECK(!report.hypothesis_failures.empty());
  CHECK(!report.ok());
}
