#include "doctest.h"

#include "wonder/errors.hpp"
#include "wonder/models.hpp"

using namespace wonder;

namespace {

bool validates(const BurrowDiagram& dg) {
  const auto report = validate(dg);
  for (const auto& f : report.failures()) MESSAGE(f.name << ": " << f.detail);
  return report.ok();
}

// Bell numbers by the recurrence B(n+1) = sum binom(n, k) B(k).
long bell(int n) {
  std::vector<long> b{1};
  for (int m = 0; m < n; ++m) {
    long s = 0;
    for (int k = 0; k <= m; ++k) s += static_cast<long>(binomial(m, k).value().get_num().get_si()) * b[k];
    b.push_back(s);
  }
  return b[static_cast<size_t>(n)];
}

}  // namespace

TEST_CASE("set partitions are counted by Bell numbers") {
  for (int n = 1; n <= 6; ++n) CHECK(static_cast<long>(set_partitions(n).size()) == bell(n));
  const auto p3 = set_partitions(3);
  for (const auto& part : p3)
    for (size_t i = 1; i < part.size(); ++i) CHECK(part[i - 1][0] < part[i][0]);
}

TEST_CASE("fiber powers of P1") {
  const auto dg = fm_power({Fiber::P1, 3});
  CHECK(dg.element_count() == 4);
  CHECK(dg.burrow_count() == 5);
  CHECK(dg.socle_degree() == 3);
  const auto& y = dg.burrow(dg.ambient()).algebra;
  CHECK(y.dims() == std::vector<Index>{1, 3, 3, 1});
  const int small = dg.burrow_index("D123");
  CHECK(dg.burrow(small).algebra.dims() == std::vector<Index>{1, 1});
  CHECK(dg.burrow(dg.burrow_index("D12")).codim == 1);
  CHECK(dg.meet(dg.burrow_index("D12"), dg.burrow_index("D13")) == small);
  CHECK(validates(dg));

  // [D12] = h1 + h2 on (P1)^2.
  const auto d2 = fm_power({Fiber::P1, 2});
  const auto& y2 = d2.burrow(d2.ambient()).algebra;
  const RatVector expected = y2.basis(*y2.find_label("h1")) + y2.basis(*y2.find_label("h2"));
  CHECK(d2.fundamental_class(d2.burrow_index("D12"), d2.ambient()) == expected);
  CHECK(d2.burrow(d2.ambient()).named.at("D12") == expected);
}

TEST_CASE("fiber powers of P2 and the curve validate") {
  const auto p2 = fm_power({Fiber::P2, 2});
  CHECK(p2.burrow(p2.ambient()).algebra.dims() == std::vector<Index>{1, 2, 3, 2, 1});
  CHECK(validates(p2));

  // Tautological subring of C^2 for g = 2: 1; K1, K2, D12; K1K2 ... pt.
  const auto c2 = fm_power({Fiber::Curve, 2, 2, 2});
  CHECK(c2.burrow(c2.ambient()).algebra.dims() == std::vector<Index>{1, 3, 1});
  CHECK(validates(c2));

  const auto c3 = fm_power({Fiber::Curve, 3, 2, 2});
  CHECK(validates(c3));
  const auto c3b = fm_power({Fiber::Curve, 3, 3, 2});
  CHECK(c3b.element_count() == 1);
  CHECK(validates(c3b));
}

TEST_CASE("diagonal self-intersection on a curve is 2 - 2g") {
  for (int g : {0, 2, 3}) {
    const auto dg = fm_power({Fiber::Curve, 2, 2, g});
    const auto& y = dg.burrow(dg.ambient()).algebra;
    const RatVector d = dg.burrow(dg.ambient()).named.at("D12");
    const RatVector k = dg.burrow(dg.ambient()).named.at("K1");
    const RatVector dd = y.multiply(d, d);
    // D^2 = -K1 D and deg(K1 D) = 2g - 2.
    CHECK(dd == -y.multiply(k, d));
    // K1 D = (2g-2) [pt x pt] and K1 K2 = (2g-2)^2 [pt x pt].
    if (g != 0) {
      const RatVector k2 = dg.burrow(dg.ambient()).named.at("K2");
      CHECK(y.multiply(k, k2) == Rat(2 * g - 2) * y.multiply(k, d));
    }
  }
}

TEST_CASE("fiber power arguments are checked") {
  CHECK_THROWS_AS(fm_power({Fiber::P1, 1}), InputError);
  CHECK_THROWS_AS(fm_power({Fiber::P2, 3, 3}), InputError);
  CHECK_THROWS_AS(fm_power({Fiber::Curve, 2, 2, 1}), InputError);
  CHECK_THROWS_AS(keel_model(0), InputError);
}

TEST_CASE("pinned model on (P1)^n") {
  const auto k1 = keel_model(1);
  CHECK(k1.element_count() == 3);
  CHECK(validates(k1));
  const auto k2 = keel_model(2);
  // D12 and D1_p, D2_p, D12_p.
  CHECK(k2.element_count() == 1 + 3 * 3);
  CHECK(k2.burrow(k2.burrow_index("D12_0")).codim == 2);
  CHECK(k2.burrow_of(std::vector<std::string>{"D1_0", "D2_0"}) == std::optional<std::string>("D12_0"));
  CHECK(!k2.burrow_of(std::vector<std::string>{"D1_0", "D1_1"}).has_value());
  CHECK(validates(k2));
}

TEST_CASE("synthetic Gorenstein algebras have the requested shape and are PD") {
  const std::vector<std::vector<Index>> shapes{{1}, {1, 1}, {1, 2, 1}, {1, 3, 1}, {1, 2, 2, 1},
                                               {1, 3, 3, 1}, {1, 3, 5, 3, 1}, {1, 1, 1, 1}};
  for (const auto& s : shapes)
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto g = synthetic_gorenstein(s, seed);
      CHECK(g.dims() == s);
      CHECK(!find_axiom_violation(g).has_value());
      const auto sc = socle_check(g, g.top_degree());
      REQUIRE(sc.ok());
      CHECK(pd_verdict(*sc.pairing).is_pd);
    }
  CHECK_THROWS_AS(synthetic_gorenstein({1, 2}, 0), InputError);
  CHECK_THROWS_AS(synthetic_gorenstein({2, 1, 2}, 0), InputError);
}

TEST_CASE("synthetic broken algebras fail PD exactly at the broken degrees") {
  const auto b = synthetic_broken({1, 3, 3, 1}, 1, 7);
  CHECK(b.dims() == std::vector<Index>{1, 3, 3, 1});
  CHECK(!find_axiom_violation(b).has_value());
  const auto sc = socle_check(b, 3);
  REQUIRE(sc.ok());
  const auto v = pd_verdict(*sc.pairing);
  CHECK(!v.is_pd);
  CHECK(v.discrepancy == std::vector<Index>{0, 1, 1, 0});
  CHECK_THROWS_AS(synthetic_broken({1, 1, 1}, 1, 0), InputError);
  CHECK_THROWS_AS(synthetic_broken({1, 3, 1}, 0, 0), InputError);
}

TEST_CASE("fixture diagrams validate") {
  CHECK(validates(single_center_diagram(point_in_p2())));
  const auto broken = single_center_diagram(broken_center_data());
  CHECK(validates(broken));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CHECK(validates(single_center_diagram(synthetic_blowup_data(seed, false, false))));
    CHECK(validates(single_center_diagram(synthetic_blowup_data(seed, true, true))));
  }
}

TEST_CASE("product diagrams") {
  const auto a = single_center_diagram(point_in_p2(), "P");
  const auto b = single_center_diagram(point_in_p2(), "Q");
  const auto prod = product_diagram(a, b);
  CHECK(prod.element_count() == 2);
  CHECK(prod.burrow_count() == 4);
  CHECK(prod.socle_degree() == 4);
  CHECK(prod.is_nest(singleton(0) | singleton(1)));
  CHECK(prod.burrow_of(std::vector<std::string>{"P", "Q"}) == std::optional<std::string>("P*Q"));
  CHECK(validates(prod));
  CHECK_THROWS_AS(product_diagram(a, a), InputError);
}
