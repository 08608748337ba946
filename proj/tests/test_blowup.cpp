#include <doctest.h>

#include "wonder/blowup.hpp"

using namespace wonder;

namespace {

GradedMap map_from(const GradedAlgebra& src, const GradedAlgebra& dst, int shift,
                   std::initializer_list<std::tuple<Index, Index, int>> entries) {
  RatMatrix m = zero_matrix<Rat>(dst.dim(), src.dim());
  for (auto [r, c, v] : entries) m(r, c) = Rat(v);
  return GradedMap(src.dims(), dst.dims(), shift, m);
}

struct PointInP2 {
  GradedAlgebra y = truncated_polynomial(2);
  GradedAlgebra z;
  GradedMap pull = map_from(y, z, 0, {{0, 0, 1}});
  GradedMap push = map_from(z, y, 2, {{2, 0, 1}});
  ChernPolynomial chern{{y.zero(), y.basis(2)}};
};

}  // namespace

TEST_CASE("point blow-up of the projective plane") {
  PointInP2 f;
  const auto r = blow_up(f.y, f.z, f.pull, f.push, f.chern);
  const auto& a = r.algebra;
  CHECK(a.dims() == std::vector<Index>{1, 2, 1});
  const RatVector h = r.from_ambient.apply(f.y.basis(1));
  const RatVector pt = r.from_ambient.apply(f.y.basis(2));
  // Hand expansion of P(-E) = E^2 - 0*E + h^2 = 0.
  CHECK(a.multiply(r.exceptional, r.exceptional) == RatVector(-pt));
  CHECK(a.multiply(h, r.exceptional) == a.zero());
  CHECK(a.multiply(h, h) == pt);
  const auto rep = pd_propagation_check(f.y, f.z, r);
  CHECK(rep.before_pd);
  CHECK(rep.after_pd);
  CHECK(rep.ok());
  CHECK(!find_axiom_violation(a));
}

TEST_CASE("inconsistent chern data is rejected") {
  PointInP2 f;
  ChernPolynomial wrong{{f.y.zero(), RatVector(f.y.basis(2) * Rat(2))}};
  CHECK_THROWS(blow_up(f.y, f.z, f.pull, f.push, wrong));
  const auto zero_pull = map_from(f.y, f.z, 0, {});
  CHECK_THROWS(blow_up(f.y, f.z, zero_pull, f.push, f.chern));
}

TEST_CASE("divisorial center returns the ambient ring") {
  const auto y = truncated_polynomial(1);
  const GradedAlgebra z;
  const auto r = blow_up(y, z, map_from(y, z, 0, {{0, 0, 1}}), map_from(z, y, 1, {{1, 0, 1}}),
                         ChernPolynomial{{y.basis(1)}});
  CHECK(r.algebra == y);
  CHECK(r.exceptional == y.basis(1));
}

TEST_CASE("small diagonal of (P1)^3") {
  const auto p1 = [](const char* v) { return truncated_polynomial(1, v); };
  const auto y = tensor_product(tensor_product(p1("h1"), p1("h2")), p1("h3"));
  const auto z = p1("p");
  const auto at = [&](const char* label) { return *y.find_label(label); };
  const Index h1 = at("h1"), h2 = at("h2"), h3 = at("h3"), h12 = at("h1*h2"),
              h13 = at("h1*h3"), h23 = at("h2*h3"), top = at("h1*h2*h3");
  const auto pull = map_from(y, z, 0, {{0, 0, 1}, {1, h1, 1}, {1, h2, 1}, {1, h3, 1}});
  const auto push = map_from(z, y, 2, {{h12, 0, 1}, {h13, 0, 1}, {h23, 0, 1}, {top, 1, 1}});
  RatVector c1 = y.zero();
  c1(h1) = Rat(4);  // restricts to 4p = c_1 of the normal bundle T ⊕ T
  RatVector c2 = y.zero();
  c2(h12) = c2(h13) = c2(h23) = Rat(1);
  const auto r = blow_up(y, z, pull, push, ChernPolynomial{{c1, c2}});
  CHECK(r.algebra.dims() == std::vector<Index>{1, 4, 4, 1});
  CHECK(!find_axiom_violation(r.algebra));
  CHECK(pd_propagation_check(y, z, r).ok());
  CHECK(pd_propagation_check(y, z, r).after_pd);
}

TEST_CASE("non-PD ambient with a valid point center") {
  const GradedAlgebra y({1, 2, 1}, {"1", "a", "b", "s"}, {{1, 1, 3, Rat(1)}});
  const GradedAlgebra z;
  const auto r = blow_up(y, z, map_from(y, z, 0, {{0, 0, 1}}), map_from(z, y, 2, {{3, 0, 1}}),
                         ChernPolynomial{{y.zero(), y.basis(3)}});
  CHECK(r.algebra.dims() == std::vector<Index>{1, 3, 1});
  const auto rep = pd_propagation_check(y, z, r);
  CHECK(!rep.before_pd);
  CHECK(!rep.after_pd);
  CHECK(rep.ok());
}

TEST_CASE("projective bundles") {
  const GradedAlgebra point;
  const auto p1 = projective_bundle(point, {point.zero(), point.zero()});
  CHECK(p1.algebra.dims() == std::vector<Index>{1, 1});
  CHECK(p1.algebra.multiply(p1.xi, p1.xi) == p1.algebra.zero());

  const auto base = truncated_polynomial(1);
  const auto trivial = projective_bundle(base, {base.zero(), base.zero()});
  CHECK(trivial.algebra.dims() == std::vector<Index>{1, 2, 1});
  CHECK(pd_propagation_check(base, trivial).after_pd);
  CHECK(pd_propagation_check(base, trivial).ok());

  const auto same = projective_bundle(base, {base.basis(1)});
  CHECK(same.algebra.dims() == base.dims());

  // Hirzebruch-type twist: c_1 = h, c_2 = 0 gives xi^2 = -h xi.
  const auto twisted = projective_bundle(base, {base.basis(1), base.zero()});
  const RatVector h = twisted.from_base.apply(base.basis(1));
  CHECK(twisted.algebra.multiply(twisted.xi, twisted.xi) ==
        RatVector(-twisted.algebra.multiply(h, twisted.xi)));
  CHECK(!find_axiom_violation(twisted.algebra));
}
