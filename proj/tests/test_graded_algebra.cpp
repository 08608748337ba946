#include <doctest.h>

#include "wonder/graded_algebra.hpp"

using namespace wonder;

namespace {

// Q ⊕ Q{a,b} ⊕ Q{s} with a*a = s and every other positive product zero.
GradedAlgebra degenerate_121() {
  return GradedAlgebra({1, 2, 1}, {"1", "a", "b", "s"}, {{1, 1, 3, Rat(1)}});
}

}  // namespace

TEST_CASE("truncated polynomial ring multiplication") {
  const auto p2 = truncated_polynomial(2);
  CHECK(p2.dims() == std::vector<Index>{1, 1, 1});
  CHECK(p2.multiply(p2.basis(1), p2.basis(2)) == p2.zero());
  CHECK(p2.multiply(p2.basis(1), p2.basis(1)) == p2.basis(2));
  for (Index i = 0; i < p2.dim(); ++i) CHECK(p2.multiply(p2.unit(), p2.basis(i)) == p2.basis(i));
  CHECK(!find_axiom_violation(p2));
}

TEST_CASE("constructor rejects malformed tables") {
  CHECK_THROWS(GradedAlgebra({1, 1}, {"1", "h"}, {{0, 1, 1, Rat(1)}}));
  CHECK_THROWS(GradedAlgebra({1, 1, 1}, {"1", "h", "s"}, {{1, 1, 1, Rat(1)}}));
  CHECK_THROWS(GradedAlgebra({1, 1, 1}, {"1", "h", "s"}, {{1, 1, 5, Rat(1)}}));
  CHECK_THROWS(GradedAlgebra({1, 1}, {"1"}, {}));
}

TEST_CASE("axiom checker detects non-associativity") {
  // x*y = s, x*x = y: (x*x)*x = y*x = s would need x*(x*x) = s too (fine),
  // so break associativity via two degree-1 classes with inconsistent cubes.
  const GradedAlgebra bad({1, 2, 1, 1}, {"1", "x", "y", "q", "s"},
                          {{1, 1, 3, Rat(1)}, {1, 2, 3, Rat(1)}, {1, 3, 4, Rat(1)}});
  const auto v = find_axiom_violation(bad);
  REQUIRE(v);
  CHECK(v->find("associativity") != std::string::npos);
}

TEST_CASE("socle check and PD verdicts") {
  const auto p2 = truncated_polynomial(2);
  const auto sc = socle_check(p2, 2);
  REQUIRE(sc.ok());
  CHECK(sc.pairing->gram[1] == RatMatrix::Constant(1, 1, Rat(1)));
  CHECK(pd_verdict(*sc.pairing).is_pd);
  CHECK(pd_verdict(*sc.pairing).discrepancy == std::vector<Index>{0, 0, 0});

  const auto point = socle_check(GradedAlgebra(), 0);
  REQUIRE(point.ok());
  CHECK(pd_verdict(*point.pairing).is_pd);

  const GradedAlgebra two_socle({1, 2}, {"1", "a", "b"}, {});
  const auto bad = socle_check(two_socle, 1);
  REQUIRE(!bad.ok());
  CHECK(bad.failures.front().find("socle dimension 2") != std::string::npos);
  CHECK(!socle_check(p2, 1).ok());

  const auto deg = degenerate_121();
  const auto ds = socle_check(deg, 2);
  REQUIRE(ds.ok());
  const auto v = pd_verdict(*ds.pairing);
  CHECK(!v.is_pd);
  CHECK(v.discrepancy == std::vector<Index>{0, 1, 0});
  const auto kern = socle_kernel_elements(deg, *ds.pairing, 1);
  REQUIRE(kern.size() == 1);
  CHECK(deg.multiply(kern[0], deg.basis(1)) == deg.zero());
  CHECK(deg.multiply(kern[0], deg.basis(2)) == deg.zero());
  CHECK(socle_kernel_elements(p2, *sc.pairing, 1).empty());
  CHECK_THROWS_AS(socle_kernel_elements(p2, *sc.pairing, 3), std::out_of_range);
}

TEST_CASE("gram symmetry and socle rescaling invariance") {
  const auto a = tensor_product(truncated_polynomial(1, "x"),
                                tensor_product(truncated_polynomial(2, "y"), degenerate_121()));
  CHECK(!find_axiom_violation(a));
  const int d = a.top_degree();
  const auto s1 = socle_check(a, d);
  const auto s2 = socle_check(a, d, Rat(-7, 3));
  REQUIRE(s1.ok());
  REQUIRE(s2.ok());
  for (int k = 0; k <= d; ++k)
    CHECK(s1.pairing->gram[static_cast<size_t>(k)] ==
          RatMatrix(s1.pairing->gram[static_cast<size_t>(d - k)].transpose()));
  const auto v1 = pd_verdict(*s1.pairing), v2 = pd_verdict(*s2.pairing);
  CHECK(v1.is_pd == v2.is_pd);
  CHECK(v1.discrepancy == v2.discrepancy);
  CHECK(!v1.is_pd);
}

TEST_CASE("tensor products and graded maps") {
  const auto x = truncated_polynomial(1, "h1");
  const auto y = truncated_polynomial(1, "h2");
  const auto xy = tensor_product(x, y);
  CHECK(xy.dims() == std::vector<Index>{1, 2, 1});
  CHECK(xy.label(3) == "h1*h2");
  CHECK(pd_verdict(*socle_check(xy, 2).pairing).is_pd);

  // Diagonal pullback (P1)^2 -> P1: h1, h2 -> h.
  const auto p1 = truncated_polynomial(1, "h");
  RatMatrix m = zero_matrix<Rat>(2, 4);
  m(0, 0) = Rat(1);
  m(1, 1) = Rat(1);
  m(1, 2) = Rat(1);
  const GradedMap pull(xy.dims(), p1.dims(), 0, m);
  CHECK(!find_homomorphism_violation(pull, xy, p1));
  CHECK(surjectivity_failures(pull).empty());
  CHECK(injectivity_failures(pull) == std::vector<int>{1, 2});
  // Pushforward of the diagonal: 1 -> h1 + h2, h -> h1*h2.
  RatMatrix pm = zero_matrix<Rat>(4, 2);
  pm(1, 0) = Rat(1);
  pm(2, 0) = Rat(1);
  pm(3, 1) = Rat(1);
  const GradedMap push(p1.dims(), xy.dims(), 1, pm);
  CHECK(!find_projection_formula_violation(pull, push, xy, p1));
  RatMatrix wrong = pm;
  wrong(3, 1) = Rat(2);
  CHECK(find_projection_formula_violation(pull, GradedMap(p1.dims(), xy.dims(), 1, wrong), xy, p1));
  // Not a homomorphism: the unit is not sent to the unit.
  RatMatrix bad = m;
  bad(0, 0) = Rat(2);
  CHECK(find_homomorphism_violation(GradedMap(xy.dims(), p1.dims(), 0, bad), xy, p1));
  // Off-degree entries are rejected.
  RatMatrix off = m;
  off(1, 0) = Rat(1);
  CHECK_THROWS(GradedMap(xy.dims(), p1.dims(), 0, off));
  CHECK(compose(GradedMap::identity(p1), pull) == pull);
}
