#include <doctest.h>

#include "wonder/linalg.hpp"

#include <random>

using namespace wonder;

namespace {

RatMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r ? static_cast<Index>(rows.begin()->size()) : 0;
  RatMatrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (int v : row) m(i, j++) = Rat(v);
    ++i;
  }
  return m;
}

RatMatrix random_matrix(std::mt19937& rng, Index rows, Index cols, int rank_cap) {
  // Product of random rows x rank_cap and rank_cap x cols factors.
  std::uniform_int_distribution<int> coef(-3, 3);
  RatMatrix a(rows, rank_cap), b(rank_cap, cols);
  for (Index i = 0; i < a.size(); ++i) a.data()[i] = Rat(coef(rng));
  for (Index i = 0; i < b.size(); ++i) b.data()[i] = Rat(coef(rng), 1 + (coef(rng) + 3) % 3);
  return a * b;
}

}  // namespace

TEST_CASE("rational parsing and normal form") {
  CHECK(Rat::parse("6/4") == Rat(3, 2));
  CHECK(Rat::parse("-6/4").str() == "-3/2");
  CHECK(Rat::parse("7").str() == "7");
  CHECK_THROWS(Rat::parse("1/0"));
  CHECK_THROWS(Rat::parse("1/-2"));
  CHECK_THROWS(Rat::parse("abc"));
  CHECK_THROWS(Rat(1) / Rat(0));
  CHECK(binomial(5, 2) == Rat(10));
}

TEST_CASE("rank examples") {
  CHECK(rank(SparseMat(0, 0)) == 0);
  CHECK(rank(SparseMat::identity(2)) == 2);
  CHECK(rank(SparseMat::from_dense(from_rows({{1, 2}, {2, 4}}))) == 1);
}

TEST_CASE("nullspace examples") {
  CHECK(nullspace_basis(SparseMat::identity(3)).empty());
  CHECK(nullspace_basis(SparseMat(2, 3)).size() == 3);
  const auto ns = nullspace_basis(SparseMat::from_dense(from_rows({{1, 1}})));
  REQUIRE(ns.size() == 1);
  CHECK(ns[0](0) == -ns[0](1));
  CHECK(!ns[0](0).is_zero());
}

TEST_CASE("solve examples") {
  auto x = solve(SparseMat::identity(2), RatVector{{Rat(1), Rat(2)}});
  REQUIRE(x);
  CHECK((*x)(0) == Rat(1));
  CHECK((*x)(1) == Rat(2));
  auto y = solve(SparseMat::from_dense(from_rows({{1, 1}})), RatVector{{Rat(3)}});
  REQUIRE(y);
  CHECK((*y)(0) + (*y)(1) == Rat(3));
  CHECK(!solve(SparseMat::from_dense(from_rows({{0}})), RatVector{{Rat(1)}}));
  CHECK_THROWS(solve(SparseMat::identity(2), RatVector{{Rat(1)}}));
}

TEST_CASE("sparse triplets are canonical") {
  SparseMat m(2, 2, {{1, 1, Rat(2)}, {0, 1, Rat(0)}, {0, 0, Rat(1)}});
  CHECK(m.entries().size() == 2);
  CHECK(m.entries()[0].row == 0);
  CHECK_THROWS(SparseMat(2, 2, {{0, 0, Rat(1)}, {0, 0, Rat(2)}}));
  CHECK_THROWS(SparseMat(2, 2, {{2, 0, Rat(1)}}));
}

TEST_CASE("rank-nullity and kernel property on random matrices") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const Index rows = 1 + trial % 6, cols = 1 + (trial * 7) % 7;
    const int cap = 1 + trial % 4;
    const RatMatrix m = random_matrix(rng, rows, cols, cap);
    const Index r = rank(m);
    const auto ns = nullspace_basis(m);
    CHECK(r + static_cast<Index>(ns.size()) == cols);
    CHECK(r <= cap);
    for (const auto& v : ns) CHECK(is_zero(RatVector(m * v)));
    // Solving for a vector in the column space always succeeds.
    RatVector x(cols);
    for (Index i = 0; i < cols; ++i) x(i) = Rat(static_cast<int>(i) - 2);
    const RatVector rhs = m * x;
    const auto sol = solve(m, rhs);
    REQUIRE(sol);
    CHECK(RatVector(m * *sol) == rhs);
    Solver<Rat> s(m);
    CHECK(s.rank() == r);
    REQUIRE(s.solve(rhs));
    CHECK(RatVector(m * *s.solve(rhs)) == rhs);
  }
}
