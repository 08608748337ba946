#include "doctest.h"

#include "wonder/models.hpp"
#include "wonder/presentation.hpp"

#include <set>

using namespace wonder;

namespace {

std::set<std::string> texts(const PresentationReport& r, const std::string& family) {
  std::set<std::string> out;
  for (const auto& x : r.relations)
    if (x.family == family) out.insert(x.text);
  return out;
}

bool vanishes(const PresentationReport& r, const std::string& text) {
  for (const auto& x : r.relations)
    if (x.text == text) return x.vanishes;
  FAIL("relation not listed: " << text);
  return false;
}

void check_all_families(const PresentationReport& r) {
  for (const auto* f : r.failures()) MESSAGE(f->family << ": " << f->text);
  CHECK(r.ok());
  for (const char* fam : {"non-nest", "J", "chern"}) CHECK(!texts(r, fam).empty());
  for (const auto& k : r.kernels) {
    CHECK(k.generators_in_kernel);
    CHECK(k.generates());
  }
}

}  // namespace

TEST_CASE("presentation of three points on P1") {
  WonderRing ring(fm_power({Fiber::P1, 3}));
  const auto r = presentation_report(ring);
  check_all_families(r);
  CHECK(texts(r, "non-nest") ==
        std::set<std::string>{"E_D12*E_D13", "E_D12*E_D23", "E_D13*E_D23"});
  CHECK(vanishes(r, "(h1-h2)*E_D123"));
  CHECK(vanishes(r, "(h2-h3)*E_D123"));
  CHECK(vanishes(r, "P_D12(t) - (t+D12)"));
  // Nested pairs do not vanish, so the non-nest family is not vacuous.
  const auto& dg = ring.diagram();
  const RatVector nested = ring.multiply(ring.exceptional(dg.element_index("D12")),
                                         ring.exceptional(dg.element_index("D123")));
  CHECK(!is_zero(nested));
}

TEST_CASE("presentation of the curve model") {
  for (int genus : {0, 2}) {
    WonderRing ring(fm_power({Fiber::Curve, 3, 2, genus}));
    const auto r = presentation_report(ring);
    check_all_families(r);
    CHECK(vanishes(r, "(K1-K2)*E_D123"));
    CHECK(vanishes(r, "(D13-D23)*E_D12"));
    CHECK(vanishes(r, "(D12+K2)*E_D12"));
    CHECK(vanishes(r, "(D12+K2)*E_D123"));
    CHECK(vanishes(r, "P_D123(-(E_D123))"));
    CHECK(vanishes(r, "P_D12(-(E_D12+E_D123))"));
    // Only the total transform of D_ij is cut out by the exceptional sum.
    CHECK(vanishes(r, "E_D123+E_D12-D12"));
    CHECK(!vanishes(r, "E_D123+D12"));
    CHECK(!vanishes(r, "E_D123+E_D12"));
  }
  WonderRing deep(fm_power({Fiber::Curve, 3, 3, 2}));
  const auto r = presentation_report(deep);
  CHECK(r.ok());
  CHECK(texts(r, "pair-sum").empty());
}

TEST_CASE("two points list only pair relations") {
  WonderRing ring(fm_power({Fiber::P1, 2}));
  const auto r = presentation_report(ring);
  CHECK(r.ok());
  CHECK(texts(r, "non-nest").empty());
  for (const auto& x : r.relations) CHECK(x.text.find("D123") == std::string::npos);
  REQUIRE(r.kernels.size() == 1);
  CHECK(r.kernels[0].generators == std::vector<std::string>{"h1-h2"});
}

TEST_CASE("presentation on P2 powers") {
  WonderRing ring(fm_power({Fiber::P2, 3}));
  const auto r = presentation_report(ring);
  check_all_families(r);
  // D_ij has codimension 2, so no normalization of the divisor sum vanishes.
  CHECK(!vanishes(r, "E_D123+E_D12-D12"));
}
