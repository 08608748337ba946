#include "doctest.h"

#include "wonder/errors.hpp"
#include "wonder/io.hpp"
#include "wonder/models.hpp"
#include "wonder/oracle.hpp"

using namespace wonder;

namespace {

Json fixture(const std::string& name) {
  const std::string path = std::string(WONDER_FIXTURE_DIR) + "/oracle/" + name;
  return parse_document(read_file(path), path);
}

bool is_pd(const GradedAlgebra& a, int d) {
  const auto sc = socle_check(a, d);
  return sc.ok() && pd_verdict(*sc.pairing).is_pd;
}

}  // namespace

TEST_CASE("expressions") {
  const auto a = truncated_polynomial(3, "h");
  const NameMap names = label_names(a);
  CHECK(names.size() == 1);
  const RatVector h = a.basis(1);
  CHECK(evaluate_expression("h", a, names) == h);
  CHECK(evaluate_expression("2*h^2 - h + 1/2", a, names) ==
        RatVector(a.power(h, 2) * Rat(2) - h + a.unit() * Rat(1, 2)));
  CHECK(evaluate_expression("-(h+1)^2", a, names) ==
        RatVector(-(a.power(h, 2) + h * Rat(2) + a.unit())));
  CHECK(evaluate_expression("h^4", a, names) == a.zero());
  CHECK_THROWS_AS(evaluate_expression("k", a, names), InputError);
  CHECK_THROWS_AS(evaluate_expression("h +", a, names), InputError);
  CHECK_THROWS_AS(evaluate_expression("(h", a, names), InputError);
  CHECK_THROWS_AS(evaluate_expression("1/0", a, names), InputError);
}

TEST_CASE("joint span detects isomorphisms and non-maps") {
  const auto a = truncated_polynomial(2, "h");
  const auto b = truncated_polynomial(2, "k");
  const auto iso = joint_span(a, b, {"h"}, {{a.basis(1), b.basis(1) * Rat(3)}});
  CHECK(iso.rank_joint == std::vector<Index>{1, 1, 1});
  CHECK(iso.rank_a == iso.rank_b);
  // h -> k into Q[k]/k^2 is a ring map, the reverse is not.
  const auto c = truncated_polynomial(1, "k");
  const auto js = joint_span(c, a, {"k"}, {{c.basis(1), a.basis(1)}});
  CHECK(js.rank_joint[2] != js.rank_a[2]);
}

TEST_CASE("oracle fixtures reproduce the expected rings") {
  for (const char* name : {"p2_point.json", "fm_p1_3.json", "keel_2.json", "keel_3.json"}) {
    const auto run = run_oracle(fixture(name));
    REQUIRE(run.expected_dims.has_value());
    CHECK(run.algebra.dims() == *run.expected_dims);
    CHECK(is_pd(run.algebra, run.algebra.top_degree()) == run.expected_pd.value_or(true));
    CHECK(!find_axiom_violation(run.algebra).has_value());
  }
  const auto p2 = run_oracle(fixture("p2_point.json"));
  const RatVector e = p2.names.at("E");
  const RatVector h = p2.names.at("h");
  CHECK(p2.algebra.multiply(e, e) == RatVector(-p2.algebra.multiply(h, h)));
}

TEST_CASE("engine rings agree with the oracle fixtures") {
  const std::vector<std::pair<const char*, BurrowDiagram>> cases{
      {"p2_point.json", single_center_diagram(point_in_p2())},
      {"fm_p1_3.json", fm_power({Fiber::P1, 3})},
      {"keel_2.json", keel_model(2)},
      {"keel_3.json", keel_model(3)}};
  for (const auto& [name, dg] : cases) {
    WonderRing ring(dg);
    const auto cmp = compare_with_oracle(ring, fixture(name));
    for (const auto& n : cmp.notes) MESSAGE(name << ": " << n);
    CHECK(cmp.dims_equal);
    CHECK(cmp.isomorphic);
  }
}

TEST_CASE("a corrupted Chern class is detected by the comparison") {
  Json doc = diagram_to_json(fm_power({Fiber::P1, 3}));
  bool changed = false;
  for (auto& e : doc["edges"])
    if (e["small"] == "D123" && e["big"] == "Y") {
      for (auto& x : e["chern"][0]) x = "0";
      changed = true;
    }
  REQUIRE(changed);
  const BurrowDiagram bad = diagram_from_json(doc);
  WonderRing ring(bad);
  const auto cmp = compare_with_oracle(ring, fixture("fm_p1_3.json"));
  CHECK(cmp.dims_equal);
  CHECK(!cmp.isomorphic);
  CHECK(cmp.first_bad_degree == 2);  // E^2 = -c1 E - c2 changes first
}

TEST_CASE("inconsistent oracle steps are rejected") {
  Json s = fixture("fm_p1_3.json");
  s["steps"][0]["blow_up"]["restrict"].erase("h3");
  CHECK_THROWS_AS(run_oracle(s), InputError);
  Json t = fixture("keel_2.json");
  t["steps"][1]["blow_up"]["restrict"].erase("E_D12_0");
  CHECK_THROWS_AS(run_oracle(t), InputError);
}

TEST_CASE("diagram documents round-trip") {
  for (const auto& dg : {fm_power({Fiber::P1, 3}), keel_model(2), fm_power({Fiber::Curve, 3, 2, 2}),
                         product_diagram(single_center_diagram(point_in_p2(), "P"),
                                         single_center_diagram(broken_center_data(), "Q")),
                         single_center_diagram(synthetic_blowup_data(3, true, false))}) {
    const Json once = diagram_to_json(dg);
    const BurrowDiagram back = diagram_from_json(parse_document(once.dump(2)));
    const Json twice = diagram_to_json(back);
    CHECK(once == twice);
    CHECK(back.element_count() == dg.element_count());
    for (int b = 0; b < dg.burrow_count(); ++b) CHECK(back.burrow(b).algebra == dg.burrow(b).algebra);
  }
}

TEST_CASE("malformed documents are rejected with diagnostics") {
  CHECK_THROWS_AS(parse_document("{\"socle_degree\": 2, \"elements\": ["), InputError);
  CHECK_THROWS_AS(diagram_from_json(parse_document("{\"socle_degree\": 2}")), InputError);
  Json doc = diagram_to_json(keel_model(1));
  doc["burrows"][0]["mult"].push_back({1, 1, 99, "1"});
  CHECK_THROWS_AS(diagram_from_json(doc), InputError);
  Json bad_rat = diagram_to_json(keel_model(1));
  bad_rat["edges"][0]["chern"][0][0] = "1/0";
  CHECK_THROWS_AS(diagram_from_json(bad_rat), InputError);
}
