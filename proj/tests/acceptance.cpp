// Acceptance run: one PASS/FAIL line per criterion.
#include "wonder/blowup.hpp"
#include "wonder/duality.hpp"
#include "wonder/errors.hpp"
#include "wonder/io.hpp"
#include "wonder/models.hpp"
#include "wonder/oracle.hpp"
#include "wonder/presentation.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

using namespace wonder;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "failed: ";
      else detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

std::string dims_str(const std::vector<Index>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

Json fixture(const std::string& name) {
  const std::string path = std::string(WONDER_FIXTURE_DIR) + "/oracle/" + name;
  return parse_document(read_file(path), path);
}

bool is_pd(const GradedAlgebra& a, int d) { return pd_summary(a, d).pd; }

RatVector random_in_degree(const GradedAlgebra& a, int deg, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-3, 3);
  RatVector v = a.zero();
  if (deg > a.top_degree()) return v;
  for (Index i = a.offset(deg); i < a.offset(deg) + a.dim(deg); ++i) v(i) = Rat(c(rng));
  return v;
}

struct NamedDiagram {
  std::string name;
  BurrowDiagram diagram;
};

std::vector<NamedDiagram> fixtures() {
  return {{"fm-p1-3", fm_power({Fiber::P1, 3})},
          {"fm-p1-4", fm_power({Fiber::P1, 4})},
          {"fm-p2-3", fm_power({Fiber::P2, 3})},
          {"fm-curve-3", fm_power({Fiber::Curve, 3, 2, 2})},
          {"fm-curve-3-min3", fm_power({Fiber::Curve, 3, 3, 2})},
          {"fm-curve-4", fm_power({Fiber::Curve, 4, 2, 2})},
          {"keel-2", keel_model(2)},
          {"keel-3", keel_model(3)},
          {"p2-point", single_center_diagram(point_in_p2())},
          {"broken-center", single_center_diagram(broken_center_data())},
          {"synthetic-broken-center", single_center_diagram(synthetic_blowup_data(11, true, false))},
          {"synthetic-broken-ambient", single_center_diagram(synthetic_blowup_data(12, false, true))},
          {"broken-product", product_diagram(single_center_diagram(broken_center_data(), "P"),
                                             single_center_diagram(point_in_p2(), "Q"))},
          {"empty-broken", ambient_only_diagram(synthetic_broken({1, 3, 3, 1}, 1, 4))}};
}

void criterion_1(Outcome& o) {
  const auto data = point_in_p2();
  const auto r = blow_up(data.y, data.z, data.pullback, data.pushforward, data.chern);
  const auto& a = r.algebra;
  o.require(a.dims() == std::vector<Index>{1, 2, 1}, "dims " + dims_str(a.dims()));
  // P(-E) = E^2 + h^2 = 0 with P(t) = t^2 + h^2.
  const RatVector h = r.from_ambient.apply(data.y.basis(1));
  const RatVector pt = a.multiply(h, h);
  o.require(a.multiply(r.exceptional, r.exceptional) == RatVector(-pt), "E^2 != -[pt]");
  o.require(is_pd(a, 2), "not PD");
  WonderRing ring(single_center_diagram(data));
  o.require(ring.dims() == a.dims(), "engine dims differ");
  o.detail << "dims " << dims_str(a.dims()) << ", E^2 = -[pt], PD";
}

void criterion_2(Outcome& o) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto data = synthetic_blowup_data(1000 + seed, seed % 3 == 1, seed % 3 == 2);
    const auto r = blow_up(data.y, data.z, data.pullback, data.pushforward, data.chern);
    const int c = data.pushforward.shift();
    std::vector<Index> expected = data.y.dims();
    for (int k = 1; k < c; ++k)
      for (int j = 0; j <= data.z.top_degree(); ++j) {
        const size_t i = static_cast<size_t>(j + k);
        if (i < expected.size()) expected[i] += data.z.dim(j);
        else o.require(data.z.dim(j) == 0, "summand beyond the top degree");
      }
    o.require(r.algebra.dims() == expected, "seed " + std::to_string(seed) + ": " +
                                                dims_str(r.algebra.dims()) + " vs " + dims_str(expected));
    ++checked;
  }
  o.detail << checked << " random triples";
}

void criterion_3(Outcome& o) {
  int blowups = 0, bundles = 0, broken_inputs = 0;
  std::mt19937_64 rng(2024);
  const std::vector<std::vector<Index>> shapes{{1, 1}, {1, 2, 1}, {1, 3, 1}, {1, 2, 2, 1}, {1, 3, 3, 1}};
  for (int i = 0; i < 100; ++i) {
    const bool broken = i >= 50;
    const auto data = synthetic_blowup_data(5000 + i, broken && i % 2 == 0, broken && i % 2 == 1);
    const auto r = blow_up(data.y, data.z, data.pullback, data.pushforward, data.chern);
    const auto rep = pd_propagation_check(data.y, data.z, r);
    o.require(rep.ok(), "blow-up " + std::to_string(i) + " violates the equivalence");
    o.require(rep.before_pd == !broken, "blow-up input " + std::to_string(i) + " has the wrong PD status");
    ++blowups;

    auto shape = shapes[static_cast<size_t>(i) % shapes.size()];
    GradedAlgebra base;
    if (broken) {
      if (shape.size() < 3) shape = {1, 2, 1};
      base = synthetic_broken(shape, 1, 7000 + i);
    } else {
      base = synthetic_gorenstein(shape, 7000 + i);
    }
    broken_inputs += broken;
    const int rank = 1 + i % 3;
    std::vector<RatVector> chern;
    for (int k = 1; k <= rank; ++k) chern.push_back(random_in_degree(base, k, rng));
    const auto pb = projective_bundle(base, chern);
    const auto prep = pd_propagation_check(base, pb);
    o.require(prep.ok(), "bundle " + std::to_string(i) + " violates the equivalence");
    o.require(prep.before_pd == !broken, "bundle input " + std::to_string(i) + " has the wrong PD status");
    ++bundles;
  }
  o.detail << blowups << " blow-ups and " << bundles << " bundles (" << broken_inputs
           << " broken bases), no violation";
}

void criterion_4(Outcome& o) {
  const auto dg3 = fm_power({Fiber::P1, 3});
  const auto li3 = li_decomposition(dg3).poincare;
  WonderRing ring3(dg3);
  const auto run = run_oracle(fixture("fm_p1_3.json"));
  const std::vector<Index> want{1, 4, 4, 1};
  o.require(li3 == want, "Li " + dims_str(li3));
  o.require(ring3.dims() == want, "engine " + dims_str(ring3.dims()));
  o.require(run.algebra.dims() == want, "oracle " + dims_str(run.algebra.dims()));
  o.require(compare_with_oracle(ring3, fixture("fm_p1_3.json")).ok(), "n=3 not isomorphic to the oracle");
  const auto dg4 = fm_power({Fiber::P1, 4});
  const auto li4 = li_decomposition(dg4).poincare;
  WonderRing ring4(dg4);
  o.require(li4 == ring4.dims(), "n=4 Li " + dims_str(li4) + " vs engine " + dims_str(ring4.dims()));
  o.detail << "n=3 " << dims_str(want) << " from Li, engine and oracle; n=4 " << dims_str(li4);
}

void criterion_5(Outcome& o) {
  WonderRing k2(keel_model(2));
  o.require(k2.dims() == std::vector<Index>{1, 5, 1}, "keel 2 dims " + dims_str(k2.dims()));
  o.require(is_pd(k2.algebra(), 2), "keel 2 not PD");
  o.require(compare_with_oracle(k2, fixture("keel_2.json")).ok(), "keel 2 differs from the oracle");
  WonderRing k3(keel_model(3));
  o.require(k3.dims() == std::vector<Index>{1, 16, 16, 1}, "keel 3 dims " + dims_str(k3.dims()));
  o.require(is_pd(k3.algebra(), 3), "keel 3 not PD");
  const auto run = run_oracle(fixture("keel_3.json"));
  o.require(run.algebra.dims() == k3.dims(), "oracle dims " + dims_str(run.algebra.dims()));
  const auto cmp = compare_with_oracle(k3, fixture("keel_3.json"));
  o.require(cmp.ok(), "keel 3 differs from the oracle");
  o.detail << "keel 2 " << dims_str(k2.dims()) << " PD; keel 3 " << dims_str(k3.dims())
           << " PD, isomorphic to the iterated oracle";
}

void criterion_6(Outcome& o) {
  int relations = 0;
  for (const auto& [name, dg] : std::vector<NamedDiagram>{{"fm-p1-3", fm_power({Fiber::P1, 3})},
                                                           {"fm-curve-3", fm_power({Fiber::Curve, 3, 2, 2})}}) {
    WonderRing ring(dg);
    const auto r = presentation_report(ring);
    for (const auto* f : r.failures()) o.require(false, name + ": " + f->family + " " + f->text);
    std::map<std::string, int> families;
    for (const auto& x : r.relations)
      if (x.family != "pair-sum") {
        ++families[x.family];
        ++relations;
      }
    for (const char* fam : {"non-nest", "J", "chern"})
      o.require(families[fam] > 0, name + ": no " + std::string(fam) + " relations");
    auto listed = [&](const std::string& text) {
      for (const auto& x : r.relations)
        if (x.text == text) return x.vanishes;
      return false;
    };
    o.require(listed("P_D12(t) - (t+D12)"), name + ": P_12(t) = t + D12 missing");
    if (name == "fm-curve-3") {
      o.require(listed("(K1-K2)*E_D123"), "K_i - K_j generator missing");
      o.require(listed("(D13-D23)*E_D12"), "D_ik - D_jk generator missing");
      o.require(listed("(D12+K2)*E_D123"), "D_ij + K_j generator missing");
    }
  }
  o.detail << relations << " relations evaluate to zero";
}

void criterion_7(Outcome& o) {
  int checked = 0;
  bool saw_broken = false;
  for (const auto& f : fixtures()) {
    WonderRing ring(f.diagram);
    const auto blocks = block_structure_check(ring);
    o.require(blocks.ok(), f.name + ": forbidden gram block");
    const auto table = discrepancy_table(ring);
    o.require(table.has_socle && table.sums_match, f.name + ": discrepancy sums differ");
    const auto eq = pd_equivalence_report(ring);
    o.require(eq.ok(), f.name + ": ring PD " + (eq.ring.pd ? "yes" : "no") + " vs burrows");
    if (f.name == "broken-center") {
      o.require(!eq.ring.pd && eq.failing == std::vector<std::string>{"Z"},
                "broken burrow not reported");
      saw_broken = true;
    }
    ++checked;
  }
  o.require(saw_broken, "broken fixture missing");
  o.detail << checked << " fixtures, block-triangular with matching discrepancy sums";
}

// Both rings are generated by ambient classes and E_S with |S| >= 3.
bool flag_isomorphic(const WonderRing& a, const WonderRing& b) {
  const auto na = a.names();
  const auto nb = b.names();
  std::vector<std::string> names;
  std::vector<std::pair<RatVector, RatVector>> gens;
  for (const auto& [name, v] : nb) {
    auto it = na.find(name);
    if (it == na.end() || is_zero(v)) continue;
    names.push_back(name);
    gens.push_back({it->second, v});
  }
  const auto js = joint_span(a.algebra(), b.algebra(), names, gens);
  return js.rank_a == a.dims() && js.rank_b == b.dims() && js.rank_joint == a.dims();
}

void criterion_8(Outcome& o) {
  for (Fiber fib : {Fiber::P1, Fiber::Curve})
    for (int n : {3, 4}) {
      WonderRing two(fm_power({fib, n, 2, 2}));
      WonderRing three(fm_power({fib, n, 3, 2}));
      const std::string tag = std::string(fib == Fiber::P1 ? "P1" : "curve") + " n=" + std::to_string(n);
      o.require(two.dims() == three.dims(), tag + ": " + dims_str(two.dims()) + " vs " + dims_str(three.dims()));
      o.require(is_pd(two.algebra(), n) == is_pd(three.algebra(), n), tag + ": PD verdicts differ");
      o.require(flag_isomorphic(two, three), tag + ": not isomorphic");
      o.detail << tag << " " << dims_str(two.dims()) << "; ";
    }
  o.detail << "isomorphic";
}

void criterion_9(Outcome& o) {
  RewriteStats total;
  int fixtures_done = 0;
  std::mt19937_64 rng(99);
  for (const auto& f : fixtures()) {
    WonderRing ring(f.diagram);
    total.merge(ring.build_stats());
    const Index n = ring.algebra().dim();
    std::uniform_int_distribution<Index> pick(0, n - 1);
    for (int t = 0; t < 200; ++t) {
      const Index a = pick(rng), b = pick(rng);
      const RatVector p = ring.multiply_basis(a, b, &total);
      o.require(p == ring.algebra().multiply(ring.algebra().basis(a), ring.algebra().basis(b)),
                f.name + ": rewritten product differs from the table");
    }
    ++fixtures_done;
  }
  o.require(total.measure_failures == 0, std::to_string(total.measure_failures) + " measure failures");
  o.require(total.cap_hits == 0, std::to_string(total.cap_hits) + " cap hits");
  o.detail << fixtures_done << " fixtures, " << total.rewrites << " rewrites, " << total.measure_checks
           << " measure checks, max " << total.max_rewrites_in_product << " per product";
}

}  // namespace

int main() {
  const std::vector<std::tuple<int, const char*, double, std::function<void(Outcome&)>>> criteria{
      {1, "blow-up of a point in P2", 1.0, criterion_1},
      {2, "blow-up dimension law", 10.0, criterion_2},
      {3, "PD propagation through blow-ups and bundles", 0.0, criterion_3},
      {4, "Li, engine and oracle agree", 30.0, criterion_4},
      {5, "Keel models", 120.0, criterion_5},
      {6, "presentation relations", 0.0, criterion_6},
      {7, "block triangularity and discrepancies", 0.0, criterion_7},
      {8, "building-set flag independence", 0.0, criterion_8},
      {9, "rewrite termination", 0.0, criterion_9}};
  int failed = 0;
  for (const auto& [id, title, budget, run] : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget > 0 && secs > budget) o.require(false, "over the time budget");
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << id << " " << title << " [" << std::fixed
              << std::setprecision(2) << secs << "s]: " << o.detail.str() << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
