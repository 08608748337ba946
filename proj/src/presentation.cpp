#include "wonder/presentation.hpp"

#include "wonder/nests.hpp"

#include <set>

namespace wonder {

namespace {

class Builder {
public:
  explicit Builder(const WonderRing& ring)
      : ring_(ring),
        dg_(ring.diagram()),
        amb_(dg_.ambient()),
        y_(dg_.burrow(amb_).algebra),
        named_(dg_.burrow(amb_).named) {}

  PresentationReport run() {
    non_nest();
    for (int x = 0; x < dg_.element_count(); ++x) kernel(x);
    for (int x = 0; x < dg_.element_count(); ++x) chern(x);
    pair_sums();
    return std::move(report_);
  }

private:
  std::string e_name(int x) const { return "E_" + dg_.element(x).id; }

  std::string e_sum(ElementSet s) const {
    std::string out;
    for (int x : elements_of(s)) out += (out.empty() ? "" : "+") + e_name(x);
    return out;
  }

  RatVector e_total(ElementSet s) const {
    RatVector out = ring_.algebra().zero();
    for (int x : elements_of(s)) out += ring_.exceptional(x);
    return out;
  }

  const RatVector* named(const std::string& name) const {
    auto it = named_.find(name);
    return it == named_.end() ? nullptr : &it->second;
  }

  void add(const char* family, std::string text, const RatVector& value) {
    report_.relations.push_back({family, std::move(text), is_zero(value)});
  }

  // Minimal non-nests arise as a nest plus one element.
  void non_nest() {
    const auto nests = enumerate_nests(dg_);
    const std::set<ElementSet> is_nest(nests.begin(), nests.end());
    std::set<ElementSet> minimal;
    for (ElementSet n : nests)
      for (int x = 0; x < dg_.element_count(); ++x) {
        if (has_element(n, x)) continue;
        const ElementSet t = n | singleton(x);
        if (is_nest.count(t) || minimal.count(t)) continue;
        bool ok = true;
        for (int y : elements_of(t)) ok = ok && is_nest.count(t & ~singleton(y)) > 0;
        if (ok) minimal.insert(t);
      }
    for (ElementSet t : minimal) {
      RatVector p = ring_.algebra().unit();
      std::string text;
      for (int x : elements_of(t)) {
        p = ring_.multiply(p, ring_.exceptional(x));
        text += (text.empty() ? "" : "*") + e_name(x);
      }
      add("non-nest", text, p);
    }
  }

  std::vector<std::pair<std::string, RatVector>> generators(int x) const {
    std::vector<std::pair<std::string, RatVector>> out;
    const auto& idx = dg_.element(x).indices;
    auto d_name = [](int a, int b) {
      return "D" + std::to_string(std::min(a, b)) + std::to_string(std::max(a, b));
    };
    for (size_t a = 0; a < idx.size(); ++a)
      for (size_t b = a + 1; b < idx.size(); ++b) {
        const std::string i = std::to_string(idx[a]), j = std::to_string(idx[b]);
        for (const char* v : {"h", "K"}) {
          const RatVector* p = named(v + i);
          const RatVector* q = named(v + j);
          if (p && q) out.push_back({v + i + "-" + v + j, *p - *q});
        }
        const RatVector* dij = named(d_name(idx[a], idx[b]));
        const RatVector* kj = named("K" + j);
        if (dij && kj) out.push_back({d_name(idx[a], idx[b]) + "+K" + j, *dij + *kj});
        for (int k = 1; k <= 9; ++k) {
          if (std::find(idx.begin(), idx.end(), k) != idx.end()) continue;
          const RatVector* dik = named(d_name(idx[a], k));
          const RatVector* djk = named(d_name(idx[b], k));
          if (dik && djk) out.push_back({d_name(idx[a], k) + "-" + d_name(idx[b], k), *dik - *djk});
        }
      }
    return out;
  }

  void kernel(int x) {
    const int b = dg_.element_burrow(x);
    const RatVector e = ring_.exceptional(x);
    RatMatrix pull(dg_.burrow(b).algebra.dim(), y_.dim());
    for (Index i = 0; i < y_.dim(); ++i) pull.col(i) = dg_.pull(amb_, b, y_.basis(i));
    const auto ker = nullspace_basis(pull);
    RatVector worst = ring_.algebra().zero();
    for (const auto& k : ker) {
      const RatVector p = ring_.multiply(ring_.ambient_class(k), e);
      if (!is_zero(p)) worst = p;
    }
    add("J", "J_" + dg_.element(x).id + "*" + e_name(x) + " (" + std::to_string(ker.size()) +
                 " kernel vectors)",
        worst);

    KernelGeneration gen;
    gen.element = dg_.element(x).id;
    gen.kernel_dim = static_cast<Index>(ker.size());
    const auto gens = generators(x);
    if (gens.empty()) return;
    RatMatrix ideal(y_.dim(), static_cast<Index>(gens.size()) * y_.dim());
    Index col = 0;
    for (const auto& [name, g] : gens) {
      gen.generators.push_back(name);
      if (!is_zero(dg_.pull(amb_, b, g))) gen.generators_in_kernel = false;
      add("J", "(" + name + ")*" + e_name(x), ring_.multiply(ring_.ambient_class(g), e));
      for (Index i = 0; i < y_.dim(); ++i) ideal.col(col++) = y_.multiply(g, y_.basis(i));
    }
    gen.ideal_dim = rank(ideal);
    report_.kernels.push_back(std::move(gen));
  }

  void chern(int x) {
    const int b = dg_.element_burrow(x);
    if (b == amb_ || !dg_.has_edge(b, amb_)) return;
    const auto& poly = dg_.edge(b, amb_).chern;
    const ElementSet inside = dg_.elements_inside(x);
    const RatVector u = -e_total(inside);
    RatVector value = ring_.algebra().zero();
    RatVector power = ring_.algebra().unit();
    for (int i = poly.degree(); i >= 0; --i) {
      value += ring_.multiply(ring_.ambient_class(poly.coefficient(y_, i)), power);
      power = ring_.multiply(power, u);
    }
    const std::string& id = dg_.element(x).id;
    add("chern", "P_" + id + "(-(" + e_sum(inside) + "))", value);
    const auto& idx = dg_.element(x).indices;
    if (idx.size() == 2 && poly.degree() == 1)
      if (const RatVector* d = named("D" + std::to_string(idx[0]) + std::to_string(idx[1])))
        add("chern", "P_" + id + "(t) - (t+" + "D" + std::to_string(idx[0]) +
                         std::to_string(idx[1]) + ")",
            RatVector(poly.coefficient(y_, 1) - *d));
  }

  void pair_sums() {
    for (int x = 0; x < dg_.element_count(); ++x) {
      const auto& idx = dg_.element(x).indices;
      if (idx.size() != 2) continue;
      const std::string d = "D" + std::to_string(idx[0]) + std::to_string(idx[1]);
      const RatVector* dij = named(d);
      if (!dij) continue;
      const ElementSet above = dg_.elements_inside(x) & ~singleton(x);
      const RatVector t = e_total(above);
      const RatVector dr = ring_.ambient_class(*dij);
      const RatVector ex = ring_.exceptional(x);
      const std::string s = above ? e_sum(above) : "0";
      add("pair-sum", s + "+" + d, RatVector(t + dr));
      add("pair-sum", s + "+" + e_name(x), RatVector(t + ex));
      add("pair-sum", s + "+" + e_name(x) + "-" + d, RatVector(t + ex - dr));
    }
  }

  const WonderRing& ring_;
  const BurrowDiagram& dg_;
  int amb_;
  const GradedAlgebra& y_;
  const std::map<std::string, RatVector>& named_;
  PresentationReport report_;
};

}  // namespace

bool PresentationReport::ok() const { return failures().empty(); }

std::vector<const RelationCheck*> PresentationReport::failures() const {
  std::vector<const RelationCheck*> out;
  for (const auto& r : relations)
    if (r.family != "pair-sum" && !r.vanishes) out.push_back(&r);
  return out;
}

PresentationReport presentation_report(const WonderRing& ring) { return Builder(ring).run(); }

}  // namespace wonder
