#include "wonder/burrow_diagram.hpp"

#include "wonder/errors.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace wonder {

int element_count(ElementSet s) { return std::popcount(s); }

std::vector<int> elements_of(ElementSet s) {
  std::vector<int> out;
  for (int e = 0; s != 0; ++e, s >>= 1)
    if (s & 1U) out.push_back(e);
  return out;
}

std::string to_string(NestRule::Kind kind) {
  switch (kind) {
    case NestRule::Kind::NestedOrDisjoint: return "nested-or-disjoint";
    case NestRule::Kind::Transversal: return "transversal";
    case NestRule::Kind::Explicit: return "explicit";
  }
  return "?";
}

RatVector ChernPolynomial::coefficient(const GradedAlgebra& big, int i) const {
  if (i == 0) return big.unit();
  return coeffs.at(static_cast<size_t>(i - 1));
}

BurrowDiagram::BurrowDiagram(int socle_degree, std::vector<BuildingElement> elements,
                             std::vector<BurrowNode> burrows, std::vector<BurrowEdge> edges,
                             const std::vector<Intersection>& intersections, NestRule nests)
    : socle_degree_(socle_degree),
      elements_(std::move(elements)),
      burrows_(std::move(burrows)),
      edges_(std::move(edges)),
      nest_rule_(std::move(nests)) {
  index();
  const int nb = burrow_count();
  const int unset = -2;
  meet_.assign(static_cast<size_t>(nb * nb), unset);
  for (int b = 0; b < nb; ++b) meet_[static_cast<size_t>(b * nb + b)] = b;
  for (const auto& in : intersections) {
    const int a = burrow_index(in.a), b = burrow_index(in.b);
    const int r = in.result ? burrow_index(*in.result) : -1;
    auto set = [&](int x, int y) {
      int& slot = meet_[static_cast<size_t>(x * nb + y)];
      if (slot != unset && slot != r)
        throw InputError("conflicting intersection entries for (" + in.a + ", " + in.b + ")");
      slot = r;
    };
    set(a, b);
    set(b, a);
  }
  for (int b = 0; b < nb; ++b) {
    for (int x : {ambient_ * nb + b, b * nb + ambient_})
      if (meet_[static_cast<size_t>(x)] == unset) meet_[static_cast<size_t>(x)] = b;
  }
  for (int a = 0; a < nb; ++a)
    for (int b = 0; b < nb; ++b)
      if (meet_[static_cast<size_t>(a * nb + b)] == unset)
        throw InputError("intersection table has no entry for (" + burrows_[a].id + ", " +
                         burrows_[b].id + ")");

  inside_.assign(elements_.size(), 0);
  for (int x = 0; x < element_count(); ++x)
    for (int s = 0; s < element_count(); ++s)
      if (burrow_contains(element_burrow(x), element_burrow(s))) inside_[x] |= singleton(s);

  for (size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    const int s = burrow_index(e.small), b = burrow_index(e.big);
    if (s == b || !burrow_contains(b, s))
      throw InputError("edge " + e.small + " < " + e.big + " joins burrows that are not nested");
    if (!edge_index_.emplace(std::make_pair(s, b), i).second)
      throw InputError("duplicate edge " + e.small + " < " + e.big);
    const auto& big = burrows_[b].algebra;
    const auto& small = burrows_[s].algebra;
    if (e.pullback.shift() != 0 || e.pullback.source_dims() != big.dims() ||
        e.pullback.target_dims() != small.dims())
      throw InputError("pullback of edge " + e.small + " < " + e.big + " has the wrong shape");
    if (e.pushforward.shift() != burrows_[s].codim - burrows_[b].codim ||
        e.pushforward.source_dims() != small.dims() || e.pushforward.target_dims() != big.dims())
      throw InputError("pushforward of edge " + e.small + " < " + e.big + " has the wrong shape");
    for (const auto& c : e.chern.coeffs)
      if (c.size() != big.dim())
        throw InputError("Chern coefficient of edge " + e.small + " < " + e.big +
                         " has the wrong length");
  }
  for (int a = 0; a < nb; ++a)
    for (int b = 0; b < nb; ++b)
      if (a != b && burrow_contains(b, a) && !has_edge(a, b))
        throw InputError("missing edge " + burrows_[a].id + " < " + burrows_[b].id);

  if (nest_rule_.kind == NestRule::Kind::NestedOrDisjoint)
    for (const auto& el : elements_)
      if (el.indices.empty())
        throw InputError("nest rule nested-or-disjoint needs index sets; element " + el.id +
                         " has none");
  for (const auto& n : nest_rule_.nests) {
    ElementSet m = 0;
    for (const auto& id : n) m |= singleton(element_index(id));
    explicit_nests_.push_back(m);
  }
  std::sort(explicit_nests_.begin(), explicit_nests_.end());
}

void BurrowDiagram::index() {
  if (elements_.size() > 64) throw InputError("at most 64 building-set elements are supported");
  for (int b = 0; b < burrow_count(); ++b) {
    if (!burrow_ids_.emplace(burrows_[b].id, b).second)
      throw InputError("duplicate burrow id " + burrows_[b].id);
    if (burrows_[b].codim == 0) {
      if (ambient_ >= 0) throw InputError("more than one burrow of codimension 0");
      ambient_ = b;
    }
    if (burrows_[b].codim < 0) throw InputError("negative codimension on " + burrows_[b].id);
  }
  if (ambient_ < 0) throw InputError("no ambient burrow (codimension 0)");
  for (int e = 0; e < element_count(); ++e) {
    if (!element_ids_.emplace(elements_[e].id, e).second)
      throw InputError("duplicate element id " + elements_[e].id);
    if (elements_[e].codim < 1) throw InputError("element " + elements_[e].id + " has codim < 1");
    element_burrow_.push_back(burrow_index(elements_[e].burrow));
  }
}

BurrowDiagram::BurrowDiagram(const BurrowDiagram& o)
    : socle_degree_(o.socle_degree_),
      elements_(o.elements_),
      burrows_(o.burrows_),
      edges_(o.edges_),
      nest_rule_(o.nest_rule_),
      element_ids_(o.element_ids_),
      burrow_ids_(o.burrow_ids_),
      element_burrow_(o.element_burrow_),
      inside_(o.inside_),
      meet_(o.meet_),
      edge_index_(o.edge_index_),
      explicit_nests_(o.explicit_nests_),
      ambient_(o.ambient_) {}

BurrowDiagram& BurrowDiagram::operator=(const BurrowDiagram& o) {
  if (this == &o) return *this;
  socle_degree_ = o.socle_degree_;
  elements_ = o.elements_;
  burrows_ = o.burrows_;
  edges_ = o.edges_;
  nest_rule_ = o.nest_rule_;
  element_ids_ = o.element_ids_;
  burrow_ids_ = o.burrow_ids_;
  element_burrow_ = o.element_burrow_;
  inside_ = o.inside_;
  meet_ = o.meet_;
  edge_index_ = o.edge_index_;
  explicit_nests_ = o.explicit_nests_;
  ambient_ = o.ambient_;
  std::lock_guard lock(cache_mutex_);
  nest_cache_.clear();
  return *this;
}

int BurrowDiagram::element_index(const std::string& id) const {
  auto it = element_ids_.find(id);
  if (it == element_ids_.end()) throw InputError("unknown element id " + id);
  return it->second;
}

int BurrowDiagram::burrow_index(const std::string& id) const {
  auto it = burrow_ids_.find(id);
  if (it == burrow_ids_.end()) throw InputError("unknown burrow id " + id);
  return it->second;
}

bool BurrowDiagram::has_edge(int small, int big) const {
  return edge_index_.count({small, big}) > 0;
}

const BurrowEdge& BurrowDiagram::edge(int small, int big) const {
  auto it = edge_index_.find({small, big});
  if (it == edge_index_.end())
    throw InputError("no edge " + burrows_[small].id + " < " + burrows_[big].id);
  return edges_[it->second];
}

int BurrowDiagram::burrow_of(ElementSet s) const {
  int b = ambient_;
  for (int e : elements_of(s)) {
    b = meet(b, element_burrow(e));
    if (b < 0) return -1;
  }
  return b;
}

std::optional<std::string> BurrowDiagram::burrow_of(const std::vector<std::string>& ids) const {
  ElementSet s = 0;
  for (const auto& id : ids) s |= singleton(element_index(id));
  const int b = burrow_of(s);
  if (b < 0) return std::nullopt;
  return burrows_[b].id;
}

bool BurrowDiagram::element_strictly_inside(int x, int z) const {
  const int bx = element_burrow(x), bz = element_burrow(z);
  return bx != bz && burrow_contains(bz, bx);
}

bool BurrowDiagram::transversal_rule(ElementSet s) const {
  const auto members = elements_of(s);
  const size_t n = members.size();
  if (n < 2) return true;
  for (std::uint64_t sub = 1; sub < (std::uint64_t{1} << n); ++sub) {
    if (std::popcount(sub) < 2) continue;
    ElementSet chosen = 0;
    int codim_sum = 0;
    bool antichain = true;
    std::vector<int> picked;
    for (size_t i = 0; i < n; ++i)
      if ((sub >> i) & 1U) picked.push_back(members[i]);
    for (size_t i = 0; i < picked.size() && antichain; ++i)
      for (size_t j = i + 1; j < picked.size() && antichain; ++j)
        if (element_strictly_inside(picked[i], picked[j]) ||
            element_strictly_inside(picked[j], picked[i]))
          antichain = false;
    if (!antichain) continue;
    for (int e : picked) {
      chosen |= singleton(e);
      codim_sum += elements_[e].codim;
    }
    const int b = burrow_of(chosen);
    if (b < 0) return false;
    if (burrows_[b].codim != codim_sum) return false;
    for (int e = 0; e < element_count(); ++e)
      if (element_burrow(e) == b) return false;
  }
  return true;
}

bool BurrowDiagram::satisfies_nest_rule(ElementSet s) const {
  if (s == 0) return true;
  switch (nest_rule_.kind) {
    case NestRule::Kind::NestedOrDisjoint: {
      const auto members = elements_of(s);
      for (size_t i = 0; i < members.size(); ++i)
        for (size_t j = i + 1; j < members.size(); ++j) {
          std::vector<int> a = elements_[members[i]].indices, b = elements_[members[j]].indices;
          std::sort(a.begin(), a.end());
          std::sort(b.begin(), b.end());
          std::vector<int> common;
          std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
          if (!common.empty() && common != a && common != b) return false;
        }
      return true;
    }
    case NestRule::Kind::Transversal:
      return transversal_rule(s);
    case NestRule::Kind::Explicit:
      return std::binary_search(explicit_nests_.begin(), explicit_nests_.end(), s);
  }
  return false;
}

bool BurrowDiagram::is_nest(ElementSet s) const {
  {
    std::lock_guard lock(cache_mutex_);
    auto it = nest_cache_.find(s);
    if (it != nest_cache_.end()) return it->second;
  }
  const bool v = satisfies_nest_rule(s) && burrow_of(s) >= 0;
  std::lock_guard lock(cache_mutex_);
  nest_cache_.emplace(s, v);
  return v;
}

int BurrowDiagram::enclosing_burrow(ElementSet nest, int x) const {
  int b = ambient_;
  for (int z : elements_of(nest))
    if (element_strictly_inside(x, z)) b = meet(b, element_burrow(z));
  return b;
}

int BurrowDiagram::standard_bound(ElementSet nest, int x) const {
  const int w = enclosing_burrow(nest, x);
  return elements_[x].codim - (w >= 0 ? burrows_[w].codim : 0);
}

RatVector BurrowDiagram::pull(int big, int small, const RatVector& v) const {
  if (big == small) return v;
  return edge(small, big).pullback.apply(v);
}

RatVector BurrowDiagram::push(int small, int big, const RatVector& v) const {
  if (big == small) return v;
  return edge(small, big).pushforward.apply(v);
}

RatVector BurrowDiagram::fundamental_class(int small, int big) const {
  if (small == big) return burrows_[big].algebra.unit();
  const auto& e = edge(small, big);
  if (e.chern.degree() == 0) return burrows_[big].algebra.zero();
  return e.chern.coeffs.back();
}

std::vector<Intersection> BurrowDiagram::intersection_table() const {
  std::vector<Intersection> out;
  for (int a = 0; a < burrow_count(); ++a)
    for (int b = a + 1; b < burrow_count(); ++b) {
      if (a == ambient_ || b == ambient_) continue;
      const int m = meet(a, b);
      out.push_back({burrows_[a].id, burrows_[b].id,
                     m < 0 ? std::nullopt : std::optional<std::string>(burrows_[m].id)});
    }
  return out;
}

// ---------------------------------------------------------------------------

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::vector<ValidationReport::Check> ValidationReport::failures() const {
  std::vector<Check> out;
  for (const auto& c : checks)
    if (!c.passed) out.push_back(c);
  return out;
}

void ValidationReport::add(std::string name, bool passed, std::string detail) {
  checks.push_back({std::move(name), passed, std::move(detail)});
}

namespace {

std::string join_degrees(const std::vector<int>& ds) {
  std::string s;
  for (size_t i = 0; i < ds.size(); ++i) s += (i ? ", " : "") + std::to_string(ds[i]);
  return s;
}

}  // namespace

ValidationReport validate(const BurrowDiagram& dg) {
  ValidationReport r;
  const int d = dg.socle_degree();
  const int nb = dg.burrow_count();

  for (int b = 0; b < nb; ++b) {
    const auto& node = dg.burrow(b);
    const auto sc = socle_check(node.algebra, d - node.codim);
    std::string detail;
    for (const auto& f : sc.failures) detail += (detail.empty() ? "" : "; ") + f;
    r.add("socle " + node.id, sc.ok(), detail);
    const auto ax = find_axiom_violation(node.algebra);
    r.add("axioms " + node.id, !ax, ax.value_or(""));
    for (const auto& [name, v] : node.named)
      r.add("named class " + node.id + "." + name, v.size() == node.algebra.dim(),
            v.size() == node.algebra.dim() ? "" : "wrong length");
  }

  for (int e = 0; e < dg.element_count(); ++e) {
    const auto& el = dg.element(e);
    const int b = dg.element_burrow(e);
    r.add("element codim " + el.id, dg.burrow(b).codim == el.codim,
          dg.burrow(b).codim == el.codim
              ? ""
              : "element codim " + std::to_string(el.codim) + " but burrow " + dg.burrow(b).id +
                    " has codim " + std::to_string(dg.burrow(b).codim));
  }

  for (const auto& edge : dg.edges()) {
    const int s = dg.burrow_index(edge.small), b = dg.burrow_index(edge.big);
    const auto& small = dg.burrow(s).algebra;
    const auto& big = dg.burrow(b).algebra;
    const std::string tag = edge.small + " < " + edge.big;

    const auto surj = surjectivity_failures(edge.pullback);
    r.add("surjectivity " + tag, surj.empty(),
          surj.empty() ? "" : "surjectivity failed at degree " + join_degrees(surj));
    const auto hom = find_homomorphism_violation(edge.pullback, big, small);
    r.add("homomorphism " + tag, !hom, hom.value_or(""));
    const auto proj = find_projection_formula_violation(edge.pullback, edge.pushforward, big, small);
    r.add("projection formula " + tag, !proj, proj.value_or(""));

    const int codiff = dg.burrow(s).codim - dg.burrow(b).codim;
    bool shape = edge.chern.degree() == codiff;
    std::string why = shape ? "" : "degree " + std::to_string(edge.chern.degree()) +
                                       " but codimension difference " + std::to_string(codiff);
    for (int i = 1; shape && i <= edge.chern.degree(); ++i) {
      const auto& c = edge.chern.coeffs[static_cast<size_t>(i - 1)];
      const auto deg = big.homogeneous_degree(c);
      if (!is_zero(c) && deg != i) {
        shape = false;
        why = "c_" + std::to_string(i) + " is not homogeneous of degree " + std::to_string(i);
      }
    }
    r.add("chern shape " + tag, shape, why);
    if (shape && codiff > 0) {
      const RatVector top = edge.chern.coeffs.back();
      const RatVector cls = edge.pushforward.apply(small.unit());
      r.add("chern top class " + tag, top == cls,
            top == cls ? "" : "c_top = " + format_element(big, top) + " but [" + edge.small +
                                  "] = " + format_element(big, cls));
      if (b == dg.ambient())
        r.add("nonvanishing " + tag, !is_zero(top),
              is_zero(top) ? "[" + edge.small + "] = 0 violates nonvanishing hypothesis" : "");
    }
  }

  // Functoriality along chains a < b < c.
  bool functorial = true;
  std::string fdetail;
  for (int a = 0; a < nb && functorial; ++a)
    for (int b = 0; b < nb && functorial; ++b) {
      if (a == b || !dg.burrow_contains(b, a)) continue;
      for (int c = 0; c < nb && functorial; ++c) {
        if (c == b || c == a || !dg.burrow_contains(c, b)) continue;
        const auto& ab = dg.edge(a, b);
        const auto& bc = dg.edge(b, c);
        const auto& ac = dg.edge(a, c);
        if (!(compose(ab.pullback, bc.pullback) == ac.pullback)) {
          functorial = false;
          fdetail = "pullback " + dg.burrow(c).id + " -> " + dg.burrow(b).id + " -> " +
                    dg.burrow(a).id + " differs from the direct pullback";
        } else if (!(compose(bc.pushforward, ab.pushforward) == ac.pushforward)) {
          functorial = false;
          fdetail = "pushforward " + dg.burrow(a).id + " -> " + dg.burrow(b).id + " -> " +
                    dg.burrow(c).id + " differs from the direct pushforward";
        }
      }
    }
  r.add("functoriality", functorial, fdetail);

  // Intersection table is a meet-semilattice compatible with codimensions.
  bool lattice = true;
  std::string ldetail;
  for (int a = 0; a < nb && lattice; ++a)
    for (int b = 0; b < nb && lattice; ++b) {
      const int m = dg.meet(a, b);
      if (m != dg.meet(b, a)) {
        lattice = false;
        ldetail = "intersection of " + dg.burrow(a).id + " and " + dg.burrow(b).id +
                  " is not symmetric";
        break;
      }
      if (m < 0) continue;
      if (dg.meet(m, a) != m || dg.meet(m, b) != m ||
          dg.burrow(m).codim < std::max(dg.burrow(a).codim, dg.burrow(b).codim) ||
          (m != a && dg.burrow(m).codim == dg.burrow(a).codim) ||
          (m != b && dg.burrow(m).codim == dg.burrow(b).codim)) {
        lattice = false;
        ldetail = "intersection of " + dg.burrow(a).id + " and " + dg.burrow(b).id +
                  " is not contained in both";
        break;
      }
      for (int c = 0; c < nb; ++c) {
        const int mbc = dg.meet(b, c);
        const int left = dg.meet(m, c);
        const int right = mbc < 0 ? -1 : dg.meet(a, mbc);
        if (left != right) {
          lattice = false;
          ldetail = "intersection is not associative on (" + dg.burrow(a).id + ", " +
                    dg.burrow(b).id + ", " + dg.burrow(c).id + ")";
          break;
        }
      }
    }
  r.add("intersection table", lattice, ldetail);

  // Nest predicate: singletons are nests, downward closed on listed nests.
  bool singles = true;
  std::string sdetail;
  for (int e = 0; e < dg.element_count(); ++e)
    if (!dg.satisfies_nest_rule(singleton(e))) {
      singles = false;
      sdetail = "singleton {" + dg.element(e).id + "} is not a nest";
      break;
    }
  r.add("singleton nests", singles, sdetail);
  if (dg.nest_rule().kind == NestRule::Kind::Explicit) {
    bool closed = true;
    std::string cdetail;
    for (const auto& n : dg.nest_rule().nests) {
      ElementSet m = 0;
      for (const auto& id : n) m |= singleton(dg.element_index(id));
      for (int e : elements_of(m))
        if (!dg.satisfies_nest_rule(m & ~singleton(e)) && element_count(m) > 1) {
          closed = false;
          cdetail = "nest list is not closed under removing " + dg.element(e).id;
        }
    }
    r.add("nests downward closed", closed, cdetail);
  }
  return r;
}

}  // namespace wonder
