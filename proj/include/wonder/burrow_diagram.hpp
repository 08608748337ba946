#pragma once

#include "wonder/graded_algebra.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace wonder {

/// Bitmask over building-set element indices. Diagrams are limited to 64
/// elements.
using ElementSet = std::uint64_t;

inline ElementSet singleton(int e) { return ElementSet{1} << e; }
inline bool has_element(ElementSet s, int e) { return (s >> e) & 1U; }
int element_count(ElementSet s);
std::vector<int> elements_of(ElementSet s);

struct BuildingElement {
  std::string id;
  std::string burrow;        // the burrow this element is, as a subvariety
  int codim = 1;
  std::vector<int> indices;  // index set for diagonal-type elements (may be empty)
};

struct BurrowNode {
  std::string id;
  int codim = 0;
  GradedAlgebra algebra;
  /// Optional named classes (e.g. K1, D12) used by presentation checks.
  std::map<std::string, RatVector> named;
};

/// Monic polynomial t^deg + c_1 t^{deg-1} + ... + c_deg with c_i in the big
/// burrow's algebra.
struct ChernPolynomial {
  std::vector<RatVector> coeffs;  // c_1 .. c_deg
  int degree() const { return static_cast<int>(coeffs.size()); }
  /// c_i with c_0 = 1.
  RatVector coefficient(const GradedAlgebra& big, int i) const;
};

struct BurrowEdge {
  std::string small;
  std::string big;
  GradedMap pullback;     // big -> small, shift 0
  GradedMap pushforward;  // small -> big, shift = codim difference
  ChernPolynomial chern;
};

/// Pairwise intersection of two burrows; nullopt result means empty.
struct Intersection {
  std::string a, b;
  std::optional<std::string> result;
};

struct NestRule {
  enum class Kind { NestedOrDisjoint, Transversal, Explicit };
  Kind kind = Kind::Transversal;
  std::vector<std::vector<std::string>> nests;  // Explicit only
};

std::string to_string(NestRule::Kind kind);

/// A building set together with the graded rings of all its burrows, the
/// maps between comparable burrows, Chern polynomials and a nest predicate.
///
/// Construction checks structural integrity (ids resolve, intersection table
/// complete, an edge for every comparable pair) and throws InputError on
/// failure. Mathematical hypotheses are checked by validate().
class BurrowDiagram {
public:
  BurrowDiagram(int socle_degree, std::vector<BuildingElement> elements,
                std::vector<BurrowNode> burrows, std::vector<BurrowEdge> edges,
                const std::vector<Intersection>& intersections, NestRule nests);

  BurrowDiagram(const BurrowDiagram& other);
  BurrowDiagram& operator=(const BurrowDiagram& other);

  int socle_degree() const { return socle_degree_; }

  int element_count() const { return static_cast<int>(elements_.size()); }
  const BuildingElement& element(int e) const { return elements_[static_cast<size_t>(e)]; }
  const std::vector<BuildingElement>& elements() const { return elements_; }
  int element_index(const std::string& id) const;  // throws InputError
  int element_burrow(int e) const { return element_burrow_[static_cast<size_t>(e)]; }

  int burrow_count() const { return static_cast<int>(burrows_.size()); }
  const BurrowNode& burrow(int b) const { return burrows_[static_cast<size_t>(b)]; }
  const std::vector<BurrowNode>& burrows() const { return burrows_; }
  int burrow_index(const std::string& id) const;  // throws InputError
  int ambient() const { return ambient_; }

  const std::vector<BurrowEdge>& edges() const { return edges_; }
  const BurrowEdge& edge(int small, int big) const;
  bool has_edge(int small, int big) const;
  const NestRule& nest_rule() const { return nest_rule_; }

  /// Intersection of two burrows, -1 when empty.
  int meet(int a, int b) const { return meet_[static_cast<size_t>(a * burrow_count() + b)]; }
  bool burrow_contains(int big, int small) const { return meet(big, small) == small; }

  /// Burrow of the intersection of the given elements (ambient for the empty
  /// set), -1 when empty.
  int burrow_of(ElementSet s) const;
  std::optional<std::string> burrow_of(const std::vector<std::string>& ids) const;

  /// X strictly contained in Z as subvarieties.
  bool element_strictly_inside(int x, int z) const;
  /// All elements S with S contained in X (X included).
  ElementSet elements_inside(int x) const { return inside_[static_cast<size_t>(x)]; }

  /// Nest predicate combined with non-emptiness of the intersection.
  bool is_nest(ElementSet s) const;
  /// The raw predicate, without the non-emptiness requirement.
  bool satisfies_nest_rule(ElementSet s) const;

  /// Burrow of the intersection of all elements of `nest` strictly containing
  /// x (ambient when none).
  int enclosing_burrow(ElementSet nest, int x) const;
  /// codim(x) - codim(enclosing_burrow(nest, x)).
  int standard_bound(ElementSet nest, int x) const;

  /// Pullback from burrow `big` to burrow `small` (identity when equal).
  RatVector pull(int big, int small, const RatVector& v) const;
  /// Pushforward from `small` to `big` (identity when equal).
  RatVector push(int small, int big, const RatVector& v) const;

  /// The class [small] in big's algebra (c_top of the edge's polynomial).
  RatVector fundamental_class(int small, int big) const;

  std::vector<Intersection> intersection_table() const;

private:
  void index();
  bool transversal_rule(ElementSet s) const;

  int socle_degree_;
  std::vector<BuildingElement> elements_;
  std::vector<BurrowNode> burrows_;
  std::vector<BurrowEdge> edges_;
  NestRule nest_rule_;

  std::map<std::string, int> element_ids_, burrow_ids_;
  std::vector<int> element_burrow_;
  std::vector<ElementSet> inside_;
  std::vector<int> meet_;
  std::map<std::pair<int, int>, size_t> edge_index_;
  std::vector<ElementSet> explicit_nests_;
  int ambient_ = -1;

  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<ElementSet, bool> nest_cache_;
};

struct ValidationReport {
  struct Check {
    std::string name;
    bool passed;
    std::string detail;
  };
  std::vector<Check> checks;

  bool ok() const;
  std::vector<Check> failures() const;
  void add(std::string name, bool passed, std::string detail = {});
};

/// Checks every hypothesis the engine and the duality theorems rely on.
ValidationReport validate(const BurrowDiagram& diagram);

}  // namespace wonder
