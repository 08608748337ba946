#pragma once

#include "wonder/burrow_diagram.hpp"
#include "wonder/nests.hpp"

#include <map>
#include <string>
#include <vector>

namespace wonder {

constexpr long kDefaultMaxRewrites = 10000;

/// Per-product rewriting statistics.
struct RewriteStats {
  long products = 0;
  long rewrites = 0;
  long max_rewrites_in_product = 0;
  long measure_checks = 0;
  long measure_failures = 0;
  long cap_hits = 0;
  void merge(const RewriteStats& o);
};

/// Exponents of a monomial ∏ E_X^{a_X}, indexed by element.
using Exponents = std::vector<int>;

/// The ring of the wonderful model, stored on the Li basis: each basis
/// element is a (nest, standard function, burrow basis class) triple.
///
/// All basis products are computed once at construction; the ring is
/// immutable afterwards and may be shared between threads.
class WonderRing {
public:
  /// Throws ComputationError when a product exceeds `max_rewrites` rewrite
  /// steps, InputError when the diagram data forces an excess intersection.
  explicit WonderRing(BurrowDiagram diagram, long max_rewrites = kDefaultMaxRewrites);

  const BurrowDiagram& diagram() const { return diagram_; }
  const LiDecomposition& li() const { return li_; }
  const GradedAlgebra& algebra() const { return algebra_; }
  const std::vector<Index>& dims() const { return algebra_.dims(); }
  long max_rewrites() const { return max_rewrites_; }

  /// Li summand and burrow-basis index of a ring basis element.
  int summand_of(Index basis) const { return basis_summand_[static_cast<size_t>(basis)]; }
  Index local_of(Index basis) const { return basis_local_[static_cast<size_t>(basis)]; }
  /// Ring basis index of (summand, burrow basis element).
  Index basis_index(int summand, Index local) const;

  /// Normal form of gamma · ∏ E_X^{a_X} with gamma in the algebra of the
  /// burrow of the support. The support must be a nest.
  RatVector monomial(const Exponents& exps, const RatVector& gamma,
                     RewriteStats* stats = nullptr) const;
  /// Recomputes the product of two basis elements through the rewriting
  /// system (bypassing the table), collecting statistics.
  RatVector multiply_basis(Index a, Index b, RewriteStats* stats = nullptr) const;

  RatVector multiply(const RatVector& a, const RatVector& b) const {
    return algebra_.multiply(a, b);
  }

  /// Ambient class pulled back to the ring.
  RatVector ambient_class(const RatVector& y) const;
  /// The exceptional class E_X.
  RatVector exceptional(int element) const;

  /// Named classes for expressions: identifier-like ambient labels, ambient
  /// named classes and E_<element id>.
  std::map<std::string, RatVector> names() const;

  const RewriteStats& build_stats() const { return build_stats_; }

private:
  int ambient_summand_ = -1;
  BurrowDiagram diagram_;
  long max_rewrites_;
  LiDecomposition li_;
  std::vector<int> order_;  // element indices by (codim, index)
  std::map<Exponents, int> summand_by_exponents_;
  std::vector<std::vector<Index>> summand_basis_;
  std::vector<int> basis_summand_;
  std::vector<Index> basis_local_;
  GradedAlgebra algebra_;
  RewriteStats build_stats_;
};

std::string format_exponents(const BurrowDiagram& dg, const Exponents& exps);

}  // namespace wonder
