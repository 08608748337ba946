#pragma once

#include "wonder/burrow_diagram.hpp"

#include <string>
#include <vector>

namespace wonder {

/// Exponents of a standard function, aligned with elements_of(nest).
using StandardFunction = std::vector<int>;

int norm(const StandardFunction& mu);

struct LiSummand {
  ElementSet nest = 0;
  StandardFunction mu;
  int burrow = 0;  // burrow of the intersection of the nest
  int shift = 0;   // norm(mu)
};

struct LiDecomposition {
  std::vector<LiSummand> summands;
  std::vector<Index> poincare;  // coefficient of t^k, k = 0..socle degree
};

/// All nests with nonempty intersection, the empty nest first, ordered by
/// size and then lexicographically by element index.
std::vector<ElementSet> enumerate_nests(const BurrowDiagram& dg);

/// All standard functions on `nest`, in lexicographic order. The empty nest
/// has exactly one (the empty function).
std::vector<StandardFunction> enumerate_standard(const BurrowDiagram& dg, ElementSet nest);

LiDecomposition li_decomposition(const BurrowDiagram& dg);

/// "{D12,D123}" style rendering.
std::string format_nest(const BurrowDiagram& dg, ElementSet nest);
/// "{D12:1,D123:2}" style rendering.
std::string format_mu(const BurrowDiagram& dg, ElementSet nest, const StandardFunction& mu);

}  // namespace wonder
