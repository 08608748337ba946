#pragma once

#include "wonder/burrow_diagram.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace wonder {

enum class Fiber { P1, P2, Curve };

struct FmOptions {
  Fiber fiber = Fiber::P1;
  int n = 2;
  /// Smallest |I| of a diagonal D_I in the building set (2 or 3). Dropping
  /// |I| = 2 is only meaningful when pair diagonals are divisors.
  int min_size = 2;
  /// Genus of the abstract curve model.
  int genus = 2;
};

/// Diagonal building set on the n-th power of a fiber. Burrows are indexed by
/// set partitions of {1..n}; burrow algebras are fiber powers (for the curve,
/// the subring of H*(C^m) generated by K_i and D_ij). Nest rule:
/// nested-or-disjoint.
BurrowDiagram fm_power(const FmOptions& options);

/// Building set {D_I : |I| >= 2} ∪ {D_{I,p} : p in {0, 1, inf}} on (P1)^n.
/// Nest rule: transversal.
BurrowDiagram keel_model(int n);

/// All set partitions of {0..n-1}, each as a list of blocks with sorted
/// members, blocks ordered by smallest member.
std::vector<std::vector<std::vector<int>>> set_partitions(int n);

/// Graded Gorenstein algebra with the given dimension vector, built as
/// Q[x_1..x_k]/Ann(F) for a random sum of powers of linear forms F.
/// Throws ComputationError when the shape is not reached within the retry
/// budget, InputError for malformed shapes.
GradedAlgebra synthetic_gorenstein(const std::vector<Index>& dims, std::uint64_t seed);

/// Same dimension vector with a rank-deficient pairing at degree k (and at
/// d - k): classes u in degree k and v in degree d - k that annihilate
/// every positive-degree class are glued onto a smaller Gorenstein algebra.
/// When k = d - k only u is added.
GradedAlgebra synthetic_broken(const std::vector<Index>& dims, int k, std::uint64_t seed);

/// Data of a single blow-up Bl_Z Y.
struct BlowupData {
  GradedAlgebra y, z;
  GradedMap pullback, pushforward;
  ChernPolynomial chern;
};

/// Y = Z ⊗ W with W of top degree c and Z embedded as Z ⊗ [pt_W]; Z and W
/// are Gorenstein or broken as requested; c_1..c_{c-1} are random.
BlowupData synthetic_blowup_data(std::uint64_t seed, bool broken_center, bool broken_ambient);

/// A point in P^2: Chern polynomial t^2 + h^2.
BlowupData point_in_p2();

/// Y = Q[h,k]/(h^3,k^3) with a codimension-2 center whose ring (1,2,1) is
/// not Poincaré duality (p^2 = s, pq = q^2 = 0), [Z] = k^2.
BlowupData broken_center_data();

/// The diagram with a single building-set element Z.
BurrowDiagram single_center_diagram(const BlowupData& data, const std::string& center = "Z");

/// The diagram with an empty building set over Y; its ring is Y itself.
BurrowDiagram ambient_only_diagram(const GradedAlgebra& y);

/// Product diagram on Y_a × Y_b: burrows are products, nests are unions of
/// nests of the factors (listed explicitly).
BurrowDiagram product_diagram(const BurrowDiagram& a, const BurrowDiagram& b);

}  // namespace wonder
