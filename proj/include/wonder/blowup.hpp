#pragma once

#include "wonder/burrow_diagram.hpp"

#include <string>
#include <vector>

namespace wonder {

/// Ring of a blow-up Bl_Z Y on the additive basis A(Y) ⊕ ⊕_{k=1}^{c-1} A(Z)·E^k.
///
/// The Z-summand basis element (z, k) stands for z̃·E^k, where z̃ is any lift
/// of z to Y; the choice does not matter because the kernel of the pullback
/// annihilates E. Signs follow the relation P(-E) = 0.
struct BlowupResult {
  GradedAlgebra algebra;
  RatVector exceptional;      // E
  GradedMap from_ambient;     // A(Y) -> A(Bl), injective
  int codim = 1;
  /// layout[0][y] is the index of Y-basis y; layout[k][z] that of z·E^k.
  std::vector<std::vector<Index>> layout;
};

/// Throws InputError if the data is inconsistent: wrong shapes, pullback not
/// surjective, c_c different from the pushforward of 1, or one of the
/// defining relations failing in the output.
BlowupResult blow_up(const GradedAlgebra& y, const GradedAlgebra& z, const GradedMap& pullback,
                     const GradedMap& pushforward, const ChernPolynomial& chern,
                     const std::string& exceptional_label = "E");

/// A(P(V)) for a rank-r bundle V on Z with Chern classes c_1..c_r, basis
/// z·ξ^k for k < r and ξ^r = -(c_1 ξ^{r-1} + ... + c_r).
struct ProjectiveBundleResult {
  GradedAlgebra algebra;
  RatVector xi;
  GradedMap from_base;  // A(Z) -> A(P(V))
  int rank = 1;
};

ProjectiveBundleResult projective_bundle(const GradedAlgebra& z,
                                         const std::vector<RatVector>& chern_classes,
                                         const std::string& generator_label = "xi");

struct PropagationReport {
  bool before_pd = false;   // Y and Z (or the base) all PD
  bool after_pd = false;    // the output ring
  bool equivalence = false; // before_pd == after_pd
  bool block_triangular = true;
  std::vector<std::string> notes;
  bool ok() const { return equivalence && block_triangular; }
};

/// PD on both sides of a blow-up; the socle degree is Y's top degree and Z's
/// socle sits codim lower. Also checks that gram blocks pairing z·E^j
/// against z'·E^k vanish for (j, k) != (0, 0) and j + k < c.
PropagationReport pd_propagation_check(const GradedAlgebra& y, const GradedAlgebra& z,
                                       const BlowupResult& result);

PropagationReport pd_propagation_check(const GradedAlgebra& base,
                                       const ProjectiveBundleResult& result);

}  // namespace wonder
