#pragma once

#include "wonder/engine.hpp"

#include <string>
#include <vector>

namespace wonder {

/// One instantiated relation and whether it evaluates to zero in the ring.
struct RelationCheck {
  std::string family;  // "non-nest", "J", "chern", "pair-sum"
  std::string text;
  bool vanishes = false;
};

/// Kernel of the pullback from the ambient to the burrow of an element,
/// compared with the ideal generated by the named generators.
struct KernelGeneration {
  std::string element;
  std::vector<std::string> generators;
  Index kernel_dim = 0;
  Index ideal_dim = 0;  // of the ideal generated by the named generators
  bool generators_in_kernel = true;
  bool generates() const { return generators_in_kernel && ideal_dim == kernel_dim; }
};

/// Relations of the presentation of the ring in ambient classes and the
/// exceptional classes E_X:
///   non-nest   E_{X_1}...E_{X_k} = 0 for every minimal non-nest;
///   J          y * E_X = 0 for y in the kernel of the pullback to X, for a
///              kernel basis and for named generators (h_i - h_j on fiber
///              powers; K_i - K_j, D_ik - D_jk, D_ij + K_j on curve powers);
///   chern      P_{X⊂Y}(-sum_{S⊆X} E_S) = 0 for every element X.
/// The "pair-sum" entries are informational: for each pair element D_ij they
/// record which normalization of sum_{S⊇ij} E_S vanishes.
struct PresentationReport {
  std::vector<RelationCheck> relations;
  std::vector<KernelGeneration> kernels;
  /// Every non-informational relation vanishes.
  bool ok() const;
  std::vector<const RelationCheck*> failures() const;
};

PresentationReport presentation_report(const WonderRing& ring);

}  // namespace wonder
