#pragma once

#include "wonder/engine.hpp"

#include <string>
#include <vector>

namespace wonder {

/// PD verdict of one algebra at a prescribed socle degree. A missing socle
/// counts as non-PD and is recorded in `note`.
struct PdSummary {
  bool has_socle = false;
  bool pd = false;
  std::vector<Index> discrepancy;  // per degree, dim - rank gram
  std::string note;
};

PdSummary pd_summary(const GradedAlgebra& alg, int socle_degree);

struct BurrowPd {
  std::string burrow;
  bool contributes = false;  // appears as the burrow of some Li summand
  PdSummary summary;
};

/// Ring PD against PD of the burrows. Burrows that do not occur in the Li
/// decomposition (those reached only through divisorial elements) cannot
/// influence the ring and are listed but excluded from the equivalence.
struct PdEquivalenceReport {
  PdSummary ring;
  std::vector<BurrowPd> burrows;
  bool contributing_pd = true;
  bool all_pd = true;
  bool equivalence = false;
  std::vector<std::string> failing;  // non-PD contributing burrows
  bool ok() const { return equivalence; }
};

PdEquivalenceReport pd_equivalence_report(const WonderRing& ring);

/// A nonzero block of the ring's socle pairing between Li summands.
struct GramBlock {
  int left = 0, right = 0;  // summand indices
  int degree = 0;           // degree on the left
  bool diagonal = false;    // same nest, mu + mu' equal to the bound everywhere
  bool allowed = false;     // same nest, mu + mu' at least the bound everywhere
};

struct BlockReport {
  bool has_socle = false;
  std::vector<GramBlock> nonzero;
  std::vector<std::string> violations;
  /// Summand order (nest, then norm of mu descending) that makes the
  /// pairing block triangular against the complementary order.
  std::vector<int> order;
  /// Every nonzero block pairs a summand with its complement.
  bool off_diagonal_free = true;
  bool ok() const { return has_socle && violations.empty(); }
};

BlockReport block_structure_check(const WonderRing& ring);

struct DiscrepancyTable {
  bool has_socle = false;
  std::vector<Index> ring;                    // per degree
  std::vector<std::vector<Index>> by_summand; // [summand][degree] of diagonal blocks
  std::vector<Index> block_sum;               // per degree
  bool sums_match = false;
  bool certified = false;  // block structure valid and off-diagonal free
};

DiscrepancyTable discrepancy_table(const WonderRing& ring);

/// For pi^*: small -> big with companion pi_*: big -> small. Hypotheses:
/// pi^* injective ring map, pi_* pi^* = id, projection formula. Conclusion:
/// pi^* maps socle-kernel elements of small to nonzero socle-kernel
/// elements of big.
struct TransferReport {
  std::vector<std::string> hypothesis_failures;
  std::vector<std::string> conclusion_failures;
  int kernel_elements = 0;
  bool ok() const { return hypothesis_failures.empty() && conclusion_failures.empty(); }
};

TransferReport pullback_transfer_check(const GradedAlgebra& small, const GradedAlgebra& big,
                                       const GradedMap& pullback, const GradedMap& pushforward);

/// pi^* and pi_* between the ambient algebra and the ring: pi^* is the
/// inclusion of the empty-nest summand, pi_* its projection.
std::pair<GradedMap, GradedMap> ambient_maps(const WonderRing& ring);

}  // namespace wonder
