#pragma once

#include "wonder/linalg.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wonder {

/// Sparse coefficient list over a global basis, sorted by index, no zeros.
using SparseVec = std::vector<std::pair<Index, Rat>>;

SparseVec to_sparse(const RatVector& v);
RatVector to_dense(const SparseVec& v, Index size);

/// Finite-dimensional graded commutative Q-algebra given by a per-degree basis
/// and sparse structure constants.
///
/// The global basis is ordered by degree; basis element 0 is the unit. Unit
/// products are implicit and never stored. Every other product e_i * e_j with
/// deg(i) + deg(j) <= top_degree is read from the table (missing means zero);
/// products landing above top_degree are zero by construction.
class GradedAlgebra {
public:
  /// One structure constant: e_i * e_j has coefficient `value` on e_k.
  struct MultEntry {
    Index i, j, k;
    Rat value;
  };

  GradedAlgebra();  // the one-dimensional algebra Q in degree 0

  /// Throws std::invalid_argument when the table is malformed: indices out
  /// of range, inconsistent degrees, unit rows listed explicitly, or two
  /// different values stored for (i, j) and (j, i).
  GradedAlgebra(std::vector<Index> dims, std::vector<std::string> labels,
                const std::vector<MultEntry>& entries);

  int top_degree() const { return static_cast<int>(dims_.size()) - 1; }
  Index dim() const { return static_cast<Index>(labels_.size()); }
  Index dim(int degree) const;
  const std::vector<Index>& dims() const { return dims_; }
  Index offset(int degree) const { return offsets_[static_cast<size_t>(degree)]; }
  int degree(Index basis) const { return degrees_[static_cast<size_t>(basis)]; }
  const std::string& label(Index basis) const { return labels_[static_cast<size_t>(basis)]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Index> find_label(const std::string& label) const;

  /// Product of two basis elements as a sparse combination.
  const SparseVec& basis_product(Index i, Index j) const;

  /// Canonical list of stored constants (i <= j, unit rows omitted).
  std::vector<MultEntry> entries() const;

  RatVector zero() const { return zero_vector<Rat>(dim()); }
  RatVector unit() const { return unit_vector<Rat>(dim(), 0); }
  RatVector basis(Index i) const { return unit_vector<Rat>(dim(), i); }

  /// Exact product; throws std::invalid_argument if an operand has the wrong
  /// length.
  RatVector multiply(const RatVector& a, const RatVector& b) const;
  RatVector power(const RatVector& a, int exponent) const;

  /// Degree of a nonzero homogeneous element; nullopt for zero or mixed.
  std::optional<int> homogeneous_degree(const RatVector& v) const;
  /// Restriction of v to its degree-k component.
  RatVector component(const RatVector& v, int degree) const;

  friend bool operator==(const GradedAlgebra& a, const GradedAlgebra& b);

private:
  std::vector<Index> dims_;
  std::vector<Index> offsets_;
  std::vector<int> degrees_;
  std::vector<std::string> labels_;
  std::vector<SparseVec> table_;  // dim x dim, symmetric
};

std::string format_element(const GradedAlgebra& alg, const RatVector& v);

/// Builds an algebra by evaluating `product(i, j)` (a global coefficient
/// vector) on every pair of non-unit basis elements with i <= j and
/// deg i + deg j <= top degree.
GradedAlgebra algebra_from_products(std::vector<Index> dims, std::vector<std::string> labels,
                                    const std::function<RatVector(Index, Index)>& product);

/// Q[h]/(h^{top+1}), labels "1", "h", "h^2", ...
GradedAlgebra truncated_polynomial(int top, const std::string& var = "h");

/// Tensor product A (x) B with labels "a*b" (unit factors dropped).
GradedAlgebra tensor_product(const GradedAlgebra& a, const GradedAlgebra& b);

/// Embeddings a -> a (x) 1 and b -> 1 (x) b into tensor_product(a, b).
RatVector tensor_left(const GradedAlgebra& a, const GradedAlgebra& b, const RatVector& x);
RatVector tensor_right(const GradedAlgebra& a, const GradedAlgebra& b, const RatVector& y);
RatVector tensor_elements(const GradedAlgebra& a, const GradedAlgebra& b, const RatVector& x,
                          const RatVector& y);

/// First failing axiom (commutativity, unit law, associativity) as text, or
/// nullopt when all hold on every basis tuple.
std::optional<std::string> find_axiom_violation(const GradedAlgebra& alg);

// ---------------------------------------------------------------------------

/// Linear map between graded algebras sending degree k to degree k + shift.
/// Stored as one block per source degree.
class GradedMap {
public:
  GradedMap() = default;
  /// From a global (target.dim x source.dim) matrix; throws if a nonzero
  /// entry connects degrees that do not differ by `shift`.
  GradedMap(const std::vector<Index>& source_dims, const std::vector<Index>& target_dims,
            int shift, const RatMatrix& global);

  static GradedMap identity(const GradedAlgebra& alg);

  int shift() const { return shift_; }
  const std::vector<Index>& source_dims() const { return source_dims_; }
  const std::vector<Index>& target_dims() const { return target_dims_; }
  Index source_dim() const;
  Index target_dim() const;

  /// Block for source degree k (rows: target degree k + shift). Empty when
  /// the target degree is out of range.
  const RatMatrix& block(int source_degree) const;
  RatMatrix global() const;

  RatVector apply(const RatVector& v) const;

  friend bool operator==(const GradedMap& a, const GradedMap& b);

private:
  int shift_ = 0;
  std::vector<Index> source_dims_, target_dims_;
  std::vector<RatMatrix> blocks_;
};

/// g after f.
GradedMap compose(const GradedMap& g, const GradedMap& f);

std::optional<std::string> find_homomorphism_violation(const GradedMap& f,
                                                       const GradedAlgebra& source,
                                                       const GradedAlgebra& target);

/// Checks push(pull(a) * b) == a * push(b) for all basis a of `big` and b of
/// `small`.
std::optional<std::string> find_projection_formula_violation(const GradedMap& pull,
                                                             const GradedMap& push,
                                                             const GradedAlgebra& big,
                                                             const GradedAlgebra& small);

/// Degrees at which the map is not onto its target degree.
std::vector<int> surjectivity_failures(const GradedMap& f);

/// Degrees at which the map is not injective.
std::vector<int> injectivity_failures(const GradedMap& f);

// ---------------------------------------------------------------------------

/// The pairing into the socle: gram[k] has rows indexed by the degree-k basis
/// and columns by the degree-(d-k) basis, entries are socle coordinates of
/// the products.
struct SoclePairing {
  int socle_degree = 0;
  Index socle_generator = 0;
  Rat generator_scale = Rat(1);
  std::vector<RatMatrix> gram;
};

struct SocleCheck {
  std::optional<SoclePairing> pairing;
  std::vector<std::string> failures;
  bool ok() const { return pairing.has_value(); }
};

/// Verifies dim A^d == 1 and A^{>d} == 0 for d = expected_degree and builds
/// all Gram matrices. The socle coordinate is taken relative to
/// generator_scale times the first degree-d basis element.
SocleCheck socle_check(const GradedAlgebra& alg, int expected_degree,
                       const Rat& generator_scale = Rat(1));

struct PdVerdict {
  bool is_pd = true;
  /// Per degree k: (dim A^k - rank, dim A^{d-k} - rank) of gram[k].
  std::vector<std::pair<Index, Index>> kernel_dims;
  /// Per degree k: dim A^k - rank gram[k].
  std::vector<Index> discrepancy;
};

PdVerdict pd_verdict(const SoclePairing& sp);

/// Basis of {a in A^k : a * b = 0 for all b in A^{d-k}} as global elements.
/// Throws std::out_of_range for k outside [0, d].
std::vector<RatVector> socle_kernel_elements(const GradedAlgebra& alg, const SoclePairing& sp,
                                             int k);

}  // namespace wonder
