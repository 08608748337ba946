#pragma once

#include "wonder/blowup.hpp"
#include "wonder/engine.hpp"
#include "wonder/io.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wonder {

using NameMap = std::map<std::string, RatVector>;

/// Evaluates sums of products of named classes, e.g. "2*h1*h2 - E^2 + 1/2".
/// Grammar: sums of terms; terms are '*'-products of factors; a factor is an
/// optionally signed atom with an optional '^n'; atoms are identifiers,
/// integers, rationals "p/q" or parenthesized expressions.
/// Throws InputError on syntax errors and unknown names.
RatVector evaluate_expression(const std::string& expr, const GradedAlgebra& alg,
                              const NameMap& names);

/// Identifier-like basis labels (e.g. "h1", not "h1*h2") as named classes.
NameMap label_names(const GradedAlgebra& alg);

/// Ranks of the subalgebra of A ⊕ B generated by the pairs (a_i, b_i), per
/// degree, together with jointly independent monomials spanning it.
struct JointSpan {
  std::vector<Index> rank_a, rank_b, rank_joint;
  std::vector<std::vector<std::string>> monomials;  // per degree, by generator index
  std::vector<std::vector<RatVector>> values_a, values_b;
};

/// Generators must be homogeneous of positive degree (a side zero allowed
/// when the b side carries the degree, and vice versa).
JointSpan joint_span(const GradedAlgebra& a, const GradedAlgebra& b,
                     const std::vector<std::string>& names,
                     const std::vector<std::pair<RatVector, RatVector>>& generators);

/// An algebra built by a scripted sequence of blow-ups and projective
/// bundles.
struct OracleRun {
  GradedAlgebra algebra;
  NameMap names;
  std::vector<std::string> log;  // one line per step
  std::optional<std::vector<Index>> expected_dims;
  std::optional<bool> expected_pd;
};

/// Script documents: {"kind": "oracle", "start": <algebra spec>,
/// "steps": [{"blow_up": {...}} | {"projective_bundle": {...}}],
/// "expect": {...}, "correspondence": {...}}. Algebra specs are either full
/// algebra documents or {"truncated": [["h", 2], ...]} (tensor product of
/// truncated polynomial rings).
OracleRun run_oracle(const Json& script);

GradedAlgebra algebra_from_spec(const Json& spec);

struct OracleComparison {
  bool dims_equal = false;
  bool isomorphic = false;
  int first_bad_degree = -1;
  std::vector<Index> engine_dims, oracle_dims;
  std::vector<std::string> notes;
  bool ok() const { return dims_equal && isomorphic; }
};

/// Compares the ring with an oracle algebra through a correspondence
/// engine name -> oracle expression. The correspondence extends to an
/// isomorphism iff the generated subalgebra of ring ⊕ oracle is the graph of
/// a bijection, which is checked degree by degree with exact ranks.
OracleComparison compare_with_oracle(const GradedAlgebra& ring, const NameMap& ring_names,
                                     const OracleRun& oracle,
                                     const std::map<std::string, std::string>& correspondence);

OracleComparison compare_with_oracle(const WonderRing& ring, const Json& script);

}  // namespace wonder
