#include "wonder/duality.hpp"

#include "wonder/errors.hpp"

#include <algorithm>
#include <set>

namespace wonder {

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : "; ") + p;
  return s;
}

// Summand with the complementary standard function (same nest, mu' = bound - mu).
int complement_of(const WonderRing& ring, int s) {
  const auto& dg = ring.diagram();
  const auto& summands = ring.li().summands;
  const auto& a = summands[static_cast<size_t>(s)];
  const auto elems = elements_of(a.nest);
  StandardFunction want;
  for (size_t i = 0; i < elems.size(); ++i) want.push_back(dg.standard_bound(a.nest, elems[i]) - a.mu[i]);
  for (size_t t = 0; t < summands.size(); ++t)
    if (summands[t].nest == a.nest && summands[t].mu == want) return static_cast<int>(t);
  throw InvariantError("standard function without a complement");
}

}  // namespace

PdSummary pd_summary(const GradedAlgebra& alg, int socle_degree) {
  PdSummary out;
  const auto sc = socle_check(alg, socle_degree);
  if (!sc.ok()) {
    out.note = join(sc.failures);
    return out;
  }
  out.has_socle = true;
  const auto v = pd_verdict(*sc.pairing);
  out.pd = v.is_pd;
  out.discrepancy = v.discrepancy;
  return out;
}

PdEquivalenceReport pd_equivalence_report(const WonderRing& ring) {
  const auto& dg = ring.diagram();
  PdEquivalenceReport out;
  out.ring = pd_summary(ring.algebra(), dg.socle_degree());
  std::set<int> used;
  for (const auto& s : ring.li().summands) used.insert(s.burrow);
  for (int b = 0; b < dg.burrow_count(); ++b) {
    const auto& node = dg.burrow(b);
    BurrowPd row{node.id, used.count(b) > 0, pd_summary(node.algebra, dg.socle_degree() - node.codim)};
    if (!row.summary.pd) {
      out.all_pd = false;
      if (row.contributes) {
        out.contributing_pd = false;
        out.failing.push_back(node.id);
      }
    }
    out.burrows.push_back(std::move(row));
  }
  out.equivalence = out.ring.pd == out.contributing_pd;
  return out;
}

BlockReport block_structure_check(const WonderRing& ring) {
  const auto& dg = ring.diagram();
  const auto& alg = ring.algebra();
  const auto& summands = ring.li().summands;
  BlockReport out;
  const int d = dg.socle_degree();
  const auto sc = socle_check(alg, d);
  if (!sc.ok()) {
    out.violations.push_back("ring has no socle in degree " + std::to_string(d) + ": " + join(sc.failures));
    return out;
  }
  out.has_socle = true;
  std::set<std::tuple<int, int, int>> seen;
  for (int k = 0; k <= d; ++k) {
    const RatMatrix& g = sc.pairing->gram[static_cast<size_t>(k)];
    for (Index i = 0; i < g.rows(); ++i)
      for (Index j = 0; j < g.cols(); ++j) {
        if (g(i, j).is_zero()) continue;
        const int s = ring.summand_of(alg.offset(k) + i);
        const int t = ring.summand_of(alg.offset(d - k) + j);
        if (!seen.insert({s, t, k}).second) continue;
        GramBlock b{s, t, k, false, false};
        const auto& a = summands[static_cast<size_t>(s)];
        const auto& c = summands[static_cast<size_t>(t)];
        if (a.nest == c.nest) {
          b.allowed = b.diagonal = true;
          const auto elems = elements_of(a.nest);
          for (size_t x = 0; x < elems.size(); ++x) {
            const int bound = dg.standard_bound(a.nest, elems[x]);
            const int sum = a.mu[x] + c.mu[x];
            if (sum < bound) b.allowed = false;
            if (sum != bound) b.diagonal = false;
          }
        }
        if (!b.allowed)
          out.violations.push_back("nonzero pairing between " + format_nest(dg, a.nest) + " " +
                                   format_mu(dg, a.nest, a.mu) + " and " + format_nest(dg, c.nest) +
                                   " " + format_mu(dg, c.nest, c.mu) + " in degree " +
                                   std::to_string(k));
        if (!b.diagonal) out.off_diagonal_free = false;
        out.nonzero.push_back(b);
      }
  }
  std::vector<int> order(summands.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::map<ElementSet, size_t> first;
  for (size_t i = 0; i < summands.size(); ++i) first.try_emplace(summands[i].nest, i);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    const auto& a = summands[static_cast<size_t>(x)];
    const auto& b = summands[static_cast<size_t>(y)];
    if (first[a.nest] != first[b.nest]) return first[a.nest] < first[b.nest];
    return a.shift > b.shift;
  });
  out.order = order;
  return out;
}

DiscrepancyTable discrepancy_table(const WonderRing& ring) {
  const auto& dg = ring.diagram();
  const auto& alg = ring.algebra();
  const int d = dg.socle_degree();
  const size_t n = ring.li().summands.size();
  DiscrepancyTable out;
  const auto sc = socle_check(alg, d);
  if (!sc.ok()) return out;
  out.has_socle = true;
  out.ring = pd_verdict(*sc.pairing).discrepancy;
  out.by_summand.assign(n, std::vector<Index>(static_cast<size_t>(d + 1), 0));
  out.block_sum.assign(static_cast<size_t>(d + 1), 0);
  for (size_t s = 0; s < n; ++s) {
    const int t = complement_of(ring, static_cast<int>(s));
    for (int k = 0; k <= d; ++k) {
      std::vector<Index> rows, cols;
      for (Index i = 0; i < alg.dim(k); ++i)
        if (ring.summand_of(alg.offset(k) + i) == static_cast<int>(s)) rows.push_back(i);
      for (Index j = 0; j < alg.dim(d - k); ++j)
        if (ring.summand_of(alg.offset(d - k) + j) == t) cols.push_back(j);
      if (rows.empty()) continue;
      const RatMatrix& g = sc.pairing->gram[static_cast<size_t>(k)];
      RatMatrix block(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
      for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j)
          block(static_cast<Index>(i), static_cast<Index>(j)) = g(rows[i], cols[j]);
      const Index disc = static_cast<Index>(rows.size()) - (cols.empty() ? 0 : rank(block));
      out.by_summand[s][static_cast<size_t>(k)] = disc;
      out.block_sum[static_cast<size_t>(k)] += disc;
    }
  }
  out.sums_match = out.block_sum == out.ring;
  const auto blocks = block_structure_check(ring);
  out.certified = blocks.ok() && blocks.off_diagonal_free;
  return out;
}

TransferReport pullback_transfer_check(const GradedAlgebra& small, const GradedAlgebra& big,
                                       const GradedMap& pullback, const GradedMap& pushforward) {
  TransferReport out;
  const RatMatrix pull = pullback.global();
  if (rank(pull) != small.dim()) out.hypothesis_failures.push_back("pullback is not injective");
  if (auto v = find_homomorphism_violation(pullback, small, big))
    out.hypothesis_failures.push_back("pullback is not a ring map: " + *v);
  for (Index a = 0; a < small.dim() && out.hypothesis_failures.size() < 3; ++a)
    for (Index b = 0; b < big.dim(); ++b) {
      const RatVector lhs = pushforward.apply(big.multiply(pullback.apply(small.basis(a)), big.basis(b)));
      const RatVector rhs = small.multiply(small.basis(a), pushforward.apply(big.basis(b)));
      if (lhs != rhs) {
        out.hypothesis_failures.push_back("projection formula fails at (" + small.label(a) + ", " +
                                          big.label(b) + ")");
        break;
      }
    }
  const int ds = small.top_degree(), db = big.top_degree();
  const auto ss = socle_check(small, ds);
  const auto sb = socle_check(big, db);
  if (!ss.ok()) out.hypothesis_failures.push_back("small ring has no socle");
  if (!sb.ok()) out.hypothesis_failures.push_back("big ring has no socle");
  if (sb.ok() && is_zero(pushforward.apply(big.basis(big.dim() - 1))))
    out.hypothesis_failures.push_back("pushforward kills the socle");
  if (!out.hypothesis_failures.empty()) return out;

  for (int k = 0; k <= ds; ++k)
    for (const RatVector& alpha : socle_kernel_elements(small, *ss.pairing, k)) {
      ++out.kernel_elements;
      const RatVector image = pullback.apply(alpha);
      if (is_zero(image)) {
        out.conclusion_failures.push_back("pullback of a degree-" + std::to_string(k) +
                                          " kernel element vanishes");
        continue;
      }
      const int comp = db - k;
      if (comp < 0) continue;
      for (Index b = big.offset(comp); b < big.offset(comp) + big.dim(comp); ++b)
        if (!is_zero(big.multiply(image, big.basis(b)))) {
          out.conclusion_failures.push_back("pullback of a degree-" + std::to_string(k) +
                                            " kernel element pairs with " + big.label(b));
          break;
        }
    }
  return out;
}

std::pair<GradedMap, GradedMap> ambient_maps(const WonderRing& ring) {
  const auto& y = ring.diagram().burrow(ring.diagram().ambient()).algebra;
  const auto& alg = ring.algebra();
  RatMatrix pull(alg.dim(), y.dim());
  for (Index i = 0; i < y.dim(); ++i) pull.col(i) = ring.ambient_class(y.basis(i));
  RatMatrix push = zero_matrix<Rat>(y.dim(), alg.dim());
  for (Index b = 0; b < alg.dim(); ++b)
    if (ring.li().summands[static_cast<size_t>(ring.summand_of(b))].nest == 0)
      push(ring.local_of(b), b) = Rat(1);
  return {GradedMap(y.dims(), alg.dims(), 0, pull), GradedMap(alg.dims(), y.dims(), 0, push)};
}

}  // namespace wonder
