#include "wonder/engine.hpp"

#include "wonder/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <regex>

namespace wonder {

void RewriteStats::merge(const RewriteStats& o) {
  products += o.products;
  rewrites += o.rewrites;
  max_rewrites_in_product = std::max(max_rewrites_in_product, o.max_rewrites_in_product);
  measure_checks += o.measure_checks;
  measure_failures += o.measure_failures;
  cap_hits += o.cap_hits;
}

std::string format_exponents(const BurrowDiagram& dg, const Exponents& exps) {
  std::string s;
  for (size_t e = 0; e < exps.size(); ++e) {
    if (exps[e] == 0) continue;
    if (!s.empty()) s += "*";
    s += "E_" + dg.element(static_cast<int>(e)).id;
    if (exps[e] > 1) s += "^" + std::to_string(exps[e]);
  }
  return s.empty() ? "1" : s;
}

namespace {

ElementSet support_of(const Exponents& exps) {
  ElementSet s = 0;
  for (size_t e = 0; e < exps.size(); ++e)
    if (exps[e] > 0) s |= singleton(static_cast<int>(e));
  return s;
}

Rat multinomial(int m, const std::vector<int>& parts) {
  Rat r(1);
  int left = m;
  for (int k : parts) {
    r *= binomial(left, k);
    left -= k;
  }
  return r;
}

}  // namespace

WonderRing::WonderRing(BurrowDiagram diagram, long max_rewrites)
    : diagram_(std::move(diagram)), max_rewrites_(max_rewrites) {
  const auto& dg = diagram_;
  const int n = dg.element_count();
  li_ = li_decomposition(dg);

  order_.resize(static_cast<size_t>(n));
  std::iota(order_.begin(), order_.end(), 0);
  std::stable_sort(order_.begin(), order_.end(),
                   [&](int a, int b) { return dg.element(a).codim < dg.element(b).codim; });

  // Basis: by total degree, then summand order, then burrow basis order.
  struct Slot {
    int degree, summand;
    Index local;
  };
  std::vector<Slot> slots;
  for (size_t s = 0; s < li_.summands.size(); ++s) {
    const auto& sm = li_.summands[s];
    Exponents exps(static_cast<size_t>(n), 0);
    const auto members = elements_of(sm.nest);
    for (size_t i = 0; i < members.size(); ++i)
      exps[static_cast<size_t>(members[i])] = sm.mu[i];
    summand_by_exponents_[exps] = static_cast<int>(s);
    const auto& alg = dg.burrow(sm.burrow).algebra;
    for (Index b = 0; b < alg.dim(); ++b)
      slots.push_back({alg.degree(b) + sm.shift, static_cast<int>(s), b});
  }
  std::stable_sort(slots.begin(), slots.end(),
                   [](const Slot& a, const Slot& b) { return a.degree < b.degree; });
  summand_basis_.resize(li_.summands.size());
  for (size_t s = 0; s < li_.summands.size(); ++s)
    summand_basis_[s].assign(
        static_cast<size_t>(dg.burrow(li_.summands[s].burrow).algebra.dim()), -1);
  std::vector<Index> dims(static_cast<size_t>(dg.socle_degree() + 1), 0);
  std::vector<std::string> labels;
  for (const auto& sl : slots) {
    summand_basis_[static_cast<size_t>(sl.summand)][static_cast<size_t>(sl.local)] =
        static_cast<Index>(basis_summand_.size());
    basis_summand_.push_back(sl.summand);
    basis_local_.push_back(sl.local);
    ++dims[static_cast<size_t>(sl.degree)];
    const auto& sm = li_.summands[static_cast<size_t>(sl.summand)];
    const std::string& blabel = dg.burrow(sm.burrow).algebra.label(sl.local);
    if (sm.nest == 0) {
      labels.push_back(blabel);
    } else {
      Exponents exps(static_cast<size_t>(n), 0);
      const auto members = elements_of(sm.nest);
      for (size_t i = 0; i < members.size(); ++i)
        exps[static_cast<size_t>(members[i])] = sm.mu[i];
      labels.push_back(format_exponents(dg, exps) + (blabel == "1" ? "" : "*" + blabel));
    }
  }
  ambient_summand_ = 0;

  algebra_ = algebra_from_products(dims, labels, [&](Index a, Index b) {
    return multiply_basis(a, b, &build_stats_);
  });
}

Index WonderRing::basis_index(int summand, Index local) const {
  return summand_basis_.at(static_cast<size_t>(summand)).at(static_cast<size_t>(local));
}

RatVector WonderRing::monomial(const Exponents& exps, const RatVector& gamma,
                               RewriteStats* stats) const {
  const auto& dg = diagram_;
  const int n = dg.element_count();
  const Index ring_dim = static_cast<Index>(basis_summand_.size());
  if (static_cast<int>(exps.size()) != n)
    throw std::invalid_argument("exponent vector has the wrong length");
  RatVector out = zero_vector<Rat>(ring_dim);
  const ElementSet start = support_of(exps);
  if (!dg.is_nest(start)) return out;
  if (gamma.size() != dg.burrow(dg.burrow_of(start)).algebra.dim())
    throw std::invalid_argument("coefficient does not live in the burrow of the support");

  using Key = std::vector<int>;  // exponents in measure order
  auto to_key = [&](const Exponents& e) {
    Key k(static_cast<size_t>(n));
    for (int p = 0; p < n; ++p) k[static_cast<size_t>(p)] = e[static_cast<size_t>(order_[static_cast<size_t>(p)])];
    return k;
  };
  auto from_key = [&](const Key& k) {
    Exponents e(static_cast<size_t>(n));
    for (int p = 0; p < n; ++p) e[static_cast<size_t>(order_[static_cast<size_t>(p)])] = k[static_cast<size_t>(p)];
    return e;
  };

  std::map<Key, RatVector, std::greater<Key>> pending;
  pending.emplace(to_key(exps), gamma);
  long steps = 0;
  if (stats) ++stats->products;

  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const Key key = std::move(node.key());
    const RatVector g = std::move(node.mapped());
    if (is_zero(g)) continue;
    const Exponents e = from_key(key);
    const ElementSet support = support_of(e);
    const int b = dg.burrow_of(support);

    int violator = -1;
    int bound = 0;
    for (int x : elements_of(support)) {
      const int bx = dg.standard_bound(support, x);
      if (e[static_cast<size_t>(x)] < bx) continue;
      if (violator < 0 || dg.element(x).codim > dg.element(violator).codim) {
        violator = x;
        bound = bx;
      }
    }

    if (violator < 0) {
      auto it = summand_by_exponents_.find(e);
      if (it == summand_by_exponents_.end())
        throw InvariantError("standard monomial " + format_exponents(dg, e) +
                             " has no Li summand");
      for (Index i = 0; i < g.size(); ++i)
        if (!g(i).is_zero()) out(basis_index(it->second, i)) += g(i);
      continue;
    }

    if (++steps > max_rewrites_) {
      if (stats) ++stats->cap_hits;
      throw ComputationError("rewriting exceeded " + std::to_string(max_rewrites_) +
                             " steps at monomial " + format_exponents(dg, e));
    }
    if (stats) ++stats->rewrites;

    const int x = violator;
    const int c = bound;
    if (c < 1) throw InvariantError("nonpositive standard bound at " + dg.element(x).id);
    const int w = dg.enclosing_burrow(support, x);
    const int bx = dg.element_burrow(x);
    const auto& chern = dg.edge(bx, w).chern;
    if (chern.degree() != c)
      throw InvariantError("Chern polynomial of " + dg.burrow(bx).id + " in " + dg.burrow(w).id +
                           " has degree " + std::to_string(chern.degree()) + ", expected " +
                           std::to_string(c));
    const auto& walg = dg.burrow(w).algebra;
    const std::vector<int> inside = elements_of(dg.elements_inside(x));
    const size_t x_pos =
        static_cast<size_t>(std::find(inside.begin(), inside.end(), x) - inside.begin());
    Exponents base = e;
    base[static_cast<size_t>(x)] -= c;

    for (int i = 0; i <= c; ++i) {
      const RatVector ci = chern.coefficient(walg, i);
      if (i > 0 && is_zero(ci)) continue;
      const Rat sign = (i % 2 == 0) ? Rat(-1) : Rat(1);
      const int m = c - i;
      std::vector<int> parts(inside.size(), 0);

      std::function<void(size_t, int, ElementSet)> expand = [&](size_t pos, int left,
                                                               ElementSet supp) {
        if (pos == inside.size()) {
          if (left != 0) return;
          if (i == 0 && parts[x_pos] == c) return;
          Exponents ne = base;
          for (size_t t = 0; t < inside.size(); ++t) ne[static_cast<size_t>(inside[t])] += parts[t];
          const ElementSet ns = support_of(ne);
          const int nb = dg.burrow_of(ns);
          const Rat coef = sign * multinomial(m, parts);
          const auto& nalg = dg.burrow(nb).algebra;
          RatVector ng;
          if (dg.burrow_contains(b, nb)) {
            ng = nalg.multiply(dg.pull(b, nb, g), dg.pull(w, nb, ci));
          } else if (i == c && dg.burrow_contains(nb, b) &&
                     dg.burrow(b).codim - dg.burrow(nb).codim == c) {
            ng = dg.push(b, nb, g);
          } else {
            throw InputError("excess intersection while rewriting " + format_exponents(dg, e) +
                             " at " + dg.element(x).id);
          }
          if (is_zero(ng)) return;
          ng *= coef;
          const Key nk = to_key(ne);
          if (stats) {
            ++stats->measure_checks;
            if (!(nk < key)) ++stats->measure_failures;
          }
          if (!(nk < key))
            throw InvariantError("rewrite of " + format_exponents(dg, e) +
                                 " did not decrease the termination measure");
          auto [it, fresh] = pending.try_emplace(nk, ng);
          if (!fresh) it->second += ng;
          return;
        }
        const int s = inside[pos];
        const bool last = pos + 1 == inside.size();
        for (int k = left; k >= (last ? left : 0); --k) {
          ElementSet next = supp;
          if (base[static_cast<size_t>(s)] + k > 0) next |= singleton(s);
          if (k > 0 && !dg.is_nest(next)) continue;
          parts[pos] = k;
          expand(pos + 1, left - k, next);
          parts[pos] = 0;
        }
      };
      ElementSet base_support = support_of(base);
      expand(0, m, base_support);
    }
  }
  if (stats) stats->max_rewrites_in_product = std::max(stats->max_rewrites_in_product, steps);
  return out;
}

RatVector WonderRing::multiply_basis(Index a, Index b, RewriteStats* stats) const {
  const auto& dg = diagram_;
  const int n = dg.element_count();
  const auto& sa = li_.summands[static_cast<size_t>(summand_of(a))];
  const auto& sb = li_.summands[static_cast<size_t>(summand_of(b))];
  const Index ring_dim = static_cast<Index>(basis_summand_.size());
  const auto& aa = dg.burrow(sa.burrow).algebra;
  const auto& ab = dg.burrow(sb.burrow).algebra;
  if (sa.shift + aa.degree(local_of(a)) + sb.shift + ab.degree(local_of(b)) > dg.socle_degree())
    return zero_vector<Rat>(ring_dim);
  const ElementSet merged = sa.nest | sb.nest;
  if (!dg.is_nest(merged)) return zero_vector<Rat>(ring_dim);
  Exponents exps(static_cast<size_t>(n), 0);
  const auto ma = elements_of(sa.nest), mb = elements_of(sb.nest);
  for (size_t i = 0; i < ma.size(); ++i) exps[static_cast<size_t>(ma[i])] += sa.mu[i];
  for (size_t i = 0; i < mb.size(); ++i) exps[static_cast<size_t>(mb[i])] += sb.mu[i];
  const int target = dg.burrow_of(merged);
  const auto& talg = dg.burrow(target).algebra;
  const RatVector gamma = talg.multiply(dg.pull(sa.burrow, target, aa.basis(local_of(a))),
                                        dg.pull(sb.burrow, target, ab.basis(local_of(b))));
  return monomial(exps, gamma, stats);
}

RatVector WonderRing::ambient_class(const RatVector& y) const {
  RatVector out = zero_vector<Rat>(algebra_.dim());
  for (Index i = 0; i < y.size(); ++i)
    if (!y(i).is_zero()) out(basis_index(ambient_summand_, i)) += y(i);
  return out;
}

RatVector WonderRing::exceptional(int element) const {
  Exponents exps(static_cast<size_t>(diagram_.element_count()), 0);
  exps[static_cast<size_t>(element)] = 1;
  return monomial(exps, diagram_.burrow(diagram_.element_burrow(element)).algebra.unit());
}

std::map<std::string, RatVector> WonderRing::names() const {
  static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
  std::map<std::string, RatVector> out;
  const auto& y = diagram_.burrow(diagram_.ambient());
  for (Index i = 1; i < y.algebra.dim(); ++i)
    if (std::regex_match(y.algebra.label(i), ident))
      out[y.algebra.label(i)] = ambient_class(y.algebra.basis(i));
  for (const auto& [name, v] : y.named) out[name] = ambient_class(v);
  for (int e = 0; e < diagram_.element_count(); ++e) {
    const std::string name = "E_" + diagram_.element(e).id;
    if (std::regex_match(name, ident)) out[name] = exceptional(e);
  }
  return out;
}

}  // namespace wonder
