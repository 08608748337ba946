#include "wonder/nests.hpp"

#include "wonder/errors.hpp"

#include <algorithm>
#include <numeric>

namespace wonder {

int norm(const StandardFunction& mu) { return std::accumulate(mu.begin(), mu.end(), 0); }

namespace {

void extend(const BurrowDiagram& dg, ElementSet current, int next, std::vector<ElementSet>& out) {
  for (int e = next; e < dg.element_count(); ++e) {
    const ElementSet candidate = current | singleton(e);
    // Nests are downward closed, so a failing candidate prunes its subtree.
    if (!dg.is_nest(candidate)) continue;
    out.push_back(candidate);
    extend(dg, candidate, e + 1, out);
  }
}

}  // namespace

std::vector<ElementSet> enumerate_nests(const BurrowDiagram& dg) {
  std::vector<ElementSet> out{0};
  extend(dg, 0, 0, out);
  std::stable_sort(out.begin(), out.end(), [](ElementSet a, ElementSet b) {
    const int ca = element_count(a), cb = element_count(b);
    if (ca != cb) return ca < cb;
    return elements_of(a) < elements_of(b);
  });
  return out;
}

std::vector<StandardFunction> enumerate_standard(const BurrowDiagram& dg, ElementSet nest) {
  const auto members = elements_of(nest);
  std::vector<int> bound;
  for (int x : members) {
    bound.push_back(dg.standard_bound(nest, x));
    if (bound.back() <= 1) return {};
  }
  std::vector<StandardFunction> out;
  StandardFunction mu(members.size(), 1);
  while (true) {
    out.push_back(mu);
    size_t i = mu.size();
    while (i > 0 && mu[i - 1] + 1 >= bound[i - 1]) {
      mu[i - 1] = 1;
      --i;
    }
    if (i == 0) break;
    ++mu[i - 1];
  }
  return out;
}

LiDecomposition li_decomposition(const BurrowDiagram& dg) {
  LiDecomposition li;
  li.poincare.assign(static_cast<size_t>(dg.socle_degree() + 1), 0);
  for (ElementSet nest : enumerate_nests(dg)) {
    const int b = dg.burrow_of(nest);
    for (auto& mu : enumerate_standard(dg, nest)) {
      LiSummand s{nest, mu, b, norm(mu)};
      const auto& dims = dg.burrow(b).algebra.dims();
      for (size_t k = 0; k < dims.size(); ++k) {
        const size_t deg = k + static_cast<size_t>(s.shift);
        if (dims[k] == 0) continue;
        if (deg >= li.poincare.size())
          throw InvariantError("summand " + format_nest(dg, nest) + " exceeds the socle degree");
        li.poincare[deg] += dims[k];
      }
      li.summands.push_back(std::move(s));
    }
  }
  return li;
}

std::string format_nest(const BurrowDiagram& dg, ElementSet nest) {
  std::string s = "{";
  bool first = true;
  for (int e : elements_of(nest)) {
    s += (first ? "" : ",") + dg.element(e).id;
    first = false;
  }
  return s + "}";
}

std::string format_mu(const BurrowDiagram& dg, ElementSet nest, const StandardFunction& mu) {
  std::string s = "{";
  const auto members = elements_of(nest);
  for (size_t i = 0; i < members.size(); ++i)
    s += (i ? "," : "") + dg.element(members[i]).id + ":" + std::to_string(mu[i]);
  return s + "}";
}

}  // namespace wonder
