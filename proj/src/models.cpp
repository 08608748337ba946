// Synthetic algebras, single blow-up fixtures and product diagrams.
#include "wonder/errors.hpp"
#include "wonder/models.hpp"
#include "wonder/nests.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>

namespace wonder {

namespace {

using Monomial = std::vector<int>;
using Poly = std::map<Monomial, Rat>;

std::vector<Monomial> monomials(int vars, int degree) {
  std::vector<Monomial> out;
  Monomial cur(static_cast<size_t>(vars), 0);
  auto rec = [&](auto& self, int i, int left) -> void {
    if (i == vars - 1) {
      cur[static_cast<size_t>(i)] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[static_cast<size_t>(i)] = e;
      self(self, i + 1, left - e);
    }
  };
  if (vars > 0) rec(rec, 0, degree);
  return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Monomial m = ma;
      for (size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
      out[m] += ca * cb;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

// Contraction x^alpha ∘ F (partial derivatives).
Poly contract(const Monomial& alpha, const Poly& f) {
  Poly out;
  for (const auto& [beta, c] : f) {
    Rat coeff = c;
    Monomial rest = beta;
    bool ok = true;
    for (size_t i = 0; i < beta.size() && ok; ++i) {
      if (beta[i] < alpha[i]) {
        ok = false;
        break;
      }
      for (int t = 0; t < alpha[i]; ++t) coeff *= Rat(beta[i] - t);
      rest[i] -= alpha[i];
    }
    if (ok) out[rest] += coeff;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

std::string monomial_label(const Monomial& m) {
  std::string s;
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(i + 1);
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

void check_shape(const std::vector<Index>& dims) {
  if (dims.empty() || dims.front() != 1 || dims.back() != 1)
    throw InputError("shape must start and end with 1");
  for (size_t i = 0; i < dims.size(); ++i)
    if (dims[i] < 1 || dims[i] != dims[dims.size() - 1 - i])
      throw InputError("shape must be positive and symmetric");
}

// Q[x_1..x_k]/Ann(F); nullopt when the Hilbert function differs from dims.
std::optional<GradedAlgebra> inverse_system(const Poly& f, int vars, const std::vector<Index>& dims) {
  const int d = static_cast<int>(dims.size()) - 1;
  std::vector<std::vector<Monomial>> basis(static_cast<size_t>(d + 1));
  std::vector<std::vector<Monomial>> rows(static_cast<size_t>(d + 1));
  std::vector<std::optional<Solver<Rat>>> solvers;
  auto column = [&](const Monomial& m, int deg) {
    const auto& r = rows[static_cast<size_t>(d - deg)];
    RatVector v = zero_vector<Rat>(static_cast<Index>(r.size()));
    for (const auto& [mono, c] : contract(m, f)) {
      const auto it = std::lower_bound(r.begin(), r.end(), mono, std::greater<>());
      v(it - r.begin()) = c;
    }
    return v;
  };
  for (int deg = 0; deg <= d; ++deg) {
    rows[static_cast<size_t>(d - deg)] = monomials(vars, d - deg);  // descending lex
  }
  for (int deg = 0; deg <= d; ++deg) {
    const auto cand = monomials(vars, deg);
    RatMatrix mat(static_cast<Index>(rows[static_cast<size_t>(d - deg)].size()),
                  static_cast<Index>(cand.size()));
    for (size_t j = 0; j < cand.size(); ++j) mat.col(static_cast<Index>(j)) = column(cand[j], deg);
    const auto piv = row_reduce(mat).pivots;
    if (static_cast<Index>(piv.size()) != dims[static_cast<size_t>(deg)]) return std::nullopt;
    RatMatrix b(mat.rows(), static_cast<Index>(piv.size()));
    for (size_t p = 0; p < piv.size(); ++p) {
      basis[static_cast<size_t>(deg)].push_back(cand[static_cast<size_t>(piv[p])]);
      b.col(static_cast<Index>(p)) = mat.col(piv[p]);
    }
    solvers.emplace_back(Solver<Rat>(b));
  }
  std::vector<std::string> labels;
  std::vector<Monomial> flat;
  std::vector<Index> offsets;
  for (const auto& level : basis) {
    offsets.push_back(static_cast<Index>(flat.size()));
    for (const auto& m : level) {
      labels.push_back(monomial_label(m));
      flat.push_back(m);
    }
  }
  const Index total = static_cast<Index>(flat.size());
  return algebra_from_products(dims, labels, [&](Index i, Index j) {
    Monomial m = flat[static_cast<size_t>(i)];
    for (size_t t = 0; t < m.size(); ++t) m[t] += flat[static_cast<size_t>(j)][t];
    int deg = 0;
    for (int e : m) deg += e;
    RatVector out = zero_vector<Rat>(total);
    const auto sol = solvers[static_cast<size_t>(deg)]->solve(column(m, deg));
    if (!sol) throw InvariantError("inverse system product left the span");
    out.segment(offsets[static_cast<size_t>(deg)], sol->size()) = *sol;
    return out;
  });
}

RatVector random_element(const GradedAlgebra& a, int degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  RatVector v = a.zero();
  if (degree < 0 || degree > a.top_degree()) return v;
  for (Index i = a.offset(degree); i < a.offset(degree) + a.dim(degree); ++i) v(i) = Rat(coeff(rng));
  return v;
}

Index basis_position(const RatVector& unit) {
  for (Index i = 0; i < unit.size(); ++i)
    if (!unit(i).is_zero()) return i;
  throw InvariantError("expected a basis vector");
}

// f ⊗ g as a map between tensor products.
GradedMap tensor_maps(const GradedAlgebra& sa, const GradedAlgebra& sb, const GradedAlgebra& ta,
                      const GradedAlgebra& tb, const GradedMap& f, const GradedMap& g) {
  const GradedAlgebra src = tensor_product(sa, sb);
  const GradedAlgebra dst = tensor_product(ta, tb);
  RatMatrix m = zero_matrix<Rat>(dst.dim(), src.dim());
  for (Index i = 0; i < sa.dim(); ++i)
    for (Index j = 0; j < sb.dim(); ++j) {
      const Index col = basis_position(tensor_elements(sa, sb, sa.basis(i), sb.basis(j)));
      m.col(col) = tensor_elements(ta, tb, f.apply(sa.basis(i)), g.apply(sb.basis(j)));
    }
  return GradedMap(src.dims(), dst.dims(), f.shift() + g.shift(), m);
}

}  // namespace

GradedAlgebra synthetic_gorenstein(const std::vector<Index>& dims, std::uint64_t seed) {
  check_shape(dims);
  const int d = static_cast<int>(dims.size()) - 1;
  if (d == 0) return GradedAlgebra();
  const int vars = static_cast<int>(dims[1]);
  const Index widest = *std::max_element(dims.begin(), dims.end());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int attempt = 0; attempt < 60; ++attempt) {
    const Index forms = widest + attempt / 20;
    Poly f;
    for (Index j = 0; j < forms; ++j) {
      Poly linear;
      for (int i = 0; i < vars; ++i) {
        Monomial m(static_cast<size_t>(vars), 0);
        m[static_cast<size_t>(i)] = 1;
        const int c = coeff(rng);
        if (c != 0) linear[m] = Rat(c);
      }
      Poly power{{Monomial(static_cast<size_t>(vars), 0), Rat(1)}};
      for (int t = 0; t < d; ++t) power = poly_mul(power, linear);
      for (const auto& [m, c] : power) f[m] += c;
    }
    std::erase_if(f, [](const auto& kv) { return kv.second.is_zero(); });
    if (f.empty()) continue;
    if (auto alg = inverse_system(f, vars, dims)) return *alg;
  }
  throw ComputationError("no Gorenstein algebra of the requested shape found");
}

GradedAlgebra synthetic_broken(const std::vector<Index>& dims, int k, std::uint64_t seed) {
  check_shape(dims);
  const int d = static_cast<int>(dims.size()) - 1;
  if (k <= 0 || k >= d) throw InputError("broken degree must lie strictly inside the range");
  std::vector<Index> base = dims;
  // In the middle degree a single class u is its own partner.
  const bool middle = 2 * k == d;
  base[static_cast<size_t>(k)] -= 1;
  if (!middle) base[static_cast<size_t>(d - k)] -= 1;
  if (base[static_cast<size_t>(k)] < 1 || base[static_cast<size_t>(d - k)] < 1)
    throw InputError("shape too small to break at the requested degree");
  const GradedAlgebra g = synthetic_gorenstein(base, seed);
  // New classes u (degree k) and v (degree d - k), appended last in their degree.
  std::vector<std::string> labels;
  std::vector<Index> old_to_new;
  Index u = -1, v = -1;
  for (int deg = 0; deg <= d; ++deg) {
    for (Index i = g.offset(deg); i < g.offset(deg) + g.dim(deg); ++i) {
      old_to_new.push_back(static_cast<Index>(labels.size()));
      labels.push_back(g.label(i));
    }
    if (deg == k) {
      u = static_cast<Index>(labels.size());
      labels.push_back("u");
    }
    if (deg == d - k && !middle) {
      v = static_cast<Index>(labels.size());
      labels.push_back("v");
    }
  }
  const Index total = static_cast<Index>(labels.size());
  std::vector<Index> new_to_old(static_cast<size_t>(total), -1);
  for (size_t i = 0; i < old_to_new.size(); ++i) new_to_old[static_cast<size_t>(old_to_new[i])] = static_cast<Index>(i);
  return algebra_from_products(dims, labels, [&](Index i, Index j) {
    RatVector out = zero_vector<Rat>(total);
    if (i == u || j == u || i == v || j == v) return out;
    for (const auto& [idx, c] :
         g.basis_product(new_to_old[static_cast<size_t>(i)], new_to_old[static_cast<size_t>(j)]))
      out(old_to_new[static_cast<size_t>(idx)]) = c;
    return out;
  });
}

BlowupData synthetic_blowup_data(std::uint64_t seed, bool broken_center, bool broken_ambient) {
  std::mt19937_64 rng(seed);
  auto pick = [&](const std::vector<std::vector<Index>>& shapes) {
    return shapes[std::uniform_int_distribution<size_t>(0, shapes.size() - 1)(rng)];
  };
  const std::uint64_t s1 = rng(), s2 = rng();
  GradedAlgebra z = broken_center
                        ? synthetic_broken(pick({{1, 3, 1}, {1, 2, 2, 1}, {1, 4, 1}}), 1, s1)
                        : synthetic_gorenstein(pick({{1}, {1, 1}, {1, 2, 1}, {1, 1, 1}, {1, 2, 2, 1}}), s1);
  GradedAlgebra w = broken_ambient
                        ? synthetic_broken(pick({{1, 3, 1}, {1, 4, 1}, {1, 2, 2, 1}, {1, 3, 3, 1}}), 1, s2)
                        : synthetic_gorenstein(pick({{1, 1}, {1, 1, 1}, {1, 2, 1}, {1, 3, 1},
                                                     {1, 1, 1, 1}, {1, 2, 2, 1}}),
                                               s2);
  const int c = w.top_degree();
  const GradedAlgebra y = tensor_product(z, w);
  const RatVector soc = w.basis(w.dim() - 1);

  RatMatrix pull = zero_matrix<Rat>(z.dim(), y.dim());
  RatMatrix push = zero_matrix<Rat>(y.dim(), z.dim());
  for (Index i = 0; i < z.dim(); ++i) {
    const Index col = basis_position(tensor_elements(z, w, z.basis(i), w.unit()));
    pull(i, col) = Rat(1);
    push.col(i) = tensor_elements(z, w, z.basis(i), soc);
  }
  ChernPolynomial chern;
  for (int i = 1; i < c; ++i) chern.coeffs.push_back(random_element(y, i, rng));
  chern.coeffs.push_back(tensor_elements(z, w, z.unit(), soc));
  return {y, z, GradedMap(y.dims(), z.dims(), 0, pull), GradedMap(z.dims(), y.dims(), c, push),
          chern};
}

BlowupData point_in_p2() {
  const GradedAlgebra y = truncated_polynomial(2);
  const GradedAlgebra z;
  RatMatrix pull = zero_matrix<Rat>(1, 3);
  pull(0, 0) = Rat(1);
  RatMatrix push = zero_matrix<Rat>(3, 1);
  push(2, 0) = Rat(1);
  return {y, z, GradedMap(y.dims(), z.dims(), 0, pull), GradedMap(z.dims(), y.dims(), 2, push),
          ChernPolynomial{{y.zero(), y.basis(2)}}};
}

BlowupData broken_center_data() {
  const GradedAlgebra hk = truncated_polynomial(2, "h");
  const GradedAlgebra kk = truncated_polynomial(2, "k");
  const GradedAlgebra y = tensor_product(hk, kk);
  // Z: 1, p, q, s with p^2 = s and pq = q^2 = 0.
  const GradedAlgebra z({1, 2, 1}, {"1", "p", "q", "s"}, {{1, 1, 3, Rat(1)}});
  auto yb = [&](int a, int b) { return basis_position(tensor_elements(hk, kk, hk.basis(a), kk.basis(b))); };
  RatMatrix pull = zero_matrix<Rat>(4, y.dim());
  pull(0, yb(0, 0)) = Rat(1);
  pull(1, yb(1, 0)) = Rat(1);
  pull(2, yb(0, 1)) = Rat(1);
  pull(3, yb(2, 0)) = Rat(1);
  RatMatrix push = zero_matrix<Rat>(y.dim(), 4);
  push(yb(0, 2), 0) = Rat(1);
  push(yb(1, 2), 1) = Rat(1);
  push(yb(2, 2), 3) = Rat(1);
  RatVector c1 = y.zero();
  c1(yb(1, 0)) = Rat(1);
  c1(yb(0, 1)) = Rat(1);
  RatVector c2 = y.zero();
  c2(yb(0, 2)) = Rat(1);
  return {y, z, GradedMap(y.dims(), z.dims(), 0, pull), GradedMap(z.dims(), y.dims(), 2, push),
          ChernPolynomial{{c1, c2}}};
}

BurrowDiagram single_center_diagram(const BlowupData& data, const std::string& center) {
  if (center == "Y") throw InputError("the center cannot be named Y");
  const int codim = data.pushforward.shift();
  std::vector<BurrowNode> burrows{{"Y", 0, data.y, {}}, {center, codim, data.z, {}}};
  std::vector<BurrowEdge> edges{{center, "Y", data.pullback, data.pushforward, data.chern}};
  return BurrowDiagram(data.y.top_degree(), {{center, center, codim, {}}}, std::move(burrows),
                       std::move(edges), {}, NestRule{NestRule::Kind::Transversal, {}});
}

BurrowDiagram ambient_only_diagram(const GradedAlgebra& y) {
  return BurrowDiagram(y.top_degree(), {}, {{"Y", 0, y, {}}}, {}, {},
                       NestRule{NestRule::Kind::Transversal, {}});
}

BurrowDiagram product_diagram(const BurrowDiagram& a, const BurrowDiagram& b) {
  for (const auto& x : a.elements())
    for (const auto& y : b.elements())
      if (x.id == y.id) throw InputError("factor element ids collide: " + x.id);
  for (int i = 0; i < a.burrow_count(); ++i)
    for (int j = 0; j < b.burrow_count(); ++j)
      if (i != a.ambient() && j != b.ambient() && a.burrow(i).id == b.burrow(j).id)
        throw InputError("factor burrow ids collide: " + a.burrow(i).id);

  const int nb = b.burrow_count();
  auto id_of = [&](int i, int j) {
    if (i == a.ambient() && j == b.ambient()) return std::string("Y");
    if (j == b.ambient()) return a.burrow(i).id;
    if (i == a.ambient()) return b.burrow(j).id;
    return a.burrow(i).id + "*" + b.burrow(j).id;
  };
  std::vector<BurrowNode> burrows;
  for (int i = 0; i < a.burrow_count(); ++i)
    for (int j = 0; j < nb; ++j) {
      const auto& ba = a.burrow(i);
      const auto& bb = b.burrow(j);
      BurrowNode node{id_of(i, j), ba.codim + bb.codim, tensor_product(ba.algebra, bb.algebra), {}};
      for (const auto& [name, v] : ba.named) node.named[name] = tensor_left(ba.algebra, bb.algebra, v);
      for (const auto& [name, v] : bb.named) node.named[name] = tensor_right(ba.algebra, bb.algebra, v);
      burrows.push_back(std::move(node));
    }

  std::vector<BurrowEdge> edges;
  for (int si = 0; si < a.burrow_count(); ++si)
    for (int sj = 0; sj < nb; ++sj)
      for (int bi = 0; bi < a.burrow_count(); ++bi)
        for (int bj = 0; bj < nb; ++bj) {
          if (si == bi && sj == bj) continue;
          if (!a.burrow_contains(bi, si) || !b.burrow_contains(bj, sj)) continue;
          const auto& sa = a.burrow(si).algebra;
          const auto& sb = b.burrow(sj).algebra;
          const auto& ta = a.burrow(bi).algebra;
          const auto& tb = b.burrow(bj).algebra;
          const GradedMap pa = si == bi ? GradedMap::identity(sa) : a.edge(si, bi).pullback;
          const GradedMap pb = sj == bj ? GradedMap::identity(sb) : b.edge(sj, bj).pullback;
          const GradedMap qa = si == bi ? GradedMap::identity(sa) : a.edge(si, bi).pushforward;
          const GradedMap qb = sj == bj ? GradedMap::identity(sb) : b.edge(sj, bj).pushforward;
          const ChernPolynomial ca = si == bi ? ChernPolynomial{} : a.edge(si, bi).chern;
          const ChernPolynomial cb = sj == bj ? ChernPolynomial{} : b.edge(sj, bj).chern;
          BurrowEdge e;
          e.small = id_of(si, sj);
          e.big = id_of(bi, bj);
          e.pullback = tensor_maps(ta, tb, sa, sb, pa, pb);
          e.pushforward = tensor_maps(sa, sb, ta, tb, qa, qb);
          for (int k = 1; k <= ca.degree() + cb.degree(); ++k) {
            RatVector c = zero_vector<Rat>(ta.dim() * tb.dim());
            for (int i = std::max(0, k - cb.degree()); i <= std::min(k, ca.degree()); ++i)
              c += tensor_elements(ta, tb, ca.coefficient(ta, i), cb.coefficient(tb, k - i));
            e.chern.coeffs.push_back(c);
          }
          edges.push_back(std::move(e));
        }

  std::vector<Intersection> meets;
  const int total = a.burrow_count() * nb;
  for (int p = 0; p < total; ++p)
    for (int q = p + 1; q < total; ++q) {
      const int i1 = p / nb, j1 = p % nb, i2 = q / nb, j2 = q % nb;
      if ((i1 == a.ambient() && j1 == b.ambient()) || (i2 == a.ambient() && j2 == b.ambient())) continue;
      const int mi = a.meet(i1, i2), mj = b.meet(j1, j2);
      meets.push_back({id_of(i1, j1), id_of(i2, j2),
                       mi < 0 || mj < 0 ? std::nullopt : std::optional<std::string>(id_of(mi, mj))});
    }

  std::vector<BuildingElement> elements;
  for (const auto& x : a.elements()) elements.push_back({x.id, x.burrow, x.codim, {}});
  for (const auto& x : b.elements()) elements.push_back({x.id, x.burrow, x.codim, {}});

  NestRule rule{NestRule::Kind::Explicit, {}};
  for (ElementSet na : enumerate_nests(a))
    for (ElementSet nbs : enumerate_nests(b)) {
      std::vector<std::string> ids;
      for (int e : elements_of(na)) ids.push_back(a.element(e).id);
      for (int e : elements_of(nbs)) ids.push_back(b.element(e).id);
      if (!ids.empty()) rule.nests.push_back(std::move(ids));
    }
  return BurrowDiagram(a.socle_degree() + b.socle_degree(), std::move(elements), std::move(burrows),
                       std::move(edges), meets, std::move(rule));
}

}  // namespace wonder
