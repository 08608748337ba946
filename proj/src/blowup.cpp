#include "wonder/blowup.hpp"

#include "wonder/errors.hpp"

#include <functional>

namespace wonder {

namespace {

std::string power_label(const std::string& base_label, const std::string& var, int k) {
  std::string p = k == 1 ? var : var + "^" + std::to_string(k);
  return base_label == "1" ? p : base_label + "*" + p;
}

bool algebra_pd(const GradedAlgebra& alg, int socle_degree) {
  const auto sc = socle_check(alg, socle_degree);
  return sc.ok() && pd_verdict(*sc.pairing).is_pd;
}

}  // namespace

BlowupResult blow_up(const GradedAlgebra& y, const GradedAlgebra& z, const GradedMap& pullback,
                     const GradedMap& pushforward, const ChernPolynomial& chern,
                     const std::string& exceptional_label) {
  const int c = chern.degree();
  if (c < 1) throw InputError("blow-up center must have codimension at least 1");
  if (pullback.source_dims() != y.dims() || pullback.target_dims() != z.dims() ||
      pullback.shift() != 0)
    throw InputError("pullback does not map A(Y) to A(Z)");
  if (pushforward.source_dims() != z.dims() || pushforward.target_dims() != y.dims() ||
      pushforward.shift() != c)
    throw InputError("pushforward does not map A(Z) to A(Y) with shift " + std::to_string(c));
  for (const auto& ci : chern.coeffs)
    if (ci.size() != y.dim()) throw InputError("Chern coefficient has the wrong length");
  if (const auto bad = surjectivity_failures(pullback); !bad.empty())
    throw InputError("pullback is not surjective in degree " + std::to_string(bad.front()));

  const RatVector fundamental = pushforward.apply(z.unit());
  if (chern.coeffs.back() != fundamental)
    throw InputError("c_" + std::to_string(c) + " = " + format_element(y, chern.coeffs.back()) +
                     " differs from the pushforward of 1 = " + format_element(y, fundamental));

  // Cross-check i_*(z) = z̃ · [Z] for every basis z.
  const Solver<Rat> lifter(pullback.global());
  for (Index b = 0; b < z.dim(); ++b) {
    const auto lift = lifter.solve(z.basis(b));
    if (!lift) throw InputError("pullback is not surjective onto " + z.label(b));
    const RatVector via_class = y.multiply(*lift, fundamental);
    const RatVector direct = pushforward.apply(z.basis(b));
    if (via_class != direct)
      throw InputError("pushforward of " + z.label(b) + " is " + format_element(y, direct) +
                       " but lift times [Z] gives " + format_element(y, via_class));
  }

  if (c == 1) {
    BlowupResult r;
    r.algebra = y;
    r.exceptional = fundamental;
    r.from_ambient = GradedMap::identity(y);
    r.codim = 1;
    r.layout = {std::vector<Index>()};
    for (Index i = 0; i < y.dim(); ++i) r.layout[0].push_back(i);
    return r;
  }

  const int top = y.top_degree();
  std::vector<Index> dims(static_cast<size_t>(top + 1), 0);
  std::vector<std::string> labels;
  std::vector<std::vector<Index>> layout(static_cast<size_t>(c));
  layout[0].assign(static_cast<size_t>(y.dim()), -1);
  for (int k = 1; k < c; ++k) layout[static_cast<size_t>(k)].assign(static_cast<size_t>(z.dim()), -1);
  Index next = 0;
  for (int deg = 0; deg <= top; ++deg) {
    for (Index i = 0; i < y.dim(); ++i)
      if (y.degree(i) == deg) {
        layout[0][static_cast<size_t>(i)] = next++;
        labels.push_back(y.label(i));
        ++dims[static_cast<size_t>(deg)];
      }
    for (int k = 1; k < c; ++k)
      for (Index i = 0; i < z.dim(); ++i)
        if (z.degree(i) + k == deg) {
          layout[static_cast<size_t>(k)][static_cast<size_t>(i)] = next++;
          labels.push_back(power_label(z.label(i), exceptional_label, k));
          ++dims[static_cast<size_t>(deg)];
        }
  }
  for (const auto& part : layout)
    for (Index idx : part)
      if (idx < 0) throw InputError("center has classes above the ambient socle degree");
  const Index n = next;

  std::vector<RatVector> c_on_z;
  for (const auto& ci : chern.coeffs) c_on_z.push_back(pullback.apply(ci));

  // Adds coeff · α̃ E^m to `out`, reducing m >= c with E^c = -Σ (-1)^i c_i E^{c-i}.
  std::function<void(const RatVector&, int, RatVector&)> add_power =
      [&](const RatVector& alpha, int m, RatVector& out) {
        if (is_zero(alpha)) return;
        if (m < c) {
          for (Index b = 0; b < z.dim(); ++b)
            if (!alpha(b).is_zero())
              out(layout[static_cast<size_t>(m)][static_cast<size_t>(b)]) += alpha(b);
          return;
        }
        for (int i = 1; i <= c; ++i) {
          const Rat sign = (i % 2 == 0) ? Rat(-1) : Rat(1);
          if (i == c && m == c) {
            const RatVector pushed = pushforward.apply(alpha);
            for (Index b = 0; b < y.dim(); ++b)
              if (!pushed(b).is_zero()) out(layout[0][static_cast<size_t>(b)]) += sign * pushed(b);
            continue;
          }
          RatVector beta = z.multiply(alpha, c_on_z[static_cast<size_t>(i - 1)]);
          beta *= sign;
          add_power(beta, m - i, out);
        }
      };

  // Decode a global index into (summand k, local index).
  std::vector<std::pair<int, Index>> decode(static_cast<size_t>(n));
  for (int k = 0; k < c; ++k)
    for (size_t i = 0; i < layout[static_cast<size_t>(k)].size(); ++i)
      decode[static_cast<size_t>(layout[static_cast<size_t>(k)][i])] = {k, static_cast<Index>(i)};

  auto product = [&](Index a, Index b) {
    RatVector out = zero_vector<Rat>(n);
    auto [ka, ia] = decode[static_cast<size_t>(a)];
    auto [kb, ib] = decode[static_cast<size_t>(b)];
    if (ka == 0 && kb == 0) {
      const auto& p = y.basis_product(ia, ib);
      for (const auto& [idx, v] : p) out(layout[0][static_cast<size_t>(idx)]) += v;
      return out;
    }
    if (ka == 0) {
      std::swap(ka, kb);
      std::swap(ia, ib);
    }
    // Now ka >= 1.
    RatVector alpha = z.basis(ia);
    if (kb == 0)
      alpha = z.multiply(alpha, pullback.apply(y.basis(ib)));
    else
      alpha = z.multiply(alpha, z.basis(ib));
    add_power(alpha, ka + kb, out);
    return out;
  };

  BlowupResult r;
  r.algebra = algebra_from_products(dims, labels, product);
  r.codim = c;
  r.layout = layout;
  RatMatrix emb = zero_matrix<Rat>(n, y.dim());
  for (Index i = 0; i < y.dim(); ++i) emb(layout[0][static_cast<size_t>(i)], i) = Rat(1);
  r.from_ambient = GradedMap(y.dims(), dims, 0, emb);
  r.exceptional = zero_vector<Rat>(n);
  r.exceptional(layout[1][0]) = Rat(1);

  // P(-E) = Σ_i c_i (-E)^{c-i} must vanish.
  const auto& alg = r.algebra;
  const RatVector minus_e = -r.exceptional;
  RatVector relation = alg.zero();
  for (int i = 0; i <= c; ++i) {
    const RatVector ci = r.from_ambient.apply(chern.coefficient(y, i));
    relation += alg.multiply(ci, alg.power(minus_e, c - i));
  }
  if (!is_zero(relation))
    throw InputError("P(-E) = " + format_element(alg, relation) + " does not vanish");
  // (ker i*) · E = 0.
  for (int deg = 0; deg <= top; ++deg) {
    const RatMatrix& blk = pullback.block(deg);
    if (blk.cols() == 0) continue;
    for (const auto& kv : nullspace_basis(blk)) {
      RatVector j = y.zero();
      j.segment(y.offset(deg), y.dim(deg)) = kv;
      const RatVector je = alg.multiply(r.from_ambient.apply(j), r.exceptional);
      if (!is_zero(je))
        throw InputError("kernel element " + format_element(y, j) + " does not annihilate E");
    }
  }
  return r;
}

ProjectiveBundleResult projective_bundle(const GradedAlgebra& z,
                                         const std::vector<RatVector>& chern_classes,
                                         const std::string& generator_label) {
  const int r = static_cast<int>(chern_classes.size());
  if (r < 1) throw InputError("projective bundle needs rank at least 1");
  for (int i = 1; i <= r; ++i) {
    const auto& ci = chern_classes[static_cast<size_t>(i - 1)];
    if (ci.size() != z.dim()) throw InputError("Chern class has the wrong length");
    const auto deg = z.homogeneous_degree(ci);
    if (!is_zero(ci) && deg != i)
      throw InputError("c_" + std::to_string(i) + " is not of degree " + std::to_string(i));
  }
  const int top = z.top_degree() + r - 1;
  std::vector<Index> dims(static_cast<size_t>(top + 1), 0);
  std::vector<std::string> labels;
  std::vector<std::vector<Index>> layout(static_cast<size_t>(r),
                                         std::vector<Index>(static_cast<size_t>(z.dim())));
  Index next = 0;
  for (int deg = 0; deg <= top; ++deg)
    for (int k = 0; k < r; ++k)
      for (Index i = 0; i < z.dim(); ++i)
        if (z.degree(i) + k == deg) {
          layout[static_cast<size_t>(k)][static_cast<size_t>(i)] = next++;
          labels.push_back(k == 0 ? z.label(i) : power_label(z.label(i), generator_label, k));
          ++dims[static_cast<size_t>(deg)];
        }
  const Index n = next;

  std::function<void(const RatVector&, int, RatVector&)> add_power =
      [&](const RatVector& alpha, int m, RatVector& out) {
        if (is_zero(alpha)) return;
        if (m < r) {
          for (Index b = 0; b < z.dim(); ++b)
            if (!alpha(b).is_zero())
              out(layout[static_cast<size_t>(m)][static_cast<size_t>(b)]) += alpha(b);
          return;
        }
        for (int i = 1; i <= r; ++i) {
          RatVector beta = z.multiply(alpha, chern_classes[static_cast<size_t>(i - 1)]);
          beta *= Rat(-1);
          add_power(beta, m - i, out);
        }
      };
  std::vector<std::pair<int, Index>> decode(static_cast<size_t>(n));
  for (int k = 0; k < r; ++k)
    for (Index i = 0; i < z.dim(); ++i)
      decode[static_cast<size_t>(layout[static_cast<size_t>(k)][static_cast<size_t>(i)])] = {k, i};
  auto product = [&](Index a, Index b) {
    RatVector out = zero_vector<Rat>(n);
    const auto [ka, ia] = decode[static_cast<size_t>(a)];
    const auto [kb, ib] = decode[static_cast<size_t>(b)];
    add_power(z.multiply(z.basis(ia), z.basis(ib)), ka + kb, out);
    return out;
  };

  ProjectiveBundleResult res;
  res.algebra = algebra_from_products(dims, labels, product);
  res.rank = r;
  RatMatrix emb = zero_matrix<Rat>(n, z.dim());
  for (Index i = 0; i < z.dim(); ++i) emb(layout[0][static_cast<size_t>(i)], i) = Rat(1);
  res.from_base = GradedMap(z.dims(), dims, 0, emb);
  if (r == 1) {
    res.xi = res.from_base.apply(-chern_classes[0]);
  } else {
    res.xi = zero_vector<Rat>(n);
    res.xi(layout[1][0]) = Rat(1);
  }
  return res;
}

PropagationReport pd_propagation_check(const GradedAlgebra& y, const GradedAlgebra& z,
                                       const BlowupResult& result) {
  PropagationReport rep;
  const int d = y.top_degree();
  const int c = result.codim;
  const bool y_pd = algebra_pd(y, d);
  const bool z_pd = algebra_pd(z, d - c);
  rep.before_pd = y_pd && (c == 1 || z_pd);
  if (c == 1) rep.notes.push_back("divisorial center: the blow-up is Y itself");
  const auto sc = socle_check(result.algebra, d);
  rep.after_pd = sc.ok() && pd_verdict(*sc.pairing).is_pd;
  rep.equivalence = rep.before_pd == rep.after_pd;
  if (!rep.equivalence)
    rep.notes.push_back(std::string("Y ") + (y_pd ? "PD" : "not PD") + ", Z " +
                        (z_pd ? "PD" : "not PD") + ", blow-up " +
                        (rep.after_pd ? "PD" : "not PD"));
  if (!sc.ok()) {
    rep.block_triangular = false;
    rep.notes.push_back("blow-up has no socle in degree " + std::to_string(d));
    return rep;
  }
  const auto& alg = result.algebra;
  // summand[global index] = k
  std::vector<int> summand(static_cast<size_t>(alg.dim()), 0);
  for (size_t k = 0; k < result.layout.size(); ++k)
    for (Index idx : result.layout[k]) summand[static_cast<size_t>(idx)] = static_cast<int>(k);
  const auto& gram = sc.pairing->gram;
  for (int deg = 0; deg <= d; ++deg) {
    const RatMatrix& g = gram[static_cast<size_t>(deg)];
    for (Index a = 0; a < g.rows(); ++a)
      for (Index b = 0; b < g.cols(); ++b) {
        const int j = summand[static_cast<size_t>(alg.offset(deg) + a)];
        const int k = summand[static_cast<size_t>(alg.offset(d - deg) + b)];
        if ((j != 0 || k != 0) && j + k < c && !g(a, b).is_zero()) {
          rep.block_triangular = false;
          rep.notes.push_back("gram entry (" + alg.label(alg.offset(deg) + a) + ", " +
                              alg.label(alg.offset(d - deg) + b) + ") is nonzero");
        }
      }
  }
  return rep;
}

PropagationReport pd_propagation_check(const GradedAlgebra& base,
                                       const ProjectiveBundleResult& result) {
  PropagationReport rep;
  const int d = base.top_degree();
  rep.before_pd = algebra_pd(base, d);
  rep.after_pd = algebra_pd(result.algebra, d + result.rank - 1);
  rep.equivalence = rep.before_pd == rep.after_pd;
  return rep;
}

}  // namespace wonder
