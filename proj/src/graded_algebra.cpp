#include "wonder/graded_algebra.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace wonder {

SparseVec to_sparse(const RatVector& v) {
  SparseVec out;
  for (Index i = 0; i < v.size(); ++i)
    if (!v(i).is_zero()) out.emplace_back(i, v(i));
  return out;
}

RatVector to_dense(const SparseVec& v, Index size) {
  RatVector out = zero_vector<Rat>(size);
  for (const auto& [i, c] : v) out(i) += c;
  return out;
}

namespace {

void add_scaled(SparseVec& acc, const SparseVec& v, const Rat& scale) {
  SparseVec merged;
  merged.reserve(acc.size() + v.size());
  size_t a = 0, b = 0;
  while (a < acc.size() || b < v.size()) {
    if (b == v.size() || (a < acc.size() && acc[a].first < v[b].first)) {
      merged.push_back(std::move(acc[a++]));
    } else if (a == acc.size() || v[b].first < acc[a].first) {
      merged.emplace_back(v[b].first, v[b].second * scale);
      ++b;
    } else {
      Rat s = acc[a].second + v[b].second * scale;
      if (!s.is_zero()) merged.emplace_back(acc[a].first, std::move(s));
      ++a, ++b;
    }
  }
  acc = std::move(merged);
}

}  // namespace

GradedAlgebra::GradedAlgebra() : GradedAlgebra({1}, {"1"}, {}) {}

GradedAlgebra::GradedAlgebra(std::vector<Index> dims, std::vector<std::string> labels,
                             const std::vector<MultEntry>& entries)
    : dims_(std::move(dims)), labels_(std::move(labels)) {
  if (dims_.empty() || dims_[0] < 1)
    throw std::invalid_argument("algebra needs at least the unit in degree 0");
  Index total = 0;
  for (size_t k = 0; k < dims_.size(); ++k) {
    if (dims_[k] < 0) throw std::invalid_argument("negative dimension");
    offsets_.push_back(total);
    for (Index i = 0; i < dims_[k]; ++i) degrees_.push_back(static_cast<int>(k));
    total += dims_[k];
  }
  if (static_cast<Index>(labels_.size()) != total)
    throw std::invalid_argument("algebra has " + std::to_string(total) + " basis elements but " +
                                std::to_string(labels_.size()) + " labels");
  const Index n = total;
  table_.assign(static_cast<size_t>(n * n), {});
  for (Index j = 0; j < n; ++j) {
    table_[static_cast<size_t>(j)] = {{j, Rat(1)}};
    table_[static_cast<size_t>(j * n)] = {{j, Rat(1)}};
  }
  std::map<std::pair<Index, Index>, std::map<Index, Rat>> staged;
  for (const auto& e : entries) {
    if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= n || e.j >= n || e.k >= n)
      throw std::invalid_argument("structure constant index out of range");
    if (e.i == 0 || e.j == 0)
      throw std::invalid_argument("unit products are implicit and must not be listed");
    if (degree(e.i) + degree(e.j) != degree(e.k))
      throw std::invalid_argument("structure constant (" + std::to_string(e.i) + ", " +
                                  std::to_string(e.j) + ") -> " + std::to_string(e.k) +
                                  " does not respect the grading");
    const auto key = std::minmax(e.i, e.j);
    auto& slot = staged[{key.first, key.second}];
    if (slot.count(e.k) && slot[e.k] != e.value)
      throw std::invalid_argument("conflicting structure constants at (" + std::to_string(e.i) +
                                  ", " + std::to_string(e.j) + ")");
    slot[e.k] = e.value;
  }
  for (auto& [key, coeffs] : staged) {
    SparseVec v;
    for (auto& [k, c] : coeffs)
      if (!c.is_zero()) v.emplace_back(k, c);
    table_[static_cast<size_t>(key.first * n + key.second)] = v;
    table_[static_cast<size_t>(key.second * n + key.first)] = v;
  }
}

Index GradedAlgebra::dim(int degree) const {
  if (degree < 0 || degree > top_degree()) return 0;
  return dims_[static_cast<size_t>(degree)];
}

std::optional<Index> GradedAlgebra::find_label(const std::string& label) const {
  for (size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<Index>(i);
  return std::nullopt;
}

const SparseVec& GradedAlgebra::basis_product(Index i, Index j) const {
  return table_[static_cast<size_t>(i * dim() + j)];
}

std::vector<GradedAlgebra::MultEntry> GradedAlgebra::entries() const {
  std::vector<MultEntry> out;
  for (Index i = 1; i < dim(); ++i)
    for (Index j = i; j < dim(); ++j)
      for (const auto& [k, c] : basis_product(i, j)) out.push_back({i, j, k, c});
  return out;
}

RatVector GradedAlgebra::multiply(const RatVector& a, const RatVector& b) const {
  if (a.size() != dim() || b.size() != dim())
    throw std::invalid_argument("multiply: element does not belong to this algebra");
  const SparseVec sa = to_sparse(a), sb = to_sparse(b);
  SparseVec acc;
  for (const auto& [i, x] : sa)
    for (const auto& [j, y] : sb) {
      if (degrees_[static_cast<size_t>(i)] + degrees_[static_cast<size_t>(j)] > top_degree())
        continue;
      add_scaled(acc, basis_product(i, j), x * y);
    }
  return to_dense(acc, dim());
}

RatVector GradedAlgebra::power(const RatVector& a, int exponent) const {
  RatVector r = unit();
  for (int e = 0; e < exponent; ++e) r = multiply(r, a);
  return r;
}

std::optional<int> GradedAlgebra::homogeneous_degree(const RatVector& v) const {
  std::optional<int> deg;
  for (Index i = 0; i < v.size(); ++i) {
    if (v(i).is_zero()) continue;
    if (deg && *deg != degree(i)) return std::nullopt;
    deg = degree(i);
  }
  return deg;
}

RatVector GradedAlgebra::component(const RatVector& v, int degree) const {
  RatVector out = zero();
  for (Index i = offset(degree); i < offset(degree) + dim(degree); ++i) out(i) = v(i);
  return out;
}

bool operator==(const GradedAlgebra& a, const GradedAlgebra& b) {
  return a.dims_ == b.dims_ && a.labels_ == b.labels_ && a.table_ == b.table_;
}

std::string format_element(const GradedAlgebra& alg, const RatVector& v) {
  std::ostringstream os;
  bool first = true;
  for (Index i = 0; i < v.size(); ++i) {
    if (v(i).is_zero()) continue;
    Rat c = v(i);
    if (!first) os << (c.sign() < 0 ? " - " : " + ");
    else if (c.sign() < 0) os << "-";
    first = false;
    c = abs(c);
    if (c != Rat(1) || i == 0) {
      os << c;
      if (i != 0) os << "*";
    }
    if (i != 0) os << alg.label(i);
  }
  return first ? "0" : os.str();
}

GradedAlgebra algebra_from_products(std::vector<Index> dims, std::vector<std::string> labels,
                                    const std::function<RatVector(Index, Index)>& product) {
  std::vector<int> degree;
  for (size_t k = 0; k < dims.size(); ++k)
    for (Index i = 0; i < dims[k]; ++i) degree.push_back(static_cast<int>(k));
  const int top = static_cast<int>(dims.size()) - 1;
  const Index n = static_cast<Index>(degree.size());
  std::vector<GradedAlgebra::MultEntry> entries;
  for (Index i = 1; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      if (degree[static_cast<size_t>(i)] + degree[static_cast<size_t>(j)] > top) break;
      const RatVector v = product(i, j);
      for (Index k = 0; k < v.size(); ++k)
        if (!v(k).is_zero()) entries.push_back({i, j, k, v(k)});
    }
  return GradedAlgebra(std::move(dims), std::move(labels), entries);
}

GradedAlgebra truncated_polynomial(int top, const std::string& var) {
  std::vector<Index> dims(static_cast<size_t>(top + 1), 1);
  std::vector<std::string> labels{"1"};
  for (int k = 1; k <= top; ++k) labels.push_back(k == 1 ? var : var + "^" + std::to_string(k));
  std::vector<GradedAlgebra::MultEntry> entries;
  for (int i = 1; i <= top; ++i)
    for (int j = i; i + j <= top; ++j) entries.push_back({i, j, i + j, Rat(1)});
  return GradedAlgebra(dims, labels, entries);
}

namespace {

struct TensorLayout {
  std::vector<Index> dims;
  std::vector<std::pair<Index, Index>> pairs;
  std::map<std::pair<Index, Index>, Index> index;
};

TensorLayout tensor_layout(const GradedAlgebra& a, const GradedAlgebra& b) {
  TensorLayout t;
  const int top = a.top_degree() + b.top_degree();
  t.dims.assign(static_cast<size_t>(top + 1), 0);
  for (int k = 0; k <= top; ++k)
    for (Index i = 0; i < a.dim(); ++i)
      for (Index j = 0; j < b.dim(); ++j)
        if (a.degree(i) + b.degree(j) == k) {
          t.index[{i, j}] = static_cast<Index>(t.pairs.size());
          t.pairs.emplace_back(i, j);
          ++t.dims[static_cast<size_t>(k)];
        }
  return t;
}

}  // namespace

GradedAlgebra tensor_product(const GradedAlgebra& a, const GradedAlgebra& b) {
  const auto t = tensor_layout(a, b);
  std::vector<std::string> labels;
  for (auto [i, j] : t.pairs) {
    if (i == 0) labels.push_back(b.label(j));
    else if (j == 0) labels.push_back(a.label(i));
    else labels.push_back(a.label(i) + "*" + b.label(j));
  }
  std::vector<GradedAlgebra::MultEntry> entries;
  const Index n = static_cast<Index>(t.pairs.size());
  for (Index x = 1; x < n; ++x)
    for (Index y = x; y < n; ++y) {
      auto [i, j] = t.pairs[static_cast<size_t>(x)];
      auto [k, l] = t.pairs[static_cast<size_t>(y)];
      if (a.degree(i) + a.degree(k) > a.top_degree() || b.degree(j) + b.degree(l) > b.top_degree())
        continue;
      for (const auto& [p, cp] : a.basis_product(i, k))
        for (const auto& [q, cq] : b.basis_product(j, l))
          entries.push_back({x, y, t.index.at({p, q}), cp * cq});
    }
  return GradedAlgebra(t.dims, labels, entries);
}

RatVector tensor_elements(const GradedAlgebra& a, const GradedAlgebra& b, const RatVector& x,
                          const RatVector& y) {
  const auto t = tensor_layout(a, b);
  RatVector out = zero_vector<Rat>(static_cast<Index>(t.pairs.size()));
  for (Index i = 0; i < x.size(); ++i) {
    if (x(i).is_zero()) continue;
    for (Index j = 0; j < y.size(); ++j)
      if (!y(j).is_zero()) out(t.index.at({i, j})) += x(i) * y(j);
  }
  return out;
}

RatVector tensor_left(const GradedAlgebra& a, const GradedAlgebra& b, const RatVector& x) {
  return tensor_elements(a, b, x, b.unit());
}

RatVector tensor_right(const GradedAlgebra& a, const GradedAlgebra& b, const RatVector& y) {
  return tensor_elements(a, b, a.unit(), y);
}

std::optional<std::string> find_axiom_violation(const GradedAlgebra& alg) {
  const Index n = alg.dim();
  const int top = alg.top_degree();
  for (Index i = 0; i < n; ++i) {
    if (alg.basis_product(0, i) != SparseVec{{i, Rat(1)}})
      return "unit law fails on " + alg.label(i);
    for (Index j = i + 1; j < n; ++j)
      if (alg.basis_product(i, j) != alg.basis_product(j, i))
        return "commutativity fails on (" + alg.label(i) + ", " + alg.label(j) + ")";
  }
  auto times_basis = [&](const SparseVec& v, Index k) {
    SparseVec acc;
    for (const auto& [p, c] : v)
      if (alg.degree(p) + alg.degree(k) <= top) add_scaled(acc, alg.basis_product(p, k), c);
    return acc;
  };
  for (Index i = 1; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      if (alg.degree(i) + alg.degree(j) > top) continue;
      const SparseVec& ij = alg.basis_product(i, j);
      for (Index k = j; k < n; ++k) {
        if (alg.degree(i) + alg.degree(j) + alg.degree(k) > top) continue;
        const SparseVec a = times_basis(ij, k);
        const SparseVec b = times_basis(alg.basis_product(j, k), i);
        const SparseVec c = times_basis(alg.basis_product(i, k), j);
        if (a != b || a != c)
          return "associativity fails on (" + alg.label(i) + ", " + alg.label(j) + ", " +
                 alg.label(k) + ")";
      }
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

GradedMap::GradedMap(const std::vector<Index>& source_dims, const std::vector<Index>& target_dims,
                     int shift, const RatMatrix& global)
    : shift_(shift), source_dims_(source_dims), target_dims_(target_dims) {
  auto offsets = [](const std::vector<Index>& d) {
    std::vector<Index> o{0};
    for (Index x : d) o.push_back(o.back() + x);
    return o;
  };
  const auto so = offsets(source_dims_), to = offsets(target_dims_);
  if (global.rows() != to.back() || global.cols() != so.back())
    throw std::invalid_argument("graded map matrix has shape " + std::to_string(global.rows()) +
                                "x" + std::to_string(global.cols()) + ", expected " +
                                std::to_string(to.back()) + "x" + std::to_string(so.back()));
  const int ntarget = static_cast<int>(target_dims_.size());
  for (size_t k = 0; k < source_dims_.size(); ++k) {
    const int t = static_cast<int>(k) + shift_;
    const bool in_range = t >= 0 && t < ntarget;
    const Index rows = in_range ? target_dims_[static_cast<size_t>(t)] : 0;
    RatMatrix blk = zero_matrix<Rat>(rows, source_dims_[k]);
    if (in_range) blk = global.block(to[static_cast<size_t>(t)], so[k], rows, source_dims_[k]);
    blocks_.push_back(std::move(blk));
  }
  RatMatrix check = global;
  for (size_t k = 0; k < source_dims_.size(); ++k) {
    const int t = static_cast<int>(k) + shift_;
    if (t >= 0 && t < ntarget)
      check.block(to[static_cast<size_t>(t)], so[k], target_dims_[static_cast<size_t>(t)],
                  source_dims_[k])
          .setConstant(Rat(0));
  }
  if (!is_zero(check))
    throw std::invalid_argument("graded map has entries outside its degree-" +
                                std::to_string(shift_) + " blocks");
}

GradedMap GradedMap::identity(const GradedAlgebra& alg) {
  return GradedMap(alg.dims(), alg.dims(), 0, RatMatrix::Identity(alg.dim(), alg.dim()));
}

Index GradedMap::source_dim() const {
  Index s = 0;
  for (Index d : source_dims_) s += d;
  return s;
}

Index GradedMap::target_dim() const {
  Index s = 0;
  for (Index d : target_dims_) s += d;
  return s;
}

const RatMatrix& GradedMap::block(int source_degree) const {
  static const RatMatrix empty;
  if (source_degree < 0 || source_degree >= static_cast<int>(blocks_.size())) return empty;
  return blocks_[static_cast<size_t>(source_degree)];
}

RatMatrix GradedMap::global() const {
  RatMatrix g = zero_matrix<Rat>(target_dim(), source_dim());
  Index so = 0;
  std::vector<Index> to{0};
  for (Index d : target_dims_) to.push_back(to.back() + d);
  for (size_t k = 0; k < blocks_.size(); ++k) {
    const int t = static_cast<int>(k) + shift_;
    if (t >= 0 && t < static_cast<int>(target_dims_.size()))
      g.block(to[static_cast<size_t>(t)], so, blocks_[k].rows(), blocks_[k].cols()) = blocks_[k];
    so += source_dims_[k];
  }
  return g;
}

RatVector GradedMap::apply(const RatVector& v) const {
  if (v.size() != source_dim())
    throw std::invalid_argument("graded map applied to element of wrong length");
  RatVector out = zero_vector<Rat>(target_dim());
  Index so = 0;
  std::vector<Index> to{0};
  for (Index d : target_dims_) to.push_back(to.back() + d);
  for (size_t k = 0; k < blocks_.size(); ++k) {
    const int t = static_cast<int>(k) + shift_;
    const Index n = source_dims_[k];
    if (t >= 0 && t < static_cast<int>(target_dims_.size()) && n > 0) {
      bool any = false;
      for (Index i = so; i < so + n && !any; ++i) any = !v(i).is_zero();
      if (any)
        out.segment(to[static_cast<size_t>(t)], blocks_[k].rows()) +=
            blocks_[k] * v.segment(so, n);
    }
    so += n;
  }
  return out;
}

bool operator==(const GradedMap& a, const GradedMap& b) {
  if (a.shift_ != b.shift_ || a.source_dims_ != b.source_dims_ || a.target_dims_ != b.target_dims_)
    return false;
  for (size_t k = 0; k < a.blocks_.size(); ++k)
    if (a.blocks_[k] != b.blocks_[k]) return false;
  return true;
}

GradedMap compose(const GradedMap& g, const GradedMap& f) {
  if (f.target_dims() != g.source_dims())
    throw std::invalid_argument("compose: degree layouts do not match");
  return GradedMap(f.source_dims(), g.target_dims(), f.shift() + g.shift(),
                   g.global() * f.global());
}

std::optional<std::string> find_homomorphism_violation(const GradedMap& f,
                                                       const GradedAlgebra& source,
                                                       const GradedAlgebra& target) {
  if (f.shift() != 0) return "pullback has nonzero degree shift";
  if (f.source_dims() != source.dims() || f.target_dims() != target.dims())
    return "map layout does not match the algebras";
  if (f.apply(source.unit()) != target.unit()) return "unit is not mapped to unit";
  std::vector<RatVector> img;
  for (Index i = 0; i < source.dim(); ++i) img.push_back(f.apply(source.basis(i)));
  for (Index i = 1; i < source.dim(); ++i)
    for (Index j = i; j < source.dim(); ++j) {
      const RatVector lhs = f.apply(to_dense(source.degree(i) + source.degree(j) <= source.top_degree()
                                                 ? source.basis_product(i, j)
                                                 : SparseVec{},
                                             source.dim()));
      const RatVector rhs = target.multiply(img[static_cast<size_t>(i)], img[static_cast<size_t>(j)]);
      if (lhs != rhs)
        return "f(" + source.label(i) + "*" + source.label(j) + ") != f(" + source.label(i) +
               ")*f(" + source.label(j) + ")";
    }
  return std::nullopt;
}

std::optional<std::string> find_projection_formula_violation(const GradedMap& pull,
                                                             const GradedMap& push,
                                                             const GradedAlgebra& big,
                                                             const GradedAlgebra& small) {
  for (Index a = 0; a < big.dim(); ++a) {
    const RatVector pa = pull.apply(big.basis(a));
    for (Index b = 0; b < small.dim(); ++b) {
      const RatVector lhs = push.apply(small.multiply(pa, small.basis(b)));
      const RatVector rhs = big.multiply(big.basis(a), push.apply(small.basis(b)));
      if (lhs != rhs)
        return "push(pull(" + big.label(a) + ")*" + small.label(b) + ") != " + big.label(a) +
               "*push(" + small.label(b) + ")";
    }
  }
  return std::nullopt;
}

std::vector<int> surjectivity_failures(const GradedMap& f) {
  std::vector<int> out;
  for (size_t t = 0; t < f.target_dims().size(); ++t) {
    const int s = static_cast<int>(t) - f.shift();
    const Index want = f.target_dims()[t];
    const Index got = (s >= 0 && s < static_cast<int>(f.source_dims().size())) ? rank(f.block(s)) : 0;
    if (got != want) out.push_back(static_cast<int>(t));
  }
  return out;
}

std::vector<int> injectivity_failures(const GradedMap& f) {
  std::vector<int> out;
  for (size_t k = 0; k < f.source_dims().size(); ++k) {
    const RatMatrix& b = f.block(static_cast<int>(k));
    if (f.source_dims()[k] > 0 && (b.rows() == 0 || rank(b) != f.source_dims()[k]))
      out.push_back(static_cast<int>(k));
  }
  return out;
}

// ---------------------------------------------------------------------------

SocleCheck socle_check(const GradedAlgebra& alg, int expected_degree, const Rat& generator_scale) {
  SocleCheck out;
  const int d = expected_degree;
  if (d < 0) {
    out.failures.push_back("negative socle degree " + std::to_string(d));
    return out;
  }
  for (int k = d + 1; k <= alg.top_degree(); ++k)
    if (alg.dim(k) != 0)
      out.failures.push_back("nonzero classes above socle degree " + std::to_string(d) +
                             ": dim A^" + std::to_string(k) + " = " + std::to_string(alg.dim(k)));
  if (alg.dim(d) != 1)
    out.failures.push_back("socle dimension " + std::to_string(alg.dim(d)) + " at degree " +
                           std::to_string(d));
  if (generator_scale.is_zero()) out.failures.push_back("zero socle generator scale");
  if (!out.failures.empty()) return out;

  SoclePairing sp;
  sp.socle_degree = d;
  sp.socle_generator = alg.offset(d);
  sp.generator_scale = generator_scale;
  for (int k = 0; k <= d; ++k) {
    RatMatrix g = zero_matrix<Rat>(alg.dim(k), alg.dim(d - k));
    for (Index r = 0; r < g.rows(); ++r)
      for (Index c = 0; c < g.cols(); ++c)
        for (const auto& [idx, coeff] : alg.basis_product(alg.offset(k) + r, alg.offset(d - k) + c))
          if (idx == sp.socle_generator) g(r, c) = coeff / generator_scale;
    sp.gram.push_back(std::move(g));
  }
  out.pairing = std::move(sp);
  return out;
}

PdVerdict pd_verdict(const SoclePairing& sp) {
  PdVerdict v;
  for (const auto& g : sp.gram) {
    const Index r = rank(g);
    v.kernel_dims.emplace_back(g.rows() - r, g.cols() - r);
    v.discrepancy.push_back(g.rows() - r);
    if (r != g.rows() || r != g.cols()) v.is_pd = false;
  }
  return v;
}

std::vector<RatVector> socle_kernel_elements(const GradedAlgebra& alg, const SoclePairing& sp,
                                             int k) {
  if (k < 0 || k > sp.socle_degree)
    throw std::out_of_range("degree " + std::to_string(k) + " outside [0, " +
                            std::to_string(sp.socle_degree) + "]");
  std::vector<RatVector> out;
  const RatMatrix& g = sp.gram[static_cast<size_t>(k)];
  std::vector<RatVector> kernel;
  if (g.cols() == 0) {
    for (Index i = 0; i < g.rows(); ++i) kernel.push_back(unit_vector<Rat>(g.rows(), i));
  } else {
    kernel = left_nullspace_basis<Rat>(g);
  }
  for (const auto& w : kernel) {
    RatVector e = alg.zero();
    e.segment(alg.offset(k), w.size()) = w;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace wonder
