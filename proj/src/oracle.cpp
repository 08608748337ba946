#include "wonder/oracle.hpp"

#include "wonder/errors.hpp"

#include <cctype>
#include <sstream>

namespace wonder {

namespace {

class ExpressionParser {
public:
  ExpressionParser(const std::string& text, const GradedAlgebra& alg, const NameMap& names)
      : text_(text), alg_(alg), names_(names) {}

  RatVector parse() {
    RatVector v = sum();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("expression \"" + text_ + "\" at position " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  long integer() {
    skip();
    const size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("integer expected");
    if (pos_ - start > 15) fail("integer too large");
    return std::stol(text_.substr(start, pos_ - start));
  }

  RatVector sum() {
    RatVector v = product();
    for (;;) {
      if (accept('+')) v += product();
      else if (accept('-')) v -= product();
      else return v;
    }
  }

  RatVector product() {
    RatVector v = factor();
    while (accept('*')) v = alg_.multiply(v, factor());
    return v;
  }

  RatVector factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    RatVector v = atom();
    if (accept('^')) {
      const long e = integer();
      if (e > 64) fail("exponent too large");
      v = alg_.power(v, static_cast<int>(e));
    }
    return v;
  }

  RatVector atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RatVector v = sum();
      if (!accept(')')) fail("')' expected");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rat r(integer());
      if (accept('/')) {
        const long d = integer();
        if (d == 0) fail("zero denominator");
        r /= Rat(d);
      }
      return alg_.unit() * r;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name = text_.substr(start, pos_ - start);
      auto it = names_.find(name);
      if (it == names_.end()) fail("unknown name \"" + name + "\"");
      return it->second;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& text_;
  const GradedAlgebra& alg_;
  const NameMap& names_;
  size_t pos_ = 0;
};

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

int generator_degree(const GradedAlgebra& a, const GradedAlgebra& b, const RatVector& x,
                     const RatVector& y, const std::string& name) {
  const auto da = a.homogeneous_degree(x);
  const auto db = b.homogeneous_degree(y);
  if (!is_zero(x) && !da) throw InputError("generator " + name + " is not homogeneous");
  if (!is_zero(y) && !db) throw InputError("image of " + name + " is not homogeneous");
  if (da && db && *da != *db) throw InputError("generator " + name + " changes degree");
  const int d = da ? *da : db ? *db : 0;
  if ((da || db) && d == 0) throw InputError("generator " + name + " has degree 0");
  return d;
}

RatVector concat(const RatVector& x, const RatVector& y) {
  RatVector out(x.size() + y.size());
  out << x, y;
  return out;
}

std::string format_dims(const std::vector<Index>& dims) {
  std::string s;
  for (Index d : dims) s += (s.empty() ? "" : " ") + std::to_string(d);
  return s;
}

}  // namespace

RatVector evaluate_expression(const std::string& expr, const GradedAlgebra& alg,
                              const NameMap& names) {
  return ExpressionParser(expr, alg, names).parse();
}

NameMap label_names(const GradedAlgebra& alg) {
  NameMap out;
  for (Index i = 1; i < alg.dim(); ++i)
    if (is_identifier(alg.label(i))) out[alg.label(i)] = alg.basis(i);
  return out;
}

JointSpan joint_span(const GradedAlgebra& a, const GradedAlgebra& b,
                     const std::vector<std::string>& names,
                     const std::vector<std::pair<RatVector, RatVector>>& generators) {
  std::vector<int> degs;
  for (size_t g = 0; g < generators.size(); ++g)
    degs.push_back(generator_degree(a, b, generators[g].first, generators[g].second, names[g]));
  const int top = std::max(a.top_degree(), b.top_degree());
  JointSpan js;
  for (int k = 0; k <= top; ++k) {
    std::vector<std::string> cand_names;
    std::vector<RatVector> cand_a, cand_b;
    if (k == 0) {
      cand_names.push_back("1");
      cand_a.push_back(a.unit());
      cand_b.push_back(b.unit());
    } else {
      for (size_t g = 0; g < generators.size(); ++g) {
        const int prev = k - degs[g];
        if (degs[g] == 0 || prev < 0) continue;
        const auto& level = js.monomials[static_cast<size_t>(prev)];
        for (size_t m = 0; m < level.size(); ++m) {
          cand_names.push_back(level[m] == "1" ? names[g] : level[m] + "*" + names[g]);
          cand_a.push_back(a.multiply(js.values_a[static_cast<size_t>(prev)][m], generators[g].first));
          cand_b.push_back(b.multiply(js.values_b[static_cast<size_t>(prev)][m], generators[g].second));
        }
      }
    }
    const Index n = static_cast<Index>(cand_names.size());
    RatMatrix ma(a.dim(), n), mb(b.dim(), n), mj(a.dim() + b.dim(), n);
    for (Index j = 0; j < n; ++j) {
      ma.col(j) = cand_a[static_cast<size_t>(j)];
      mb.col(j) = cand_b[static_cast<size_t>(j)];
      mj.col(j) = concat(cand_a[static_cast<size_t>(j)], cand_b[static_cast<size_t>(j)]);
    }
    js.rank_a.push_back(n ? rank(ma) : 0);
    js.rank_b.push_back(n ? rank(mb) : 0);
    std::vector<Index> piv;
    if (n) piv = row_reduce(mj).pivots;
    js.rank_joint.push_back(static_cast<Index>(piv.size()));
    js.monomials.emplace_back();
    js.values_a.emplace_back();
    js.values_b.emplace_back();
    for (Index p : piv) {
      js.monomials.back().push_back(cand_names[static_cast<size_t>(p)]);
      js.values_a.back().push_back(cand_a[static_cast<size_t>(p)]);
      js.values_b.back().push_back(cand_b[static_cast<size_t>(p)]);
    }
  }
  return js;
}

GradedAlgebra algebra_from_spec(const Json& spec) {
  if (spec.is_object() && spec.contains("truncated")) {
    GradedAlgebra out;
    for (const auto& f : spec.at("truncated")) {
      if (!f.is_array() || f.size() != 2) throw InputError("truncated factors are [name, top]");
      out = tensor_product(out, truncated_polynomial(f[1].get<int>(), f[0].get<std::string>()));
    }
    return out;
  }
  if (spec.is_string() && spec.get<std::string>() == "point") return GradedAlgebra();
  return algebra_from_json(spec);
}

OracleRun run_oracle(const Json& script) {
  try {
    OracleRun run;
    run.algebra = algebra_from_spec(script.at("start"));
    run.names = label_names(run.algebra);
    run.log.push_back("start: " + format_dims(run.algebra.dims()));
    for (const auto& step : script.value("steps", Json::array())) {
      const GradedAlgebra& y = run.algebra;
      if (step.contains("blow_up")) {
        const Json& s = step.at("blow_up");
        const GradedAlgebra z = algebra_from_spec(s.at("center"));
        const NameMap znames = label_names(z);
        const std::string label = s.value("exceptional", std::string("E"));
        std::vector<std::string> names;
        std::vector<std::pair<RatVector, RatVector>> gens;
        for (const auto& [name, image] : s.at("restrict").items()) {
          names.push_back(name);
          gens.emplace_back(evaluate_expression(name, y, run.names),
                            evaluate_expression(image.get<std::string>(), z, znames));
        }
        const JointSpan js = joint_span(y, z, names, gens);
        for (int k = 0; k <= y.top_degree(); ++k) {
          if (js.rank_a[static_cast<size_t>(k)] != y.dim(k))
            throw InputError(label + ": restricted classes do not generate degree " + std::to_string(k));
          if (js.rank_joint[static_cast<size_t>(k)] != js.rank_a[static_cast<size_t>(k)])
            throw InputError(label + ": restriction images are not a ring map (degree " +
                             std::to_string(k) + ")");
        }
        for (int k = 0; k <= z.top_degree(); ++k)
          if (js.rank_b[static_cast<size_t>(k)] != z.dim(k))
            throw InputError(label + ": restriction is not surjective in degree " + std::to_string(k));
        RatMatrix pull = zero_matrix<Rat>(z.dim(), y.dim());
        for (int k = 0; k <= y.top_degree(); ++k) {
          const auto& va = js.values_a[static_cast<size_t>(k)];
          RatMatrix m(y.dim(), static_cast<Index>(va.size()));
          for (size_t i = 0; i < va.size(); ++i) m.col(static_cast<Index>(i)) = va[i];
          const Solver<Rat> solver(m);
          for (Index e = y.offset(k); e < y.offset(k) + y.dim(k); ++e) {
            const auto x = solver.solve(y.basis(e));
            RatVector img = z.zero();
            for (Index i = 0; i < x->size(); ++i) img += js.values_b[static_cast<size_t>(k)][static_cast<size_t>(i)] * (*x)(i);
            pull.col(e) = img;
          }
        }
        ChernPolynomial chern;
        for (const auto& c : s.at("chern"))
          chern.coeffs.push_back(evaluate_expression(c.get<std::string>(), y, run.names));
        if (chern.coeffs.empty()) throw InputError(label + ": empty Chern polynomial");
        const RatVector cls = chern.coeffs.back();
        const int c = chern.degree();
        const Solver<Rat> lift(pull);
        RatMatrix push = zero_matrix<Rat>(y.dim(), z.dim());
        for (Index j = 0; j < z.dim(); ++j) push.col(j) = y.multiply(*lift.solve(z.basis(j)), cls);
        const GradedMap pullback(y.dims(), z.dims(), 0, pull);
        GradedMap pushforward;
        try {
          pushforward = GradedMap(z.dims(), y.dims(), c, push);
        } catch (const std::invalid_argument&) {
          throw InputError(label + ": class of the center has the wrong degree");
        }
        const BlowupResult r = blow_up(y, z, pullback, pushforward, chern, label);
        NameMap next;
        for (const auto& [name, v] : run.names) next[name] = r.from_ambient.apply(v);
        next[label] = r.exceptional;
        run.names = std::move(next);
        run.algebra = r.algebra;
        run.log.push_back("blow_up " + label + " (codim " + std::to_string(c) + "): " +
                          format_dims(run.algebra.dims()));
      } else if (step.contains("projective_bundle")) {
        const Json& s = step.at("projective_bundle");
        const std::string label = s.value("generator", std::string("xi"));
        std::vector<RatVector> cs;
        for (const auto& c : s.at("chern")) cs.push_back(evaluate_expression(c.get<std::string>(), y, run.names));
        const auto r = projective_bundle(y, cs, label);
        NameMap next;
        for (const auto& [name, v] : run.names) next[name] = r.from_base.apply(v);
        next[label] = r.xi;
        run.names = std::move(next);
        run.algebra = r.algebra;
        run.log.push_back("projective_bundle " + label + " (rank " + std::to_string(cs.size()) +
                          "): " + format_dims(run.algebra.dims()));
      } else {
        throw InputError("oracle step must be blow_up or projective_bundle");
      }
    }
    if (script.contains("expect")) {
      const Json& e = script.at("expect");
      if (e.contains("dims")) run.expected_dims = e.at("dims").get<std::vector<Index>>();
      if (e.contains("pd")) run.expected_pd = e.at("pd").get<bool>();
    }
    return run;
  } catch (const Json::exception& e) {
    throw InputError(std::string("oracle script: ") + e.what());
  }
}

OracleComparison compare_with_oracle(const GradedAlgebra& ring, const NameMap& ring_names,
                                     const OracleRun& oracle,
                                     const std::map<std::string, std::string>& correspondence) {
  OracleComparison out;
  out.engine_dims = ring.dims();
  out.oracle_dims = oracle.algebra.dims();
  out.dims_equal = out.engine_dims == out.oracle_dims;
  if (!out.dims_equal) out.notes.push_back("dimension vectors differ");
  std::vector<std::string> names;
  std::vector<std::pair<RatVector, RatVector>> gens;
  for (const auto& [name, expr] : correspondence) {
    auto it = ring_names.find(name);
    if (it == ring_names.end()) throw InputError("correspondence: ring has no class named " + name);
    names.push_back(name);
    gens.emplace_back(it->second, evaluate_expression(expr, oracle.algebra, oracle.names));
  }
  const JointSpan js = joint_span(ring, oracle.algebra, names, gens);
  out.isomorphic = out.dims_equal;
  for (int k = 0; out.dims_equal && k <= ring.top_degree(); ++k) {
    const size_t u = static_cast<size_t>(k);
    const Index d = ring.dim(k);
    if (js.rank_a[u] != d || js.rank_b[u] != d || js.rank_joint[u] != d) {
      out.isomorphic = false;
      out.first_bad_degree = k;
      std::ostringstream ss;
      ss << "degree " << k << ": dim " << d << ", ring rank " << js.rank_a[u] << ", oracle rank "
         << js.rank_b[u] << ", joint rank " << js.rank_joint[u];
      out.notes.push_back(ss.str());
      break;
    }
  }
  return out;
}

OracleComparison compare_with_oracle(const WonderRing& ring, const Json& script) {
  const OracleRun run = run_oracle(script);
  if (!script.contains("correspondence"))
    throw InputError("oracle script has no correspondence section");
  std::map<std::string, std::string> corr;
  for (const auto& [k, v] : script.at("correspondence").items()) corr[k] = v.get<std::string>();
  return compare_with_oracle(ring.algebra(), ring.names(), run, corr);
}

}  // namespace wonder
