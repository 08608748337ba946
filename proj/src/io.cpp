#include "wonder/io.hpp"

#include "wonder/errors.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace wonder {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw InputError(where + ": missing field \"" + key + "\"");
  return j.at(key);
}

std::vector<Index> dims_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw InputError(where + ": degrees must be a nonempty list");
  std::vector<Index> out;
  for (const auto& d : j) {
    if (!d.is_number_integer() || d.get<long>() < 0)
      throw InputError(where + ": degrees must be nonnegative integers");
    out.push_back(d.get<Index>());
  }
  return out;
}

Json nest_rule_to_json(const NestRule& rule) {
  switch (rule.kind) {
    case NestRule::Kind::NestedOrDisjoint: return "nested-or-disjoint";
    case NestRule::Kind::Transversal: return "transversal";
    case NestRule::Kind::Explicit: {
      Json out = Json::array();
      for (const auto& n : rule.nests) out.push_back(n);
      return out;
    }
  }
  return nullptr;
}

NestRule nest_rule_from_json(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nested-or-disjoint") return {NestRule::Kind::NestedOrDisjoint, {}};
    if (s == "transversal") return {NestRule::Kind::Transversal, {}};
    throw InputError("nests: unknown rule \"" + s + "\"");
  }
  if (!j.is_array()) throw InputError("nests: expected a rule keyword or a list of nests");
  NestRule rule{NestRule::Kind::Explicit, {}};
  for (const auto& n : j) rule.nests.push_back(n.get<std::vector<std::string>>());
  return rule;
}

}  // namespace

Json parse_document(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(source + ": parse error: " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

Json rat_to_json(const Rat& r) { return r.str(); }

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (!j.is_string()) throw InputError("rational entries must be \"p/q\" strings");
  try {
    return Rat::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("bad rational: ") + e.what());
  }
}

Json vector_to_json(const RatVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(rat_to_json(v(i)));
  return out;
}

RatVector vector_from_json(const Json& j, Index expected_size) {
  if (!j.is_array() || static_cast<Index>(j.size()) != expected_size)
    throw InputError("vector of length " + std::to_string(expected_size) + " expected");
  RatVector v(expected_size);
  for (Index i = 0; i < expected_size; ++i) v(i) = rat_from_json(j[static_cast<size_t>(i)]);
  return v;
}

Json algebra_to_json(const GradedAlgebra& alg) {
  Json out;
  out["degrees"] = alg.dims();
  out["basis_labels"] = alg.labels();
  Json mult = Json::array();
  for (const auto& e : alg.entries()) mult.push_back({e.i, e.j, e.k, rat_to_json(e.value)});
  out["mult"] = mult;
  return out;
}

GradedAlgebra algebra_from_json(const Json& j) {
  const auto dims = dims_from_json(field(j, "degrees", "algebra"), "algebra");
  Index total = 0;
  for (Index d : dims) total += d;
  std::vector<std::string> labels;
  if (j.contains("basis_labels")) {
    labels = j.at("basis_labels").get<std::vector<std::string>>();
  } else {
    for (Index i = 0; i < total; ++i) labels.push_back("e" + std::to_string(i));
  }
  std::vector<GradedAlgebra::MultEntry> entries;
  if (j.contains("mult"))
    for (const auto& t : j.at("mult")) {
      if (!t.is_array() || t.size() != 4) throw InputError("algebra: mult entries are [i, j, k, value]");
      entries.push_back({t[0].get<Index>(), t[1].get<Index>(), t[2].get<Index>(), rat_from_json(t[3])});
    }
  try {
    return GradedAlgebra(dims, labels, entries);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("algebra: ") + e.what());
  }
}

Json map_to_json(const GradedMap& f) {
  Json out;
  out["shift"] = f.shift();
  Json entries = Json::array();
  const RatMatrix m = f.global();
  for (Index c = 0; c < m.cols(); ++c)
    for (Index r = 0; r < m.rows(); ++r)
      if (!m(r, c).is_zero()) entries.push_back({r, c, rat_to_json(m(r, c))});
  out["entries"] = entries;
  return out;
}

GradedMap map_from_json(const Json& j, const std::vector<Index>& source_dims,
                        const std::vector<Index>& target_dims) {
  Index rows = 0, cols = 0;
  for (Index d : target_dims) rows += d;
  for (Index d : source_dims) cols += d;
  RatMatrix m = zero_matrix<Rat>(rows, cols);
  for (const auto& t : field(j, "entries", "map")) {
    if (!t.is_array() || t.size() != 3) throw InputError("map: entries are [row, col, value]");
    const Index r = t[0].get<Index>(), c = t[1].get<Index>();
    if (r < 0 || r >= rows || c < 0 || c >= cols) throw InputError("map: entry out of range");
    m(r, c) = rat_from_json(t[2]);
  }
  try {
    return GradedMap(source_dims, target_dims, field(j, "shift", "map").get<int>(), m);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("map: ") + e.what());
  }
}

Json diagram_to_json(const BurrowDiagram& dg) {
  Json out;
  out["kind"] = "diagram";
  out["socle_degree"] = dg.socle_degree();
  Json elements = Json::array();
  for (const auto& e : dg.elements()) {
    Json x;
    x["id"] = e.id;
    x["burrow"] = e.burrow;
    x["codim"] = e.codim;
    if (!e.indices.empty()) x["indices"] = e.indices;
    elements.push_back(x);
  }
  out["elements"] = elements;
  Json burrows = Json::array();
  for (const auto& b : dg.burrows()) {
    Json x;
    x["id"] = b.id;
    x["codim"] = b.codim;
    const Json alg = algebra_to_json(b.algebra);
    for (const auto& [k, v] : alg.items()) x[k] = v;
    if (!b.named.empty()) {
      Json named;
      for (const auto& [name, v] : b.named) named[name] = vector_to_json(v);
      x["named"] = named;
    }
    burrows.push_back(x);
  }
  out["burrows"] = burrows;
  Json edges = Json::array();
  for (const auto& e : dg.edges()) {
    Json x;
    x["small"] = e.small;
    x["big"] = e.big;
    x["pullback"] = map_to_json(e.pullback);
    x["pushforward"] = map_to_json(e.pushforward);
    Json chern = Json::array();
    for (const auto& c : e.chern.coeffs) chern.push_back(vector_to_json(c));
    x["chern"] = chern;
    edges.push_back(x);
  }
  out["edges"] = edges;
  Json table = Json::array();
  for (const auto& t : dg.intersection_table())
    table.push_back({t.a, t.b, t.result ? Json(*t.result) : Json(nullptr)});
  out["intersections"] = table;
  out["nests"] = nest_rule_to_json(dg.nest_rule());
  return out;
}

BurrowDiagram diagram_from_json(const Json& j) {
  try {
    if (j.contains("kind") && j.at("kind") != "diagram")
      throw InputError("expected a diagram document, found kind \"" +
                       j.at("kind").get<std::string>() + "\"");
    const int socle = field(j, "socle_degree", "diagram").get<int>();
    std::vector<BuildingElement> elements;
    for (const auto& e : field(j, "elements", "diagram")) {
      BuildingElement x;
      x.id = field(e, "id", "element").get<std::string>();
      x.burrow = field(e, "burrow", "element " + x.id).get<std::string>();
      x.codim = field(e, "codim", "element " + x.id).get<int>();
      if (e.contains("indices")) x.indices = e.at("indices").get<std::vector<int>>();
      elements.push_back(std::move(x));
    }
    std::vector<BurrowNode> burrows;
    std::map<std::string, const GradedAlgebra*> algebra_of;
    for (const auto& b : field(j, "burrows", "diagram")) {
      BurrowNode x;
      x.id = field(b, "id", "burrow").get<std::string>();
      x.codim = field(b, "codim", "burrow " + x.id).get<int>();
      x.algebra = algebra_from_json(b);
      if (b.contains("named"))
        for (const auto& [name, v] : b.at("named").items())
          x.named[name] = vector_from_json(v, x.algebra.dim());
      burrows.push_back(std::move(x));
    }
    for (const auto& b : burrows) algebra_of[b.id] = &b.algebra;
    auto algebra = [&](const std::string& id) {
      auto it = algebra_of.find(id);
      if (it == algebra_of.end()) throw InputError("edge refers to unknown burrow " + id);
      return it->second;
    };
    std::vector<BurrowEdge> edges;
    for (const auto& e : field(j, "edges", "diagram")) {
      BurrowEdge x;
      x.small = field(e, "small", "edge").get<std::string>();
      x.big = field(e, "big", "edge").get<std::string>();
      const std::string where = "edge " + x.small + " -> " + x.big;
      const GradedAlgebra* s = algebra(x.small);
      const GradedAlgebra* b = algebra(x.big);
      x.pullback = map_from_json(field(e, "pullback", where), b->dims(), s->dims());
      x.pushforward = map_from_json(field(e, "pushforward", where), s->dims(), b->dims());
      for (const auto& c : field(e, "chern", where)) x.chern.coeffs.push_back(vector_from_json(c, b->dim()));
      edges.push_back(std::move(x));
    }
    std::vector<Intersection> table;
    if (j.contains("intersections"))
      for (const auto& t : j.at("intersections")) {
        if (!t.is_array() || t.size() != 3)
          throw InputError("intersections: entries are [a, b, result-or-null]");
        table.push_back({t[0].get<std::string>(), t[1].get<std::string>(),
                         t[2].is_null() ? std::nullopt
                                        : std::optional<std::string>(t[2].get<std::string>())});
      }
    return BurrowDiagram(socle, std::move(elements), std::move(burrows), std::move(edges), table,
                         nest_rule_from_json(field(j, "nests", "diagram")));
  } catch (const Json::exception& e) {
    throw InputError(std::string("diagram: ") + e.what());
  }
}

Json ring_to_json(const WonderRing& ring) {
  Json out;
  out["kind"] = "ring";
  out["socle_degree"] = ring.diagram().socle_degree();
  const Json alg = algebra_to_json(ring.algebra());
  for (const auto& [k, v] : alg.items()) out[k] = v;
  Json names;
  for (const auto& [name, v] : ring.names()) names[name] = vector_to_json(v);
  out["named"] = names;
  out["diagram"] = diagram_to_json(ring.diagram());
  return out;
}

bool is_ring_document(const Json& j) {
  return j.is_object() && j.contains("kind") && j.at("kind") == "ring";
}

}  // namespace wonder
