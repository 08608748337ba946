#pragma once

#include "wonder/burrow_diagram.hpp"
#include "wonder/engine.hpp"

#include <json.hpp>

#include <string>

namespace wonder {

using Json = nlohmann::ordered_json;

/// Parses a document; throws InputError with the parser's position message.
Json parse_document(const std::string& text, const std::string& source = "<input>");
std::string read_file(const std::string& path);  // "-" reads stdin
void write_file(const std::string& path, const std::string& text);  // "-" writes stdout

/// Rationals are written as "p" or "p/q" strings; integers are accepted on
/// input.
Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);
Json vector_to_json(const RatVector& v);  // dense list
RatVector vector_from_json(const Json& j, Index expected_size);

/// {"degrees", "basis_labels", "mult": [[i, j, k, "v"], ...]}.
Json algebra_to_json(const GradedAlgebra& alg);
GradedAlgebra algebra_from_json(const Json& j);

/// {"shift", "entries": [[row, col, "v"], ...]} on global indices.
Json map_to_json(const GradedMap& f);
GradedMap map_from_json(const Json& j, const std::vector<Index>& source_dims,
                        const std::vector<Index>& target_dims);

/// Diagram documents: "socle_degree", "elements", "burrows", "edges",
/// "intersections", "nests". Saving is canonical, so load -> save -> load
/// reproduces the same diagram and save(load(save(d))) == save(d).
Json diagram_to_json(const BurrowDiagram& dg);
BurrowDiagram diagram_from_json(const Json& j);

/// Ring documents: the exported algebra, named classes and the source
/// diagram (so that Li-summand structure can be recovered).
Json ring_to_json(const WonderRing& ring);

/// True for ring documents ("kind": "ring").
bool is_ring_document(const Json& j);

}  // namespace wonder
