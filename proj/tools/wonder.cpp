#include "CLI11.hpp"

#include "wonder/duality.hpp"
#include "wonder/errors.hpp"
#include "wonder/io.hpp"
#include "wonder/models.hpp"
#include "wonder/oracle.hpp"
#include "wonder/presentation.hpp"

#include <iostream>
#include <sstream>

using namespace wonder;

namespace {

enum Exit { kOk = 0, kInput = 1, kComputation = 2, kInvariant = 3 };

std::string join(const std::vector<Index>& v, const char* sep = " ") {
  std::ostringstream s;
  for (size_t i = 0; i < v.size(); ++i) s << (i ? sep : "") << v[i];
  return s.str();
}

std::vector<Index> parse_dims(const std::string& text) {
  std::vector<Index> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      size_t used = 0;
      const long v = std::stol(part, &used);
      if (used != part.size() || v < 0) throw std::invalid_argument(part);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError("--dims: expected comma-separated nonnegative integers, got \"" + text + "\"");
    }
  }
  if (out.empty()) throw InputError("--dims: empty dimension vector");
  return out;
}

Json load(const std::string& path) { return parse_document(read_file(path), path == "-" ? "<stdin>" : path); }

BurrowDiagram load_diagram(const Json& doc) {
  return diagram_from_json(is_ring_document(doc) ? doc.at("diagram") : doc);
}

// Ring documents are rebuilt from their embedded diagram and checked against
// the stored structure constants.
WonderRing load_ring(const std::string& path, long cap) {
  const Json doc = load(path);
  if (!is_ring_document(doc)) return WonderRing(load_diagram(doc), cap);
  if (!doc.contains("diagram")) throw InputError(path + ": ring document without a diagram");
  WonderRing ring(diagram_from_json(doc.at("diagram")), cap);
  if (!(algebra_from_json(doc) == ring.algebra()))
    throw InputError(path + ": ring document does not match its diagram");
  return ring;
}

int cmd_validate(const std::string& path, long cap) {
  const Json doc = load(path);
  const BurrowDiagram dg = load_diagram(doc);
  const auto report = validate(dg);
  for (const auto& f : report.failures()) std::cout << "FAIL " << f.name << ": " << f.detail << "\n";
  if (!report.ok()) return kInput;
  if (is_ring_document(doc)) {
    load_ring(path, cap);
    std::cout << "ring matches its diagram\n";
  }
  std::cout << "valid: " << dg.element_count() << " elements, " << dg.burrow_count()
            << " burrows, " << report.checks.size() << " checks\n";
  return kOk;
}

int cmd_betti(const WonderRing& ring) {
  std::cout << join(ring.dims()) << "\n";
  return kOk;
}

int cmd_decompose(const std::string& path) {
  const BurrowDiagram dg = load_diagram(load(path));
  const auto li = li_decomposition(dg);
  for (const auto& s : li.summands)
    std::cout << "nest=" << format_nest(dg, s.nest) << " mu=" << format_mu(dg, s.nest, s.mu)
              << " burrow=" << dg.burrow(s.burrow).id << " shift=" << s.shift
              << " dims=" << join(dg.burrow(s.burrow).algebra.dims(), ",") << "\n";
  std::cout << "total: " << join(li.poincare) << "\n";
  return kOk;
}

int cmd_pd(const WonderRing& ring, bool burrows) {
  const auto r = pd_equivalence_report(ring);
  std::cout << "PD: " << (r.ring.pd ? "yes" : "no") << "; discrepancies: "
            << (r.ring.has_socle ? join(r.ring.discrepancy) : "no socle (" + r.ring.note + ")") << "\n";
  if (burrows)
    for (const auto& b : r.burrows)
      std::cout << "burrow " << b.burrow << (b.contributes ? "" : " (not in decomposition)") << ": PD "
                << (b.summary.pd ? "yes" : "no") << "; discrepancies: " << join(b.summary.discrepancy)
                << "\n";
  if (!r.failing.empty()) {
    std::cout << "non-PD burrows:";
    for (const auto& f : r.failing) std::cout << " " << f;
    std::cout << "\n";
  }
  if (!r.ok()) {
    std::cout << "equivalence violated\n";
    return kInvariant;
  }
  return kOk;
}

int cmd_discrepancy(const WonderRing& ring) {
  const auto t = discrepancy_table(ring);
  if (!t.has_socle) {
    std::cout << "no socle in degree " << ring.diagram().socle_degree() << "\n";
    return kInput;
  }
  const auto& dg = ring.diagram();
  std::cout << "ring: " << join(t.ring) << "\n";
  for (size_t s = 0; s < t.by_summand.size(); ++s) {
    const auto& sm = ring.li().summands[s];
    std::cout << "block " << format_nest(dg, sm.nest) << " " << format_mu(dg, sm.nest, sm.mu) << ": "
              << join(t.by_summand[s]) << "\n";
  }
  std::cout << "blocks: " << join(t.block_sum) << "\n";
  std::cout << "sums match: " << (t.sums_match ? "yes" : "no")
            << "; block-triangular: " << (t.certified ? "yes" : "no") << "\n";
  return t.sums_match ? kOk : kInvariant;
}

int cmd_blocks(const WonderRing& ring) {
  const auto r = block_structure_check(ring);
  const auto& dg = ring.diagram();
  const auto& sm = ring.li().summands;
  auto name = [&](int s) {
    const auto& x = sm[static_cast<size_t>(s)];
    return format_nest(dg, x.nest) + format_mu(dg, x.nest, x.mu);
  };
  for (const auto& b : r.nonzero)
    std::cout << "degree " << b.degree << ": " << name(b.left) << " x " << name(b.right)
              << (b.diagonal ? " diagonal" : b.allowed ? " above-diagonal" : " FORBIDDEN") << "\n";
  for (const auto& v : r.violations) std::cout << "violation: " << v << "\n";
  std::cout << "nonzero blocks: " << r.nonzero.size() << "; violations: " << r.violations.size() << "\n";
  if (!r.has_socle) return kInput;
  return r.ok() ? kOk : kInvariant;
}

int cmd_presentation(const WonderRing& ring) {
  const auto r = presentation_report(ring);
  for (const auto& x : r.relations)
    std::cout << x.family << ": " << x.text << (x.vanishes ? " = 0" : " != 0") << "\n";
  for (const auto& k : r.kernels) {
    std::cout << "J_" << k.element << ": kernel " << k.kernel_dim << ", generated " << k.ideal_dim << " by";
    for (const auto& g : k.generators) std::cout << " " << g;
    std::cout << "\n";
  }
  const auto bad = r.failures();
  std::cout << "relations: " << r.relations.size() << "; failures: " << bad.size() << "\n";
  return bad.empty() ? kOk : kInvariant;
}

int cmd_oracle(const std::string& path) {
  const auto run = run_oracle(load(path));
  for (const auto& l : run.log) std::cout << l << "\n";
  const int d = run.algebra.top_degree();
  const auto pd = pd_summary(run.algebra, d);
  std::cout << "dims: " << join(run.algebra.dims()) << "\n";
  std::cout << "PD: " << (pd.pd ? "yes" : "no") << "; discrepancies: " << join(pd.discrepancy) << "\n";
  bool ok = true;
  if (run.expected_dims && *run.expected_dims != run.algebra.dims()) {
    std::cout << "expected dims: " << join(*run.expected_dims) << "\n";
    ok = false;
  }
  if (run.expected_pd && *run.expected_pd != pd.pd) {
    std::cout << "expected PD: " << (*run.expected_pd ? "yes" : "no") << "\n";
    ok = false;
  }
  return ok ? kOk : kInput;
}

int cmd_compare(const WonderRing& ring, const std::string& script) {
  const auto c = compare_with_oracle(ring, load(script));
  std::cout << "engine: " << join(c.engine_dims) << "\noracle: " << join(c.oracle_dims) << "\n";
  for (const auto& n : c.notes) std::cout << n << "\n";
  std::cout << "dims equal: " << (c.dims_equal ? "yes" : "no")
            << "; isomorphic: " << (c.isomorphic ? "yes" : "no");
  if (c.first_bad_degree >= 0) std::cout << "; first differing degree: " << c.first_bad_degree;
  std::cout << "\n";
  return c.ok() ? kOk : kInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact rings of wonderful compactifications"};
  app.require_subcommand(1);
  long cap = kDefaultMaxRewrites;
  app.add_option("--max-rewrites", cap, "Rewrite step cap per product")
      ->envname("WONDER_MAX_REWRITES")
      ->check(CLI::NonNegativeNumber);

  std::string input = "-", output = "-", script;

  auto* validate_cmd = app.add_subcommand("validate", "Check a diagram or ring document");
  validate_cmd->add_option("input", input, "Diagram or ring file (- for stdin)");

  auto* model = app.add_subcommand("model", "Write a model diagram");
  std::string kind;
  int n = 3, min_size = 2, genus = 2, broken = -1;
  std::string dims = "1,2,1";
  std::uint64_t seed = 1;
  model->add_option("kind", kind, "fm-p1, fm-p2, fm-curve, keel or synth")
      ->required()
      ->check(CLI::IsMember({"fm-p1", "fm-p2", "fm-curve", "keel", "synth"}));
  model->add_option("--n", n, "Number of points");
  model->add_option("--min-size", min_size, "Smallest diagonal in the building set (2 or 3)");
  model->add_option("--genus", genus, "Genus of the curve model");
  model->add_option("--dims", dims, "Dimension vector of the synthetic algebra");
  model->add_option("--break", broken, "Degree with a rank-deficient pairing");
  model->add_option("--seed", seed, "Random seed");
  model->add_option("--out", output, "Output file (- for stdout)");

  auto* build = app.add_subcommand("build", "Build the ring of a diagram");
  build->add_option("input", input, "Diagram file");
  build->add_option("--out", output, "Output file (- for stdout)");

  std::map<std::string, CLI::App*> ring_cmds;
  for (const auto& [name, help] : std::vector<std::pair<const char*, const char*>>{
           {"betti", "Print the dimension vector"},
           {"decompose", "Print the additive decomposition"},
           {"pd", "Poincare duality verdicts"},
           {"discrepancy", "Discrepancies of the ring and of its diagonal blocks"},
           {"blocks", "Nonzero blocks of the socle pairing"},
           {"presentation", "Verify the relations of the presentation"}}) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("input", input, "Diagram or ring file (- for stdin)");
    ring_cmds[name] = c;
  }
  bool burrows = false;
  ring_cmds["pd"]->add_flag("--burrows", burrows, "Also print the verdict of every burrow");

  auto* oracle = app.add_subcommand("oracle", "Run an oracle script");
  oracle->add_option("script", input, "Oracle script")->required();
  auto* compare = app.add_subcommand("compare", "Compare a ring with an oracle script");
  compare->add_option("input", input, "Diagram or ring file")->required();
  compare->add_option("script", script, "Oracle script")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return kInput;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(input, cap);
    if (model->parsed()) {
      BurrowDiagram dg = [&] {
        if (kind == "fm-p1") return fm_power({Fiber::P1, n, min_size});
        if (kind == "fm-p2") return fm_power({Fiber::P2, n, min_size});
        if (kind == "fm-curve") return fm_power({Fiber::Curve, n, min_size, genus});
        if (kind == "keel") return keel_model(n);
        const auto d = parse_dims(dims);
        return ambient_only_diagram(broken < 0 ? synthetic_gorenstein(d, seed)
                                               : synthetic_broken(d, broken, seed));
      }();
      write_file(output, diagram_to_json(dg).dump(1) + "\n");
      return kOk;
    }
    if (build->parsed()) {
      const WonderRing ring(load_diagram(load(input)), cap);
      write_file(output, ring_to_json(ring).dump(1) + "\n");
      return kOk;
    }
    if (ring_cmds["decompose"]->parsed()) return cmd_decompose(input);
    if (oracle->parsed()) return cmd_oracle(input);
    const WonderRing ring = load_ring(input, cap);
    if (compare->parsed()) return cmd_compare(ring, script);
    if (ring_cmds["betti"]->parsed()) return cmd_betti(ring);
    if (ring_cmds["pd"]->parsed()) return cmd_pd(ring, burrows);
    if (ring_cmds["discrepancy"]->parsed()) return cmd_discrepancy(ring);
    if (ring_cmds["blocks"]->parsed()) return cmd_blocks(ring);
    if (ring_cmds["presentation"]->parsed()) return cmd_presentation(ring);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const ComputationError& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return kComputation;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return kInvariant;
  }
  return kInput;
}
