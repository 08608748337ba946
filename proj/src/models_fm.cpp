// Diagonal-type diagrams on fiber powers: Fulton-MacPherson style building
// sets on X^n and the pinned variant on (P1)^n.
#include "wonder/errors.hpp"
#include "wonder/models.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>

namespace wonder {

namespace {

// Cohomology of the fiber. Degrees are cohomological (a point of a curve has
// degree 2) so that odd classes of a curve can be represented.
struct FiberRing {
  std::vector<std::string> labels;
  std::vector<int> coh;
  std::vector<int> parity;
  std::vector<std::vector<SparseVec>> mult;
  Index point = 0;
  int dim = 1;  // complex dimension
};

FiberRing projective_fiber(int r) {
  FiberRing f;
  f.dim = r;
  for (int a = 0; a <= r; ++a) {
    f.labels.push_back(a == 0 ? "1" : a == 1 ? "h" : "h^" + std::to_string(a));
    f.coh.push_back(2 * a);
    f.parity.push_back(0);
  }
  f.mult.assign(static_cast<size_t>(r + 1), std::vector<SparseVec>(static_cast<size_t>(r + 1)));
  for (int a = 0; a <= r; ++a)
    for (int b = 0; a + b <= r; ++b) f.mult[a][b] = {{a + b, Rat(1)}};
  f.point = r;
  return f;
}

// H*(C) for a curve of genus g: 1, a_1..a_g, b_1..b_g, pt with a_i b_i = pt.
FiberRing curve_fiber(int g) {
  FiberRing f;
  f.dim = 1;
  const Index n = 2 * g + 2;
  f.labels.push_back("1");
  f.coh.push_back(0);
  f.parity.push_back(0);
  for (int i = 1; i <= g; ++i) {
    f.labels.push_back("a" + std::to_string(i));
    f.coh.push_back(1);
    f.parity.push_back(1);
  }
  for (int i = 1; i <= g; ++i) {
    f.labels.push_back("b" + std::to_string(i));
    f.coh.push_back(1);
    f.parity.push_back(1);
  }
  f.labels.push_back("pt");
  f.coh.push_back(2);
  f.parity.push_back(0);
  f.point = n - 1;
  f.mult.assign(static_cast<size_t>(n), std::vector<SparseVec>(static_cast<size_t>(n)));
  for (Index i = 0; i < n; ++i) {
    f.mult[0][i] = {{i, Rat(1)}};
    f.mult[i][0] = {{i, Rat(1)}};
  }
  for (int i = 1; i <= g; ++i) {
    f.mult[i][g + i] = {{n - 1, Rat(1)}};
    f.mult[g + i][i] = {{n - 1, Rat(-1)}};
  }
  return f;
}

using Multi = std::vector<int>;
using Tensor = std::map<Multi, Rat>;

void axpy(Tensor& acc, const Tensor& v, const Rat& s) {
  for (const auto& [k, c] : v) {
    auto [it, fresh] = acc.try_emplace(k, c * s);
    if (!fresh) {
      it->second += c * s;
      if (it->second.is_zero()) acc.erase(it);
    }
  }
}

Tensor scaled(Tensor v, const Rat& s) {
  if (s.is_zero()) return {};
  for (auto& [k, c] : v) c *= s;
  return v;
}

Tensor unit_tensor(int m) { return {{Multi(static_cast<size_t>(m), 0), Rat(1)}}; }

Tensor place(int basis, int slot, int m) {
  Multi u(static_cast<size_t>(m), 0);
  u[static_cast<size_t>(slot)] = basis;
  return {{u, Rat(1)}};
}

// Super-commutative product in H^{⊗m}.
Tensor mul(const FiberRing& f, const Tensor& a, const Tensor& b) {
  Tensor out;
  for (const auto& [ua, ca] : a)
    for (const auto& [ub, cb] : b) {
      int swaps = 0;
      for (size_t i = 0; i < ua.size(); ++i)
        for (size_t j = 0; j < i; ++j) swaps += f.parity[ua[i]] * f.parity[ub[j]];
      // Expand the per-slot products (each a short sparse vector).
      std::vector<std::pair<Multi, Rat>> partial{{Multi(), (swaps % 2) ? -ca * cb : ca * cb}};
      for (size_t i = 0; i < ua.size() && !partial.empty(); ++i) {
        const SparseVec& p = f.mult[ua[i]][ub[i]];
        std::vector<std::pair<Multi, Rat>> next;
        for (const auto& [prefix, c] : partial)
          for (const auto& [idx, v] : p) {
            Multi m = prefix;
            m.push_back(static_cast<int>(idx));
            next.emplace_back(std::move(m), c * v);
          }
        partial = std::move(next);
      }
      for (const auto& [m, c] : partial) axpy(out, {{m, Rat(1)}}, c);
    }
  return out;
}

int chow_degree(const FiberRing& f, const Multi& u) {
  int s = 0;
  for (int i : u) s += f.coh[static_cast<size_t>(i)];
  return s / 2;
}

// Diagonal class in H ⊗ H from ∫ Δ·(x ⊗ y) = ∫ x·y.
Tensor diagonal_class(const FiberRing& f) {
  const Index n = static_cast<Index>(f.labels.size());
  auto integral = [&](const Tensor& t, int m) {
    Rat s(0);
    for (const auto& [u, c] : t)
      if (std::all_of(u.begin(), u.end(), [&](int i) { return i == f.point; })) s += c;
    (void)m;
    return s;
  };
  RatMatrix a = zero_matrix<Rat>(n * n, n * n);
  RatVector rhs = zero_vector<Rat>(n * n);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      const Index row = x * n + y;
      const Tensor probe = mul(f, place(static_cast<int>(x), 0, 2), place(static_cast<int>(y), 1, 2));
      for (Index u = 0; u < n; ++u)
        for (Index v = 0; v < n; ++v) {
          const Tensor term = mul(f, mul(f, place(static_cast<int>(u), 0, 2),
                                         place(static_cast<int>(v), 1, 2)),
                                  probe);
          a(row, u * n + v) = integral(term, 2);
        }
      Tensor xy;
      for (const auto& [idx, c] : f.mult[x][y]) axpy(xy, {{Multi{static_cast<int>(idx)}, Rat(1)}}, c);
      rhs(row) = integral(xy, 1);
    }
  const auto sol = solve(a, rhs);
  if (!sol) throw InvariantError("fiber cohomology has no diagonal class");
  Tensor d;
  for (Index u = 0; u < n; ++u)
    for (Index v = 0; v < n; ++v)
      if (!(*sol)(u * n + v).is_zero())
        axpy(d, mul(f, place(static_cast<int>(u), 0, 2), place(static_cast<int>(v), 1, 2)),
             (*sol)(u * n + v));
  return d;
}

// A burrow: a set partition of the coordinates, some blocks pinned to a point
// label. Free blocks are the slots of the fiber power.
struct Cell {
  std::vector<std::vector<int>> blocks;
  std::vector<int> pins;  // per block, -1 when free
  std::vector<int> slot_of_block() const {
    std::vector<int> out;
    int next = 0;
    for (int p : pins) out.push_back(p < 0 ? next++ : -1);
    return out;
  }
  int free_count() const {
    return static_cast<int>(std::count(pins.begin(), pins.end(), -1));
  }
  friend bool operator==(const Cell& a, const Cell& b) {
    return a.blocks == b.blocks && a.pins == b.pins;
  }
};

// Canonical form: blocks sorted internally and by smallest member.
Cell canonical(std::vector<std::vector<int>> blocks, std::vector<int> pins) {
  std::vector<size_t> idx(blocks.size());
  std::iota(idx.begin(), idx.end(), 0);
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return blocks[a][0] < blocks[b][0]; });
  Cell c;
  for (size_t i : idx) {
    c.blocks.push_back(blocks[i]);
    c.pins.push_back(pins[i]);
  }
  return c;
}

// Intersection of two cells, nullopt when empty.
std::optional<Cell> meet_cells(const Cell& a, const Cell& b, int n) {
  std::vector<int> parent(static_cast<size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  auto unite = [&](int x, int y) { parent[find(x)] = find(y); };
  std::vector<int> pin(static_cast<size_t>(n), -1);
  bool conflict = false;
  for (const Cell* c : {&a, &b})
    for (size_t i = 0; i < c->blocks.size(); ++i) {
      for (int x : c->blocks[i]) unite(x, c->blocks[i][0]);
      if (c->pins[i] >= 0)
        for (int x : c->blocks[i]) {
          if (pin[x] >= 0 && pin[x] != c->pins[i]) conflict = true;
          pin[x] = c->pins[i];
        }
    }
  // Coordinates pinned to the same point coincide.
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (pin[x] >= 0 && pin[x] == pin[y]) unite(x, y);
  std::map<int, std::vector<int>> groups;
  for (int x = 0; x < n; ++x) groups[find(x)].push_back(x);
  std::vector<std::vector<int>> blocks;
  std::vector<int> pins;
  for (auto& [root, members] : groups) {
    int p = -1;
    for (int x : members)
      if (pin[x] >= 0) {
        if (p >= 0 && p != pin[x]) conflict = true;
        p = pin[x];
      }
    blocks.push_back(members);
    pins.push_back(p);
  }
  if (conflict) return std::nullopt;
  return canonical(std::move(blocks), std::move(pins));
}

const char* pin_name(int p) {
  static const char* names[] = {"0", "1", "inf"};
  return names[p];
}

std::string digits(const std::vector<int>& block) {
  std::string s;
  for (int x : block) s += std::to_string(x + 1);
  return s;
}

std::string cell_id(const Cell& c) {
  std::string s;
  for (size_t i = 0; i < c.blocks.size(); ++i) {
    if (c.blocks[i].size() == 1 && c.pins[i] < 0) continue;
    if (!s.empty()) s += "|";
    s += digits(c.blocks[i]);
    if (c.pins[i] >= 0) s += std::string("_") + pin_name(c.pins[i]);
  }
  return s.empty() ? "Y" : "D" + s;
}

// Fiber power restricted to the subring generated by a list of classes.
struct PowerRing {
  int m = 0;
  std::vector<Tensor> basis;
  std::vector<Index> dims;
  std::vector<std::string> labels;
  std::vector<std::map<Multi, Index>> rows;      // per degree: coordinate rows
  std::vector<std::optional<Solver<Rat>>> solvers;  // per degree
  GradedAlgebra algebra;
  std::map<std::string, Tensor> named;

  RatVector coords(const Tensor& t, const FiberRing& f) const {
    RatVector out = zero_vector<Rat>(static_cast<Index>(basis.size()));
    std::map<int, std::vector<std::pair<Multi, Rat>>> by_degree;
    for (const auto& [u, c] : t) by_degree[chow_degree(f, u)].emplace_back(u, c);
    Index offset = 0;
    std::vector<Index> offsets;
    for (Index d : dims) {
      offsets.push_back(offset);
      offset += d;
    }
    for (const auto& [deg, terms] : by_degree) {
      if (deg < 0 || deg >= static_cast<int>(dims.size()) || dims[static_cast<size_t>(deg)] == 0)
        throw InvariantError("class outside the fiber-power subring");
      const auto& rowmap = rows[static_cast<size_t>(deg)];
      RatVector rhs = zero_vector<Rat>(static_cast<Index>(rowmap.size()));
      for (const auto& [u, c] : terms) {
        auto it = rowmap.find(u);
        if (it == rowmap.end()) throw InvariantError("class outside the fiber-power subring");
        rhs(it->second) = c;
      }
      const auto sol = solvers[static_cast<size_t>(deg)]->solve(rhs);
      if (!sol) throw InvariantError("class outside the fiber-power subring");
      out.segment(offsets[static_cast<size_t>(deg)], sol->size()) = *sol;
    }
    return out;
  }
};

struct Generator {
  std::string name;
  Tensor value;
};

PowerRing build_power_ring(const FiberRing& f, int m, const std::vector<Generator>& gens) {
  PowerRing r;
  r.m = m;
  const int top = f.dim * m;
  // Monomials as exponent vectors over the generators.
  std::vector<std::vector<int>> level{std::vector<int>(gens.size(), 0)};
  std::vector<Tensor> level_vals{unit_tensor(m)};
  auto format = [&](const std::vector<int>& e) {
    std::string s;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += gens[i].name;
      if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? std::string("1") : s;
  };
  for (int deg = 0; deg <= top; ++deg) {
    std::vector<std::vector<int>> cand_exps;
    std::vector<Tensor> cand_vals;
    if (deg == 0) {
      cand_exps = level;
      cand_vals = level_vals;
    } else {
      std::map<std::vector<int>, size_t> seen;
      for (size_t i = 0; i < level.size(); ++i)
        for (size_t j = 0; j < gens.size(); ++j) {
          auto e = level[i];
          ++e[j];
          if (seen.count(e)) continue;
          seen[e] = cand_exps.size();
          cand_exps.push_back(e);
          cand_vals.push_back(mul(f, level_vals[i], gens[j].value));
        }
    }
    std::map<Multi, Index> rowmap;
    for (const auto& v : cand_vals)
      for (const auto& [u, c] : v) rowmap.try_emplace(u, static_cast<Index>(rowmap.size()));
    RatMatrix mat = zero_matrix<Rat>(static_cast<Index>(rowmap.size()),
                                     static_cast<Index>(cand_vals.size()));
    for (size_t j = 0; j < cand_vals.size(); ++j)
      for (const auto& [u, c] : cand_vals[j]) mat(rowmap.at(u), static_cast<Index>(j)) = c;
    std::vector<Index> pivots;
    if (mat.rows() > 0 && mat.cols() > 0) pivots = row_reduce(mat).pivots;
    level.clear();
    level_vals.clear();
    RatMatrix basis_mat = zero_matrix<Rat>(mat.rows(), static_cast<Index>(pivots.size()));
    for (size_t p = 0; p < pivots.size(); ++p) {
      const size_t j = static_cast<size_t>(pivots[p]);
      level.push_back(cand_exps[j]);
      level_vals.push_back(cand_vals[j]);
      r.basis.push_back(cand_vals[j]);
      r.labels.push_back(format(cand_exps[j]));
      basis_mat.col(static_cast<Index>(p)) = mat.col(static_cast<Index>(j));
    }
    r.dims.push_back(static_cast<Index>(pivots.size()));
    r.rows.push_back(std::move(rowmap));
    r.solvers.emplace_back(Solver<Rat>(basis_mat));
    if (level.empty()) {
      // Nothing further is generated; pad the remaining degrees.
      for (int k = deg + 1; k <= top; ++k) {
        r.dims.push_back(0);
        r.rows.emplace_back();
        r.solvers.emplace_back(Solver<Rat>(RatMatrix(0, 0)));
      }
      break;
    }
  }
  r.algebra = algebra_from_products(r.dims, r.labels, [&](Index a, Index b) {
    return r.coords(mul(f, r.basis[static_cast<size_t>(a)], r.basis[static_cast<size_t>(b)]), f);
  });
  return r;
}

struct ElementSpec {
  std::string id;
  Cell cell;
  std::vector<int> indices;
};

enum class GeneratorKind { Powers, Tautological };

// Builds a diagram whose burrows are `cells` (cells[0] the ambient).
BurrowDiagram build_cell_diagram(const FiberRing& f, int n, const std::vector<Cell>& cells,
                                 const std::vector<ElementSpec>& specs, GeneratorKind kind,
                                 NestRule rule) {
  const Tensor delta = diagonal_class(f);
  auto diag_in = [&](int a, int b, int m) {
    Tensor out;
    for (const auto& [u, c] : delta) axpy(out, mul(f, place(u[0], a, m), place(u[1], b, m)), c);
    return out;
  };
  const int genus = static_cast<int>(f.labels.size() - 2) / 2;

  std::vector<PowerRing> rings;
  std::vector<BurrowNode> burrows;
  for (const auto& cell : cells) {
    const auto slots = cell.slot_of_block();
    const int m = cell.free_count();
    std::vector<std::string> reps;
    for (size_t b = 0; b < cell.blocks.size(); ++b)
      if (slots[b] >= 0) reps.push_back(std::to_string(cell.blocks[b][0] + 1));
    std::vector<Generator> gens;
    std::map<std::string, Tensor> named;
    if (kind == GeneratorKind::Powers) {
      for (int s = 0; s < m; ++s) gens.push_back({"h" + reps[s], place(1, s, m)});
    } else {
      for (int s = 0; s < m; ++s) {
        Tensor k = scaled(place(static_cast<int>(f.point), s, m), Rat(2 * genus - 2));
        named["K" + reps[s]] = k;
        if (!k.empty()) gens.push_back({"K" + reps[s], k});
      }
      for (int s = 0; s < m; ++s)
        for (int t = s + 1; t < m; ++t) gens.push_back({"D" + reps[s] + reps[t], diag_in(s, t, m)});
    }
    for (int s = 0; s < m; ++s)
      for (int t = s + 1; t < m; ++t) named["D" + reps[s] + reps[t]] = diag_in(s, t, m);
    for (const auto& g : gens) named[g.name] = g.value;
    PowerRing ring = build_power_ring(f, m, gens);
    BurrowNode node;
    node.id = cell_id(cell);
    node.codim = f.dim * (n - m);
    node.algebra = ring.algebra;
    for (const auto& [name, t] : named) node.named[name] = ring.coords(t, f);
    ring.named = std::move(named);
    burrows.push_back(std::move(node));
    rings.push_back(std::move(ring));
  }

  std::map<std::string, int> cell_index;
  for (size_t i = 0; i < cells.size(); ++i) cell_index[burrows[i].id] = static_cast<int>(i);

  std::vector<Intersection> intersections;
  std::vector<std::vector<int>> meet(cells.size(), std::vector<int>(cells.size(), -1));
  for (size_t a = 0; a < cells.size(); ++a)
    for (size_t b = a; b < cells.size(); ++b) {
      const auto c = meet_cells(cells[a], cells[b], n);
      int idx = -1;
      if (c) {
        auto it = cell_index.find(cell_id(*c));
        if (it == cell_index.end())
          throw InvariantError("intersection " + cell_id(*c) + " is not a listed burrow");
        idx = it->second;
      }
      meet[a][b] = meet[b][a] = idx;
      if (a != b && a != 0)
        intersections.push_back({burrows[a].id, burrows[b].id,
                                 idx < 0 ? std::nullopt : std::optional<std::string>(burrows[idx].id)});
    }

  std::vector<BurrowEdge> edges;
  for (size_t small = 0; small < cells.size(); ++small)
    for (size_t big = 0; big < cells.size(); ++big) {
      if (small == big || meet[small][big] != static_cast<int>(small)) continue;
      const Cell& rho = cells[small];
      const Cell& pi = cells[big];
      const auto& rs = rings[small];
      const auto& rb = rings[big];
      const auto rho_slots = rho.slot_of_block();
      const auto pi_slots = pi.slot_of_block();
      // Block of rho containing each block of pi.
      std::vector<size_t> parent(pi.blocks.size());
      for (size_t p = 0; p < pi.blocks.size(); ++p)
        for (size_t t = 0; t < rho.blocks.size(); ++t)
          if (std::binary_search(rho.blocks[t].begin(), rho.blocks[t].end(), pi.blocks[p][0]))
            parent[p] = t;

      // Pullback: slot of pi -> slot of rho (or evaluation at a point).
      RatMatrix pull = zero_matrix<Rat>(rs.algebra.dim(), rb.algebra.dim());
      for (size_t i = 0; i < rb.basis.size(); ++i) {
        Tensor image;
        for (const auto& [u, c] : rb.basis[i]) {
          Tensor term = unit_tensor(rs.m);
          for (size_t p = 0; p < pi.blocks.size() && !term.empty(); ++p) {
            if (pi_slots[p] < 0) continue;
            const int basis_el = u[static_cast<size_t>(pi_slots[p])];
            const int target = rho_slots[parent[p]];
            if (target < 0) {
              if (basis_el != 0) term.clear();
              continue;
            }
            term = mul(f, term, place(basis_el, target, rs.m));
          }
          axpy(image, term, c);
        }
        pull.col(static_cast<Index>(i)) = rs.coords(image, f);
      }

      // Class of rho in pi and the Chern polynomial, as a product over
      // blocks of rho.
      std::vector<Tensor> poly{unit_tensor(rb.m)};
      auto times_poly = [&](const std::vector<Tensor>& factor) {
        std::vector<Tensor> out(poly.size() + factor.size() - 1);
        for (size_t i = 0; i < poly.size(); ++i)
          for (size_t j = 0; j < factor.size(); ++j) axpy(out[i + j], mul(f, poly[i], factor[j]), Rat(1));
        poly = std::move(out);
      };
      std::vector<int> lift_slot(rho.blocks.size(), -1);
      for (size_t t = 0; t < rho.blocks.size(); ++t) {
        std::vector<size_t> inside;
        for (size_t p = 0; p < pi.blocks.size(); ++p)
          if (parent[p] == t) inside.push_back(p);
        if (rho.pins[t] < 0) {
          const int first = pi_slots[inside[0]];
          lift_slot[t] = first;
          for (size_t j = 1; j < inside.size(); ++j) {
            const int other = pi_slots[inside[j]];
            std::vector<Tensor> factor(static_cast<size_t>(f.dim + 1));
            factor[0] = unit_tensor(rb.m);
            for (int i = 1; i < f.dim; ++i) {
              // Symmetric lift of c_i(T) = binom(r+1, i) h^i.
              Tensor s = place(i, first, rb.m);
              axpy(s, place(i, other, rb.m), Rat(1));
              factor[static_cast<size_t>(i)] = scaled(s, binomial(f.dim + 1, i) / Rat(2));
            }
            factor[static_cast<size_t>(f.dim)] = diag_in(first, other, rb.m);
            times_poly(factor);
          }
        } else {
          for (size_t p : inside) {
            if (pi_slots[p] < 0) continue;
            std::vector<Tensor> factor(static_cast<size_t>(f.dim + 1));
            factor[0] = unit_tensor(rb.m);
            factor[static_cast<size_t>(f.dim)] = place(static_cast<int>(f.point), pi_slots[p], rb.m);
            times_poly(factor);
          }
        }
      }
      const Tensor& cls = poly.back();

      RatMatrix push = zero_matrix<Rat>(rb.algebra.dim(), rs.algebra.dim());
      for (size_t i = 0; i < rs.basis.size(); ++i) {
        Tensor lift;
        for (const auto& [u, c] : rs.basis[i]) {
          Tensor term = unit_tensor(rb.m);
          for (size_t t = 0; t < rho.blocks.size(); ++t)
            if (rho_slots[t] >= 0)
              term = mul(f, term, place(u[static_cast<size_t>(rho_slots[t])], lift_slot[t], rb.m));
          axpy(lift, term, c);
        }
        push.col(static_cast<Index>(i)) = rb.coords(mul(f, lift, cls), f);
      }

      BurrowEdge e;
      e.small = burrows[small].id;
      e.big = burrows[big].id;
      e.pullback = GradedMap(rb.algebra.dims(), rs.algebra.dims(), 0, pull);
      e.pushforward = GradedMap(rs.algebra.dims(), rb.algebra.dims(),
                                burrows[small].codim - burrows[big].codim, push);
      for (size_t i = 1; i < poly.size(); ++i) e.chern.coeffs.push_back(rb.coords(poly[i], f));
      edges.push_back(std::move(e));
    }

  std::vector<BuildingElement> elements;
  for (const auto& s : specs) {
    const std::string bid = cell_id(s.cell);
    auto it = cell_index.find(bid);
    if (it == cell_index.end()) throw InvariantError("element " + s.id + " has no burrow " + bid);
    elements.push_back({s.id, bid, burrows[static_cast<size_t>(it->second)].codim, s.indices});
  }
  return BurrowDiagram(f.dim * n, std::move(elements), std::move(burrows), std::move(edges),
                       intersections, std::move(rule));
}

Cell ambient_cell(int n) {
  std::vector<std::vector<int>> blocks;
  for (int i = 0; i < n; ++i) blocks.push_back({i});
  return canonical(blocks, std::vector<int>(static_cast<size_t>(n), -1));
}

// Cell with one block `block` (pinned to `pin`, or free) and singletons.
Cell element_cell(int n, const std::vector<int>& block, int pin) {
  std::vector<std::vector<int>> blocks{block};
  std::vector<int> pins{pin};
  for (int i = 0; i < n; ++i)
    if (!std::binary_search(block.begin(), block.end(), i)) {
      blocks.push_back({i});
      pins.push_back(-1);
    }
  return canonical(blocks, pins);
}

std::vector<std::vector<int>> subsets_of_size_at_least(int n, int k) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 1; mask < (1U << n); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1U << i)) s.push_back(i);
    if (static_cast<int>(s.size()) >= k) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

}  // namespace

std::vector<std::vector<std::vector<int>>> set_partitions(int n) {
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<std::vector<int>> current;
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      out.push_back(current);
      return;
    }
    for (size_t b = 0; b < current.size(); ++b) {
      current[b].push_back(i);
      rec(i + 1);
      current[b].pop_back();
    }
    current.push_back({i});
    rec(i + 1);
    current.pop_back();
  };
  rec(0);
  return out;
}

BurrowDiagram fm_power(const FmOptions& o) {
  if (o.n < 2) throw InputError("fm_power needs n >= 2");
  if (o.n > 6) throw InputError("fm_power supports n <= 6");
  if (o.min_size != 2 && o.min_size != 3) throw InputError("min_size must be 2 or 3");
  if (o.min_size == 3 && o.fiber == Fiber::P2)
    throw InputError("pair diagonals of P2 are not divisors; min_size 3 needs a curve fiber");
  if (o.fiber == Fiber::Curve && (o.genus < 0 || o.genus == 1))
    throw InputError("the curve model needs genus 0 or >= 2 (K = 0 in genus 1)");
  const FiberRing f = o.fiber == Fiber::P1   ? projective_fiber(1)
                      : o.fiber == Fiber::P2 ? projective_fiber(2)
                                             : curve_fiber(o.genus);

  std::vector<Cell> cells{ambient_cell(o.n)};
  for (const auto& part : set_partitions(o.n)) {
    bool keep = false, ok = true;
    for (const auto& b : part) {
      if (b.size() > 1) keep = true;
      if (b.size() > 1 && static_cast<int>(b.size()) < o.min_size) ok = false;
    }
    if (keep && ok) cells.push_back(canonical(part, std::vector<int>(part.size(), -1)));
  }
  std::stable_sort(cells.begin() + 1, cells.end(),
                   [](const Cell& a, const Cell& b) { return a.blocks.size() > b.blocks.size(); });

  std::vector<ElementSpec> specs;
  for (const auto& s : subsets_of_size_at_least(o.n, o.min_size)) {
    std::vector<int> indices;
    for (int x : s) indices.push_back(x + 1);
    specs.push_back({"D" + digits(s), element_cell(o.n, s, -1), indices});
  }
  return build_cell_diagram(f, o.n, cells, specs,
                            o.fiber == Fiber::Curve ? GeneratorKind::Tautological
                                                    : GeneratorKind::Powers,
                            NestRule{NestRule::Kind::NestedOrDisjoint, {}});
}

BurrowDiagram keel_model(int n) {
  if (n < 1 || n > 5) throw InputError("keel_model supports 1 <= n <= 5");
  const FiberRing f = projective_fiber(1);
  std::vector<Cell> cells{ambient_cell(n)};
  for (const auto& part : set_partitions(n)) {
    const size_t k = part.size();
    // Injective pin assignments: each block gets -1 or a distinct label.
    std::vector<int> pins(k, -1);
    std::function<void(size_t, int)> rec = [&](size_t i, int used) {
      if (i == k) {
        Cell c = canonical(part, pins);
        if (!(c == cells[0])) cells.push_back(c);
        return;
      }
      pins[i] = -1;
      rec(i + 1, used);
      for (int p = 0; p < 3; ++p)
        if (!(used & (1 << p))) {
          pins[i] = p;
          rec(i + 1, used | (1 << p));
          pins[i] = -1;
        }
    };
    rec(0, 0);
  }
  std::stable_sort(cells.begin() + 1, cells.end(),
                   [](const Cell& a, const Cell& b) { return a.free_count() > b.free_count(); });

  std::vector<ElementSpec> specs;
  for (const auto& s : subsets_of_size_at_least(n, 2))
    specs.push_back({"D" + digits(s), element_cell(n, s, -1), {}});
  for (const auto& s : subsets_of_size_at_least(n, 1))
    for (int p = 0; p < 3; ++p)
      specs.push_back({"D" + digits(s) + "_" + pin_name(p), element_cell(n, s, p), {}});
  std::stable_sort(specs.begin(), specs.end(), [](const ElementSpec& a, const ElementSpec& b) {
    return a.cell.free_count() > b.cell.free_count();
  });
  return build_cell_diagram(f, n, cells, specs, GeneratorKind::Powers,
                            NestRule{NestRule::Kind::Transversal, {}});
}

}  // namespace wonder
