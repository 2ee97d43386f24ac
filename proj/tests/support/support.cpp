#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "eigenform/errors.hpp"
#include "eigenform/graphs.hpp"
#include "eigenform/solver.hpp"
#include "eigenform/spectral.hpp"

namespace testing_support {

using namespace eigenform;

Vector Rng::vector(int n, double lo, double hi) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
  return v;
}

Vector Rng::nonconstant(int n) {
  for (;;) {
    Vector v = vector(n);
    if (oscillation(v) > 1e-3) return v;
  }
}

std::vector<int> Rng::subset(const std::vector<int>& pool) {
  for (;;) {
    std::vector<int> out;
    for (int v : pool)
      if (coin()) out.push_back(v);
    if (!out.empty()) return out;
  }
}

Weights Rng::weights(int k, double lo, double hi) {
  std::vector<double> r(static_cast<std::size_t>(k));
  for (double& x : r) x = uniform(lo, hi);
  return Weights(std::move(r));
}

DirichletForm Rng::form_on(const Graph& g, double lo, double hi) {
  DirichletForm f(g.vertex_count());
  for (const auto& [a, b] : g.edges()) f.set(a, b, uniform(lo, hi));
  return f;
}

FractalTriple Rng::triple() {
  for (;;) {
    FractalTriple t;
    t.name = "random";
    t.N = integer(2, 4);
    t.k = integer(t.N, t.N + 2);
    int next = t.N;
    for (int i = 0; i < t.k; ++i) {
      std::vector<int> cell(static_cast<std::size_t>(t.N), -1);
      for (int p = 0; p < t.N; ++p) {
        if (i < t.N && p == i) {
          cell[static_cast<std::size_t>(p)] = i;
          continue;
        }
        std::vector<int> reuse;
        for (int v = t.N; v < next; ++v)
          if (std::find(cell.begin(), cell.end(), v) == cell.end()) reuse.push_back(v);
        if (reuse.empty() || integer(0, 2) == 0)
          cell[static_cast<std::size_t>(p)] = next++;
        else
          cell[static_cast<std::size_t>(p)] = reuse[static_cast<std::size_t>(integer(0, static_cast<int>(reuse.size()) - 1))];
      }
      t.cells.push_back(std::move(cell));
    }
    t.num_v1 = next;
    if (validate(t).empty()) return t;
  }
}

namespace {

bool accept(EigenCase& c, const DirichletForm& form) {
  const EigenResult check = verify_eigenform(c.triple, c.weights, form);
  if (!check.converged) return false;
  c.rho = check.rho;
  c.forms.push_back(form);
  return true;
}

void push_if_nonempty(std::vector<EigenCase>& out, EigenCase c) {
  if (c.forms.empty()) throw ConsistencyFailure("no verified eigenform for case " + c.label);
  out.push_back(std::move(c));
}

}  // namespace

std::vector<EigenCase> eigen_cases(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<EigenCase> out;

  const FractalTriple gasket = builtin("gasket");
  for (int w = 0; w < 4; ++w) {
    // Far from uniform weights the gasket has no eigenform, so redraw.
    EigenCase c{"gasket", gasket, Weights::uniform(3), {}, 0.0};
    for (int attempt = 0; attempt < 20 && c.forms.empty(); ++attempt) {
      if (w > 0) c.weights = rng.weights(3, 0.85, 1.2);
      const EigenResult res = find_eigenform(c.triple, c.weights);
      if (res.converged) accept(c, res.form);
    }
    push_if_nonempty(out, std::move(c));
  }

  const FractalTriple tree = builtin("tree_gasket");
  for (int w = 0; w < 2; ++w) {
    EigenCase c{"tree_gasket", tree, Weights::uniform(3, w == 0 ? 1.0 : rng.uniform(0.5, 2.0)), {}, 0.0};
    for (int f = 0; f < 4; ++f)
      accept(c, DirichletForm::from_packed(3, {rng.uniform(0.3, 3.0), rng.uniform(0.3, 3.0), 0.0}));
    push_if_nonempty(out, std::move(c));
  }

  const FractalTriple vicsek = builtin("vicsek");
  EigenCase c{"vicsek", vicsek, Weights::uniform(5), {}, 0.0};
  const EigenResult res = find_eigenform(c.triple, c.weights);
  if (res.converged && accept(c, res.form)) {
    const StabilityVerdict verdict = decide_uniqueness(c.triple, res.form, c.weights);
    const Exploration ex = explore_nonuniqueness(c.triple, c.weights, res.form, verdict);
    if (ex.verified) accept(c, ex.result.form);
  }
  push_if_nonempty(out, std::move(c));
  return out;
}

DirichletForm two_level_trace_oracle(const FractalTriple& t, const DirichletForm& form, const Weights& r) {
  // Slots: copy i of V1 at i*num_v1 + v, then the first-level vertices.
  const int n1 = t.num_v1;
  const int top = t.k * n1;
  std::vector<int> parent(static_cast<std::size_t>(top + n1));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  auto unite = [&](int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); };
  for (int i = 0; i < t.k; ++i)
    for (int q = 0; q < t.N; ++q) unite(i * n1 + q, top + t.cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(q)]);

  std::map<int, int> label;
  for (int x = 0; x < top + n1; ++x) label.emplace(find(x), static_cast<int>(label.size()));
  const int count = static_cast<int>(label.size());
  auto id = [&](int slot) { return label.at(find(slot)); };

  struct Edge {
    int a, b;
    double w;
  };
  std::vector<Edge> edges;
  for (int i = 0; i < t.k; ++i)
    for (int i2 = 0; i2 < t.k; ++i2) {
      const auto& cell = t.cells[static_cast<std::size_t>(i2)];
      for (int a = 0; a < t.N; ++a)
        for (int b = a + 1; b < t.N; ++b) {
          const double w = r[i] * r[i2] * form.coeff(a, b);
          if (w > 0.0)
            edges.push_back({id(i * n1 + cell[static_cast<std::size_t>(a)]), id(i * n1 + cell[static_cast<std::size_t>(b)]), w});
        }
    }
  std::vector<std::vector<std::pair<int, double>>> adj(static_cast<std::size_t>(count));
  for (const Edge& e : edges) {
    adj[static_cast<std::size_t>(e.a)].push_back({e.b, e.w});
    adj[static_cast<std::size_t>(e.b)].push_back({e.a, e.w});
  }
  std::vector<int> boundary(static_cast<std::size_t>(t.N));
  std::vector<char> fixed(static_cast<std::size_t>(count), 0);
  for (int q = 0; q < t.N; ++q) {
    boundary[static_cast<std::size_t>(q)] = id(top + q);
    fixed[static_cast<std::size_t>(boundary[static_cast<std::size_t>(q)])] = 1;
  }

  auto minimum = [&](const Vector& u) {
    std::vector<double> x(static_cast<std::size_t>(count), 0.0);
    for (int q = 0; q < t.N; ++q) x[static_cast<std::size_t>(boundary[static_cast<std::size_t>(q)])] = u[q];
    for (int sweep = 0; sweep < 1000000; ++sweep) {
      double change = 0.0;
      for (int v = 0; v < count; ++v) {
        if (fixed[static_cast<std::size_t>(v)]) continue;
        double num = 0.0;
        double den = 0.0;
        for (const auto& [w, c] : adj[static_cast<std::size_t>(v)]) {
          num += c * x[static_cast<std::size_t>(w)];
          den += c;
        }
        if (den == 0.0) continue;
        const double next = num / den;
        change = std::max(change, std::abs(next - x[static_cast<std::size_t>(v)]));
        x[static_cast<std::size_t>(v)] = next;
      }
      if (change < 1e-15) break;
    }
    double energy = 0.0;
    for (const Edge& e : edges) {
      const double d = x[static_cast<std::size_t>(e.a)] - x[static_cast<std::size_t>(e.b)];
      energy += e.w * d * d;
    }
    return energy;
  };

  std::vector<double> single(static_cast<std::size_t>(t.N));
  for (int a = 0; a < t.N; ++a) single[static_cast<std::size_t>(a)] = minimum(Vector::Unit(t.N, a));
  DirichletForm out(t.N);
  for (int a = 0; a < t.N; ++a)
    for (int b = a + 1; b < t.N; ++b) {
      const double both = minimum(Vector::Unit(t.N, a) + Vector::Unit(t.N, b));
      out.set(a, b, std::max(0.0, (single[static_cast<std::size_t>(a)] + single[static_cast<std::size_t>(b)] - both) / 2.0));
    }
  return out;
}

std::vector<std::vector<char>> word_enumeration_digraph(const HarmonicStructure& hs,
                                                        const std::vector<ComponentData>& comps,
                                                        const StabilityDigraph& dg, int max_len, double tol) {
  const int m = dg.size();
  std::vector<Vector> functionals;
  for (const NodeId& node : dg.nodes) {
    const auto it = std::find_if(comps.begin(), comps.end(), [&](const ComponentData& c) { return c.j == node.j; });
    functionals.push_back(harmonicity_functional_vector(hs.form(), *it, node.s));
  }
  const double max_coeff = hs.form().max_coefficient();
  std::vector<std::vector<char>> adj(static_cast<std::size_t>(m), std::vector<char>(static_cast<std::size_t>(m), 0));
  for (int a = 0; a < m; ++a) {
    const Vector& seed = dg.payload[static_cast<std::size_t>(a)].u_tilde;
    const double scale = max_coeff * sup_norm(seed);
    std::vector<Vector> level{seed};
    for (int len = 0; len <= max_len; ++len) {
      for (const Vector& v : level)
        for (int b = 0; b < m; ++b)
          if (std::abs(functionals[static_cast<std::size_t>(b)].dot(v)) > tol * scale)
            adj[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
      if (len == max_len) break;
      std::vector<Vector> next;
      for (const Vector& v : level)
        for (int i = 0; i < hs.cell_count(); ++i) next.push_back(hs.cell_operator(i).matrix * v);
      level = std::move(next);
    }
  }
  return adj;
}

namespace {

std::vector<unsigned> closed_masks(const std::vector<std::vector<char>>& adjacency) {
  const int n = static_cast<int>(adjacency.size());
  std::vector<unsigned> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    bool closed = true;
    for (int v = 0; v < n && closed; ++v)
      if (mask >> v & 1u)
        for (int w = 0; w < n; ++w)
          if (adjacency[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] && !(mask >> w & 1u)) closed = false;
    if (closed) out.push_back(mask);
  }
  return out;
}

}  // namespace

bool has_disjoint_closed_sets(const std::vector<std::vector<char>>& adjacency) {
  const std::vector<unsigned> closed = closed_masks(adjacency);
  for (std::size_t a = 0; a < closed.size(); ++a)
    for (std::size_t b = a + 1; b < closed.size(); ++b)
      if ((closed[a] & closed[b]) == 0u) return true;
  return false;
}

bool closed_sets_match_scc_unions(const std::vector<std::vector<char>>& adjacency) {
  const int n = static_cast<int>(adjacency.size());
  const SccDecomposition scc = strongly_connected_components(adjacency);
  // Mask of everything reachable from each SCC.
  std::vector<unsigned> reach(scc.components.size(), 0u);
  for (std::size_t c = 0; c < scc.components.size(); ++c)
    for (int v : forward_closure(adjacency, scc.components[c])) reach[c] |= 1u << v;
  const std::vector<unsigned> closed = closed_masks(adjacency);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    bool scc_union = true;
    for (std::size_t c = 0; c < scc.components.size(); ++c) {
      unsigned members = 0u;
      for (int v : scc.components[c]) members |= 1u << v;
      const bool inside = (mask & members) != 0u;
      if (inside && ((mask & members) != members || (mask & reach[c]) != reach[c])) scc_union = false;
    }
    const bool is_closed_mask = std::find(closed.begin(), closed.end(), mask) != closed.end();
    if (scc_union != is_closed_mask) return false;
  }
  return true;
}

std::vector<std::vector<char>> random_digraph(Rng& rng, int n, double density) {
  std::vector<std::vector<char>> adj(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && rng.uniform(0.0, 1.0) < density) adj[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
  return adj;
}

void PropertyResult::record(bool ok, double err, const std::string& what) {
  ++draws;
  worst = std::max(worst, err);
  if (!ok) {
    if (failures == 0) first_failure = what;
    ++failures;
  }
}

namespace {

constexpr double kIdentityTol = 1e-8;

std::string describe(const std::string& label, const std::string& detail) { return label + ": " + detail; }

std::vector<int> positive_pattern(const Vector& v, int skip, double scale) {
  std::vector<int> out;
  for (int h = 0; h < v.size(); ++h)
    if (h != skip && v[h] > 1e-12 * scale) out.push_back(h);
  return out;
}

struct Group {
  std::string name;
  std::vector<const EigenCase*> cases;
};

std::vector<Group> group_cases(const std::vector<EigenCase>& cases) {
  std::vector<Group> out;
  for (const EigenCase& c : cases) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Group& g) { return g.name == c.triple.name; });
    if (it == out.end()) {
      out.push_back({c.triple.name, {}});
      it = out.end() - 1;
    }
    it->cases.push_back(&c);
  }
  return out;
}

struct Draw {
  const EigenCase* c;
  const DirichletForm* form;
};

Draw pick(Rng& rng, const Group& g) {
  const EigenCase* c = g.cases[static_cast<std::size_t>(rng.integer(0, static_cast<int>(g.cases.size()) - 1))];
  return {c, &c->forms[static_cast<std::size_t>(rng.integer(0, static_cast<int>(c->forms.size()) - 1))]};
}

/// An eigenform, a random form on G^ or a random positive form.
DirichletForm any_form(Rng& rng, const Draw& d, const Graph& hat) {
  switch (rng.integer(0, 2)) {
    case 0: return *d.form;
    case 1: return rng.form_on(hat);
    default: return rng.form_on(Graph::complete(d.c->triple.N));
  }
}

std::vector<int> connected_cells(Rng& rng, const FractalTriple& t) {
  const Graph g = cell_graph(t);
  std::vector<int> chosen{rng.integer(0, t.k - 1)};
  const int target = rng.integer(1, t.k);
  while (static_cast<int>(chosen.size()) < target) {
    std::vector<int> frontier;
    for (int c : chosen)
      for (int w : g.neighbors(c))
        if (std::find(chosen.begin(), chosen.end(), w) == chosen.end() &&
            std::find(frontier.begin(), frontier.end(), w) == frontier.end())
          frontier.push_back(w);
    if (frontier.empty()) break;
    chosen.push_back(frontier[static_cast<std::size_t>(rng.integer(0, static_cast<int>(frontier.size()) - 1))]);
  }
  return chosen;
}

}  // namespace

std::vector<PropertyResult> identity_suites(std::uint64_t seed, int draws) {
  Rng rng(seed);
  const std::vector<EigenCase> cases = eigen_cases(seed);
  const std::vector<Group> groups = group_cases(cases);

  PropertyResult rescaling{"rescaling identity L_E(u)(P_j) = (r_j/rho)^n L_E(T_j^n u)(P_j)"};
  PropertyResult eigenvalues{"eigenvalue formulas l_j = rho/r_j, l_{j,s} = (rho/r_j)^{n_{j,s}}"};
  PropertyResult two_level{"two-level composition Lambda_r(Lambda_r(E)) vs brute-force F_2 minimizer"};
  PropertyResult max_principle{"maximum principle on connected cell subsets"};
  PropertyResult bounds{"extension bounds over R_E(Q)"};
  PropertyResult positivity{"positivity of cell and word operators"};
  PropertyResult ratio{"coefficient-ratio identity for one free boundary point"};
  PropertyResult l_patterns{"L_j^n(B) equals the positivity pattern of T_j^n"};
  PropertyResult decomposition{"energy decomposition E(u) = sum_s E(g_{j,s}(u))"};
  PropertyResult functionals{"nonconstant u activates some harmonicity functional"};

  for (const Group& g : groups) {
    const FractalTriple& t = g.cases.front()->triple;
    const BoundaryGraph hat = hat_graph(t);
    std::vector<ComponentData> comps;
    for (int j = 0; j < t.N; ++j) comps.push_back(components(t, hat, j));
    std::vector<int> all(static_cast<std::size_t>(t.N));
    std::iota(all.begin(), all.end(), 0);

    for (int d = 0; d < draws; ++d) {
      const Draw draw = pick(rng, g);
      const Weights& r = draw.c->weights;
      const double rho = draw.c->rho;
      const HarmonicStructure hs(t, *draw.form, r);
      const double maxc = draw.form->max_coefficient();
      const int j = rng.integer(0, t.N - 1);
      const int n = rng.integer(0, 3);
      const std::string tag = g.name + " draw " + std::to_string(d);

      {
        const Vector u = rng.nonconstant(t.N);
        const double lhs = laplacian(*draw.form, u)[j];
        const double rhs = std::pow(r[j] / rho, n) * laplacian(*draw.form, hs.power(j, n) * u)[j];
        const double err = std::abs(lhs - rhs) / (maxc * oscillation(u));
        rescaling.record(err <= kIdentityTol, err, describe(tag, "lhs " + std::to_string(lhs) + " rhs " + std::to_string(rhs)));
      }
      {
        double err = 0.0;
        if (draw.form->is_positive()) {
          const double l = perron_positive(hs, j).l;
          err = std::max(err, std::abs(l - rho / r[j]) / (rho / r[j]));
        }
        const ComponentData& comp = comps[static_cast<std::size_t>(j)];
        for (int s = 0; s < comp.count(); ++s) {
          const PerronData pd = perron_component(hs, comp, s);
          const double expected = std::pow(rho / r[j], pd.period);
          err = std::max(err, std::abs(pd.l - expected) / expected);
          if (!(pd.l > 0.0 && pd.l < 1.0)) err = std::max(err, 1.0);
        }
        eigenvalues.record(err <= kIdentityTol, err, tag);
      }
      {
        const DirichletForm form = any_form(rng, draw, hat);
        const Weights w = rng.coin() ? r : rng.weights(t.k);
        const DirichletForm twice = renormalize(t, renormalize(t, form, w), w);
        const DirichletForm oracle = two_level_trace_oracle(t, form, w);
        double err = 0.0;
        for (std::size_t i = 0; i < twice.packed().size(); ++i)
          err = std::max(err, std::abs(twice.packed()[i] - oracle.packed()[i]));
        err /= oracle.max_coefficient();
        two_level.record(err <= kIdentityTol, err, tag);
      }
      {
        const DirichletForm form = any_form(rng, draw, hat);
        const Weights w = rng.weights(t.k);
        std::map<int, double> fixed;
        for (int v : rng.subset(all)) fixed[v] = rng.uniform(-1.0, 1.0);
        const Vector v = constrained_extension(t, form, w, fixed).values;
        const std::vector<int> chosen = connected_cells(rng, t);
        std::vector<char> in_c(static_cast<std::size_t>(t.num_v1), 0);
        std::vector<char> outside(static_cast<std::size_t>(t.num_v1), 0);
        for (int i = 0; i < t.k; ++i) {
          const bool member = std::find(chosen.begin(), chosen.end(), i) != chosen.end();
          for (int x : t.cells[static_cast<std::size_t>(i)]) (member ? in_c : outside)[static_cast<std::size_t>(x)] = 1;
        }
        double hi_all = -1e300, lo_all = 1e300, hi_b = -1e300, lo_b = 1e300;
        for (int x = 0; x < t.num_v1; ++x) {
          if (!in_c[static_cast<std::size_t>(x)]) continue;
          hi_all = std::max(hi_all, v[x]);
          lo_all = std::min(lo_all, v[x]);
          if (fixed.count(x) || outside[static_cast<std::size_t>(x)]) {
            hi_b = std::max(hi_b, v[x]);
            lo_b = std::min(lo_b, v[x]);
          }
        }
        if (hi_b >= lo_b) {
          const double err = std::max({0.0, hi_all - hi_b, lo_b - lo_all});
          max_principle.record(err <= 1e-12, err, tag);
        } else {
          max_principle.record(true, 0.0, tag);
        }
      }
      {
        const DirichletForm form = rng.coin() ? *draw.form : rng.form_on(hat);
        const Weights w = rng.weights(t.k);
        const Vector u = rng.vector(t.N);
        const Vector v = harmonic_extension(t, form, w, u).values;
        const Graph lifted = lift(t, support_graph(form));
        double err = 0.0;
        for (int q = t.N; q < t.num_v1; ++q) {
          const std::vector<char> reach = reach_through_interior(t, lifted, q);
          double lo = 1e300, hi = -1e300;
          for (int b = 0; b < t.N; ++b)
            if (reach[static_cast<std::size_t>(b)]) {
              lo = std::min(lo, u[b]);
              hi = std::max(hi, u[b]);
            }
          if (hi < lo) continue;  // isolated vertex, value unconstrained
          err = std::max({err, v[q] - hi, lo - v[q]});
        }
        bounds.record(err <= 1e-12, err, tag);
      }
      {
        Vector u = rng.vector(t.N, 0.0, 1.0);
        for (int b = 0; b < t.N; ++b)
          if (rng.integer(0, 2) == 0) u[b] = 0.0;
        std::vector<int> word;
        for (int len = rng.integer(1, 3); len > 0; --len) word.push_back(rng.integer(0, t.k - 1));
        const Vector image = hs.apply_word(word, u);
        const double err = std::max(0.0, -image.minCoeff());
        positivity.record(err <= 1e-14, err, tag);
      }
      {
        const DirichletForm form = any_form(rng, draw, hat);
        const Weights w = rng.weights(t.k);
        const Vector u = rng.nonconstant(t.N);
        std::map<int, double> fixed;
        for (int b = 0; b < t.N; ++b)
          if (b != j) fixed[b] = u[b];
        const double value = constrained_extension(t, form, w, fixed).values[j];
        const DirichletForm image = renormalize(t, form, w);
        double num = 0.0, den = 0.0;
        for (int h = 0; h < t.N; ++h)
          if (h != j) {
            num += image.coeff(j, h) * u[h];
            den += image.coeff(j, h);
          }
        const double err = std::abs(value - num / den) / oscillation(u);
        ratio.record(err <= kIdentityTol, err, tag);
      }
      {
        std::vector<int> others;
        for (int b = 0; b < t.N; ++b)
          if (b != j) others.push_back(b);
        const std::vector<int> b_set = rng.subset(others);
        Vector u = Vector::Zero(t.N);
        for (int b : b_set) u[b] = rng.uniform(0.1, 1.0);
        const Vector image = hs.power(j, n) * u;
        const bool ok = positive_pattern(image, j, sup_norm(u)) == l_j_image(t, hat, j, b_set, n);
        l_patterns.record(ok, ok ? 0.0 : 1.0, tag + " j=" + std::to_string(j) + " n=" + std::to_string(n));
      }
      {
        const DirichletForm form = rng.coin() ? *draw.form : rng.form_on(hat);
        const Vector u = rng.nonconstant(t.N);
        const ComponentData& comp = comps[static_cast<std::size_t>(j)];
        double sum = 0.0;
        for (int s = 0; s < comp.count(); ++s) sum += energy(form, project_g(u, comp, s));
        const double scale = form.max_coefficient() * oscillation(u) * oscillation(u);
        const double err = std::abs(energy(form, u) - sum) / scale;
        decomposition.record(err <= kIdentityTol, err, tag);
      }
      {
        Vector u = rng.nonconstant(t.N);
        if (rng.coin()) {
          // Push u toward the common kernel of all but one functional.
          std::vector<Vector> rows;
          for (const ComponentData& comp : comps)
            for (int s = 0; s < comp.count(); ++s) rows.push_back(harmonicity_functional_vector(*draw.form, comp, s));
          const std::size_t keep = static_cast<std::size_t>(rng.integer(0, static_cast<int>(rows.size()) - 1));
          Matrix phi(static_cast<Eigen::Index>(rows.size()) - 1, t.N);
          Eigen::Index row = 0;
          for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != keep) phi.row(row++) = rows[i].transpose();
          const Eigen::FullPivLU<Matrix> lu(phi);
          const Matrix kernel = lu.kernel();
          const Vector candidate = kernel * rng.vector(static_cast<int>(kernel.cols()));
          if (oscillation(candidate) > 1e-6 * sup_norm(candidate)) u = candidate / sup_norm(candidate);
        }
        double best = 0.0;
        for (const ComponentData& comp : comps)
          for (int s = 0; s < comp.count(); ++s)
            best = std::max(best, std::abs(harmonicity_functional(*draw.form, comp, s, u)));
        const double rel = best / (maxc * oscillation(u));
        functionals.record(rel > kIdentityTol, rel > kIdentityTol ? 0.0 : 1.0, tag);
      }
    }
  }
  return {rescaling, eigenvalues, two_level, max_principle, bounds, positivity,
          ratio, l_patterns, decomposition, functionals};
}

}  // namespace testing_support
