#include "eigenform/uniqueness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "eigenform/errors.hpp"
#include "eigenform/parallel.hpp"

namespace eigenform {

Matrix orbit_span(const HarmonicStructure& hs, const Vector& seed, double rank_tol) {
  const int n = hs.boundary_size();
  std::vector<Vector> basis;
  const double seed_norm = seed.norm();
  if (seed_norm == 0.0) return Matrix(n, 0);
  basis.push_back(seed / seed_norm);
  for (std::size_t next = 0; next < basis.size(); ++next) {
    for (int i = 0; i < hs.cell_count(); ++i) {
      Vector v = hs.cell_operator(i).matrix * basis[next];
      for (int pass = 0; pass < 2; ++pass)
        for (const Vector& q : basis) v -= q.dot(v) * q;
      const double norm = v.norm();
      if (norm > rank_tol && static_cast<int>(basis.size()) < n) basis.push_back(v / norm);
    }
  }
  Matrix q(n, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t c = 0; c < basis.size(); ++c) q.col(static_cast<Eigen::Index>(c)) = basis[c];
  return q;
}

Vector harmonicity_functional_vector(const DirichletForm& form, const ComponentData& comp, int s) {
  Vector f = Vector::Zero(form.size());
  for (int h : comp.components[static_cast<std::size_t>(s)]) {
    const double c = form.coeff(comp.j, h);
    f[h] += c;
    f[comp.j] -= c;
  }
  return f;
}

double harmonicity_functional(const DirichletForm& form, const ComponentData& comp, int s,
                              const Vector& u) {
  return harmonicity_functional_vector(form, comp, s).dot(u);
}

int StabilityDigraph::index_of(int j, int s) const {
  for (int a = 0; a < size(); ++a)
    if (nodes[static_cast<std::size_t>(a)] == NodeId{j, s}) return a;
  return -1;
}

std::vector<std::pair<int, int>> StabilityDigraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < size(); ++a)
    for (int b = 0; b < size(); ++b)
      if (a != b && adjacency[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])
        out.emplace_back(a, b);
  return out;
}

namespace {

/// |phi| on span(q) along its best direction, relative to max coefficient and sup-norm.
double span_magnitude(const Matrix& q, const Vector& f, double max_coeff) {
  if (q.cols() == 0) return 0.0;
  const Vector p = q.transpose() * f;
  const Vector direction = q * p;
  const double sup = sup_norm(direction);
  if (sup == 0.0) return 0.0;
  return std::abs(f.dot(direction)) / (max_coeff * sup);
}

std::string node_label(const NodeId& node) {
  return "(" + std::to_string(node.j) + "," + std::to_string(node.s) + ")";
}

StabilityDigraph empty_digraph(const HarmonicStructure& hs, const std::vector<ComponentData>& comps) {
  StabilityDigraph dg;
  for (const ComponentData& c : comps)
    for (int s = 0; s < c.count(); ++s) dg.nodes.push_back({c.j, s});
  const auto m = dg.nodes.size();
  dg.payload.resize(m);
  dg.span_dimension.assign(m, 0);
  dg.magnitude.assign(m, std::vector<double>(m, 0.0));
  dg.adjacency.assign(m, std::vector<char>(m, 0));
  (void)hs;
  return dg;
}

const ComponentData& component_for(const std::vector<ComponentData>& comps, int j) {
  for (const ComponentData& c : comps)
    if (c.j == j) return c;
  fail_consistency("missing component data for j=" + std::to_string(j));
}

void fill_row(const HarmonicStructure& hs, const std::vector<ComponentData>& comps,
              const std::vector<Vector>& functionals, const StabilityOptions& options,
              StabilityDigraph& dg, int a) {
  const auto ua = static_cast<std::size_t>(a);
  const NodeId node = dg.nodes[ua];
  dg.payload[ua] = perron_component(hs, component_for(comps, node.j), node.s);
  const Matrix q = orbit_span(hs, dg.payload[ua].u_tilde, options.rank_tol);
  dg.span_dimension[ua] = static_cast<int>(q.cols());
  const double max_coeff = hs.form().max_coefficient();
  for (int b = 0; b < dg.size(); ++b) {
    const double mag = span_magnitude(q, functionals[static_cast<std::size_t>(b)], max_coeff);
    dg.magnitude[ua][static_cast<std::size_t>(b)] = mag;
    dg.adjacency[ua][static_cast<std::size_t>(b)] = mag > options.functional_tol ? 1 : 0;
  }
}

void collect_warnings(const StabilityOptions& options, StabilityDigraph& dg) {
  for (int a = 0; a < dg.size(); ++a)
    for (int b = 0; b < dg.size(); ++b) {
      const double mag = dg.magnitude[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      if (a != b && mag >= options.functional_tol && mag <= 1e3 * options.functional_tol) {
        std::ostringstream os;
        os << "borderline functional magnitude " << mag << " on edge "
           << node_label(dg.nodes[static_cast<std::size_t>(a)]) << "->"
           << node_label(dg.nodes[static_cast<std::size_t>(b)]);
        dg.warnings.push_back(os.str());
      }
    }
}

std::vector<Vector> node_functionals(const HarmonicStructure& hs,
                                     const std::vector<ComponentData>& comps,
                                     const StabilityDigraph& dg) {
  std::vector<Vector> out;
  out.reserve(dg.nodes.size());
  for (const NodeId& node : dg.nodes)
    out.push_back(harmonicity_functional_vector(hs.form(), component_for(comps, node.j), node.s));
  return out;
}

}  // namespace

StabilityDigraph stability_digraph(const HarmonicStructure& hs, const std::vector<ComponentData>& comps,
                                   const StabilityOptions& options) {
  StabilityDigraph dg = empty_digraph(hs, comps);
  const std::vector<Vector> functionals = node_functionals(hs, comps, dg);
  parallel_for(dg.size(), [&](int a) { fill_row(hs, comps, functionals, options, dg, a); });
  collect_warnings(options, dg);
  return dg;
}

StabilityDigraph stability_digraph_serial(const HarmonicStructure& hs,
                                          const std::vector<ComponentData>& comps,
                                          const StabilityOptions& options) {
  StabilityDigraph dg = empty_digraph(hs, comps);
  const std::vector<Vector> functionals = node_functionals(hs, comps, dg);
  for (int a = 0; a < dg.size(); ++a) fill_row(hs, comps, functionals, options, dg, a);
  collect_warnings(options, dg);
  return dg;
}

SccDecomposition strongly_connected_components(const std::vector<std::vector<char>>& adjacency) {
  const int n = static_cast<int>(adjacency.size());
  std::vector<int> index(static_cast<std::size_t>(n), -1);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> found;
  int counter = 0;

  std::function<void(int)> visit = [&](int v) {
    const auto uv = static_cast<std::size_t>(v);
    index[uv] = low[uv] = counter++;
    stack.push_back(v);
    on_stack[uv] = 1;
    for (int w = 0; w < n; ++w) {
      const auto uw = static_cast<std::size_t>(w);
      if (w == v || !adjacency[uv][uw]) continue;
      if (index[uw] < 0) {
        visit(w);
        low[uv] = std::min(low[uv], low[uw]);
      } else if (on_stack[uw]) {
        low[uv] = std::min(low[uv], index[uw]);
      }
    }
    if (low[uv] == index[uv]) {
      std::vector<int> comp;
      int w = -1;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[static_cast<std::size_t>(w)] = 0;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      found.push_back(std::move(comp));
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[static_cast<std::size_t>(v)] < 0) visit(v);

  std::sort(found.begin(), found.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) { return a.front() < b.front(); });
  SccDecomposition out;
  out.components = std::move(found);
  out.component_of.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t c = 0; c < out.components.size(); ++c)
    for (int v : out.components[c]) out.component_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
  for (std::size_t c = 0; c < out.components.size(); ++c)
    if (is_closed(adjacency, out.components[c])) out.sinks.push_back(static_cast<int>(c));
  return out;
}

std::vector<int> forward_closure(const std::vector<std::vector<char>>& adjacency,
                                 const std::vector<int>& seeds) {
  const std::size_t n = adjacency.size();
  std::vector<char> seen(n, 0);
  std::vector<int> queue;
  for (int s : seeds)
    if (!seen[static_cast<std::size_t>(s)]) {
      seen[static_cast<std::size_t>(s)] = 1;
      queue.push_back(s);
    }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto v = static_cast<std::size_t>(queue[head]);
    for (std::size_t w = 0; w < n; ++w)
      if (adjacency[v][w] && !seen[w]) {
        seen[w] = 1;
        queue.push_back(static_cast<int>(w));
      }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

bool is_closed(const std::vector<std::vector<char>>& adjacency, const std::vector<int>& set) {
  std::vector<char> in(adjacency.size(), 0);
  for (int v : set) in[static_cast<std::size_t>(v)] = 1;
  for (int v : set)
    for (std::size_t w = 0; w < adjacency.size(); ++w)
      if (adjacency[static_cast<std::size_t>(v)][w] && !in[w]) return false;
  return true;
}

std::vector<std::vector<char>> positive_case_digraph(const HarmonicStructure& hs,
                                                     const StabilityOptions& options) {
  const int n = hs.boundary_size();
  const Matrix lap = laplacian_matrix(hs.form());
  const double max_coeff = hs.form().max_coefficient();
  std::vector<std::vector<char>> adj(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  for (int j = 0; j < n; ++j) {
    const Matrix q = orbit_span(hs, perron_positive(hs, j).u_bar, options.rank_tol);
    for (int jp = 0; jp < n; ++jp) {
      const Vector f = lap.row(jp).transpose();
      adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(jp)] =
          span_magnitude(q, f, max_coeff) > options.functional_tol ? 1 : 0;
    }
  }
  return adj;
}

StabilityVerdict decide_uniqueness(const FractalTriple& t, const DirichletForm& form, const Weights& r,
                                   const StabilityOptions& options) {
  require_valid(t);
  require_weights(t, r);
  if (form.size() != t.N) throw InvalidInput("form size does not match the boundary");
  const EigenResult check = verify_eigenform(t, r, form, options.eigen_tol);
  if (!check.converged) throw InvalidInput("form is not a verified eigenform: " + check.message);

  StabilityVerdict verdict;
  verdict.rho = check.rho;
  const HarmonicStructure hs(t, form, r);
  const BoundaryGraph hat = hat_graph(t);
  verdict.components = all_components(t, hat);
  verdict.digraph = stability_digraph(hs, verdict.components, options);

  const SccDecomposition scc = strongly_connected_components(verdict.digraph.adjacency);
  for (int c : scc.sinks) verdict.sink_sccs.push_back(scc.components[static_cast<std::size_t>(c)]);
  verdict.sink_scc_count = static_cast<int>(verdict.sink_sccs.size());
  if (verdict.sink_scc_count == 0) fail_consistency("stability digraph has no sink component");
  verdict.unique = verdict.sink_scc_count == 1;
  if (!verdict.unique) verdict.witnesses = std::make_pair(verdict.sink_sccs[0], verdict.sink_sccs[1]);

  if (form.is_positive()) {
    const SccDecomposition pos = strongly_connected_components(positive_case_digraph(hs, options));
    verdict.positive_case_unique = pos.sinks.size() == 1;
    if (*verdict.positive_case_unique != verdict.unique)
      fail_consistency("positive-case digraph disagrees with the general stability digraph");
  }
  return verdict;
}

double PenaltyForm::coeff(int a, int b) const { return d[pair_index(n, a, b)]; }

double PenaltyForm::energy(const Vector& u) const {
  double total = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const double diff = u[a] - u[b];
      total += coeff(a, b) * diff * diff;
    }
  return total;
}

PenaltyForm penalty_form(const HarmonicStructure& hs, const ComponentData& comp, int s,
                         const BoundaryGraph& hat) {
  const int n = hs.boundary_size();
  const int j = comp.j;
  const int period = comp.periods[static_cast<std::size_t>(s)];
  const Vector lambda = laplacian_matrix(hs.form()).row(j).transpose();
  const Vector w = hs.power(j, period).transpose() * lambda;

  PenaltyForm pf;
  pf.n = n;
  pf.functional = Vector::Zero(n);
  for (int v : comp.components[static_cast<std::size_t>(s)]) {
    pf.functional[v] += w[v];
    pf.functional[j] -= w[v];
  }
  const Vector& ell = pf.functional;
  pf.d.assign(static_cast<std::size_t>(n * (n - 1) / 2), 0.0);
  double max_d = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      pf.d[pair_index(n, a, b)] = -ell[a] * ell[b];
      max_d = std::max(max_d, std::abs(ell[a] * ell[b]));
    }

  const double scale = std::max(sup_norm(ell) * sup_norm(ell), 1e-300);
  if (std::abs(ell.sum()) > 1e-10 * ell.cwiseAbs().sum() + 1e-300)
    fail_consistency("penalty functional does not vanish on constants");
  for (int a = 0; a < n; ++a) {
    double row = 0.0;
    for (int b = 0; b < n; ++b)
      if (b != a) row += pf.coeff(a, b);
    if (std::abs(row - ell[a] * ell[a]) > 1e-10 * scale)
      fail_consistency("penalty polarization does not reproduce the square");
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (hat.has_edge(a, b)) continue;
      double& d = pf.d[pair_index(n, a, b)];
      if (std::abs(d) > 1e-8 * max_d)
        fail_consistency("penalty form for (" + std::to_string(j) + "," + std::to_string(s) +
                         ") has weight on non-edge {" + std::to_string(a) + "," + std::to_string(b) + "}");
      d = 0.0;
    }
  return pf;
}

Exploration explore_nonuniqueness(const FractalTriple& t, const Weights& r, const DirichletForm& form,
                                  const StabilityVerdict& verdict, double delta,
                                  const SolveOptions& options) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw InvalidInput("delta must be finite and >= 0");
  Exploration ex;
  ex.perturbed_nodes = verdict.witnesses ? verdict.witnesses->second : verdict.sink_sccs.at(0);

  const HarmonicStructure hs(t, form, r);
  const BoundaryGraph hat = hat_graph(t);
  std::vector<double> penalty(form.packed().size(), 0.0);
  for (int a : ex.perturbed_nodes) {
    const NodeId node = verdict.digraph.nodes.at(static_cast<std::size_t>(a));
    const PenaltyForm pf = penalty_form(hs, component_for(verdict.components, node.j), node.s, hat);
    for (std::size_t i = 0; i < penalty.size(); ++i) penalty[i] += pf.d[i];
  }

  double min_positive = std::numeric_limits<double>::infinity();
  const double cut = kCoefficientTolerance * form.max_coefficient();
  for (double c : form.packed())
    if (c > cut) min_positive = std::min(min_positive, c);
  double max_penalty = 0.0;
  for (double d : penalty) max_penalty = std::max(max_penalty, std::abs(d));
  const double unit = max_penalty > 0.0 ? min_positive / max_penalty : 0.0;

  double rel = delta;
  for (;; ++ex.retries) {
    std::vector<double> start(form.packed().size());
    bool inside = true;
    for (std::size_t i = 0; i < start.size(); ++i) {
      start[i] = form.packed()[i] - rel * unit * penalty[i];
      if (form.packed()[i] > cut && start[i] <= cut) inside = false;
      if (start[i] < 0.0) {
        if (start[i] < -cut) inside = false;
        start[i] = 0.0;
      }
    }
    if (inside) {
      ex.delta = rel * unit;
      ex.start = DirichletForm::from_packed(form.size(), std::move(start));
      break;
    }
    if (ex.retries >= 40) throw NumericalFailure("perturbed start never entered the cone");
    rel *= 0.5;
  }

  ex.result = find_eigenform(t, r, ex.start, options);
  if (ex.result.converged) {
    ex.verification = verify_eigenform(t, r, ex.result.form);
    ex.verified = ex.verification.converged;
    ex.proportional = proportional(ex.result.form, form);
  }
  return ex;
}

}  // namespace eigenform
