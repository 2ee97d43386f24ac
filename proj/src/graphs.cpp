#include "eigenform/graphs.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "eigenform/errors.hpp"
#include "eigenform/parallel.hpp"

namespace eigenform {

Graph lift(const FractalTriple& t, const BoundaryGraph& g, bool non_boundary_only) {
  Graph out(t.num_v1);
  for (int i = non_boundary_only ? t.N : 0; i < t.k; ++i)
    for (auto [a, b] : g.edges()) out.add_edge(t.cells[i][a], t.cells[i][b]);
  return out;
}

std::vector<char> reach_through_interior(const FractalTriple& t, const Graph& lifted, int source) {
  std::vector<char> seen(static_cast<std::size_t>(t.num_v1), 0);
  std::vector<int> queue{source};
  seen[source] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    // Boundary ids are endpoints only.
    if (v != source && t.is_boundary(v)) continue;
    for (int w : lifted.neighbors(v))
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
  }
  return seen;
}

BoundaryGraph lambda_graph(const FractalTriple& t, const BoundaryGraph& g) {
  const Graph lifted = lift(t, g);
  BoundaryGraph out(t.N);
  for (int a = 0; a < t.N; ++a) {
    const auto seen = reach_through_interior(t, lifted, a);
    for (int b = a + 1; b < t.N; ++b)
      if (seen[b]) out.add_edge(a, b);
  }
  return out;
}

BoundaryGraph tilde_graph(const FractalTriple& t) {
  const Graph g1 = lift(t, Graph::complete(t.N), /*non_boundary_only=*/true);
  std::vector<int> label(static_cast<std::size_t>(t.num_v1), -1);
  const auto comps = g1.components();
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int v : comps[c]) label[v] = static_cast<int>(c);

  BoundaryGraph out(t.N);
  for (int a = 0; a < t.N; ++a)
    for (int b = a + 1; b < t.N; ++b) {
      bool linked = false;
      for (int qa : t.cells[a])
        for (int qb : t.cells[b]) linked = linked || label[qa] == label[qb];
      if (linked) out.add_edge(a, b);
    }
  return out;
}

BoundaryGraph hat_graph(const FractalTriple& t) {
  BoundaryGraph g = tilde_graph(t);
  const int cap = t.N * (t.N - 1) / 2;
  for (int round = 0; round <= cap; ++round) {
    BoundaryGraph next = lambda_graph(t, g);
    if (!g.is_subgraph_of(next)) fail_consistency("Lambda-iteration from G~ is not monotone");
    if (next == g) return g;
    g = std::move(next);
  }
  fail_consistency("Lambda-iteration did not reach a fixed point within N(N-1)/2 rounds");
}

int ComponentData::component_of(int v) const {
  for (int s = 0; s < count(); ++s)
    if (std::binary_search(components[s].begin(), components[s].end(), v)) return s;
  return -1;
}

namespace {

std::vector<int> image(const ComponentData& d, const std::vector<int>& b) {
  std::set<int> out;
  for (int v : b) out.insert(d.l_map[v].begin(), d.l_map[v].end());
  return {out.begin(), out.end()};
}

std::vector<int> l_map_entry(const FractalTriple& t, const Graph& lifted, int j, int v) {
  const auto seen = reach_through_interior(t, lifted, v);
  std::vector<int> out;
  for (int h = 0; h < t.N; ++h)
    if (h != j && seen[t.cells[j][h]]) out.push_back(h);
  return out;
}

}  // namespace

ComponentData components(const FractalTriple& t, const BoundaryGraph& hat, int j) {
  if (j < 0 || j >= t.N) throw InvalidInput("boundary index " + std::to_string(j) + " out of range");
  ComponentData d;
  d.j = j;
  std::vector<char> mask(static_cast<std::size_t>(t.N), 1);
  mask[j] = 0;
  d.components = hat.components(mask);

  const Graph lifted = lift(t, hat);
  d.l_map.resize(static_cast<std::size_t>(t.N));
  for (int v = 0; v < t.N; ++v)
    if (v != j) d.l_map[v] = l_map_entry(t, lifted, j, v);

  const int m = d.count();
  d.beta.assign(static_cast<std::size_t>(m), -1);
  std::vector<char> hit(static_cast<std::size_t>(m), 0);
  for (int s = 0; s < m; ++s) {
    const auto img = image(d, d.components[s]);
    for (int s2 = 0; s2 < m; ++s2)
      if (img == d.components[s2]) d.beta[s] = s2;
    if (d.beta[s] < 0)
      fail_consistency("L_j(C_s) is not a single component (j=" + std::to_string(j) +
                       ", s=" + std::to_string(s) + ")");
    if (hit[d.beta[s]]) fail_consistency("beta_j is not a bijection (j=" + std::to_string(j) + ")");
    hit[d.beta[s]] = 1;
  }

  d.periods.resize(static_cast<std::size_t>(m));
  d.c_prime.resize(static_cast<std::size_t>(m));
  d.c_second.resize(static_cast<std::size_t>(m));
  for (int s = 0; s < m; ++s) {
    int n = 1;
    for (int cur = d.beta[s]; cur != s; cur = d.beta[cur]) ++n;
    d.periods[s] = n;
    for (int v : d.components[s]) {
      std::vector<int> reach{v};
      for (int step = 0; step < n; ++step) reach = image(d, reach);
      if (reach == d.components[s]) {
        d.c_prime[s].push_back(v);
      } else if (reach.empty()) {
        d.c_second[s].push_back(v);
      } else {
        fail_consistency("L_j^n(P_" + std::to_string(v) + ") is neither empty nor C_s (j=" +
                         std::to_string(j) + ")");
      }
    }
    if (d.c_prime[s].empty())
      fail_consistency("C'_s is empty (j=" + std::to_string(j) + ", s=" + std::to_string(s) + ")");
  }
  return d;
}

ComponentData components(const FractalTriple& t, int j) { return components(t, hat_graph(t), j); }

std::vector<ComponentData> all_components(const FractalTriple& t, const BoundaryGraph& hat) {
  std::vector<ComponentData> out(static_cast<std::size_t>(t.N));
  parallel_for(t.N, [&](int j) { out[j] = components(t, hat, j); });
  return out;
}

std::vector<int> l_j_image(const FractalTriple& t, const BoundaryGraph& hat, int j,
                           const std::vector<int>& b, int n) {
  if (j < 0 || j >= t.N) throw InvalidInput("boundary index out of range");
  const Graph lifted = lift(t, hat);
  std::vector<int> cur;
  for (int v : b)
    if (v != j) cur.push_back(v);
  std::sort(cur.begin(), cur.end());
  for (int step = 0; step < n; ++step) {
    std::set<int> next;
    for (int v : cur) {
      const auto entry = l_map_entry(t, lifted, j, v);
      next.insert(entry.begin(), entry.end());
    }
    cur.assign(next.begin(), next.end());
  }
  return cur;
}

std::vector<int> l_j_image(const FractalTriple& t, int j, const std::vector<int>& b, int n) {
  return l_j_image(t, hat_graph(t), j, b, n);
}

}  // namespace eigenform
