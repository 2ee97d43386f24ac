#pragma once

#include <vector>

#include "eigenform/fractal.hpp"
#include "eigenform/graph.hpp"

namespace eigenform {

/// S(G): lift of a boundary graph into every cell, as a graph on V1.
/// With non_boundary_only, only cells i >= N are used (the graph G'_1 when G
/// is complete).
Graph lift(const FractalTriple& triple, const BoundaryGraph& g, bool non_boundary_only = false);

/// Vertices reachable from `source` along `lifted` where every intermediate
/// vertex is a non-boundary id. The source itself is included.
std::vector<char> reach_through_interior(const FractalTriple& triple, const Graph& lifted, int source);

/// Lambda(G): {P_a,P_b} iff they are joined by an S(G)-path through V1 \ V0.
BoundaryGraph lambda_graph(const FractalTriple& triple, const BoundaryGraph& g);

/// G~: {P_a,P_b} iff some vertex of cell a and some vertex of cell b are
/// connected in G'_1 (a shared vertex counts).
BoundaryGraph tilde_graph(const FractalTriple& triple);

/// Fixed point of Lambda reached from G~ (Lambda(G^) = G^). Throws
/// ConsistencyFailure if the iteration does not grow monotonically or does
/// not settle within N(N-1)/2 rounds.
BoundaryGraph hat_graph(const FractalTriple& triple);

/// Components of G^ on V0 \ {P_j} and the L_j dynamics on them.
///
/// Components are indexed s = 0..m_j-1 in order of their smallest vertex.
struct ComponentData {
  int j = 0;
  std::vector<std::vector<int>> components;
  /// L_j(C_s) = C_{beta[s]}.
  std::vector<int> beta;
  /// Cycle length of s under beta.
  std::vector<int> periods;
  std::vector<std::vector<int>> c_prime;
  std::vector<std::vector<int>> c_second;
  /// l_map[v] = L_j(P_v), sorted; empty for v = j.
  std::vector<std::vector<int>> l_map;

  int count() const { return static_cast<int>(components.size()); }
  /// Component index of boundary vertex v, -1 for v = j.
  int component_of(int v) const;
};

/// Throws ConsistencyFailure when beta is not a bijection, when some C'_s is
/// empty, or when a point of C''_s has a nonempty L_j^{n_s} image.
ComponentData components(const FractalTriple& triple, const BoundaryGraph& hat, int j);
ComponentData components(const FractalTriple& triple, int j);

/// ComponentData for every j in U; the per-j work runs in parallel.
std::vector<ComponentData> all_components(const FractalTriple& triple, const BoundaryGraph& hat);

/// L_j^n(B) for a boundary vertex set B (sorted, without j).
std::vector<int> l_j_image(const FractalTriple& triple, const BoundaryGraph& hat, int j,
                           const std::vector<int>& b, int n);
std::vector<int> l_j_image(const FractalTriple& triple, int j, const std::vector<int>& b, int n);

}  // namespace eigenform
