#pragma once

#include <utility>
#include <vector>

namespace eigenform {

/// Simple undirected loop-free graph on vertices 0..n-1.
///
/// Used for the cell graph, graphs on the boundary set, and lifted graphs on
/// the first-level vertex set. Adjacency is kept as a dense bit matrix plus
/// sorted neighbor lists rebuilt on demand; every graph in this library is
/// small (tens of vertices).
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  static Graph complete(int n);

  int vertex_count() const { return n_; }
  int edge_count() const;

  /// Adds {a,b}. Self-loops are rejected with InvalidInput.
  void add_edge(int a, int b);
  bool has_edge(int a, int b) const;

  /// Edges as (min,max) pairs in lexicographic order.
  std::vector<std::pair<int, int>> edges() const;
  std::vector<int> neighbors(int v) const;

  bool is_subgraph_of(const Graph& other) const;
  bool is_connected() const;

  /// Components of the subgraph induced by vertices with mask[v] != 0.
  /// Each component is sorted; components are ordered by their smallest vertex.
  std::vector<std::vector<int>> components(const std::vector<char>& mask) const;
  std::vector<std::vector<int>> components() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_;
  }

 private:
  int n_ = 0;
  std::vector<char> adj_;
};

/// Boundary graphs (on V0) use the same representation.
using BoundaryGraph = Graph;

}  // namespace eigenform
