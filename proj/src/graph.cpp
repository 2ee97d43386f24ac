#include "eigenform/graph.hpp"

#include <algorithm>
#include <string>

#include "eigenform/errors.hpp"

namespace eigenform {

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n) * n, 0) {
  if (n < 0) throw InvalidInput("graph size must be nonnegative");
}

Graph Graph::complete(int n) {
  Graph g(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) g.add_edge(a, b);
  return g;
}

int Graph::edge_count() const {
  int count = 0;
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b) count += adj_[a * n_ + b];
  return count;
}

void Graph::add_edge(int a, int b) {
  if (a < 0 || b < 0 || a >= n_ || b >= n_)
    throw InvalidInput("edge endpoint out of range: {" + std::to_string(a) + "," +
                       std::to_string(b) + "}");
  if (a == b) throw InvalidInput("self-loop at vertex " + std::to_string(a));
  adj_[a * n_ + b] = 1;
  adj_[b * n_ + a] = 1;
}

bool Graph::has_edge(int a, int b) const {
  if (a < 0 || b < 0 || a >= n_ || b >= n_) return false;
  return adj_[a * n_ + b] != 0;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b)
      if (adj_[a * n_ + b]) out.emplace_back(a, b);
  return out;
}

std::vector<int> Graph::neighbors(int v) const {
  std::vector<int> out;
  for (int w = 0; w < n_; ++w)
    if (adj_[v * n_ + w]) out.push_back(w);
  return out;
}

bool Graph::is_subgraph_of(const Graph& other) const {
  if (n_ != other.n_) return false;
  for (std::size_t i = 0; i < adj_.size(); ++i)
    if (adj_[i] && !other.adj_[i]) return false;
  return true;
}

bool Graph::is_connected() const { return components().size() <= 1; }

std::vector<std::vector<int>> Graph::components(const std::vector<char>& mask) const {
  std::vector<int> label(n_, -1);
  std::vector<std::vector<int>> out;
  for (int start = 0; start < n_; ++start) {
    if (!mask[start] || label[start] >= 0) continue;
    const int id = static_cast<int>(out.size());
    std::vector<int> comp{start};
    label[start] = id;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      const int v = comp[head];
      for (int w = 0; w < n_; ++w) {
        if (adj_[v * n_ + w] && mask[w] && label[w] < 0) {
          label[w] = id;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<std::vector<int>> Graph::components() const {
  return components(std::vector<char>(n_, 1));
}

}  // namespace eigenform
