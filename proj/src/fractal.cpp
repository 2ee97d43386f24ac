#include "eigenform/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "eigenform/errors.hpp"

namespace eigenform {

Weights::Weights(std::vector<double> r) : r_(std::move(r)) {
  for (std::size_t i = 0; i < r_.size(); ++i) {
    if (!std::isfinite(r_[i]) || r_[i] <= 0.0) {
      std::ostringstream os;
      os << "weight r[" << i << "] = " << r_[i] << " is not strictly positive";
      throw InvalidInput(os.str());
    }
  }
}

Weights Weights::uniform(int k, double value) {
  return Weights(std::vector<double>(static_cast<std::size_t>(k), value));
}

namespace {

void add(ValidationReport& report, std::string code, std::string message) {
  report.push_back({std::move(code), std::move(message)});
}

// Structural checks that must pass before any index arithmetic is safe.
bool check_shape(const FractalTriple& t, ValidationReport& report) {
  bool ok = true;
  if (t.N < 2) {
    add(report, "boundary_size", "N = " + std::to_string(t.N) + " must be at least 2");
    ok = false;
  }
  if (t.k < t.N) {
    add(report, "cell_count", "k = " + std::to_string(t.k) + " must be at least N = " +
                                  std::to_string(t.N));
    ok = false;
  }
  if (t.num_v1 < t.N) {
    add(report, "vertex_count", "vertices = " + std::to_string(t.num_v1) +
                                    " is smaller than N = " + std::to_string(t.N));
    ok = false;
  }
  if (static_cast<int>(t.cells.size()) != t.k) {
    add(report, "cell_count", "expected k = " + std::to_string(t.k) + " cells, found " +
                                  std::to_string(t.cells.size()));
    ok = false;
  }
  for (std::size_t i = 0; i < t.cells.size(); ++i) {
    const auto& cell = t.cells[i];
    if (static_cast<int>(cell.size()) != t.N) {
      add(report, "cell_size", "cell " + std::to_string(i) + " has " +
                                   std::to_string(cell.size()) + " entries, expected N = " +
                                   std::to_string(t.N));
      ok = false;
      continue;
    }
    for (std::size_t p = 0; p < cell.size(); ++p) {
      if (cell[p] < 0 || cell[p] >= t.num_v1) {
        add(report, "vertex_range", "cell " + std::to_string(i) + " position " +
                                        std::to_string(p) + " has id " + std::to_string(cell[p]) +
                                        " outside [0, " + std::to_string(t.num_v1) + ")");
        ok = false;
      }
    }
  }
  return ok;
}

}  // namespace

ValidationReport validate(const FractalTriple& t) {
  ValidationReport report;
  if (!check_shape(t, report)) return report;

  for (int i = 0; i < t.k; ++i) {
    const auto& cell = t.cells[i];
    for (int p = 0; p < t.N; ++p)
      for (int q = p + 1; q < t.N; ++q)
        if (cell[p] == cell[q])
          add(report, "cell_not_injective",
              "cell " + std::to_string(i) + " maps positions " + std::to_string(p) + " and " +
                  std::to_string(q) + " to the same vertex " + std::to_string(cell[p]));
  }

  for (int j = 0; j < t.N; ++j) {
    if (t.cells[j][j] != j)
      add(report, "fixed_point", "fixed-point condition at j=" + std::to_string(j) +
                                     ": cells[" + std::to_string(j) + "][" + std::to_string(j) +
                                     "] = " + std::to_string(t.cells[j][j]));
    for (int i = 0; i < t.k; ++i) {
      if (i == j) continue;
      for (int p = 0; p < t.N; ++p)
        if (t.cells[i][p] == j)
          add(report, "boundary_in_other_cell",
              "boundary vertex " + std::to_string(j) + " appears in cell " + std::to_string(i));
    }
  }

  std::vector<char> used(static_cast<std::size_t>(t.num_v1), 0);
  for (const auto& cell : t.cells)
    for (int v : cell) used[v] = 1;
  for (int v = 0; v < t.num_v1; ++v)
    if (!used[v]) add(report, "vertex_unused", "vertex " + std::to_string(v) + " lies in no cell");

  if (!cell_graph(t).is_connected()) add(report, "cell_graph_disconnected", "cell graph disconnected");
  return report;
}

void require_valid(const FractalTriple& triple) {
  const auto report = validate(triple);
  if (report.empty()) return;
  std::string msg = "invalid fractal triple '" + triple.name + "':";
  for (const auto& v : report) msg += "\n  " + v.message;
  throw InvalidInput(msg);
}

void require_weights(const FractalTriple& triple, const Weights& r) {
  if (r.size() != triple.k)
    throw InvalidInput("expected " + std::to_string(triple.k) + " weights, got " +
                       std::to_string(r.size()));
}

Graph cell_graph(const FractalTriple& t) {
  Graph g(static_cast<int>(t.cells.size()));
  for (std::size_t a = 0; a < t.cells.size(); ++a)
    for (std::size_t b = a + 1; b < t.cells.size(); ++b) {
      bool shared = false;
      for (int x : t.cells[a])
        for (int y : t.cells[b]) shared = shared || x == y;
      if (shared) g.add_edge(static_cast<int>(a), static_cast<int>(b));
    }
  return g;
}

ConnectivityFlags connectivity_flags(const FractalTriple& t) {
  const Graph g = cell_graph(t);
  ConnectivityFlags flags;

  flags.a_connected = true;
  for (int j = 0; j < t.N && flags.a_connected; ++j) {
    std::vector<char> mask(static_cast<std::size_t>(t.k), 1);
    mask[j] = 0;
    const auto comps = g.components(mask);
    std::vector<int> label(static_cast<std::size_t>(t.k), -1);
    for (std::size_t c = 0; c < comps.size(); ++c)
      for (int v : comps[c]) label[v] = static_cast<int>(c);
    for (int j1 = 0; j1 < t.N; ++j1)
      for (int j2 = j1 + 1; j2 < t.N; ++j2)
        if (j1 != j && j2 != j && label[j1] != label[j2]) flags.a_connected = false;
  }

  bool disjoint = true;
  for (int a = 0; a < t.N; ++a)
    for (int b = a + 1; b < t.N; ++b) disjoint = disjoint && !g.has_edge(a, b);
  std::vector<char> interior(static_cast<std::size_t>(t.k), 0);
  for (int i = t.N; i < t.k; ++i) interior[i] = 1;
  const bool interior_connected = t.k > t.N && g.components(interior).size() == 1;
  flags.o_connected = disjoint && interior_connected;
  return flags;
}

FractalTriple builtin(std::string_view name) {
  if (name == "gasket") {
    // Midpoints: 3 = P1P2, 4 = P1P3, 5 = P2P3.
    return {"gasket", 3, 3, 6, {{0, 3, 4}, {3, 1, 5}, {4, 5, 2}}};
  }
  if (name == "tree_gasket") {
    // Gasket with the contact between cells 2 and 3 split into ids 5 and 6.
    return {"tree_gasket", 3, 3, 7, {{0, 3, 4}, {3, 1, 5}, {4, 6, 2}}};
  }
  if (name == "vicsek") {
    // Square corners P1..P4 in cyclic order; corner cells 0..3 touch the
    // center cell 4 at their corner opposite to P_j.
    return {"vicsek",
            4,
            5,
            16,
            {{0, 4, 6, 5}, {7, 1, 8, 9}, {10, 11, 2, 12}, {13, 14, 15, 3}, {6, 9, 10, 14}}};
  }
  throw InvalidInput("unknown builtin fractal '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names() { return {"gasket", "vicsek", "tree_gasket"}; }

namespace {

// Swaps lexicographic slot j with the slot of the constant word j^n.
template <class T>
void move_fixed_words_first(std::vector<T>& items, int N, int k, int n) {
  if (n < 2) return;
  int stride = 0;
  for (int t = 0; t < n; ++t) stride = stride * k + 1;
  for (int j = 1; j < N; ++j) std::swap(items[static_cast<std::size_t>(j)], items[static_cast<std::size_t>(j * stride)]);
}

}  // namespace

int level_cell_index(int k, int N, const std::vector<int>& word) {
  if (word.empty()) throw InvalidInput("empty word");
  int lex = 0;
  for (int i : word) {
    if (i < 0 || i >= k) throw InvalidInput("word letter out of range");
    lex = lex * k + i;
  }
  if (word.size() == 1) return lex;
  const bool constant = std::all_of(word.begin(), word.end(), [&](int i) { return i == word.front(); });
  if (constant && word.front() < N) return word.front();
  int stride = 0;
  for (std::size_t t = 0; t < word.size(); ++t) stride = stride * k + 1;
  if (lex > 0 && lex < N) return lex * stride;
  return lex;
}

FractalTriple level_triple(const FractalTriple& base, int n) {
  if (n < 1) throw InvalidInput("level must be >= 1");
  FractalTriple cur = base;
  for (int level = 2; level <= n; ++level) {
    FractalTriple next;
    next.name = base.name + "^" + std::to_string(level);
    next.N = base.N;
    next.k = base.k * cur.k;
    // Points psi_i(q), q in V^(level-1). Distinct i only meet at images of
    // boundary points, and those are identified exactly as in V^(1).
    std::map<std::pair<int, int>, int> ids;
    auto id_of = [&](int i, int q) {
      const std::pair<int, int> key = q < base.N ? std::pair{-1, base.cells[i][q]} : std::pair{i, q};
      auto [it, inserted] = ids.try_emplace(key, 0);
      if (inserted) it->second = key.first == -1 && key.second < base.N ? key.second : -1;
      return it;
    };
    for (int j = 0; j < base.N; ++j) id_of(j, j);
    int counter = base.N;
    for (int i = 0; i < base.k; ++i)
      for (int q = 0; q < cur.num_v1; ++q) {
        auto it = id_of(i, q);
        if (it->second < 0) it->second = counter++;
      }
    next.num_v1 = counter;
    next.cells.reserve(static_cast<std::size_t>(next.k));
    for (int i = 0; i < base.k; ++i)
      for (int w = 0; w < cur.k; ++w) {
        std::vector<int> cell;
        for (int h = 0; h < base.N; ++h) cell.push_back(id_of(i, cur.cells[w][h])->second);
        next.cells.push_back(std::move(cell));
      }
    cur = std::move(next);
  }
  move_fixed_words_first(cur.cells, base.N, base.k, n);
  return cur;
}

Weights level_weights(const FractalTriple& base, const Weights& r, int n) {
  if (n < 1) throw InvalidInput("level must be >= 1");
  if (static_cast<int>(r.size()) != base.k) throw InvalidInput("weights size does not match cell count");
  std::vector<double> cur(r.values().begin(), r.values().end());
  for (int level = 2; level <= n; ++level) {
    std::vector<double> next;
    next.reserve(cur.size() * r.values().size());
    for (double ri : r.values())
      for (double rw : cur) next.push_back(ri * rw);
    cur = std::move(next);
  }
  move_fixed_words_first(cur, base.N, base.k, n);
  return Weights(std::move(cur));
}

}  // namespace eigenform
