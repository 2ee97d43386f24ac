#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eigenform/graph.hpp"

namespace eigenform {

/// Combinatorial fractal triple (V0, V1, Psi).
///
/// V1 is encoded by integer ids 0..num_v1-1 with identifications already
/// applied; ids 0..N-1 are the boundary points P_1..P_N in order. Cell i is
/// the list cells[i][p] = psi_i(P_p).
struct FractalTriple {
  std::string name;
  int N = 0;
  int k = 0;
  int num_v1 = 0;
  std::vector<std::vector<int>> cells;

  bool is_boundary(int v) const { return v >= 0 && v < N; }
};

/// Strictly positive weight per cell.
class Weights {
 public:
  Weights() = default;
  /// Throws InvalidInput unless every entry is finite and > 0.
  explicit Weights(std::vector<double> r);
  static Weights uniform(int k, double value = 1.0);

  int size() const { return static_cast<int>(r_.size()); }
  double operator[](int i) const { return r_[static_cast<std::size_t>(i)]; }
  std::span<const double> values() const { return r_; }

 private:
  std::vector<double> r_;
};

struct Violation {
  std::string code;
  std::string message;
};
using ValidationReport = std::vector<Violation>;

/// Lists every violated triple axiom; an empty report means valid.
ValidationReport validate(const FractalTriple& triple);

/// Throws InvalidInput carrying all violations when the triple is invalid.
void require_valid(const FractalTriple& triple);
void require_weights(const FractalTriple& triple, const Weights& r);

/// Edge {i1,i2} iff cells i1 and i2 share a vertex.
Graph cell_graph(const FractalTriple& triple);

struct ConnectivityFlags {
  bool a_connected = false;
  bool o_connected = false;
};
ConnectivityFlags connectivity_flags(const FractalTriple& triple);

/// Built-in corpus: "gasket", "vicsek", "tree_gasket".
FractalTriple builtin(std::string_view name);
std::vector<std::string> builtin_names();

/// Position of the word (i_1..i_n) among the cells of level_triple. Words are
/// in lexicographic order except that the constant word j^n trades places
/// with slot j, so the fixed-point cells come first.
int level_cell_index(int k, int N, const std::vector<int>& word);

/// The n-level triple F_n with psi_{i_1..i_n} = psi_{i_1} o ... o psi_{i_n},
/// cells ordered by level_cell_index. Boundary ids stay 0..N-1.
FractalTriple level_triple(const FractalTriple& triple, int n);

/// Product weights r^n on the cells of level_triple(triple, n).
Weights level_weights(const FractalTriple& triple, const Weights& r, int n);

}  // namespace eigenform
