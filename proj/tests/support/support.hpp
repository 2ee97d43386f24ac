#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "eigenform/fractal.hpp"
#include "eigenform/forms.hpp"
#include "eigenform/renorm.hpp"
#include "eigenform/uniqueness.hpp"

namespace testing_support {

using eigenform::DirichletForm;
using eigenform::FractalTriple;
using eigenform::Graph;
using eigenform::Matrix;
using eigenform::Vector;
using eigenform::Weights;

/// Seeded generator; every suite fixes its own seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool coin() { return integer(0, 1) == 1; }

  Vector vector(int n, double lo = -1.0, double hi = 1.0);
  /// Nonconstant vector with entries in [-1,1].
  Vector nonconstant(int n);
  /// Nonempty random subset of `pool`, sorted.
  std::vector<int> subset(const std::vector<int>& pool);
  Weights weights(int k, double lo = 0.5, double hi = 2.0);
  /// Coefficients in [lo,hi] on the edges of g, zero elsewhere.
  DirichletForm form_on(const Graph& g, double lo = 0.2, double hi = 5.0);

  /// Random valid triple with N in [2,4] and up to N+2 cells.
  FractalTriple triple();

 private:
  std::mt19937_64 engine_;
};

/// A corpus triple with weights and verified eigenforms for them.
struct EigenCase {
  std::string label;
  FractalTriple triple;
  Weights weights;
  std::vector<DirichletForm> forms;
  double rho = 0.0;
};

/// Gasket with several weight vectors, the tree-like Gasket family (a,b,0)
/// and Vicsek with a unit and an explored eigenform. Every form is verified.
std::vector<EigenCase> eigen_cases(std::uint64_t seed);

/// Trace of the two-level network on V0, computed on an independently glued
/// copy of F_2 with Gauss-Seidel sweeps and recovered by polarization.
DirichletForm two_level_trace_oracle(const FractalTriple& t, const DirichletForm& form, const Weights& r);

/// Stability edges by enumerating every word of length <= max_len applied to
/// each u_tilde and testing each harmonicity functional.
std::vector<std::vector<char>> word_enumeration_digraph(const eigenform::HarmonicStructure& hs,
                                                        const std::vector<eigenform::ComponentData>& comps,
                                                        const eigenform::StabilityDigraph& dg, int max_len,
                                                        double tol = eigenform::kFunctionalTolerance);

/// Brute force over all subsets: two disjoint nonempty closed sets exist.
bool has_disjoint_closed_sets(const std::vector<std::vector<char>>& adjacency);
/// Brute force: every closed set is a union of SCCs that contains everything
/// reachable from it, and vice versa.
bool closed_sets_match_scc_unions(const std::vector<std::vector<char>>& adjacency);

std::vector<std::vector<char>> random_digraph(Rng& rng, int n, double density);

/// Outcome of one randomized property suite.
struct PropertyResult {
  std::string name;
  int draws = 0;
  int failures = 0;
  double worst = 0.0;
  std::string first_failure;

  bool passed() const { return draws > 0 && failures == 0; }
  void record(bool ok, double err, const std::string& what);
};

/// Identity suites over the eigen cases, each with at least `draws` draws per
/// corpus triple.
std::vector<PropertyResult> identity_suites(std::uint64_t seed, int draws);

}  // namespace testing_support
