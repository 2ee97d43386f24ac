#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eigenform/graphs.hpp"
#include "eigenform/renorm.hpp"
#include "eigenform/solver.hpp"
#include "eigenform/spectral.hpp"

namespace eigenform {

inline constexpr double kFunctionalTolerance = 1e-8;
inline constexpr double kRankTolerance = 1e-10;

struct StabilityOptions {
  double functional_tol = kFunctionalTolerance;
  double rank_tol = kRankTolerance;
  /// Residual tolerance used when decide_uniqueness verifies its input.
  double eigen_tol = 1e-8;
};

/// Orthonormal basis (columns) of the smallest subspace containing `seed`
/// and invariant under every cell operator. A zero seed gives 0 columns.
Matrix orbit_span(const HarmonicStructure& hs, const Vector& seed, double rank_tol = kRankTolerance);

/// Coefficient vector of phi_{j,s}(u) = L_E(g_{j,s}(u))(P_j), with j = comp.j.
Vector harmonicity_functional_vector(const DirichletForm& form, const ComponentData& comp, int s);
double harmonicity_functional(const DirichletForm& form, const ComponentData& comp, int s,
                              const Vector& u);

struct NodeId {
  int j = 0;
  int s = 0;
  friend bool operator==(const NodeId&, const NodeId&) = default;
};

/// Reachability digraph on the nodes (j, s): edge a -> b iff phi_b is nonzero
/// somewhere on the T-invariant span generated by u_tilde_a.
struct StabilityDigraph {
  std::vector<NodeId> nodes;
  std::vector<PerronData> payload;
  std::vector<int> span_dimension;
  /// magnitude[a][b]: |phi_b| on span(a), relative to max coefficient and sup-norm.
  std::vector<std::vector<double>> magnitude;
  std::vector<std::vector<char>> adjacency;
  std::vector<std::string> warnings;

  int size() const { return static_cast<int>(nodes.size()); }
  int index_of(int j, int s) const;
  /// Edges a -> b with a != b.
  std::vector<std::pair<int, int>> edges() const;
};

/// Node order: j ascending, then s ascending. Per-source work runs on an
/// OpenMP team (see EIGENFORM_LAB_THREADS).
StabilityDigraph stability_digraph(const HarmonicStructure& hs, const std::vector<ComponentData>& comps,
                                   const StabilityOptions& options = {});
/// Single-threaded reference; produces identical output.
StabilityDigraph stability_digraph_serial(const HarmonicStructure& hs,
                                          const std::vector<ComponentData>& comps,
                                          const StabilityOptions& options = {});

struct SccDecomposition {
  /// Components sorted internally, ordered by smallest member.
  std::vector<std::vector<int>> components;
  std::vector<int> component_of;
  /// Indices into `components` with no edge leaving them.
  std::vector<int> sinks;
};

/// Tarjan's algorithm; self-loops are ignored.
SccDecomposition strongly_connected_components(const std::vector<std::vector<char>>& adjacency);
std::vector<int> forward_closure(const std::vector<std::vector<char>>& adjacency,
                                 const std::vector<int>& seeds);
/// No edge leaves `set` (the stability condition on node sets).
bool is_closed(const std::vector<std::vector<char>>& adjacency, const std::vector<int>& set);

struct StabilityVerdict {
  bool unique = false;
  double rho = 0.0;
  int sink_scc_count = 0;
  /// Node indices of every sink SCC.
  std::vector<std::vector<int>> sink_sccs;
  /// Two disjoint nonempty closed node sets when nonunique.
  std::optional<std::pair<std::vector<int>, std::vector<int>>> witnesses;
  StabilityDigraph digraph;
  std::vector<ComponentData> components;
  /// Verdict of the positive-case path on U, when E is positive.
  std::optional<bool> positive_case_unique;
};

/// Verifies E (InvalidInput if it is not an eigenform), builds the digraph and
/// counts sink SCCs. Throws ConsistencyFailure if the positive-case path
/// disagrees.
StabilityVerdict decide_uniqueness(const FractalTriple& triple, const DirichletForm& form,
                                   const Weights& r, const StabilityOptions& options = {});

/// Digraph on U for a positive form: seeds u_bar_j, functionals L_E(.)(P_j').
std::vector<std::vector<char>> positive_case_digraph(const HarmonicStructure& hs,
                                                     const StabilityOptions& options = {});

/// Quadratic form sum d_{ab} (u_a - u_b)^2 with signed coefficients.
struct PenaltyForm {
  int n = 0;
  std::vector<double> d;  // packed pair order
  /// ell with E_{j,s}(u) = (ell . u)^2.
  Vector functional;

  double coeff(int a, int b) const;
  double energy(const Vector& u) const;
};

/// E_{j,s}(u) = (L_E(T_j^{n_{j,s}}(g_{j,s}(u)))(P_j))^2 as a pair form
/// supported on G^. Throws ConsistencyFailure if the polarization does not
/// reproduce the square or puts weight outside G^.
PenaltyForm penalty_form(const HarmonicStructure& hs, const ComponentData& comp, int s,
                         const BoundaryGraph& hat);

struct Exploration {
  /// Nodes whose penalty forms were subtracted.
  std::vector<int> perturbed_nodes;
  /// Absolute multiplier applied to E''.
  double delta = 0.0;
  int retries = 0;
  DirichletForm start;
  EigenResult result;
  EigenResult verification;
  bool verified = false;
  bool proportional = false;
};

/// Starts the normalized iteration from E - delta * s * E'', with E'' the sum
/// of penalty forms over the second witness (over the sink SCC when unique) and
/// s = min positive coefficient of E / max |d(E'')|, so relative delta < 1
/// keeps the start inside the cone. delta = 0 returns E itself.
Exploration explore_nonuniqueness(const FractalTriple& triple, const Weights& r,
                                  const DirichletForm& form, const StabilityVerdict& verdict,
                                  double delta = 0.25, const SolveOptions& options = {});

}  // namespace eigenform
