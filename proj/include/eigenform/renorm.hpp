#pragma once

#include <map>
#include <span>
#include <vector>

#include "eigenform/forms.hpp"
#include "eigenform/fractal.hpp"
#include "eigenform/linalg.hpp"

namespace eigenform {

/// Minimizer of the one-step energy over V1 under boundary constraints.
struct ExtensionResult {
  Vector values;  // indexed by V1 id
  double achieved_energy = 0.0;
};

/// T_{i;E;r}: row p expresses H_{1,E;r}(u)(cells[i][p]) linearly in u.
struct CellOperator {
  int cell = 0;
  Matrix matrix;
};

/// Weighted conductance Laplacian on V1: edge psi_i(P_a)-psi_i(P_b) carries
/// r_i * c_{ab}; coincident edges from different cells add up.
Matrix network_laplacian(const FractalTriple& triple, const DirichletForm& form, const Weights& r);

/// S_{1;r}(E)(v) = sum_i r_i E(v o psi_i).
double one_step_energy(const FractalTriple& triple, const DirichletForm& form, const Weights& r,
                       const Vector& v);

ExtensionResult harmonic_extension(const FractalTriple& triple, const DirichletForm& form,
                                   const Weights& r, const Vector& u);

/// Minimizes the one-step energy among v in R^{V1} with v = fixed on its keys.
ExtensionResult constrained_extension(const FractalTriple& triple, const DirichletForm& form,
                                      const Weights& r, const std::map<int, double>& fixed);

/// Lambda_r(E): trace of the V1 network on the boundary ids.
DirichletForm renormalize(const FractalTriple& triple, const DirichletForm& form, const Weights& r);

CellOperator cell_operator(const FractalTriple& triple, const DirichletForm& form, const Weights& r,
                           int i);

/// T_{i_1} o T_{i_2} o ... o T_{i_n} as the matrix product M_{i_1} ... M_{i_n}.
/// The empty word is the identity.
///
/// The n-level cell operator of F_n for the word (i_1..i_n) is the reverse
/// product T_{i_n} o ... o T_{i_1}; pass the reversed word to get it.
Matrix word_operator(const FractalTriple& triple, const DirichletForm& form, const Weights& r,
                     std::span<const int> word);

/// Harmonic extension data for one (E, r), factored once.
///
/// Holds the V1 extension matrix and the k cell operators; read-only after
/// construction and safe to share across threads.
class HarmonicStructure {
 public:
  /// Throws NumericalFailure when an interior vertex has no conductance path
  /// to the boundary.
  HarmonicStructure(FractalTriple triple, DirichletForm form, Weights r);

  const FractalTriple& triple() const { return triple_; }
  const DirichletForm& form() const { return form_; }
  const Weights& weights() const { return r_; }
  int boundary_size() const { return triple_.N; }
  int cell_count() const { return triple_.k; }

  /// num_v1 x N matrix H with H * u = harmonic extension of u.
  const Matrix& extension_matrix() const { return extension_; }
  const Matrix& network() const { return network_; }
  const DirichletForm& renormalized() const { return renormalized_; }

  const CellOperator& cell_operator(int i) const { return cells_[static_cast<std::size_t>(i)]; }
  Matrix word_operator(std::span<const int> word) const;
  Vector apply_word(std::span<const int> word, const Vector& u) const;
  /// T_i^n.
  Matrix power(int i, int n) const;

 private:
  FractalTriple triple_;
  DirichletForm form_;
  Weights r_;
  Matrix network_;
  Matrix extension_;
  DirichletForm renormalized_;
  std::vector<CellOperator> cells_;
};

}  // namespace eigenform
