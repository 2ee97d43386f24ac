#pragma once

#include <utility>
#include <vector>

#include "eigenform/graph.hpp"
#include "eigenform/linalg.hpp"

namespace eigenform {

/// A coefficient counts as positive iff it exceeds this fraction of the
/// largest coefficient.
inline constexpr double kCoefficientTolerance = 1e-10;

/// Dirichlet form on V0: E(u) = sum_{a<b} c_{ab} (u_a - u_b)^2, c_{ab} >= 0.
///
/// Coefficients are stored densely over unordered pairs in lexicographic
/// order (0,1), (0,2), ..., (N-2,N-1).
class DirichletForm {
 public:
  DirichletForm() = default;
  explicit DirichletForm(int n);

  /// All pair coefficients equal to c.
  static DirichletForm uniform(int n, double c = 1.0);
  /// Packed pair coefficients in lexicographic pair order.
  static DirichletForm from_packed(int n, std::vector<double> packed);

  int size() const { return n_; }
  double coeff(int a, int b) const;
  /// Throws InvalidInput for a == b, out-of-range ids, negative or non-finite c.
  void set(int a, int b, double c);

  const std::vector<double>& packed() const { return c_; }
  double max_coefficient() const;
  /// Sum of coefficients (the l1 norm used for normalization).
  double total() const;
  DirichletForm scaled(double factor) const;

  /// All coefficients positive beyond the tolerance.
  bool is_positive(double eps = kCoefficientTolerance) const;
  bool is_zero() const { return max_coefficient() == 0.0; }

  /// Symmetric matrix of coefficients with zero diagonal.
  Matrix coefficient_matrix() const;

  friend bool operator==(const DirichletForm&, const DirichletForm&) = default;

 private:
  int n_ = 0;
  std::vector<double> c_;
};

/// Index of {a,b} in packed order.
std::size_t pair_index(int n, int a, int b);
/// All pairs (a<b) in packed order.
std::vector<std::pair<int, int>> pair_list(int n);

double energy(const DirichletForm& form, const Vector& u);

/// L_E(u)(P_j) = sum_{h != j} c_{jh} (u_h - u_j).
Vector laplacian(const DirichletForm& form, const Vector& u);
/// Matrix M with laplacian(form, u) = M u (negative of the graph Laplacian).
Matrix laplacian_matrix(const DirichletForm& form);

/// G0(E): edge iff the coefficient is positive beyond eps * max coefficient.
Graph support_graph(const DirichletForm& form, double eps = kCoefficientTolerance);
bool is_irreducible(const DirichletForm& form, double eps = kCoefficientTolerance);

/// |L_E(u)(P_j)| <= tol * (max coefficient) * osc(u); a zero scale counts as harmonic.
bool is_harmonic_at(const DirichletForm& form, const Vector& u, int j, double tol);

}  // namespace eigenform
