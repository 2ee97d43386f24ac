#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eigenform/forms.hpp"
#include "eigenform/fractal.hpp"

namespace eigenform {

struct EigenCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct EigenResult {
  DirichletForm form;
  double rho = 0.0;
  /// max_c |Lambda_r(E) - rho E| / max coefficient of Lambda_r(E).
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string message;
  std::vector<EigenCheck> checks;
};

struct SolveOptions {
  double tol = 1e-12;
  int max_iter = 100000;
};

/// Normalized fixed-point iteration E <- Lambda_r(E) / ||Lambda_r(E)||_1 from
/// `init` (default: all coefficients 1). Non-convergence, loss of
/// irreducibility and singular interior systems are reported in the result,
/// not thrown.
EigenResult find_eigenform(const FractalTriple& triple, const Weights& r,
                           const std::optional<DirichletForm>& init = std::nullopt,
                           const SolveOptions& options = {});

/// Checks Lambda_r(E) = rho E: least-squares rho, relative residual,
/// r_j > rho on U, and G0(E) = G^. `converged` is true iff every check passes.
EigenResult verify_eigenform(const FractalTriple& triple, const Weights& r, const DirichletForm& form,
                             double tol = 1e-8);

/// Least-squares rho for image ~ rho * form over the packed coefficients.
double fit_eigenvalue(const DirichletForm& form, const DirichletForm& image);
double eigen_residual(const DirichletForm& form, const DirichletForm& image, double rho);

/// Normalized coefficient vectors agree within tol (sup-norm after l1 normalization).
bool proportional(const DirichletForm& a, const DirichletForm& b, double tol = 1e-8);

}  // namespace eigenform
