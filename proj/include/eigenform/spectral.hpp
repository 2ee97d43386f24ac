#pragma once

#include "eigenform/graphs.hpp"
#include "eigenform/linalg.hpp"
#include "eigenform/renorm.hpp"

namespace eigenform {

struct PerronPair {
  Vector vector;  // nonnegative, sup-norm 1
  double value = 0.0;
  int iterations = 0;
  bool used_fallback = false;
};

/// Perron eigenpair of a nonnegative matrix with a positive Perron vector.
///
/// Power iteration from the all-ones vector with a Rayleigh-quotient
/// eigenvalue; stops when the sup-normalized direction moves by less than
/// 1e-13. On stagnation falls back to a dense eigensolver.
PerronPair perron_vector(const Matrix& a);

struct PositivePerron {
  Vector u_bar;  // zero at P_j, positive elsewhere, sup-norm 1
  double l = 0.0;
};

/// Perron pair of T_j on {u : u(P_j) = 0}. Throws InvalidInput unless the
/// form is positive.
PositivePerron perron_positive(const HarmonicStructure& hs, int j);

/// Perron data attached to the node (j, s).
struct PerronData {
  int j = 0;
  int s = 0;
  int period = 1;
  Vector u_bar;    // supported on C'_{j,s}, positive there, sup-norm 1
  Vector u_tilde;  // T_j^{period}(u_bar): supported on C_{j,s}, positive there
  double l = 0.0;
};

/// Perron pair of g~_{j,s} o T_j^{n_{j,s}} on vectors supported in C'_{j,s}.
/// Throws ConsistencyFailure if the restricted operator is not entrywise
/// positive or u_tilde is not C_{j,s}-positive.
PerronData perron_component(const HarmonicStructure& hs, const ComponentData& comp, int s);

/// g_{j,s}(u) = (u - u(P_j)) restricted to C_{j,s}.
Vector project_g(const Vector& u, const ComponentData& comp, int s);
/// g~_{j,s}(u) = u restricted to C'_{j,s}.
Vector project_g_tilde(const Vector& u, const ComponentData& comp, int s);

/// pi_{j,s}(u): limit coefficient of T_j^{h n}(u) / l^{h-1} against u_tilde.
/// u must vanish off C_{j,s}. Throws NumericalFailure without convergence.
double pi_limit(const HarmonicStructure& hs, const PerronData& pd, const Vector& u,
                int max_iter = 100000);

}  // namespace eigenform
