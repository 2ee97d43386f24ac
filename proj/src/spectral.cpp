#include "eigenform/spectral.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "eigenform/errors.hpp"

namespace eigenform {

namespace {

constexpr double kDirectionTolerance = 1e-13;
constexpr int kPowerIterations = 20000;

PerronPair dense_perron(const Matrix& a) {
  const Eigen::EigenSolver<Matrix> solver(a);
  if (solver.info() != Eigen::Success) throw NumericalFailure("dense eigensolver failed");
  const auto values = solver.eigenvalues();
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < values.size(); ++i)
    if (values[i].real() > values[best].real()) best = i;
  Vector v = solver.eigenvectors().col(best).real();
  if (v.sum() < 0) v = -v;
  const double scale = sup_norm(v);
  if (scale == 0.0 || v.minCoeff() < -1e-10 * scale)
    throw NumericalFailure("Perron vector is not nonnegative");
  PerronPair out;
  out.vector = (v / scale).cwiseMax(0.0);
  out.value = values[best].real();
  out.used_fallback = true;
  return out;
}

}  // namespace

PerronPair perron_vector(const Matrix& a) {
  const auto n = a.rows();
  if (n == 0 || a.cols() != n) throw InvalidInput("Perron vector needs a nonempty square matrix");
  Vector x = Vector::Ones(n);
  for (int it = 1; it <= kPowerIterations; ++it) {
    Vector y = a * x;
    const double scale = sup_norm(y);
    if (scale == 0.0) break;
    y /= scale;
    const double change = sup_norm(y - x);
    x = std::move(y);
    if (change < kDirectionTolerance) {
      PerronPair out;
      out.value = x.dot(a * x) / x.dot(x);
      out.vector = std::move(x);
      out.iterations = it;
      return out;
    }
  }
  return dense_perron(a);
}

PositivePerron perron_positive(const HarmonicStructure& hs, int j) {
  if (!hs.form().is_positive())
    throw InvalidInput("perron_positive requires a form with all coefficients positive");
  const int n = hs.boundary_size();
  std::vector<int> idx;
  for (int h = 0; h < n; ++h)
    if (h != j) idx.push_back(h);
  const Matrix& t = hs.cell_operator(j).matrix;
  Matrix a(idx.size(), idx.size());
  for (std::size_t p = 0; p < idx.size(); ++p)
    for (std::size_t q = 0; q < idx.size(); ++q) a(p, q) = t(idx[p], idx[q]);
  const PerronPair pair = perron_vector(a);
  PositivePerron out;
  out.u_bar = Vector::Zero(n);
  for (std::size_t p = 0; p < idx.size(); ++p) out.u_bar[idx[p]] = pair.vector[p];
  out.l = pair.value;
  return out;
}

PerronData perron_component(const HarmonicStructure& hs, const ComponentData& comp, int s) {
  const int n = hs.boundary_size();
  const int j = comp.j;
  const auto& cp = comp.c_prime[s];
  const auto& c = comp.components[s];
  const int period = comp.periods[s];
  const Matrix p = hs.power(j, period);

  Matrix a(cp.size(), cp.size());
  for (std::size_t x = 0; x < cp.size(); ++x)
    for (std::size_t y = 0; y < cp.size(); ++y) a(x, y) = p(cp[x], cp[y]);
  if (a.minCoeff() <= 1e-12 * std::max(1.0, a.maxCoeff()))
    fail_consistency("g~ o T_j^n is not entrywise positive on C' (j=" + std::to_string(j) +
                     ", s=" + std::to_string(s) + ")");

  const PerronPair pair = perron_vector(a);
  PerronData pd;
  pd.j = j;
  pd.s = s;
  pd.period = period;
  pd.l = pair.value;
  pd.u_bar = Vector::Zero(n);
  for (std::size_t x = 0; x < cp.size(); ++x) pd.u_bar[cp[x]] = pair.vector[x];
  pd.u_tilde = p * pd.u_bar;

  const double scale = sup_norm(pd.u_tilde);
  std::vector<char> in_c(static_cast<std::size_t>(n), 0);
  for (int v : c) in_c[v] = 1;
  for (int h = 0; h < n; ++h) {
    const double value = pd.u_tilde[h];
    if (in_c[h] && !(value > 1e-12 * scale))
      fail_consistency("u_tilde is not positive on C (j=" + std::to_string(j) + ", vertex " +
                       std::to_string(h) + ")");
    if (!in_c[h]) {
      if (std::abs(value) > 1e-12 * scale)
        fail_consistency("u_tilde leaks outside C (j=" + std::to_string(j) + ", vertex " +
                         std::to_string(h) + ")");
      pd.u_tilde[h] = 0.0;
    }
  }
  return pd;
}

Vector project_g(const Vector& u, const ComponentData& comp, int s) {
  Vector out = Vector::Zero(u.size());
  for (int v : comp.components[s]) out[v] = u[v] - u[comp.j];
  return out;
}

Vector project_g_tilde(const Vector& u, const ComponentData& comp, int s) {
  Vector out = Vector::Zero(u.size());
  for (int v : comp.c_prime[s]) out[v] = u[v];
  return out;
}

double pi_limit(const HarmonicStructure& hs, const PerronData& pd, const Vector& u, int max_iter) {
  const auto n = hs.boundary_size();
  if (u.size() != n) throw InvalidInput("vector has the wrong length");
  const double u_scale = sup_norm(u);
  if (u_scale == 0.0) return 0.0;
  for (int h = 0; h < n; ++h)
    if (pd.u_tilde[h] == 0.0 && std::abs(u[h]) > 1e-14 * u_scale)
      throw InvalidInput("pi_limit needs u supported on C_{j,s}");

  const Matrix p = hs.power(pd.j, pd.period);
  Vector x = p * u;  // h = 1
  for (int it = 0; it < max_iter; ++it) {
    Vector next = p * x / pd.l;
    const double change = sup_norm(next - x);
    x = std::move(next);
    if (change <= kDirectionTolerance * std::max(sup_norm(x), u_scale))
      return x.dot(pd.u_tilde) / pd.u_tilde.squaredNorm();
  }
  throw NumericalFailure("pi_limit did not converge");
}

}  // namespace eigenform
