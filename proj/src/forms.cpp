#include "eigenform/forms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "eigenform/errors.hpp"

namespace eigenform {

std::size_t pair_index(int n, int a, int b) {
  if (a > b) std::swap(a, b);
  // Pairs before row a: sum_{t<a} (n-1-t).
  const auto row_start = static_cast<std::size_t>(a) * (2 * n - a - 1) / 2;
  return row_start + static_cast<std::size_t>(b - a - 1);
}

std::vector<std::pair<int, int>> pair_list(int n) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) out.emplace_back(a, b);
  return out;
}

DirichletForm::DirichletForm(int n) : n_(n) {
  if (n < 1) throw InvalidInput("form size must be positive");
  c_.assign(static_cast<std::size_t>(n) * (n - 1) / 2, 0.0);
}

DirichletForm DirichletForm::uniform(int n, double c) {
  DirichletForm form(n);
  for (auto [a, b] : pair_list(n)) form.set(a, b, c);
  return form;
}

DirichletForm DirichletForm::from_packed(int n, std::vector<double> packed) {
  DirichletForm form(n);
  if (packed.size() != form.c_.size())
    throw InvalidInput("expected " + std::to_string(form.c_.size()) + " pair coefficients");
  const auto pairs = pair_list(n);
  for (std::size_t i = 0; i < pairs.size(); ++i) form.set(pairs[i].first, pairs[i].second, packed[i]);
  return form;
}

double DirichletForm::coeff(int a, int b) const {
  if (a == b) return 0.0;
  return c_[pair_index(n_, a, b)];
}

void DirichletForm::set(int a, int b, double c) {
  if (a == b || a < 0 || b < 0 || a >= n_ || b >= n_)
    throw InvalidInput("invalid coefficient pair {" + std::to_string(a) + "," + std::to_string(b) + "}");
  if (!std::isfinite(c) || c < 0.0)
    throw InvalidInput("coefficient for {" + std::to_string(a) + "," + std::to_string(b) +
                       "} must be finite and nonnegative");
  c_[pair_index(n_, a, b)] = c;
}

double DirichletForm::max_coefficient() const {
  return c_.empty() ? 0.0 : *std::max_element(c_.begin(), c_.end());
}

double DirichletForm::total() const { return std::accumulate(c_.begin(), c_.end(), 0.0); }

DirichletForm DirichletForm::scaled(double factor) const {
  DirichletForm out = *this;
  for (double& c : out.c_) c *= factor;
  return out;
}

bool DirichletForm::is_positive(double eps) const {
  const double threshold = eps * max_coefficient();
  return max_coefficient() > 0.0 &&
         std::all_of(c_.begin(), c_.end(), [&](double c) { return c > threshold; });
}

Matrix DirichletForm::coefficient_matrix() const {
  Matrix m = Matrix::Zero(n_, n_);
  for (auto [a, b] : pair_list(n_)) m(a, b) = m(b, a) = coeff(a, b);
  return m;
}

double energy(const DirichletForm& form, const Vector& u) {
  double sum = 0.0;
  for (auto [a, b] : pair_list(form.size())) {
    const double d = u[a] - u[b];
    sum += form.coeff(a, b) * d * d;
  }
  return sum;
}

Matrix laplacian_matrix(const DirichletForm& form) {
  Matrix m = form.coefficient_matrix();
  for (int j = 0; j < form.size(); ++j) m(j, j) = -m.row(j).sum();
  return m;
}

Vector laplacian(const DirichletForm& form, const Vector& u) { return laplacian_matrix(form) * u; }

Graph support_graph(const DirichletForm& form, double eps) {
  Graph g(form.size());
  const double threshold = eps * form.max_coefficient();
  for (auto [a, b] : pair_list(form.size()))
    if (form.coeff(a, b) > threshold) g.add_edge(a, b);
  return g;
}

bool is_irreducible(const DirichletForm& form, double eps) {
  return support_graph(form, eps).is_connected();
}

bool is_harmonic_at(const DirichletForm& form, const Vector& u, int j, double tol) {
  const double scale = form.max_coefficient() * oscillation(u);
  if (scale == 0.0) return true;
  return std::abs(laplacian(form, u)[j]) <= tol * scale;
}

}  // namespace eigenform
