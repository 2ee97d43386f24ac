#include "eigenform/renorm.hpp"

#include <string>

#include "eigenform/errors.hpp"

namespace eigenform {

namespace {

void check_sizes(const FractalTriple& t, const DirichletForm& form, const Weights& r) {
  if (form.size() != t.N)
    throw InvalidInput("form has N = " + std::to_string(form.size()) + " but the triple has N = " +
                       std::to_string(t.N));
  require_weights(t, r);
}

// Every free vertex must reach a fixed one through positive conductances,
// otherwise the free block of the Laplacian is singular.
void check_reachability(const Matrix& network, const std::vector<char>& fixed) {
  const auto n = static_cast<int>(network.rows());
  std::vector<char> seen(fixed);
  std::vector<int> queue;
  for (int v = 0; v < n; ++v)
    if (fixed[v]) queue.push_back(v);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    for (int w = 0; w < n; ++w)
      if (!seen[w] && network(v, w) < 0.0) {
        seen[w] = 1;
        queue.push_back(w);
      }
  }
  for (int v = 0; v < n; ++v)
    if (!seen[v])
      throw NumericalFailure("singular interior block: vertex " + std::to_string(v) +
                             " has no conductance path to the constrained vertices");
}

struct Partition {
  std::vector<int> fixed;
  std::vector<int> free;
};

Partition partition(int n, const std::vector<char>& is_fixed) {
  Partition p;
  for (int v = 0; v < n; ++v) (is_fixed[v] ? p.fixed : p.free).push_back(v);
  return p;
}

Matrix submatrix(const Matrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  Matrix out(rows.size(), cols.size());
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b) out(a, b) = m(rows[a], cols[b]);
  return out;
}

// Solves K_FF x_F = -K_FB w for every column of w; returns the full extension.
Matrix extend(const Matrix& network, const Partition& p, const Matrix& boundary_values) {
  const auto n = network.rows();
  Matrix full = Matrix::Zero(n, boundary_values.cols());
  for (std::size_t a = 0; a < p.fixed.size(); ++a) full.row(p.fixed[a]) = boundary_values.row(a);
  if (p.free.empty()) return full;
  const Matrix kff = submatrix(network, p.free, p.free);
  const Matrix kfb = submatrix(network, p.free, p.fixed);
  const Eigen::PartialPivLU<Matrix> lu(kff);
  const Matrix interior = lu.solve(-kfb * boundary_values);
  for (std::size_t a = 0; a < p.free.size(); ++a) full.row(p.free[a]) = interior.row(a);
  return full;
}

DirichletForm read_trace(const Matrix& schur, int n) {
  DirichletForm out(n);
  double largest = 0.0;
  for (auto [a, b] : pair_list(n)) largest = std::max(largest, -schur(a, b));
  for (auto [a, b] : pair_list(n)) {
    const double c = -schur(a, b);
    out.set(a, b, c > kCoefficientTolerance * largest ? c : 0.0);
  }
  return out;
}

}  // namespace

Matrix network_laplacian(const FractalTriple& t, const DirichletForm& form, const Weights& r) {
  check_sizes(t, form, r);
  Matrix k = Matrix::Zero(t.num_v1, t.num_v1);
  for (int i = 0; i < t.k; ++i) {
    const auto& cell = t.cells[i];
    for (auto [a, b] : pair_list(t.N)) {
      const double g = r[i] * form.coeff(a, b);
      if (g == 0.0) continue;
      const int p = cell[a];
      const int q = cell[b];
      k(p, q) -= g;
      k(q, p) -= g;
      k(p, p) += g;
      k(q, q) += g;
    }
  }
  return k;
}

double one_step_energy(const FractalTriple& t, const DirichletForm& form, const Weights& r,
                       const Vector& v) {
  check_sizes(t, form, r);
  if (v.size() != t.num_v1) throw InvalidInput("function on V1 has the wrong length");
  double sum = 0.0;
  for (int i = 0; i < t.k; ++i) {
    Vector restricted(t.N);
    for (int p = 0; p < t.N; ++p) restricted[p] = v[t.cells[i][p]];
    sum += r[i] * energy(form, restricted);
  }
  return sum;
}

ExtensionResult harmonic_extension(const FractalTriple& t, const DirichletForm& form,
                                   const Weights& r, const Vector& u) {
  if (u.size() != t.N) throw InvalidInput("boundary data has the wrong length");
  std::map<int, double> fixed;
  for (int j = 0; j < t.N; ++j) fixed[j] = u[j];
  return constrained_extension(t, form, r, fixed);
}

ExtensionResult constrained_extension(const FractalTriple& t, const DirichletForm& form,
                                      const Weights& r, const std::map<int, double>& fixed) {
  if (fixed.empty()) throw InvalidInput("constrained extension needs at least one fixed vertex");
  const Matrix network = network_laplacian(t, form, r);
  std::vector<char> mask(static_cast<std::size_t>(t.num_v1), 0);
  for (const auto& [v, value] : fixed) {
    if (v < 0 || v >= t.num_v1) throw InvalidInput("fixed vertex " + std::to_string(v) + " out of range");
    mask[v] = 1;
  }
  check_reachability(network, mask);
  const Partition p = partition(t.num_v1, mask);
  Matrix w(static_cast<Eigen::Index>(p.fixed.size()), 1);
  for (std::size_t a = 0; a < p.fixed.size(); ++a) w(a, 0) = fixed.at(p.fixed[a]);
  ExtensionResult result;
  result.values = extend(network, p, w).col(0);
  result.achieved_energy = result.values.dot(network * result.values);
  return result;
}

DirichletForm renormalize(const FractalTriple& t, const DirichletForm& form, const Weights& r) {
  return HarmonicStructure(t, form, r).renormalized();
}

CellOperator cell_operator(const FractalTriple& t, const DirichletForm& form, const Weights& r,
                           int i) {
  return HarmonicStructure(t, form, r).cell_operator(i);
}

Matrix word_operator(const FractalTriple& t, const DirichletForm& form, const Weights& r,
                     std::span<const int> word) {
  return HarmonicStructure(t, form, r).word_operator(word);
}

HarmonicStructure::HarmonicStructure(FractalTriple triple, DirichletForm form, Weights r)
    : triple_(std::move(triple)), form_(std::move(form)), r_(std::move(r)) {
  const auto& t = triple_;
  network_ = network_laplacian(t, form_, r_);
  std::vector<char> boundary(static_cast<std::size_t>(t.num_v1), 0);
  for (int j = 0; j < t.N; ++j) boundary[j] = 1;
  check_reachability(network_, boundary);
  const Partition p = partition(t.num_v1, boundary);
  extension_ = extend(network_, p, Matrix::Identity(t.N, t.N));

  // Schur complement K_BB + K_BI H_I, i.e. the network Laplacian applied to
  // the extension and read back on the boundary rows.
  const Matrix schur = (network_ * extension_).topRows(t.N);
  renormalized_ = read_trace(schur, t.N);

  cells_.reserve(static_cast<std::size_t>(t.k));
  for (int i = 0; i < t.k; ++i) {
    CellOperator op{i, Matrix(t.N, t.N)};
    for (int q = 0; q < t.N; ++q) op.matrix.row(q) = extension_.row(t.cells[i][q]);
    cells_.push_back(std::move(op));
  }
}

Matrix HarmonicStructure::word_operator(std::span<const int> word) const {
  Matrix m = Matrix::Identity(triple_.N, triple_.N);
  for (int i : word) {
    if (i < 0 || i >= triple_.k) throw InvalidInput("cell index " + std::to_string(i) + " out of range");
    m = m * cells_[static_cast<std::size_t>(i)].matrix;
  }
  return m;
}

Vector HarmonicStructure::apply_word(std::span<const int> word, const Vector& u) const {
  Vector v = u;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (*it < 0 || *it >= triple_.k) throw InvalidInput("cell index out of range");
    v = cells_[static_cast<std::size_t>(*it)].matrix * v;
  }
  return v;
}

Matrix HarmonicStructure::power(int i, int n) const {
  Matrix m = Matrix::Identity(triple_.N, triple_.N);
  for (int step = 0; step < n; ++step) m = cell_operator(i).matrix * m;
  return m;
}

}  // namespace eigenform
