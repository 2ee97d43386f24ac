#include "eigenform/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "eigenform/errors.hpp"
#include "eigenform/graphs.hpp"
#include "eigenform/renorm.hpp"

namespace eigenform {

double fit_eigenvalue(const DirichletForm& form, const DirichletForm& image) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < form.packed().size(); ++i) {
    num += form.packed()[i] * image.packed()[i];
    den += form.packed()[i] * form.packed()[i];
  }
  return den > 0.0 ? num / den : 0.0;
}

double eigen_residual(const DirichletForm& form, const DirichletForm& image, double rho) {
  double worst = 0.0;
  for (std::size_t i = 0; i < form.packed().size(); ++i)
    worst = std::max(worst, std::abs(image.packed()[i] - rho * form.packed()[i]));
  const double scale = image.max_coefficient();
  return scale > 0.0 ? worst / scale : std::numeric_limits<double>::infinity();
}

bool proportional(const DirichletForm& a, const DirichletForm& b, double tol) {
  if (a.size() != b.size() || a.total() <= 0.0 || b.total() <= 0.0) return false;
  const double ta = a.total();
  const double tb = b.total();
  for (std::size_t i = 0; i < a.packed().size(); ++i)
    if (std::abs(a.packed()[i] / ta - b.packed()[i] / tb) > tol) return false;
  return true;
}

namespace {

double relative_change(const DirichletForm& prev, const DirichletForm& next) {
  double worst = 0.0;
  for (std::size_t i = 0; i < prev.packed().size(); ++i)
    worst = std::max(worst, std::abs(next.packed()[i] - prev.packed()[i]));
  return worst / next.max_coefficient();
}

std::string describe(const std::vector<std::pair<int, int>>& edges) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < edges.size(); ++i)
    os << (i ? "," : "") << '{' << edges[i].first << ',' << edges[i].second << '}';
  os << ']';
  return os.str();
}

}  // namespace

EigenResult find_eigenform(const FractalTriple& t, const Weights& r,
                           const std::optional<DirichletForm>& init, const SolveOptions& options) {
  require_weights(t, r);
  DirichletForm form = init.value_or(DirichletForm::uniform(t.N));
  if (form.size() != t.N) throw InvalidInput("initial form has the wrong size");
  EigenResult result;
  if (!is_irreducible(form)) {
    result.form = form;
    result.message = "initial form is not irreducible";
    return result;
  }
  form = form.scaled(1.0 / form.total());

  for (int it = 1; it <= options.max_iter; ++it) {
    DirichletForm image;
    try {
      image = renormalize(t, form, r);
    } catch (const NumericalFailure& e) {
      result.form = form;
      result.iterations = it - 1;
      result.message = e.what();
      return result;
    }
    const double mass = image.total();
    result.rho = mass;  // form has unit l1 norm
    DirichletForm next = image.scaled(1.0 / mass);
    const double change = relative_change(form, next);
    form = std::move(next);
    result.iterations = it;
    if (!is_irreducible(form)) {
      result.form = form;
      result.message = "iterate left the irreducible cone after " + std::to_string(it) + " steps";
      return result;
    }
    if (change < options.tol) {
      // Residual of the returned form against one more application.
      const DirichletForm check = renormalize(t, form, r);
      const double rho = fit_eigenvalue(form, check);
      const double residual = eigen_residual(form, check, rho);
      if (residual > options.tol) continue;
      result.form = form;
      result.rho = rho;
      result.residual = residual;
      result.converged = true;
      result.message = "converged";
      for (int j = 0; j < t.N; ++j)
        if (!(r[j] > result.rho)) {
          result.converged = false;
          result.message = "eigenvalue bound r_j > rho fails at j=" + std::to_string(j);
        }
      return result;
    }
  }
  result.form = form;
  result.message = "no convergence within " + std::to_string(options.max_iter) + " iterations";
  return result;
}

EigenResult verify_eigenform(const FractalTriple& t, const Weights& r, const DirichletForm& form,
                             double tol) {
  require_weights(t, r);
  if (form.size() != t.N) throw InvalidInput("form has the wrong size");
  EigenResult result;
  result.form = form;

  const bool irreducible = is_irreducible(form);
  result.checks.push_back({"irreducible", irreducible, irreducible ? "" : "support graph is disconnected"});

  const Graph hat = hat_graph(t);
  const Graph support = support_graph(form);
  const bool support_ok = support == hat;
  std::string support_detail;
  if (!support_ok)
    support_detail = "support " + describe(support.edges()) + " differs from G^ " + describe(hat.edges());
  result.checks.push_back({"support_equals_hat_graph", support_ok, support_detail});

  if (!irreducible) {
    result.message = "form is not irreducible";
    result.residual = std::numeric_limits<double>::infinity();
    return result;
  }

  const DirichletForm image = renormalize(t, form, r);
  result.rho = fit_eigenvalue(form, image);
  result.residual = eigen_residual(form, image, result.rho);
  const bool residual_ok = result.residual <= tol;
  std::ostringstream rd;
  rd << "residual " << result.residual << (residual_ok ? " <= " : " > ") << tol;
  result.checks.push_back({"residual", residual_ok, rd.str()});

  bool bound_ok = true;
  std::string bound_detail;
  for (int j = 0; j < t.N; ++j)
    if (!(r[j] > result.rho)) {
      bound_ok = false;
      bound_detail = "r_" + std::to_string(j) + " <= rho";
    }
  result.checks.push_back({"eigenvalue_bound", bound_ok, bound_detail});

  result.converged = residual_ok && bound_ok && support_ok;
  result.message = "verified eigenform";
  if (!result.converged) {
    result.message = "not an eigenform:";
    for (const EigenCheck& c : result.checks)
      if (!c.passed) result.message += " " + c.name + " (" + c.detail + ");";
    result.message.pop_back();
  }
  return result;
}

}  // namespace eigenform
