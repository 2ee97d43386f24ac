#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace eigenform {

enum class OutputFormat { json, text };

struct RunConfig {
  std::string command;
  std::string fractal_path;
  std::optional<std::string> form_path;
  /// Solver stopping tolerance.
  double tol = 1e-12;
  /// Eigenform verification tolerance.
  double verify_tol = 1e-8;
  int max_iter = 100000;
  /// Relative perturbation size used by `report`.
  double delta = 0.25;
  OutputFormat format = OutputFormat::json;
  bool quiet = false;
};

/// Exit codes: 0 success, 1 invalid input, 2 numerical failure,
/// 3 internal-consistency failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace eigenform
