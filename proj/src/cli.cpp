#include "eigenform/cli.hpp"

#include <CLI11.hpp>

#include "eigenform/errors.hpp"
#include "eigenform/io.hpp"

namespace eigenform {

namespace {

void emit(const RunConfig& cfg, const Json& payload, std::ostream& out) {
  out << (cfg.format == OutputFormat::json ? payload.dump(2) + "\n" : render_text(payload));
}

void warn(const RunConfig& cfg, const std::vector<std::string>& warnings, std::ostream& err) {
  if (cfg.quiet) return;
  for (const std::string& w : warnings) err << "warning: " << w << '\n';
}

FractalFile load_valid(const RunConfig& cfg) {
  FractalFile f = load_fractal(cfg.fractal_path);
  require_valid(f.triple);
  require_weights(f.triple, f.weights);
  return f;
}

SolveOptions solve_options(const RunConfig& cfg) { return {cfg.tol, cfg.max_iter}; }

Json graphs_json(const FractalTriple& t) {
  const BoundaryGraph hat = hat_graph(t);
  Json out;
  out["tilde_graph"] = edges_json(tilde_graph(t));
  out["hat_graph"] = edges_json(hat);
  Json comps = Json::array();
  for (const ComponentData& c : all_components(t, hat)) comps.push_back(components_json(c));
  out["components"] = std::move(comps);
  return out;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  const FractalFile f = load_fractal(cfg.fractal_path);
  const ValidationReport report = validate(f.triple);
  Json payload = validation_json(f.triple, report);
  if (report.empty()) {
    const ConnectivityFlags flags = connectivity_flags(f.triple);
    payload["a_connected"] = flags.a_connected;
    payload["o_connected"] = flags.o_connected;
  }
  emit(cfg, payload, out);
  return report.empty() ? 0 : 1;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const FractalFile f = load_valid(cfg);
  std::optional<DirichletForm> init;
  if (cfg.form_path) init = load_form(*cfg.form_path);
  const EigenResult res = find_eigenform(f.triple, f.weights, init, solve_options(cfg));
  emit(cfg, eigen_result_json(res), out);
  if (!res.converged && !cfg.quiet) err << "solver did not converge: " << res.message << '\n';
  return res.converged ? 0 : 2;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const FractalFile f = load_valid(cfg);
  const DirichletForm form = load_form(*cfg.form_path);
  emit(cfg, eigen_result_json(verify_eigenform(f.triple, f.weights, form, cfg.verify_tol)), out);
  return 0;
}

StabilityOptions stability_options(const RunConfig& cfg) {
  StabilityOptions o;
  o.eigen_tol = cfg.verify_tol;
  return o;
}

/// Solves and verifies; throws NumericalFailure when no eigenform results.
DirichletForm solved_form(const FractalFile& f, const RunConfig& cfg) {
  const EigenResult res = find_eigenform(f.triple, f.weights, std::nullopt, solve_options(cfg));
  if (!res.converged) throw NumericalFailure("solver did not converge: " + res.message);
  const EigenResult check = verify_eigenform(f.triple, f.weights, res.form, cfg.verify_tol);
  if (!check.converged) throw NumericalFailure("solver output failed verification: " + check.message);
  return res.form;
}

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const FractalFile f = load_valid(cfg);
  const DirichletForm form = cfg.form_path ? load_form(*cfg.form_path) : solved_form(f, cfg);
  const StabilityVerdict verdict = decide_uniqueness(f.triple, form, f.weights, stability_options(cfg));
  Json payload = verdict_json(verdict);
  payload["form"] = form_json(form);
  emit(cfg, payload, out);
  warn(cfg, verdict.digraph.warnings, err);
  return 0;
}

int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const FractalFile f = load_fractal(cfg.fractal_path);
  Json payload;
  payload["fractal"] = fractal_json(f.triple, f.weights);
  const ValidationReport report = validate(f.triple);
  payload["validation"] = validation_json(f.triple, report);
  if (!report.empty()) {
    emit(cfg, payload, out);
    return 1;
  }
  require_weights(f.triple, f.weights);
  payload["graphs"] = graphs_json(f.triple);

  const EigenResult res = find_eigenform(f.triple, f.weights, std::nullopt, solve_options(cfg));
  payload["solve"] = eigen_result_json(res);
  if (!res.converged) {
    emit(cfg, payload, out);
    if (!cfg.quiet) err << "solver did not converge: " << res.message << '\n';
    return 2;
  }
  const EigenResult check = verify_eigenform(f.triple, f.weights, res.form, cfg.verify_tol);
  payload["verification"] = eigen_result_json(check);
  if (!check.converged) {
    emit(cfg, payload, out);
    if (!cfg.quiet) err << "solver output failed verification: " << check.message << '\n';
    return 2;
  }
  const StabilityVerdict verdict =
      decide_uniqueness(f.triple, res.form, f.weights, stability_options(cfg));
  payload["uniqueness"] = verdict_json(verdict);
  Json perron = Json::array();
  for (const PerronData& pd : verdict.digraph.payload) perron.push_back(perron_json(pd));
  payload["perron"] = std::move(perron);
  payload["exploration"] = exploration_json(
      explore_nonuniqueness(f.triple, f.weights, res.form, verdict, cfg.delta, solve_options(cfg)));
  emit(cfg, payload, out);
  warn(cfg, verdict.digraph.warnings, err);
  return 0;
}

int cmd_corpus(const RunConfig& cfg, std::ostream& out) {
  Json list = Json::array();
  for (const std::string& name : builtin_names()) {
    const FractalTriple t = builtin(name);
    list.push_back({{"name", name}, {"path", "builtin:" + name}, {"N", t.N}, {"k", t.k},
                    {"vertices", t.num_v1}, {"valid", validate(t).empty()}});
  }
  emit(cfg, Json{{"builtins", std::move(list)}}, out);
  return 0;
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.command == "validate") return cmd_validate(cfg, out);
  if (cfg.command == "graphs") {
    emit(cfg, graphs_json(load_valid(cfg).triple), out);
    return 0;
  }
  if (cfg.command == "solve") return cmd_solve(cfg, out, err);
  if (cfg.command == "verify") return cmd_verify(cfg, out);
  if (cfg.command == "check-uniqueness") return cmd_check(cfg, out, err);
  if (cfg.command == "report") return cmd_report(cfg, out, err);
  if (cfg.command == "corpus") return cmd_corpus(cfg, out);
  throw InvalidInput("unknown command " + cfg.command);
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (!(cfg.tol > 0.0) || !(cfg.verify_tol > 0.0) || cfg.max_iter <= 0)
      throw InvalidInput("tolerances and --max-iter must be positive");
    return dispatch(cfg, out, err);
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return 1;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const ConsistencyFailure& e) {
    err << "consistency failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Renormalization eigenforms on finitely ramified fractals", "eigenform_lab"};
  app.fallthrough();
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "json";
  std::string form_path;
  app.add_option("--tol", cfg.tol, "Solver stopping tolerance")->check(CLI::PositiveNumber);
  app.add_option("--verify-tol", cfg.verify_tol, "Eigenform verification tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-iter", cfg.max_iter, "Solver iteration cap")->check(CLI::PositiveNumber);
  app.add_option("--delta", cfg.delta, "Relative perturbation used by report")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--quiet", cfg.quiet, "Suppress warnings");

  auto* validate_cmd = app.add_subcommand("validate", "Check the triple axioms");
  validate_cmd->add_option("fractal", cfg.fractal_path)->required();
  auto* graphs_cmd = app.add_subcommand("graphs", "G~, G^ and the component dynamics");
  graphs_cmd->add_option("fractal", cfg.fractal_path)->required();
  auto* solve_cmd = app.add_subcommand("solve", "Normalized fixed-point iteration");
  solve_cmd->add_option("fractal", cfg.fractal_path)->required();
  solve_cmd->add_option("--init", form_path, "Initial form");
  auto* verify_cmd = app.add_subcommand("verify", "Check that a form is an eigenform");
  verify_cmd->add_option("fractal", cfg.fractal_path)->required();
  verify_cmd->add_option("form", form_path)->required();
  auto* check_cmd = app.add_subcommand("check-uniqueness", "Stability digraph verdict");
  check_cmd->add_option("fractal", cfg.fractal_path)->required();
  check_cmd->add_option("form", form_path, "Eigenform (solved when omitted)");
  auto* report_cmd = app.add_subcommand("report", "Full pipeline");
  report_cmd->add_option("fractal", cfg.fractal_path)->required();
  app.add_subcommand("corpus", "List built-in triples");

  std::vector<std::string> storage{"eigenform_lab"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (!form_path.empty()) cfg.form_path = form_path;
  cfg.format = format == "text" ? OutputFormat::text : OutputFormat::json;
  return run(cfg, out, err);
}

}  // namespace eigenform
