#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "eigenform/fractal.hpp"
#include "eigenform/forms.hpp"
#include "eigenform/graphs.hpp"
#include "eigenform/solver.hpp"
#include "eigenform/spectral.hpp"
#include "eigenform/uniqueness.hpp"

namespace eigenform {

using Json = nlohmann::ordered_json;

struct FractalFile {
  FractalTriple triple;
  Weights weights;
};

/// Parses the fractal schema; the triple axioms are not checked here.
/// Throws InvalidInput on malformed JSON or schema errors.
FractalFile parse_fractal(std::string_view text);
/// Reads a fractal file; "builtin:NAME" loads a corpus triple with unit weights.
FractalFile load_fractal(const std::string& path);

DirichletForm parse_form(std::string_view text);
DirichletForm load_form(const std::string& path);

Json fractal_json(const FractalTriple& triple, const Weights& weights);
Json form_json(const DirichletForm& form);
Json edges_json(const Graph& g);
Json validation_json(const FractalTriple& triple, const ValidationReport& report);
Json components_json(const ComponentData& comp);
Json eigen_result_json(const EigenResult& result);
Json perron_json(const PerronData& pd);
Json verdict_json(const StabilityVerdict& verdict);
Json exploration_json(const Exploration& ex);

/// Flat "key: value" rendering used by --format text.
std::string render_text(const Json& value);

}  // namespace eigenform
