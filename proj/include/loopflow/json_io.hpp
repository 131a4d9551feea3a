#pragma once

#include <string>

#include <json.hpp>

#include "loopflow/rigidity.hpp"

namespace loopflow {

/// Malformed input file: bad JSON, wrong schema tag, or wrong shape.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

using Json = nlohmann::ordered_json;

/// Parses text, reporting the byte offset of syntax errors.
Json parse_json_text(const std::string& text, const std::string& source);
Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Rational mode writes "p/q" strings (or "p" for integers); float mode
/// writes numbers with round-trip precision. Both modes read either form.
template <class S>
Json scalar_to_json(const S& x);
template <class S>
S scalar_from_json(const Json& j);

template <class S>
Json flux_to_json(const EdgeFlux<S>& mu);
template <class S>
EdgeFlux<S> flux_from_json(const Json& j);

template <class S>
Json field_to_json(const CellField<S>& f);
template <class S>
CellField<S> field_from_json(const Json& j);

template <class S>
struct CurveFile {
  GridSpec grid;
  CurveSuperposition<S> eta;
};

template <class S>
Json curves_to_json(const GridSpec& grid, const CurveSuperposition<S>& eta);
template <class S>
CurveFile<S> curves_from_json(const Json& j);

/// The "c" entry is optional; a missing one leaves `c` at 0.
RigidityInput polycurves_from_json(const Json& j);
Json polycurves_to_json(const RigidityInput& input);

/// Value of the "schema" tag, or an empty string.
std::string schema_of(const Json& j);

}  // namespace loopflow
