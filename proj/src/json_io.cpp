#include "loopflow/json_io.hpp"

#include <fstream>
#include <sstream>

namespace loopflow {

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(source + ": syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json read_json_file(const std::string& path) { return parse_json_text(read_text_file(path), path); }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

std::string schema_of(const Json& j) {
  if (j.is_object() && j.contains("schema") && j["schema"].is_string()) return j["schema"].get<std::string>();
  return {};
}

namespace {

void expect_schema(const Json& j, const std::string& schema) {
  if (schema_of(j) != schema) throw ParseError("expected schema \"" + schema + "\"");
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing \"") + key + "\"");
  return j[key];
}

int positive_int(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > 1 << 20)
    throw ParseError(std::string("\"") + key + "\" must be a positive integer");
  return v.get<int>();
}

/// Checks a rows x cols array of arrays.
const Json& matrix(const Json& j, const char* key, int rows, int cols) {
  const Json& m = field(j, key);
  if (!m.is_array() || m.size() != std::size_t(rows))
    throw ParseError(std::string("\"") + key + "\" must have " + std::to_string(rows) + " rows");
  for (const Json& row : m)
    if (!row.is_array() || row.size() != std::size_t(cols))
      throw ParseError(std::string("rows of \"") + key + "\" must have " + std::to_string(cols) + " entries");
  return m;
}

GridSpec grid_from(const Json& j) {
  try {
    return GridSpec(positive_int(j, "width"), positive_int(j, "height"));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

Json grid_to_json(const GridSpec& g) { return Json{{"width", g.width}, {"height", g.height}}; }

}  // namespace

template <>
Json scalar_to_json<Rational>(const Rational& x) {
  return format_rational(x);
}

template <>
Json scalar_to_json<double>(const double& x) {
  return x;
}

template <>
Rational scalar_from_json<Rational>(const Json& j) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_number_float()) return rational_from_double(j.get<double>());
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("bad number: ") + e.what());
  }
  throw ParseError("expected a number or a \"p/q\" string, got " + j.dump());
}

template <>
double scalar_from_json<double>(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      return to_double(parse_rational(j.get<std::string>()));
    } catch (const std::exception& e) {
      throw ParseError(std::string("bad number: ") + e.what());
    }
  }
  throw ParseError("expected a number or a \"p/q\" string, got " + j.dump());
}

template <class S>
Json flux_to_json(const EdgeFlux<S>& mu) {
  const GridSpec& g = mu.grid();
  Json h = Json::array(), v = Json::array();
  for (int y = 0; y <= g.height; ++y) {
    Json row = Json::array();
    for (int x = 0; x < g.width; ++x) row.push_back(scalar_to_json(mu.h(x, y)));
    h.push_back(std::move(row));
  }
  for (int y = 0; y < g.height; ++y) {
    Json row = Json::array();
    for (int x = 0; x <= g.width; ++x) row.push_back(scalar_to_json(mu.v(x, y)));
    v.push_back(std::move(row));
  }
  return Json{{"schema", "edgeflux/1"}, {"width", g.width}, {"height", g.height}, {"h", h}, {"v", v}};
}

template <class S>
EdgeFlux<S> flux_from_json(const Json& j) {
  expect_schema(j, "edgeflux/1");
  const GridSpec g = grid_from(j);
  const Json& h = matrix(j, "h", g.height + 1, g.width);
  const Json& v = matrix(j, "v", g.height, g.width + 1);
  EdgeFlux<S> mu(g);
  for (int y = 0; y <= g.height; ++y)
    for (int x = 0; x < g.width; ++x) mu.h(x, y) = scalar_from_json<S>(h[y][x]);
  for (int y = 0; y < g.height; ++y)
    for (int x = 0; x <= g.width; ++x) mu.v(x, y) = scalar_from_json<S>(v[y][x]);
  return mu;
}

template <class S>
Json field_to_json(const CellField<S>& f) {
  const GridSpec& g = f.grid();
  Json cells = Json::array();
  for (int j = 0; j < g.height; ++j) {
    Json row = Json::array();
    for (int i = 0; i < g.width; ++i) row.push_back(scalar_to_json(f.at(i, j)));
    cells.push_back(std::move(row));
  }
  return Json{{"schema", "cellfield/1"}, {"width", g.width}, {"height", g.height}, {"cells", cells}};
}

template <class S>
CellField<S> field_from_json(const Json& j) {
  expect_schema(j, "cellfield/1");
  const GridSpec g = grid_from(j);
  const Json& cells = matrix(j, "cells", g.height, g.width);
  CellField<S> f(g);
  for (int jj = 0; jj < g.height; ++jj)
    for (int i = 0; i < g.width; ++i) f.at(i, jj) = scalar_from_json<S>(cells[jj][i]);
  return f;
}

template <class S>
Json curves_to_json(const GridSpec& grid, const CurveSuperposition<S>& eta) {
  Json curves = Json::array();
  for (const auto& item : eta.items()) {
    Json nodes = Json::array();
    for (const Node& n : item.curve.nodes()) nodes.push_back(Json::array({n.x, n.y}));
    curves.push_back(Json{{"weight", scalar_to_json(item.weight)}, {"closed", item.curve.closed()}, {"nodes", nodes}});
  }
  return Json{{"schema", "curves/1"}, {"grid", grid_to_json(grid)}, {"curves", curves}};
}

template <class S>
CurveFile<S> curves_from_json(const Json& j) {
  expect_schema(j, "curves/1");
  CurveFile<S> out{grid_from(field(j, "grid")), {}};
  const Json& curves = field(j, "curves");
  if (!curves.is_array()) throw ParseError("\"curves\" must be an array");
  for (const Json& c : curves) {
    const Json& closed = field(c, "closed");
    const Json& nodes = field(c, "nodes");
    if (!closed.is_boolean() || !nodes.is_array()) throw ParseError("malformed curve entry");
    std::vector<Node> pts;
    for (const Json& n : nodes) {
      if (!n.is_array() || n.size() != 2 || !n[0].is_number_integer() || !n[1].is_number_integer())
        throw ParseError("curve nodes must be [x, y] integer pairs");
      pts.push_back({n[0].get<int>(), n[1].get<int>()});
    }
    try {
      out.eta.add(scalar_from_json<S>(field(c, "weight")), LatticeCurve(std::move(pts), closed.get<bool>()));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(std::string("invalid curve: ") + e.what());
    }
  }
  return out;
}

RigidityInput polycurves_from_json(const Json& j) {
  expect_schema(j, "polycurves/1");
  RigidityInput in;
  in.c = 0;
  if (j.contains("c")) in.c = scalar_from_json<double>(j["c"]);
  const Json& curves = field(j, "curves");
  if (!curves.is_array()) throw ParseError("\"curves\" must be an array");
  for (const Json& c : curves) {
    const Json& closed = field(c, "closed");
    const Json& points = field(c, "points");
    if (!closed.is_boolean() || !points.is_array()) throw ParseError("malformed curve entry");
    std::vector<Point> pts;
    for (const Json& p : points) {
      if (!p.is_array() || p.size() != 2) throw ParseError("points must be [x, y] pairs");
      pts.push_back({scalar_from_json<double>(p[0]), scalar_from_json<double>(p[1])});
    }
    try {
      in.items.push_back({scalar_from_json<double>(field(c, "weight")), PolyCurve(std::move(pts), closed.get<bool>())});
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(std::string("invalid curve: ") + e.what());
    }
  }
  return in;
}

Json polycurves_to_json(const RigidityInput& input) {
  Json curves = Json::array();
  for (const auto& item : input.items) {
    Json pts = Json::array();
    for (const Point& p : item.curve.points()) pts.push_back(Json::array({p.x, p.y}));
    curves.push_back(Json{{"weight", item.weight}, {"closed", item.curve.closed()}, {"points", pts}});
  }
  return Json{{"schema", "polycurves/1"}, {"c", input.c}, {"curves", curves}};
}

#define LOOPFLOW_INSTANTIATE(S)                                                    \
  template Json flux_to_json(const EdgeFlux<S>&);                                 \
  template EdgeFlux<S> flux_from_json<S>(const Json&);                            \
  template Json field_to_json(const CellField<S>&);                               \
  template CellField<S> field_from_json<S>(const Json&);                          \
  template Json curves_to_json(const GridSpec&, const CurveSuperposition<S>&);    \
  template CurveFile<S> curves_from_json<S>(const Json&);

LOOPFLOW_INSTANTIATE(Rational)
LOOPFLOW_INSTANTIATE(double)

}  // namespace loopflow
