#include "loopflow/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "loopflow/flow_decomp.hpp"
#include "loopflow/json_io.hpp"

namespace loopflow {

namespace {

constexpr int kMaxGenSize = 512;

/// Raised inside a command to leave with a specific exit code.
struct Exit {
  int code;
  std::string message;
};

std::string show(const Rational& x) { return format_rational(x); }

std::string show(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

std::string dump(const Json& j) { return j.dump() + "\n"; }

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty())
    out << text;
  else
    write_text_file(path, text);
}

template <class S>
bool print_report(const VerificationReport<S>& r, std::ostream& os) {
  std::size_t closed = 0, simple = 0, in_grid = 0;
  for (const auto& c : r.curves) {
    closed += c.closed;
    simple += c.simple;
    in_grid += c.in_grid;
  }
  os << "reconstruction_residual: " << show(r.reconstruction_residual) << "\n"
     << "tv_defect: " << show(r.tv_defect) << "\n"
     << "edge_additivity_defect: " << show(r.edge_additivity_defect) << "\n"
     << "divergence_additivity_defect: " << show(r.divergence_additivity_defect) << "\n"
     << "curves: " << r.curves.size() << " (closed " << closed << ", simple " << simple << ", in grid " << in_grid
     << ")\n"
     << "status: " << (r.clean() ? "clean" : "DEFECT") << "\n";
  return r.clean();
}

// ---- decompose / verify -------------------------------------------------

template <class S>
EdgeFlux<S> load_flux_or_potential(const std::string& path) {
  const Json j = read_json_file(path);
  if (schema_of(j) == "cellfield/1") return perp_gradient(field_from_json<S>(j));
  return flux_from_json<S>(j);
}

template <class S>
int cmd_decompose(const std::string& input, const std::string& mode, const std::string& out_path,
                  std::ostream& out, std::ostream& err) {
  const EdgeFlux<S> mu = load_flux_or_potential<S>(input);
  const CurveSuperposition<S> eta = mode == "general" ? decompose_general(mu) : decompose_divfree(mu);
  const auto report = verify_decomposition(mu, eta);
  emit(out_path, dump(curves_to_json(mu.grid(), eta)), out);
  return print_report(report, out_path.empty() ? err : out) ? kExitOk : kExitDefect;
}

template <class S>
int cmd_verify(const std::string& flux_path, const std::string& curves_path, std::ostream& out) {
  const EdgeFlux<S> mu = load_flux_or_potential<S>(flux_path);
  const CurveFile<S> file = curves_from_json<S>(read_json_file(curves_path));
  if (!(file.grid == mu.grid())) throw GridMismatch(file.grid, mu.grid());
  return print_report(verify_decomposition(mu, file.eta), out) ? kExitOk : kExitDefect;
}

// ---- rigidity -------------------------------------------------------------

int cmd_rigidity(const std::string& path, std::optional<double> c, std::ostream& out) {
  const std::string text = read_text_file(path);
  RigidityInput input;
  input.c = 0;
  if (!std::all_of(text.begin(), text.end(), [](unsigned char ch) { return std::isspace(ch); }))
    input = polycurves_from_json(parse_json_text(text, path));
  else if (!c)
    input.c = 1;  // nothing to check; any positive constant will do
  if (c) input.c = *c;
  if (!(input.c > 0)) throw Exit{kExitBadParams, "cone constant c must be positive"};
  for (const auto& item : input.items)
    if (!(item.weight > 0)) throw ParseError("curve weights must be positive");

  const RigidityVerdict v = rigidity_theorem_check(input);
  if (v.outcome == RigidityOutcome::Zero) {
    out << "verdict: Zero\n";
    return kExitOk;
  }
  const Violation& w = *v.violation;
  out << "verdict: HypothesisFails\n"
      << "violation: " << to_string(w.kind) << " item " << w.item << " segment " << w.segment << " at ("
      << show(w.point.x) << ", " << show(w.point.y) << ") value " << show(w.value) << "\n";
  return kExitDefect;
}

// ---- gen ------------------------------------------------------------------

template <class S>
EdgeFlux<S> generate(const std::string& kind, std::uint64_t seed, int n) {
  if (kind == "pixel") {
    CellField<S> f(GridSpec(1, 1));
    f.at(0, 0) = S(1);
    return perp_gradient(f);
  }
  if (kind == "vortex") {
    CellField<S> f(GridSpec(n, n));
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) f.at(i, j) = S(std::min({i + 1, j + 1, n - i, n - j}));
    return perp_gradient(f);
  }
  if (kind == "random-potential") {
    std::mt19937_64 rng(seed);
    CellField<S> f(GridSpec(n, n));
    for (auto& x : f.values()) x = S(int(rng() % 13) - 6) / S(2);
    return perp_gradient(f);
  }
  if (kind == "dipole") {
    // Unit source at (0, 0), unit sink at (n, n); half goes along the bottom
    // and right sides, half along the left and top sides.
    EdgeFlux<S> mu(GridSpec(n, n));
    const S half = S(1) / S(2);
    for (int k = 0; k < n; ++k) {
      mu.h(k, 0) += half;
      mu.v(n, k) += half;
      mu.v(0, k) += half;
      mu.h(k, n) += half;
    }
    return mu;
  }
  if (kind == "shear") {
    std::mt19937_64 rng(seed);
    EdgeFlux<S> mu(GridSpec(n, n));
    for (int y = 0; y <= n; ++y) {
      int value = int(rng() % 6) - 3;
      if (value >= 0) ++value;
      for (int x = 0; x < n; ++x) mu.h(x, y) = S(value);
    }
    return mu;
  }
  throw Exit{kExitBadParams, "unknown generator kind: " + kind};
}

template <class S>
int cmd_gen(const std::string& kind, std::uint64_t seed, int size, const std::string& out_path, std::ostream& out) {
  if (size < 1 || size > kMaxGenSize) throw Exit{kExitBadParams, "size must be between 1 and 512"};
  emit(out_path, dump(flux_to_json(generate<S>(kind, seed, size))), out);
  return kExitOk;
}

// ---- render ---------------------------------------------------------------

int cmd_render(const std::string& path, const std::string& out_path, std::ostream& out) {
  const CurveFile<double> file = curves_from_json<double>(read_json_file(path));
  constexpr double unit = 24, margin = 24;
  const int w = file.grid.width, h = file.grid.height;
  double max_weight = 0;
  for (const auto& item : file.eta.items()) max_weight = std::max(max_weight, item.weight);

  std::ostringstream svg;
  svg << std::setprecision(6);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w * unit + 2 * margin << "\" height=\""
      << h * unit + 2 * margin << "\">\n"
      << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"5\" refY=\"5\" markerWidth=\"4\" "
         "markerHeight=\"4\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\"/></marker></defs>\n"
      << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << w * unit << "\" height=\"" << h * unit
      << "\" fill=\"none\" stroke=\"#ccc\"/>\n";
  for (const auto& item : file.eta.items()) {
    svg << "<polyline fill=\"none\" stroke=\"" << (item.curve.closed() ? "#1f5fa8" : "#b8431b")
        << "\" stroke-width=\"" << 4.0 * item.weight / max_weight << "\" marker-mid=\"url(#arrow)\" points=\"";
    bool first = true;
    for (const Node& n : item.curve.nodes()) {
      svg << (first ? "" : " ") << margin + n.x * unit << "," << margin + (h - n.y) * unit;
      first = false;
    }
    svg << "\"/>\n";
  }
  svg << "</svg>\n";
  emit(out_path, svg.str(), out);
  return kExitOk;
}

ScalarMode resolve_mode(const std::string& flag) {
  if (!flag.empty()) return parse_scalar_mode(flag);
  if (const char* env = std::getenv("LOOPFLOW_SCALAR"); env && *env) {
    try {
      return parse_scalar_mode(env);
    } catch (const Error&) {
      throw Exit{kExitBadParams, std::string("LOOPFLOW_SCALAR must be rational or float, got ") + env};
    }
  }
  return ScalarMode::Rational;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decompose lattice fluxes into weighted loops and paths", "loopflow"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string scalar;
  app.add_option("--scalar", scalar, "Arithmetic: rational (exact, default) or float")
      ->check(CLI::IsMember({"rational", "float"}));

  std::string input, second, out_path, mode = "divfree", kind;
  std::uint64_t seed = 0;
  int size = 8;
  std::optional<double> c;

  auto* dec = app.add_subcommand("decompose", "Decompose an edgeflux/1 or cellfield/1 file");
  dec->add_option("input", input)->required();
  dec->add_option("--mode", mode)->check(CLI::IsMember({"divfree", "general"}));
  dec->add_option("--out", out_path, "Output path (stdout if omitted)");

  auto* ver = app.add_subcommand("verify", "Check a curves/1 decomposition against a flux");
  ver->add_option("flux", input)->required();
  ver->add_option("curves", second)->required();

  auto* rig = app.add_subcommand("rigidity", "Check the rigidity hypotheses on a polycurves/1 file");
  rig->add_option("curves", input)->required();
  rig->add_option("--c", c, "Cone constant (overrides the file)");

  auto* gen = app.add_subcommand("gen", "Generate an example flux");
  gen->add_option("kind", kind, "pixel, vortex, random-potential, dipole or shear")->required();
  gen->add_option("--seed", seed);
  gen->add_option("--size", size);
  gen->add_option("--out", out_path);

  auto* ren = app.add_subcommand("render", "Render a curves/1 file as SVG");
  ren->add_option("curves", input)->required();
  ren->add_option("--out", out_path);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitParse;
  }

  try {
    const bool exact = resolve_mode(scalar) == ScalarMode::Rational;
    if (dec->parsed())
      return exact ? cmd_decompose<Rational>(input, mode, out_path, out, err)
                   : cmd_decompose<double>(input, mode, out_path, out, err);
    if (ver->parsed()) return exact ? cmd_verify<Rational>(input, second, out) : cmd_verify<double>(input, second, out);
    if (rig->parsed()) return cmd_rigidity(input, c, out);
    if (gen->parsed())
      return exact ? cmd_gen<Rational>(kind, seed, size, out_path, out)
                   : cmd_gen<double>(kind, seed, size, out_path, out);
    if (ren->parsed()) return cmd_render(input, out_path, out);
  } catch (const Exit& e) {
    err << "error: " << e.message << "\n";
    return e.code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const NotDivergenceFree& e) {
    err << "error: " << e.what() << "\n";
    return kExitNotDivergenceFree;
  } catch (const GridMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitGridMismatch;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDefect;
  }
  return kExitParse;
}

}  // namespace loopflow
