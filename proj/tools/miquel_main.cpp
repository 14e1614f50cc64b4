// Command-line front end: pattern I/O, orbit evolution, invariant reports,
// quartic analysis, and plot emission.
//
// Exit codes: 0 success, 1 domain failure (invalid/degenerate input or
// failed computation), 2 usage or parse failure.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "miquel/coords.hpp"
#include "miquel/dynamics.hpp"
#include "miquel/forge.hpp"
#include "miquel/invariants.hpp"
#include "miquel/json_io.hpp"
#include "miquel/twobytwo.hpp"
#include "svg.hpp"

using namespace miquel;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct UsageFailure {
  std::string message;
};

TorusPattern load_pattern(const std::string& path) {
  try {
    return pattern_from_json(read_file(path));
  } catch (const Error& e) {
    throw UsageFailure{std::string("cannot load pattern: ") + e.what()};
  }
}

PhiField load_phi(const std::string& path) {
  try {
    return phi_from_json(read_file(path));
  } catch (const Error& e) {
    throw UsageFailure{std::string("cannot load phi field: ") + e.what()};
  }
}

std::pair<int, int> parse_vertex(const std::string& text, const char* flag) {
  int x = 0, y = 0;
  if (std::sscanf(text.c_str(), "%d,%d", &x, &y) != 2)
    throw UsageFailure{std::string(flag) + " expects 'x,y'"};
  return {x, y};
}

std::string fmt_row(std::initializer_list<double> cells, int t) {
  char buf[64];
  std::string row = std::to_string(t);
  for (double c : cells) {
    std::snprintf(buf, sizeof buf, ",%.17g", c);
    row += buf;
  }
  return row + "\n";
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    write_file(path, content);
}

int cmd_validate(const std::string& input, double tol) {
  const TorusPattern p = load_pattern(input);
  ValidateOptions opt;
  if (tol > 0) opt.concyclicity_tol = tol;
  const ValidationReport rep = validate(p, opt);
  std::cout << validation_report_to_json(rep);
  return rep.pass ? kExitOk : kExitDomain;
}

int cmd_forge(const std::optional<std::string>& input,
              const std::optional<std::string>& grid, double noise,
              unsigned seed, bool isoradial, double tol, int max_iter) {
  std::optional<TorusPattern> seed_pattern;
  if (input) {
    seed_pattern = load_pattern(*input);
  } else if (grid) {
    int m = 0, n = 0, s = 0;
    if (std::sscanf(grid->c_str(), "%d,%d,%d", &m, &n, &s) != 3)
      throw UsageFailure{"--grid expects 'm,n,s'"};
    TorusPattern base = [&] {
      try {
        return standard_grid(m, n, s);
      } catch (const Error& e) {
        throw UsageFailure{e.what()};
      }
    }();
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> d(-noise, noise);
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < m; ++x) base.vertex(x, y) += Vec2{d(rng), d(rng)};
    seed_pattern = std::move(base);
  } else {
    throw UsageFailure{"forge needs an input file or --grid m,n,s"};
  }
  ForgeOptions opt;
  opt.isoradial = isoradial;
  if (tol > 0) opt.tol = tol;
  if (max_iter > 0) opt.max_iter = max_iter;
  const ForgeResult res = forge_pattern(*seed_pattern, opt);
  std::cout << pattern_to_json(res.pattern);
  return kExitOk;
}

int cmd_phi(const std::string& input) {
  const TorusPattern p = load_pattern(input);
  const ValidationReport rep = validate(p);
  if (!rep.pass) throw InvalidPattern(rep.summary());
  const PhiField f = extract_phi(p);
  const ConditionReport cond = check_conditions(f);
  if (!cond.pass) throw ConditionViolation(cond.summary());
  std::cout << phi_to_json(f);
  return kExitOk;
}

int cmd_reconstruct(const std::string& input, double tol) {
  const PhiField f = load_phi(input);
  const TorusPattern p = tol > 0 ? reconstruct(f, tol) : reconstruct(f);
  std::cout << pattern_to_json(p);
  return kExitOk;
}

int cmd_invariants(const std::string& input) {
  const TorusPattern p = load_pattern(input);
  const ValidationReport rep = validate(p);
  if (!rep.pass) throw InvalidPattern(rep.summary());
  std::cout << invariant_report_to_json(invariant_report(p));
  return kExitOk;
}

int cmd_evolve(const std::string& input, int steps, const std::string& csv_path,
               const std::string& svg_path, const std::string& track,
               const std::string& ref) {
  const TorusPattern p = load_pattern(input);
  const ValidationReport rep = validate(p);
  if (!rep.pass) throw InvalidPattern(rep.summary());
  const auto [tx, ty] = parse_vertex(track, "--track");
  const auto [rx, ry] = parse_vertex(ref, "--ref");
  if (tx < 0 || tx >= p.m() || ty < 0 || ty >= p.n() || rx < 0 || rx >= p.m() ||
      ry < 0 || ry >= p.n())
    throw UsageFailure{"--track/--ref vertex outside the fundamental domain"};

  std::string csv =
      "# miquel evolve csv v1: t,vx,vy,gamma_h,gamma_v,ratio_re,ratio_im,residual\n";

  // Quartic overlay for 2x2 inputs, from the conserved corner data.
  std::optional<QuarticModel> quartic;
  if (p.m() == 2 && p.n() == 2) {
    try {
      if (classify_2x2(p) == Regime::generic) {
        const auto L = labels_2x2(p);
        const AngleInvariants ai = angle_invariants(p);
        quartic = generic_quartic(L.A, L.C, L.G, L.I, ai.alpha, ai.beta);
      } else {
        quartic = rectangular_quartic(p);
      }
    } catch (const Error&) {
      // the overlay is cosmetic; proceed without it
    }
  }

  std::vector<Point> rel;
  int failed_step = 0;
  std::string failure;
  TorusPattern cur = p;
  const Point anchor = p.vertex(0, 0);
  for (int t = 0; t <= steps; ++t) {
    if (t > 0) {
      try {
        cur = mutate(cur, (t - 1) % 2 == 0 ? Color::black : Color::white);
      } catch (const DegenerateMutation& e) {
        failed_step = t;
        failure = e.what();
        break;
      }
    }
    const TorusPattern state = cur.translated(anchor - cur.vertex(0, 0));
    const Point d = state.vertex(tx, ty) - state.vertex(rx, ry);
    rel.push_back(d);
    const GammaValue g = gamma_generators(state);
    const auto ratio = monodromy_ratio(state);
    const double resid = validate(state).worst_residual;
    csv += fmt_row(
        {d.x, d.y, g.horizontal, g.vertical, ratio.first, ratio.second, resid}, t);
  }
  emit(csv_path, csv);

  if (!svg_path.empty()) {
    std::vector<Point> cloud;
    if (quartic) {
      // rel points are tracked minus reference; the curve lives at absolute
      // normalized positions, so shift by the (pinned) reference position
      const Point ref_pos = p.vertex(rx, ry);
      cloud = svgplot::implicit_cloud(
          [&](Point M) { return quartic_residual(*quartic, M + ref_pos); }, rel);
    }
    write_file(svg_path, svgplot::render(rel, rel, cloud));
  }

  if (failed_step > 0) {
    std::cerr << "evolve: degenerate mutation at step " << failed_step << ": "
              << failure << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

int cmd_quartic(const std::string& input, int steps, const std::string& csv_path,
                const std::string& svg_path) {
  const TorusPattern p = load_pattern(input);
  if (p.m() != 2 || p.n() != 2 || p.s() != 0)
    throw UsageFailure{"quartic requires a 2x2 pattern"};
  const ValidationReport rep = validate(p);
  if (!rep.pass) throw InvalidPattern(rep.summary());

  const Regime regime = classify_2x2(p);
  const QuarticModel model = [&] {
    if (regime == Regime::generic) {
      const auto L = labels_2x2(p);
      const AngleInvariants ai = angle_invariants(p);
      return generic_quartic(L.A, L.C, L.G, L.I, ai.alpha, ai.beta);
    }
    return rectangular_quartic(p);
  }();

  const NormalizedOrbit orbit = normalize(evolve(p, 0, steps));
  std::vector<double> residuals;
  std::vector<Point> epoints;
  std::string csv = "# miquel quartic csv v1: t,Ex,Ey,residual\n";
  for (int t = 0; t <= steps; ++t) {
    const Point E = orbit.at(t).vertex(1, 1);
    const double r = quartic_residual(model, E);
    residuals.push_back(r);
    epoints.push_back(E);
    csv += fmt_row({E.x, E.y, r}, t);
  }
  std::cout << quartic_report_to_json(model, residuals);
  if (!csv_path.empty()) emit(csv_path, csv);
  if (!svg_path.empty()) {
    const auto cloud = svgplot::implicit_cloud(
        [&](Point M) { return quartic_residual(model, M); }, epoints);
    write_file(svg_path, svgplot::render(epoints, epoints, cloud));
  }

  // The all-rectangles case additionally follows the closed-form rotation.
  const AngleInvariants ai = angle_invariants(p);
  const bool all_rect = std::min(ai.alpha, M_PI - ai.alpha) < 1e-7 &&
                        std::min(ai.beta, M_PI - ai.beta) < 1e-7;
  if (all_rect && steps > 0) {
    const RotationReport rot = rotation_law_check(p, steps);
    std::cerr << "rotation law: delta = " << rot.delta
              << ", max step deviation = " << rot.max_step_dev << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Miquel dynamics on biperiodic square-grid circle patterns"};
  app.require_subcommand(1);

  std::string input, csv_path, svg_path;
  std::string track = "1,1", ref = "0,0";
  std::string grid;
  int steps = 10, max_iter = 0;
  double tol = 0, noise = 0.05;
  unsigned seed = 1;
  bool isoradial = false;

  auto* validate_cmd = app.add_subcommand("validate", "check a pattern file");
  validate_cmd->add_option("input", input, "pattern JSON")->required();
  validate_cmd->add_option("--tol", tol, "concyclicity tolerance override");

  auto* evolve_cmd =
      app.add_subcommand("evolve", "run the dynamics, emit a trajectory CSV");
  evolve_cmd->add_option("input", input, "pattern JSON")->required();
  evolve_cmd->add_option("--steps", steps, "number of mutations");
  evolve_cmd->add_option("--csv", csv_path, "CSV output path (default stdout)");
  evolve_cmd->add_option("--svg", svg_path, "SVG plot path");
  evolve_cmd->add_option("--track", track, "tracked vertex 'x,y'");
  evolve_cmd->add_option("--ref", ref, "reference vertex 'x,y'");

  auto* phi_cmd = app.add_subcommand("phi", "extract the phi coordinates");
  phi_cmd->add_option("input", input, "pattern JSON")->required();

  auto* rec_cmd = app.add_subcommand("reconstruct", "rebuild a pattern from phi");
  rec_cmd->add_option("input", input, "phi JSON")->required();
  rec_cmd->add_option("--tol", tol, "condition tolerance override");

  auto* inv_cmd = app.add_subcommand("invariants", "conserved-quantity report");
  inv_cmd->add_option("input", input, "pattern JSON")->required();

  auto* quartic_cmd = app.add_subcommand("quartic", "2x2 trajectory-curve analysis");
  quartic_cmd->add_option("input", input, "pattern JSON")->required();
  quartic_cmd->add_option("--steps", steps, "orbit length");
  quartic_cmd->add_option("--csv", csv_path, "trajectory CSV path");
  quartic_cmd->add_option("--svg", svg_path, "SVG plot path");

  auto* forge_cmd = app.add_subcommand(
      "forge", "project a vertex cloud onto the constraint manifold");
  forge_cmd->add_option("input", input, "seed pattern JSON");
  forge_cmd->add_option("--grid", grid, "generate the seed from 'm,n,s'");
  forge_cmd->add_option("--noise", noise, "seed noise amplitude (with --grid)");
  forge_cmd->add_option("--seed", seed, "random seed (with --grid)");
  forge_cmd->add_flag("--isoradial", isoradial, "equal-radius constraints");
  forge_cmd->add_option("--tol", tol, "target residual");
  forge_cmd->add_option("--max-iter", max_iter, "iteration cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(input, tol);
    if (evolve_cmd->parsed())
      return cmd_evolve(input, steps, csv_path, svg_path, track, ref);
    if (phi_cmd->parsed()) return cmd_phi(input);
    if (rec_cmd->parsed()) return cmd_reconstruct(input, tol);
    if (inv_cmd->parsed()) return cmd_invariants(input);
    if (quartic_cmd->parsed()) return cmd_quartic(input, steps, csv_path, svg_path);
    if (forge_cmd->parsed())
      return cmd_forge(input.empty() ? std::nullopt : std::optional(input),
                       grid.empty() ? std::nullopt : std::optional(grid), noise,
                       seed, isoradial, tol, max_iter);
  } catch (const UsageFailure& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
