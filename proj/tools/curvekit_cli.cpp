// curvekit: command-line front end.
//
// Exit status: 0 success, 1 domain error (message names the error), 2 usage
// error (bad flags, malformed literals, pipeline schema violations).

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "curvekit/catalog.hpp"
#include "curvekit/expr.hpp"
#include "curvekit/pipeline.hpp"
#include "curvekit/raster.hpp"
#include "curvekit/service.hpp"
#include "curvekit/transforms.hpp"

using namespace curvekit;

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CurveOptions {
  std::string expr;
  std::string curve;
  std::string vars;
  bool json = false;
};

struct StepOptions {
  std::string pivot;
  std::string replaced;
  std::string new_var;
  std::string center;
  std::string at;
  bool strict = false;
};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (!s.empty() && s.back() == ',') out.emplace_back();
  return out;
}

BigRat rational_flag(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const CurveError&) {
    throw UsageError(std::string(flag) + ": expected an integer or p/q, got '" + text + "'");
  }
}

RationalPoint point_flag(const std::string& text) {
  const auto parts = split_commas(text);
  if (parts.size() != 2) throw UsageError("--at: expected <rat>,<rat>, got '" + text + "'");
  return {rational_flag(parts[0], "--at"), rational_flag(parts[1], "--at")};
}

void add_curve_options(CLI::App* sub, CurveOptions& o) {
  sub->add_option("-e,--expr", o.expr, "polynomial expression, e.g. \"x^2+y^2-1\"");
  sub->add_option("--curve", o.curve, "catalog slug");
  sub->add_option("--vars", o.vars, "variable pair u,v (default x,y)");
  sub->add_flag("--json", o.json, "machine-readable output");
}

void add_step_options(CLI::App* sub, StepOptions& o) {
  sub->add_option("--pivot", o.pivot, "variable kept (default: first variable)");
  sub->add_option("--replaced", o.replaced, "variable eliminated (default: second variable)");
  sub->add_option("--new", o.new_var, "variable introduced")->required();
  sub->add_option("--center", o.center, "center a of the exceptional line pivot=a");
  sub->add_option("--at", o.at, "point a,b: translate b to 0, then use center a");
}

BivarPoly load_curve(const CurveOptions& o) {
  if (o.expr.empty() == o.curve.empty())
    throw UsageError("give exactly one of --expr/-e or --curve");
  if (!o.curve.empty()) {
    const BivarPoly& p = lookup_curve(o.curve).poly;
    if (!o.vars.empty()) {
      const auto v = split_commas(o.vars);
      if (v.size() != 2 || v[0] != p.var_u() || v[1] != p.var_v())
        throw CurveError(Errc::VariableMismatch, "curve '" + o.curve + "' uses variables (" +
                                                     p.var_u() + "," + p.var_v() + ")");
    }
    return p;
  }
  const auto v = split_commas(o.vars.empty() ? "x,y" : o.vars);
  if (v.size() != 2) throw UsageError("--vars: expected u,v");
  return parse_curve(o.expr, v[0], v[1]);
}

PipelineStep build_step(TransformKind kind, const BivarPoly& f, const StepOptions& o) {
  PipelineStep ps;
  ps.step.kind = kind;
  ps.step.pivot = o.pivot.empty() ? f.var_u() : o.pivot;
  if (!o.replaced.empty())
    ps.step.replaced = o.replaced;
  else
    ps.step.replaced = ps.step.pivot == f.var_u() ? f.var_v() : f.var_u();
  ps.step.new_var = o.new_var;
  ps.step.strict = o.strict;
  if (!o.at.empty()) {
    if (!o.center.empty()) throw UsageError("--center and --at are mutually exclusive");
    const auto parts = split_commas(o.at);
    if (parts.size() != 2) throw UsageError("--at: expected <rat>,<rat>");
    // --at is (pivot coordinate, replaced coordinate).
    ps.step.center = rational_flag(parts[0], "--at");
    ps.shift = rational_flag(parts[1], "--at");
  } else {
    if (o.center.empty()) throw UsageError("one of --center or --at is required");
    ps.step.center = rational_flag(o.center, "--center");
  }
  return ps;
}

json poly_json(const BivarPoly& p) {
  return {{"poly", format(p)}, {"vars", {p.var_u(), p.var_v()}}};
}

Viewport viewport_flag(const std::string& text) {
  const auto parts = split_commas(text);
  if (parts.size() != 4) throw UsageError("--viewport: expected umin,umax,vmin,vmax");
  double vals[4];
  for (int i = 0; i < 4; ++i) {
    std::size_t used = 0;
    try {
      vals[i] = std::stod(parts[i], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != parts[i].size())
      throw UsageError("--viewport: not a number: '" + parts[i] + "'");
  }
  Viewport vp;
  vp.u_min = vals[0];
  vp.u_max = vals[1];
  vp.v_min = vals[2];
  vp.v_max = vals[3];
  return vp;
}

int run_pipeline_file(const std::string& path, bool dump_steps, bool as_json) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open pipeline file '" + path + "'");
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw UsageError("'" + path + "' is not valid JSON");
  Pipeline pipeline;
  try {
    pipeline = pipeline_from_json(doc);
  } catch (const CurveError& e) {
    throw UsageError(std::string(e.what()));
  }
  const PipelineRun run = run_pipeline(pipeline);
  if (as_json) {
    json steps = json::array();
    for (std::size_t i = 0; i < run.steps.size(); ++i) {
      json s = poly_json(run.steps[i].poly);
      s["step"] = to_json(pipeline.steps[i]);
      if (run.steps[i].exceptional_multiplicity)
        s["exceptional_multiplicity"] = *run.steps[i].exceptional_multiplicity;
      steps.push_back(std::move(s));
    }
    json out = poly_json(run.final_poly());
    out["seed"] = format(run.seed);
    if (dump_steps) out["steps"] = steps;
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  if (dump_steps) {
    std::cout << "seed: " << format(run.seed) << "\n";
    for (std::size_t i = 0; i < run.steps.size(); ++i) {
      std::cout << "step " << i + 1 << " (" << kind_name(pipeline.steps[i].step.kind) << "): "
                << format(run.steps[i].poly);
      if (run.steps[i].exceptional_multiplicity)
        std::cout << "  [exceptional multiplicity " << *run.steps[i].exceptional_multiplicity << "]";
      std::cout << "\n";
    }
  }
  std::cout << format(run.final_poly()) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curvekit: build plane algebraic curves by blowing points up and down"};
  app.require_subcommand(1);
  int max_degree = max_total_degree();
  app.add_option("--max-degree", max_degree, "reject polynomials above this total degree");

  CurveOptions curve_opts;
  StepOptions step_opts;
  std::string at_text, viewport_text, out_path, pipeline_path, host = "127.0.0.1",
                                                                cors = "*", slug;
  int cells = 512, port = 8642;
  bool dump_steps = false;

  auto* parse_cmd = app.add_subcommand("parse", "print the canonical form of an expression");
  add_curve_options(parse_cmd, curve_opts);

  auto* down_cmd = app.add_subcommand("blowdown", "implode a point of the pivot axis");
  add_curve_options(down_cmd, curve_opts);
  add_step_options(down_cmd, step_opts);
  down_cmd->add_flag("--strict", step_opts.strict, "strip leftover (pivot-center) factors");

  auto* up_cmd = app.add_subcommand("blowup", "explode a point of the pivot axis");
  add_curve_options(up_cmd, curve_opts);
  add_step_options(up_cmd, step_opts);

  auto* sing_cmd = app.add_subcommand("singular", "classify a rational point of the curve");
  add_curve_options(sing_cmd, curve_opts);
  sing_cmd->add_option("--at", at_text, "point p,q")->required();

  auto* cone_cmd = app.add_subcommand("tangent-cone", "tangent lines at a rational curve point");
  add_curve_options(cone_cmd, curve_opts);
  cone_cmd->add_option("--at", at_text, "point p,q")->required();

  auto* plot_cmd = app.add_subcommand("plot", "render the real zero set as SVG");
  add_curve_options(plot_cmd, curve_opts);
  plot_cmd->add_option("--viewport", viewport_text, "umin,umax,vmin,vmax");
  plot_cmd->add_option("--cells", cells, "grid cells per axis")->check(CLI::Range(2, 8192));
  plot_cmd->add_option("--out", out_path, "output SVG file (default: standard output)");

  auto* cat_cmd = app.add_subcommand("catalog", "list the built-in curves");
  cat_cmd->add_option("slug", slug, "show one entry");
  cat_cmd->add_flag("--json", curve_opts.json, "machine-readable output");

  auto* pipe_cmd = app.add_subcommand("pipeline", "run a pipeline JSON file");
  pipe_cmd->add_option("file", pipeline_path, "pipeline JSON")->required();
  pipe_cmd->add_flag("--dump-steps", dump_steps, "print every intermediate polynomial");
  pipe_cmd->add_flag("--json", curve_opts.json, "machine-readable output");

  auto* serve_cmd = app.add_subcommand("serve", "run the JSON HTTP service");
  serve_cmd->add_option("--port", port, "listen port")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", host, "listen address");
  serve_cmd->add_option("--cors-origin", cors, "Access-Control-Allow-Origin value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  set_max_total_degree(max_degree);

  try {
    if (*parse_cmd) {
      const BivarPoly p = load_curve(curve_opts);
      if (curve_opts.json) {
        json j = poly_json(p);
        j["degree"] = p.total_degree();
        j["terms"] = p.size();
        std::cout << j.dump() << "\n";
      } else {
        std::cout << format(p) << "\n";
      }
    } else if (*down_cmd || *up_cmd) {
      const BivarPoly f = load_curve(curve_opts);
      const PipelineStep step =
          build_step(*down_cmd ? TransformKind::BlowDown : TransformKind::BlowUp, f, step_opts);
      const StepOutcome r = apply_step(f, step);
      if (curve_opts.json) {
        json j = poly_json(r.poly);
        j["step"] = to_json(step);
        if (r.exceptional_multiplicity) j["exceptional_multiplicity"] = *r.exceptional_multiplicity;
        std::cout << j.dump() << "\n";
      } else {
        std::cout << format(r.poly) << "\n";
        if (r.exceptional_multiplicity)
          std::cerr << "exceptional multiplicity: " << *r.exceptional_multiplicity << "\n";
      }
    } else if (*sing_cmd) {
      const BivarPoly f = load_curve(curve_opts);
      const PointClass pc = is_singular(f, point_flag(at_text));
      if (curve_opts.json) {
        json j{{"status", status_name(pc.status)}};
        if (pc.status != PointClass::Status::NotOnCurve) j["multiplicity"] = pc.multiplicity;
        std::cout << j.dump() << "\n";
      } else {
        std::cout << status_name(pc.status);
        if (pc.status != PointClass::Status::NotOnCurve) std::cout << " " << pc.multiplicity;
        std::cout << "\n";
      }
    } else if (*cone_cmd) {
      const BivarPoly f = load_curve(curve_opts);
      const TangentCone cone = tangent_cone(f, point_flag(at_text));
      if (curve_opts.json) {
        json names = json::array(), lines = json::array();
        for (const auto& l : cone.lines) {
          const std::string text = format(l.line, TermOrder::Ascending);
          names.push_back(text);
          lines.push_back({{"line", text}, {"multiplicity", l.multiplicity}});
        }
        json j{{"multiplicity", cone.multiplicity},
               {"tangent_lines", names},
               {"lines", lines},
               {"residual", format(cone.residual)},
               {"vars", {f.var_u(), f.var_v()}}};
        std::cout << j.dump() << "\n";
      } else {
        std::cout << "multiplicity " << cone.multiplicity << "\n";
        for (const auto& l : cone.lines)
          std::cout << "line " << format(l.line, TermOrder::Ascending) << " (multiplicity "
                    << l.multiplicity << ")\n";
        std::cout << "residual " << format(cone.residual) << "\n";
      }
    } else if (*plot_cmd) {
      const BivarPoly f = load_curve(curve_opts);
      Viewport vp;
      if (!viewport_text.empty())
        vp = viewport_flag(viewport_text);
      else if (!curve_opts.curve.empty())
        vp = lookup_curve(curve_opts.curve).viewport;
      else
        vp = Viewport{-2.0, 2.0, -2.0, 2.0};
      vp.cells_u = vp.cells_v = cells;
      const ContourSet cs = contour(f, vp);
      const std::string svg = emit_svg(cs, vp);
      if (out_path.empty() || out_path == "-") {
        std::cout << svg;
      } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw UsageError("cannot write '" + out_path + "'");
        out << svg;
        if (curve_opts.json)
          std::cout << json{{"out", out_path}, {"segments", cs.segments.size()}}.dump() << "\n";
        else
          std::cout << "wrote " << cs.segments.size() << " segments to " << out_path << "\n";
      }
    } else if (*cat_cmd) {
      if (!slug.empty()) {
        const CatalogEntry& e = lookup_curve(slug);
        if (curve_opts.json)
          std::cout << json{{"slug", e.slug}, {"name", e.display_name}, {"expr", format(e.poly)},
                            {"vars", {e.var_u, e.var_v}}, {"figure", e.figure}}
                           .dump()
                    << "\n";
        else
          std::cout << format(e.poly) << "\n";
      } else if (curve_opts.json) {
        Api api;
        std::cout << api.handle("GET", "/curves", "").body << "\n";
      } else {
        for (const auto& e : list_catalog())
          std::cout << e.slug << "\t(" << e.var_u << "," << e.var_v << ")\t" << format(e.poly)
                    << "\n";
      }
    } else if (*pipe_cmd) {
      return run_pipeline_file(pipeline_path, dump_steps, curve_opts.json);
    } else if (*serve_cmd) {
      Api api;
      Server server(api, cors);
      const int bound = server.bind(host, port);
      if (bound < 0) {
        std::cerr << "error: cannot bind " << host << ":" << port << "\n";
        return kExitDomain;
      }
      std::cerr << "curvekit service listening on http://" << host << ":" << bound << "\n";
      server.listen();
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const StepError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const CurveError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return 0;
}
