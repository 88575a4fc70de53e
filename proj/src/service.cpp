#include "curvekit/service.hpp"

#include <httplib.h>

#include <cstdio>
#include <random>
#include <vector>

#include "curvekit/catalog.hpp"
#include "curvekit/expr.hpp"
#include "curvekit/raster.hpp"

namespace curvekit {

namespace {

constexpr int kMaxCells = 2048;

int status_for(Errc code) {
  switch (code) {
    case Errc::ParseError:
    case Errc::SchemaError:
    case Errc::InvalidViewport: return 400;
    case Errc::NotFound: return 404;
    default: return 422;
  }
}

ApiResponse error_response(int status, std::string_view error, const std::string& detail,
                           std::optional<std::size_t> offset = std::nullopt) {
  json j{{"error", error}, {"detail", detail}};
  if (offset) j["offset"] = *offset;
  return {status, j.dump()};
}

[[noreturn]] void bad_request(const std::string& detail) {
  throw CurveError(Errc::SchemaError, detail);
}

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < path.size()) {
    if (path[i] == '/') {
      ++i;
      continue;
    }
    std::size_t j = path.find('/', i);
    if (j == std::string_view::npos) j = path.size();
    parts.emplace_back(path.substr(i, j - i));
    i = j;
  }
  return parts;
}

std::array<std::string, 2> vars_field(const json& body) {
  auto it = body.find("vars");
  if (it == body.end()) return {"x", "y"};
  if (!it->is_array() || it->size() != 2 || !(*it)[0].is_string() || !(*it)[1].is_string())
    bad_request("'vars' must be an array of two names");
  return {(*it)[0].get<std::string>(), (*it)[1].get<std::string>()};
}

/// {slug} or {poly, vars}; the polynomial is returned in canonical form.
BivarPoly poly_from_body(const json& body) {
  if (auto it = body.find("slug"); it != body.end()) {
    if (!it->is_string()) bad_request("'slug' must be a string");
    return lookup_curve(it->get<std::string>()).poly;
  }
  auto it = body.find("poly");
  if (it == body.end()) it = body.find("expr");
  if (it == body.end() || !it->is_string()) bad_request("request needs 'poly' text or 'slug'");
  const auto vars = vars_field(body);
  return parse_curve(it->get<std::string>(), vars[0], vars[1]);
}

BigRat rational_value(const json& v) {
  if (v.is_number_integer()) return BigRat(BigInt(v.dump(), 10));
  if (v.is_string()) return parse_rational(v.get<std::string>());
  bad_request("coordinates must be integers or \"p/q\" strings");
}

json poly_json(const BivarPoly& p) {
  return {{"poly", format(p)}, {"vars", {p.var_u(), p.var_v()}}};
}

json catalog_json() {
  json out = json::array();
  for (const auto& e : list_catalog()) {
    json j{{"slug", e.slug},
           {"name", e.display_name},
           {"expr", format(e.poly)},
           {"source", e.source_text},
           {"vars", {e.var_u, e.var_v}},
           {"figure", e.figure},
           {"viewport", {e.viewport.u_min, e.viewport.u_max, e.viewport.v_min, e.viewport.v_max}}};
    if (e.parent) {
      j["parent"] = *e.parent;
      j["step"] = to_json(*e.derivation);
    }
    out.push_back(std::move(j));
  }
  return out;
}

json parse_endpoint(const json& body) {
  auto it = body.find("expr");
  if (it == body.end() || !it->is_string()) bad_request("'expr' must be a string");
  const auto vars = vars_field(body);
  const BivarPoly p = parse_curve(it->get<std::string>(), vars[0], vars[1]);
  json out = poly_json(p);
  out["degree"] = p.total_degree();
  out["terms"] = p.size();
  return out;
}

json transform_endpoint(const json& body) {
  const BivarPoly f = poly_from_body(body);
  auto it = body.find("step");
  if (it == body.end()) bad_request("missing 'step'");
  const StepOutcome r = apply_step(f, pipeline_step_from_json(*it));
  json out = poly_json(r.poly);
  if (r.exceptional_multiplicity) out["exceptional_multiplicity"] = *r.exceptional_multiplicity;
  return out;
}

json analyze_endpoint(const json& body) {
  const BivarPoly f = poly_from_body(body);
  auto it = body.find("at");
  if (it == body.end() || !it->is_array() || it->size() != 2) bad_request("'at' must be [p, q]");
  const RationalPoint at{rational_value((*it)[0]), rational_value((*it)[1])};
  const PointClass pc = is_singular(f, at);
  json out{{"status", status_name(pc.status)}, {"at", {to_string(at.u), to_string(at.v)}}};
  if (pc.status == PointClass::Status::NotOnCurve) return out;
  out["multiplicity"] = pc.multiplicity;
  const TangentCone cone = tangent_cone(f, at);
  json names = json::array(), lines = json::array();
  for (const auto& l : cone.lines) {
    names.push_back(format(l.line, TermOrder::Ascending));
    lines.push_back({{"line", format(l.line, TermOrder::Ascending)}, {"multiplicity", l.multiplicity}});
  }
  out["tangent_lines"] = names;
  out["tangent_cone"] = lines;
  out["residual"] = format(cone.residual);
  return out;
}

Viewport viewport_from_body(const json& body) {
  Viewport vp;
  auto it = body.find("viewport");
  if (it == body.end() || !it->is_array() || it->size() != 4)
    bad_request("'viewport' must be [u_min, u_max, v_min, v_max]");
  for (const auto& x : *it)
    if (!x.is_number()) bad_request("'viewport' entries must be numbers");
  vp.u_min = (*it)[0].get<double>();
  vp.u_max = (*it)[1].get<double>();
  vp.v_min = (*it)[2].get<double>();
  vp.v_max = (*it)[3].get<double>();
  if (auto c = body.find("cells"); c != body.end()) {
    if (c->is_number_integer()) {
      vp.cells_u = vp.cells_v = c->get<int>();
    } else if (c->is_array() && c->size() == 2 && (*c)[0].is_number_integer() &&
               (*c)[1].is_number_integer()) {
      vp.cells_u = (*c)[0].get<int>();
      vp.cells_v = (*c)[1].get<int>();
    } else {
      bad_request("'cells' must be an integer or [cells_u, cells_v]");
    }
  }
  if (vp.cells_u > kMaxCells || vp.cells_v > kMaxCells)
    throw CurveError(Errc::InvalidViewport, "at most " + std::to_string(kMaxCells) + " cells per axis");
  vp.validate();
  return vp;
}

json raster_endpoint(const json& body) {
  const BivarPoly f = poly_from_body(body);
  const Viewport vp = viewport_from_body(body);
  std::string fmt = "svg";
  if (auto it = body.find("format"); it != body.end()) {
    if (!it->is_string()) bad_request("'format' must be a string");
    fmt = it->get<std::string>();
  }
  if (fmt != "svg" && fmt != "segments") bad_request("'format' must be \"svg\" or \"segments\"");
  const ContourSet cs = contour(f, vp);
  json out{{"segment_count", cs.segments.size()}, {"min_abs", cs.min_abs}, {"max_abs", cs.max_abs}};
  if (fmt == "svg") {
    out["svg"] = emit_svg(cs, vp);
  } else {
    json segs = json::array();
    for (const auto& s : cs.segments) segs.push_back({s.a.u, s.a.v, s.b.u, s.b.v});
    out["segments"] = std::move(segs);
  }
  return out;
}

json session_json(const std::string& id, const Pipeline& pipeline, const PipelineRun& run) {
  json history = json::array();
  for (std::size_t i = 0; i < run.steps.size(); ++i) {
    json h{{"step", to_json(pipeline.steps[i])}, {"poly", format(run.steps[i].poly)}};
    if (run.steps[i].exceptional_multiplicity)
      h["exceptional_multiplicity"] = *run.steps[i].exceptional_multiplicity;
    history.push_back(std::move(h));
  }
  const BivarPoly& cur = run.final_poly();
  return {{"id", id},
          {"seed", to_json(pipeline.seed)},
          {"seed_poly", format(run.seed)},
          {"current", format(cur)},
          {"vars", {cur.var_u(), cur.var_v()}},
          {"history", history}};
}

std::string fresh_token(std::uint64_t counter) {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  char buf[40];
  std::snprintf(buf, sizeof buf, "s%llx-%016llx", static_cast<unsigned long long>(counter),
                static_cast<unsigned long long>(rng()));
  return buf;
}

}  // namespace

json Api::create_session(const json& body) {
  if (!body.is_object()) bad_request("session body must be an object");
  Pipeline p;
  auto seed = body.find("seed");
  if (seed == body.end()) bad_request("missing 'seed'");
  p.seed = seed_from_json(*seed);
  if (auto steps = body.find("steps"); steps != body.end()) {
    json doc{{"version", 1}, {"seed", *seed}, {"steps", *steps}};
    p = pipeline_from_json(doc);
  }
  PipelineRun run = run_pipeline(p);
  auto slot = std::make_shared<Slot>(
      Session{fresh_token(next_id_.fetch_add(1)), std::move(p), std::move(run)});
  json out = session_json(slot->session.id, slot->session.pipeline, slot->session.run);
  std::unique_lock lock(sessions_mu_);
  sessions_.emplace(slot->session.id, std::move(slot));
  return out;
}

std::shared_ptr<Api::Slot> Api::find_session(const std::string& id) {
  std::shared_lock lock(sessions_mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw CurveError(Errc::NotFound, "no session '" + id + "'");
  return it->second;
}

ApiResponse Api::handle(std::string_view method, std::string_view path, std::string_view body) {
  try {
    const auto parts = split_path(path);
    auto parse_body = [&]() {
      if (body.empty()) return json::object();
      json j = json::parse(body, nullptr, false);
      if (j.is_discarded()) bad_request("request body is not valid JSON");
      if (!j.is_object()) bad_request("request body must be a JSON object");
      return j;
    };

    if (method == "GET" && parts.size() == 1 && parts[0] == "curves")
      return {200, catalog_json().dump()};
    if (method == "POST" && parts.size() == 1) {
      if (parts[0] == "parse") return {200, parse_endpoint(parse_body()).dump()};
      if (parts[0] == "transform") return {200, transform_endpoint(parse_body()).dump()};
      if (parts[0] == "analyze") return {200, analyze_endpoint(parse_body()).dump()};
      if (parts[0] == "raster") return {200, raster_endpoint(parse_body()).dump()};
      if (parts[0] == "sessions") return {201, create_session(parse_body()).dump()};
    }
    if (parts.size() >= 2 && parts[0] == "sessions") {
      auto slot = find_session(parts[1]);
      std::lock_guard lock(slot->mu);
      Session& s = slot->session;
      if (method == "GET" && parts.size() == 2)
        return {200, session_json(s.id, s.pipeline, s.run).dump()};
      if (method == "GET" && parts.size() == 3 && parts[2] == "export")
        return {200, to_json(s.pipeline).dump()};
      if (method == "POST" && parts.size() == 3 && parts[2] == "steps") {
        const json j = parse_body();
        auto step_it = j.find("step");
        const PipelineStep step = pipeline_step_from_json(step_it == j.end() ? j : *step_it);
        StepOutcome outcome = apply_step(s.run.final_poly(), step);
        s.pipeline.steps.push_back(step);
        s.run.steps.push_back(std::move(outcome));
        return {200, session_json(s.id, s.pipeline, s.run).dump()};
      }
      if (method == "POST" && parts.size() == 3 && parts[2] == "undo") {
        if (s.pipeline.steps.empty())
          return error_response(422, "NothingToUndo", "session has no steps");
        s.pipeline.steps.pop_back();
        s.run = run_pipeline(s.pipeline);
        return {200, session_json(s.id, s.pipeline, s.run).dump()};
      }
    }
    return error_response(404, "NotFound", std::string(method) + " " + std::string(path));
  } catch (const CurveError& e) {
    return error_response(status_for(e.code()), e.name(), e.detail(), e.offset());
  } catch (const json::exception& e) {
    return error_response(400, "SchemaError", e.what());
  }
}

struct Server::Impl {
  Api& api;
  httplib::Server http;
  explicit Impl(Api& a) : api(a) {}
};

Server::Server(Api& api, std::string cors_origin) : impl_(std::make_unique<Impl>(api)) {
  impl_->http.set_default_headers({{"Access-Control-Allow-Origin", cors_origin},
                                   {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                   {"Access-Control-Allow-Headers", "Content-Type"}});
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    const ApiResponse r = impl_->api.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  impl_->http.Get(".*", handler);
  impl_->http.Post(".*", handler);
  impl_->http.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

Server::~Server() = default;

int Server::bind(const std::string& host, int port) {
  if (port == 0) return impl_->http.bind_to_any_port(host);
  return impl_->http.bind_to_port(host, port) ? port : -1;
}

bool Server::listen() { return impl_->http.listen_after_bind(); }

void Server::stop() { impl_->http.stop(); }

}  // namespace curvekit
