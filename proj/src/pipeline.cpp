#include "curvekit/pipeline.hpp"

#include "curvekit/catalog.hpp"
#include "curvekit/expr.hpp"

namespace curvekit {

namespace {

[[noreturn]] void schema(const std::string& what) { throw CurveError(Errc::SchemaError, what); }

const json& require(const json& j, const char* key) {
  if (!j.is_object()) schema("expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema(std::string("missing field '") + key + "'");
  return *it;
}

std::string require_string(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_string()) schema(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

BigRat rational_field(const json& v, const char* key) {
  try {
    if (v.is_number_integer()) return BigRat(BigInt(v.dump(), 10));
    if (v.is_string()) return parse_rational(v.get<std::string>());
  } catch (const CurveError& e) {
    schema(std::string("field '") + key + "': " + e.detail());
  }
  schema(std::string("field '") + key + "' must be a rational string \"p/q\" or an integer");
}

}  // namespace

StepError::StepError(std::size_t step_number, const CurveError& cause)
    : CurveError(cause.code(), "step " + std::to_string(step_number) + ": " + cause.detail(),
                 cause.offset()),
      step_number_(step_number) {}

std::string_view kind_name(TransformKind kind) {
  return kind == TransformKind::BlowDown ? "blow_down" : "blow_up";
}

TransformStep step_from_json(const json& j) {
  TransformStep s;
  const std::string kind = require_string(j, "kind");
  if (kind == "blow_down")
    s.kind = TransformKind::BlowDown;
  else if (kind == "blow_up")
    s.kind = TransformKind::BlowUp;
  else
    schema("field 'kind' must be \"blow_down\" or \"blow_up\"");
  s.pivot = require_string(j, "pivot");
  s.replaced = require_string(j, "replaced");
  s.new_var = require_string(j, "new");
  s.center = rational_field(require(j, "center"), "center");
  if (auto it = j.find("strict"); it != j.end()) {
    if (!it->is_boolean()) schema("field 'strict' must be a boolean");
    s.strict = it->get<bool>();
  }
  return s;
}

PipelineStep pipeline_step_from_json(const json& j) {
  PipelineStep ps{step_from_json(j), BigRat(0)};
  if (auto it = j.find("shift"); it != j.end()) ps.shift = rational_field(*it, "shift");
  return ps;
}

json to_json(const TransformStep& step) {
  json j;
  j["kind"] = kind_name(step.kind);
  j["pivot"] = step.pivot;
  j["replaced"] = step.replaced;
  j["new"] = step.new_var;
  j["center"] = to_string(step.center);
  j["strict"] = step.strict;
  return j;
}

json to_json(const PipelineStep& step) {
  json j = to_json(step.step);
  if (step.shift != 0) j["shift"] = to_string(step.shift);
  return j;
}

Seed seed_from_json(const json& j) {
  if (!j.is_object()) schema("'seed' must be an object");
  Seed s;
  if (auto it = j.find("curve"); it != j.end()) {
    if (!it->is_string()) schema("'seed.curve' must be a string");
    s.curve = it->get<std::string>();
  }
  if (auto it = j.find("expr"); it != j.end()) {
    if (!it->is_string()) schema("'seed.expr' must be a string");
    s.expr = it->get<std::string>();
  }
  if (s.curve.has_value() == s.expr.has_value()) schema("seed needs exactly one of 'curve' or 'expr'");
  if (auto it = j.find("vars"); it != j.end()) {
    if (!it->is_array() || it->size() != 2 || !(*it)[0].is_string() || !(*it)[1].is_string())
      schema("'seed.vars' must be an array of two names");
    s.vars = std::array<std::string, 2>{(*it)[0].get<std::string>(), (*it)[1].get<std::string>()};
  }
  if (s.expr && !s.vars) schema("an 'expr' seed needs 'vars'");
  return s;
}

json to_json(const Seed& seed) {
  json j = json::object();
  if (seed.curve) j["curve"] = *seed.curve;
  if (seed.expr) j["expr"] = *seed.expr;
  if (seed.vars) j["vars"] = {(*seed.vars)[0], (*seed.vars)[1]};
  return j;
}

Pipeline pipeline_from_json(const json& j) {
  if (!j.is_object()) schema("pipeline must be a JSON object");
  const json& version = require(j, "version");
  if (!version.is_number_integer() || version.get<long long>() != 1)
    schema("unsupported pipeline version (expected 1)");
  Pipeline p;
  p.seed = seed_from_json(require(j, "seed"));
  const json& steps = require(j, "steps");
  if (!steps.is_array()) schema("'steps' must be an array");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    try {
      p.steps.push_back(pipeline_step_from_json(steps[i]));
    } catch (const CurveError& e) {
      schema("steps[" + std::to_string(i) + "]: " + e.detail());
    }
  }
  return p;
}

json to_json(const Pipeline& p) {
  json steps = json::array();
  for (const auto& s : p.steps) steps.push_back(to_json(s));
  return {{"version", 1}, {"seed", to_json(p.seed)}, {"steps", steps}};
}

BivarPoly resolve_seed(const Seed& seed) {
  if (seed.curve) {
    const CatalogEntry& e = lookup_curve(*seed.curve);
    if (seed.vars && ((*seed.vars)[0] != e.var_u || (*seed.vars)[1] != e.var_v))
      throw CurveError(Errc::VariableMismatch, "curve '" + e.slug + "' uses variables (" +
                                                   e.var_u + "," + e.var_v + ")");
    return e.poly;
  }
  if (!seed.expr || !seed.vars) throw CurveError(Errc::SchemaError, "seed needs 'expr' and 'vars'");
  return parse_curve(*seed.expr, (*seed.vars)[0], (*seed.vars)[1]);
}

StepOutcome apply_step(const BivarPoly& f, const PipelineStep& ps) {
  const TransformStep& step = ps.step;
  BivarPoly input = f;
  if (ps.shift != 0) {
    if (!f.has_variable(step.replaced))
      throw CurveError(Errc::VariableMismatch,
                       "'" + step.replaced + "' is not a variable of the curve");
    RationalPoint by{0, 0};
    (f.var_u() == step.replaced ? by.u : by.v) = ps.shift;
    input = translate(f, by).poly;
  }
  if (step.kind == TransformKind::BlowDown) return {blow_down(input, step), std::nullopt};
  BlowUpResult r = blow_up(input, step);
  return {std::move(r.proper), r.exceptional_multiplicity};
}

PipelineRun run_pipeline(const Pipeline& p) {
  PipelineRun run{resolve_seed(p.seed), {}};
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    try {
      run.steps.push_back(apply_step(run.final_poly(), p.steps[i]));
    } catch (const CurveError& e) {
      throw StepError(i + 1, e);
    }
  }
  return run;
}

}  // namespace curvekit
