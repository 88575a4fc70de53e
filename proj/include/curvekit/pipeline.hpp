#pragma once

// Pipelines: a seed curve followed by an ordered list of transform steps.
// The JSON form is the one persisted artifact of a session:
//
//   { "version": 1,
//     "seed":  { "curve": "<slug>" | "expr": "<text>", "vars": ["u", "v"] },
//     "steps": [ { "kind": "blow_down" | "blow_up", "pivot": "x",
//                  "replaced": "y", "new": "z", "center": "p/q",
//                  "strict": false, "shift": "p/q" }, ... ] }
//
// "strict" and "shift" are optional. "shift" = b moves the point
// (center, b) onto the pivot axis before the transform is applied.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "curvekit/errors.hpp"
#include "curvekit/transforms.hpp"

namespace curvekit {

using json = nlohmann::json;

struct Seed {
  std::optional<std::string> curve;
  std::optional<std::string> expr;
  std::optional<std::array<std::string, 2>> vars;
};

struct PipelineStep {
  TransformStep step;
  BigRat shift = 0;
};

struct Pipeline {
  Seed seed;
  std::vector<PipelineStep> steps;
};

struct StepOutcome {
  BivarPoly poly;
  std::optional<int> exceptional_multiplicity;  // blow-up only
};

struct PipelineRun {
  BivarPoly seed;
  std::vector<StepOutcome> steps;

  const BivarPoly& final_poly() const { return steps.empty() ? seed : steps.back().poly; }
};

/// A CurveError raised while applying step `step_number` (1-based).
class StepError : public CurveError {
 public:
  StepError(std::size_t step_number, const CurveError& cause);
  std::size_t step_number() const noexcept { return step_number_; }

 private:
  std::size_t step_number_;
};

// JSON <-> structs. Malformed documents throw CurveError(SchemaError).
TransformStep step_from_json(const json& j);
PipelineStep pipeline_step_from_json(const json& j);
json to_json(const TransformStep& step);
json to_json(const PipelineStep& step);
Seed seed_from_json(const json& j);
json to_json(const Seed& seed);
Pipeline pipeline_from_json(const json& j);
json to_json(const Pipeline& p);

std::string_view kind_name(TransformKind kind);

/// Resolves a seed into its canonical polynomial (catalog lookup or parse).
BivarPoly resolve_seed(const Seed& seed);

/// Applies one step (with its optional pre-translation).
StepOutcome apply_step(const BivarPoly& f, const PipelineStep& step);

/// Throws StepError for failures inside a step.
PipelineRun run_pipeline(const Pipeline& p);

}  // namespace curvekit
