#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "curvekit/poly.hpp"
#include "curvekit/raster.hpp"
#include "curvekit/transforms.hpp"

namespace curvekit {

struct CatalogEntry {
  std::string slug;
  std::string display_name;
  std::string var_u;
  std::string var_v;
  std::string source_text;  // the equation as usually printed
  BivarPoly poly;           // canonical expansion of source_text
  int figure = 0;
  /// For derived curves: the parent slug and the step producing this one.
  std::optional<std::string> parent;
  std::optional<TransformStep> derivation;
  Viewport viewport;
};

/// All built-in curves, seeds first, in a stable order.
std::span<const CatalogEntry> list_catalog();

/// Throws CurveError(NotFound).
const CatalogEntry& lookup_curve(std::string_view slug);

}  // namespace curvekit
