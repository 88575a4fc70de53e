#pragma once

// Blow-down and blow-up of plane curves at a point (a, 0) on the pivot axis,
// plus the local analysis (multiplicity, tangent cone) used to choose where
// to apply them.
//
// With pivot p, replaced variable r and new variable w:
//   blow-down:  r := w / (p - a), then clear denominators by (p - a)^deg_r(f)
//   blow-up:    r := (p - a) * w, then strip the factor (p - a)^k
// Both are done with integer arithmetic only: for a = s/q the linear form
// (q*p - s) stands in for (p - a), and the q-powers fold into normalization.

#include <string>
#include <vector>

#include "curvekit/poly.hpp"

namespace curvekit {

enum class TransformKind { BlowDown, BlowUp };

struct TransformStep {
  TransformKind kind = TransformKind::BlowDown;
  std::string pivot;     // kept variable; the exceptional line is pivot = center
  std::string replaced;  // eliminated variable
  std::string new_var;   // introduced variable
  BigRat center = 0;
  bool strict = false;   // blow-down only: strip (pivot - center)^k afterwards
};

struct BlowUpResult {
  BivarPoly proper;
  int exceptional_multiplicity = 0;
};

/// Output variables are (pivot, new_var). Throws DegreeOfZero, VariableMismatch,
/// DegreeLimitExceeded.
BivarPoly blow_down(const BivarPoly& f, const TransformStep& step);

/// Throws DegreeOfZero, VariableMismatch, DegreeLimitExceeded, and
/// DegenerateTransform when the proper transform is a nonzero constant.
BlowUpResult blow_up(const BivarPoly& f, const TransformStep& step);

/// Largest k with (q*pivot - s)^k | f, where center = s/q, and f divided by it.
/// f must be nonzero.
std::pair<BivarPoly, int> strip_axis_factor(const BivarPoly& f, std::string_view pivot,
                                            const BigRat& center);

/// Formal partial derivative in canonical form.
BivarPoly partial_derivative(const BivarPoly& f, std::string_view var);

struct PointClass {
  enum class Status { NotOnCurve, SmoothPoint, SingularPoint };
  Status status = Status::NotOnCurve;
  int multiplicity = 0;  // 0 when not on the curve
};

std::string_view status_name(PointClass::Status s);

PointClass is_singular(const BivarPoly& f, const RationalPoint& at);

struct TangentLine {
  /// Homogeneous linear form in the curve's variables, centred at the point:
  /// t*v - s*u for slope s/t (t > 0), or u / v for the coordinate axes.
  BivarPoly line;
  int multiplicity = 0;
};

struct TangentCone {
  int multiplicity = 0;
  std::vector<TangentLine> lines;
  /// Canonical homogeneous factor without rational linear factors, or 1.
  BivarPoly residual;
};

/// Throws NotOnCurve when f(at) != 0.
TangentCone tangent_cone(const BivarPoly& f, const RationalPoint& at);

/// Lowest homogeneous part of f translated to `at`, in canonical form.
BivarPoly cone_polynomial(const BivarPoly& f, const RationalPoint& at);

}  // namespace curvekit
