#pragma once

// Floating-point approximation of the real zero set of a curve, for plotting.
//
// The grid sampler and the marching-squares pass each come in two flavours:
// an OpenMP version parallel over grid rows, and a serial reference kept for
// testing and benchmarking. Both produce bit-identical output.

#include <functional>
#include <string>
#include <vector>

#include "curvekit/poly.hpp"

namespace curvekit {

struct Viewport {
  double u_min = -1.0;
  double u_max = 1.0;
  double v_min = -1.0;
  double v_max = 1.0;
  int cells_u = 512;
  int cells_v = 512;

  /// Throws CurveError(InvalidViewport).
  void validate() const;
  double node_u(int i) const { return u_min + (u_max - u_min) * i / cells_u; }
  double node_v(int j) const { return v_min + (v_max - v_min) * j / cells_v; }
};

/// Coefficients converted to double once; evaluation is Horner in v per
/// power of u, then Horner in u.
class DensePoly {
 public:
  explicit DensePoly(const BivarPoly& p);
  double operator()(double u, double v) const;
  /// Coefficients of u^0..u^n at a fixed v.
  void coefficients_at(double v, std::vector<double>& out) const;
  static double horner(const std::vector<double>& ascending, double x);

 private:
  std::vector<std::vector<double>> rows_;  // rows_[i][j] = coeff of u^i v^j
};

struct Grid {
  int nodes_u = 0;
  int nodes_v = 0;
  std::vector<double> values;  // row-major, row j = fixed v

  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * nodes_u + i]; }
};

Grid sample_grid(const BivarPoly& p, const Viewport& vp);
Grid sample_grid_serial(const BivarPoly& p, const Viewport& vp);

struct Point2 {
  double u = 0.0;
  double v = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Segment {
  Point2 a;
  Point2 b;
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct ContourSet {
  std::vector<Segment> segments;
  double min_abs = 0.0;  // min |f| over the grid
  double max_abs = 0.0;  // max |f| over the grid
};

/// Value at a cell centre, used to split saddle cells. When empty, the mean
/// of the four corners is used.
using CenterSampler = std::function<double(double u, double v)>;

ContourSet marching_squares(const Grid& grid, const Viewport& vp, const CenterSampler& center = {});
ContourSet marching_squares_serial(const Grid& grid, const Viewport& vp,
                                   const CenterSampler& center = {});

/// sample_grid + marching_squares with exact centre sampling.
ContourSet contour(const BivarPoly& p, const Viewport& vp);

struct SvgStyle {
  int width_px = 512;
  bool axes = true;
  std::string stroke = "#1f4e9c";
  double stroke_width = 1.5;
};

std::string emit_svg(const ContourSet& cs, const Viewport& vp, const SvgStyle& style = {});

}  // namespace curvekit
