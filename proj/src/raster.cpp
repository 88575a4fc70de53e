#include "curvekit/raster.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "curvekit/errors.hpp"

namespace curvekit {

void Viewport::validate() const {
  const bool finite = std::isfinite(u_min) && std::isfinite(u_max) && std::isfinite(v_min) &&
                      std::isfinite(v_max);
  if (!finite) throw CurveError(Errc::InvalidViewport, "bounds must be finite");
  if (!(u_min < u_max) || !(v_min < v_max))
    throw CurveError(Errc::InvalidViewport, "bounds must satisfy min < max");
  if (cells_u < 2 || cells_v < 2)
    throw CurveError(Errc::InvalidViewport, "at least 2 cells per axis");
}

DensePoly::DensePoly(const BivarPoly& p) {
  for (const auto& [m, c] : p.terms()) {
    if (rows_.size() <= m.eu) rows_.resize(m.eu + 1);
    auto& row = rows_[m.eu];
    if (row.size() <= m.ev) row.resize(m.ev + 1, 0.0);
    row[m.ev] = c.get_d();
  }
}

double DensePoly::horner(const std::vector<double>& ascending, double x) {
  double acc = 0.0;
  for (auto it = ascending.rbegin(); it != ascending.rend(); ++it) acc = acc * x + *it;
  return acc;
}

void DensePoly::coefficients_at(double v, std::vector<double>& out) const {
  out.resize(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) out[i] = horner(rows_[i], v);
}

double DensePoly::operator()(double u, double v) const {
  std::vector<double> coeffs;
  coefficients_at(v, coeffs);
  return horner(coeffs, u);
}

namespace {

Grid empty_grid(const Viewport& vp) {
  Grid g;
  g.nodes_u = vp.cells_u + 1;
  g.nodes_v = vp.cells_v + 1;
  g.values.resize(static_cast<std::size_t>(g.nodes_u) * g.nodes_v);
  return g;
}

void sample_row(const DensePoly& dense, const Viewport& vp, int j, std::vector<double>& scratch,
                double* row, int nodes_u) {
  dense.coefficients_at(vp.node_v(j), scratch);
  for (int i = 0; i < nodes_u; ++i) row[i] = DensePoly::horner(scratch, vp.node_u(i));
}

// Edges: 0 bottom (c0-c1), 1 right (c1-c2), 2 top (c2-c3), 3 left (c3-c0),
// with c0=(i,j), c1=(i+1,j), c2=(i+1,j+1), c3=(i,j+1). Bit k set = corner k negative.
struct EdgePair {
  int count;
  int e[4];
};

constexpr EdgePair kCases[16] = {
    {0, {}},           {1, {3, 0}},       {1, {0, 1}}, {1, {3, 1}},
    {1, {1, 2}},       {2, {3, 0, 1, 2}}, {1, {0, 2}}, {1, {3, 2}},
    {1, {2, 3}},       {1, {0, 2}},       {2, {0, 1, 2, 3}}, {1, {1, 2}},
    {1, {1, 3}},       {1, {0, 1}},       {1, {3, 0}}, {0, {}},
};

// Saddles when the centre has the sign opposite to the default pairing.
constexpr EdgePair kCase5CenterInside = {2, {0, 1, 2, 3}};
constexpr EdgePair kCase10CenterInside = {2, {3, 0, 1, 2}};

Point2 crossing(double ua, double va, double fa, double ub, double vb, double fb) {
  const double denom = fa - fb;
  const double t = denom == 0.0 ? 0.5 : fa / denom;
  return {ua + t * (ub - ua), va + t * (vb - va)};
}

void march_row(const Grid& grid, const Viewport& vp, const CenterSampler& center, int j,
               std::vector<Segment>& out) {
  const double v0 = vp.node_v(j), v1 = vp.node_v(j + 1);
  for (int i = 0; i < vp.cells_u; ++i) {
    const double f[4] = {grid.at(i, j), grid.at(i + 1, j), grid.at(i + 1, j + 1),
                         grid.at(i, j + 1)};
    int index = 0;
    for (int k = 0; k < 4; ++k)
      if (f[k] < 0.0) index |= 1 << k;
    if (index == 0 || index == 15) continue;
    const double u0 = vp.node_u(i), u1 = vp.node_u(i + 1);
    const double cu[4] = {u0, u1, u1, u0};
    const double cv[4] = {v0, v0, v1, v1};

    EdgePair pairs = kCases[index];
    if (index == 5 || index == 10) {
      const double mid = center ? center(0.5 * (u0 + u1), 0.5 * (v0 + v1))
                                : 0.25 * (f[0] + f[1] + f[2] + f[3]);
      if (mid < 0.0) pairs = index == 5 ? kCase5CenterInside : kCase10CenterInside;
    }
    auto edge_point = [&](int e) {
      const int a = e, b = (e + 1) % 4;
      return crossing(cu[a], cv[a], f[a], cu[b], cv[b], f[b]);
    };
    for (int s = 0; s < pairs.count; ++s)
      out.push_back({edge_point(pairs.e[2 * s]), edge_point(pairs.e[2 * s + 1])});
  }
}

void fill_stats(const Grid& grid, ContourSet& cs) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double x : grid.values) {
    const double a = std::fabs(x);
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  cs.min_abs = grid.values.empty() ? 0.0 : lo;
  cs.max_abs = hi;
}

void check_grid(const Grid& grid, const Viewport& vp) {
  vp.validate();
  if (grid.nodes_u != vp.cells_u + 1 || grid.nodes_v != vp.cells_v + 1 ||
      grid.values.size() != static_cast<std::size_t>(grid.nodes_u) * grid.nodes_v)
    throw CurveError(Errc::InvalidViewport, "grid dimensions do not match the viewport");
}

}  // namespace

Grid sample_grid(const BivarPoly& p, const Viewport& vp) {
  vp.validate();
  check_degree_limit(p.total_degree());
  const DensePoly dense(p);
  Grid g = empty_grid(vp);
#pragma omp parallel
  {
    std::vector<double> scratch;
#pragma omp for schedule(static)
    for (int j = 0; j < g.nodes_v; ++j)
      sample_row(dense, vp, j, scratch, g.values.data() + static_cast<std::size_t>(j) * g.nodes_u,
                 g.nodes_u);
  }
  return g;
}

Grid sample_grid_serial(const BivarPoly& p, const Viewport& vp) {
  vp.validate();
  check_degree_limit(p.total_degree());
  const DensePoly dense(p);
  Grid g = empty_grid(vp);
  for (int j = 0; j < g.nodes_v; ++j)
    for (int i = 0; i < g.nodes_u; ++i)
      g.values[static_cast<std::size_t>(j) * g.nodes_u + i] = dense(vp.node_u(i), vp.node_v(j));
  return g;
}

ContourSet marching_squares(const Grid& grid, const Viewport& vp, const CenterSampler& center) {
  check_grid(grid, vp);
  std::vector<std::vector<Segment>> rows(static_cast<std::size_t>(vp.cells_v));
#pragma omp parallel for schedule(dynamic, 8)
  for (int j = 0; j < vp.cells_v; ++j) march_row(grid, vp, center, j, rows[j]);
  ContourSet cs;
  std::size_t total = 0;
  for (const auto& r : rows) total += r.size();
  cs.segments.reserve(total);
  for (auto& r : rows) cs.segments.insert(cs.segments.end(), r.begin(), r.end());
  fill_stats(grid, cs);
  return cs;
}

ContourSet marching_squares_serial(const Grid& grid, const Viewport& vp,
                                   const CenterSampler& center) {
  check_grid(grid, vp);
  ContourSet cs;
  for (int j = 0; j < vp.cells_v; ++j) march_row(grid, vp, center, j, cs.segments);
  fill_stats(grid, cs);
  return cs;
}

ContourSet contour(const BivarPoly& p, const Viewport& vp) {
  const DensePoly dense(p);
  return marching_squares(sample_grid(p, vp), vp,
                          [&dense](double u, double v) { return dense(u, v); });
}

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

}  // namespace

std::string emit_svg(const ContourSet& cs, const Viewport& vp, const SvgStyle& style) {
  vp.validate();
  const double width = std::max(1, style.width_px);
  const double height =
      std::max(1.0, std::round(width * (vp.v_max - vp.v_min) / (vp.u_max - vp.u_min)));
  auto px = [&](double u) { return (u - vp.u_min) / (vp.u_max - vp.u_min) * width; };
  auto py = [&](double v) { return (vp.v_max - v) / (vp.v_max - vp.v_min) * height; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(width) +
         "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) +
         "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + num(width) + "\" height=\"" + num(height) +
         "\" fill=\"white\"/>\n";
  if (style.axes) {
    out += "<g id=\"axes\" stroke=\"#9a9a9a\" stroke-width=\"1\">\n";
    if (vp.v_min <= 0.0 && 0.0 <= vp.v_max)
      out += "<line x1=\"0.00\" y1=\"" + num(py(0.0)) + "\" x2=\"" + num(width) + "\" y2=\"" +
             num(py(0.0)) + "\"/>\n";
    if (vp.u_min <= 0.0 && 0.0 <= vp.u_max)
      out += "<line x1=\"" + num(px(0.0)) + "\" y1=\"0.00\" x2=\"" + num(px(0.0)) + "\" y2=\"" +
             num(height) + "\"/>\n";
    out += "</g>\n";
  }
  if (!cs.segments.empty()) {
    out += "<path id=\"curve\" fill=\"none\" stroke=\"" + style.stroke + "\" stroke-width=\"" +
           num(style.stroke_width) + "\" stroke-linecap=\"round\" d=\"";
    std::string last_end;
    for (const auto& s : cs.segments) {
      const std::string start = num(px(s.a.u)) + " " + num(py(s.a.v));
      const std::string end = num(px(s.b.u)) + " " + num(py(s.b.v));
      if (start != last_end) out += "M" + start + " ";
      out += "L" + end + " ";
      last_end = end;
    }
    if (out.back() == ' ') out.pop_back();
    out += "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace curvekit
