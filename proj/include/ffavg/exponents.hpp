#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <iomanip>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ffavg {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational
make_rational(std::int64_t num, std::int64_t den = 1)
{
  if (den == 0) {
    throw std::invalid_argument("make_rational: zero denominator");
  }
  return Rational(BigInt(num), BigInt(den));
}

// Accepts "a" or "a/b" with integer a, b.
inline Rational
parse_rational(std::string_view text)
{
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc() || ptr != end) {
      throw std::invalid_argument("parse_rational: malformed rational '" + std::string(text) + "'");
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return make_rational(parse_int(text));
  }
  return make_rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

inline std::string
to_string(const Rational& r)
{
  return r.str();
}

inline double
to_double(const Rational& r)
{
  return r.convert_to<double>();
}

// (1/p, 1/r) in the closed unit square.
struct ExponentPoint
{
  Rational x;
  Rational y;

  ExponentPoint() = default;
  ExponentPoint(Rational x_, Rational y_)
    : x(std::move(x_))
    , y(std::move(y_))
  {
    if (x < 0 || x > 1 || y < 0 || y > 1) {
      throw std::invalid_argument("ExponentPoint: (" + to_string(x) + ", " + to_string(y) +
                                  ") lies outside the unit square");
    }
  }

  friend bool operator==(const ExponentPoint& a, const ExponentPoint& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const ExponentPoint& a, const ExponentPoint& b)
  {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  }

  std::string str() const { return "(" + to_string(x) + ", " + to_string(y) + ")"; }
};

// (b - a) x (c - a); positive when a, b, c turn counterclockwise.
inline Rational
orientation(const ExponentPoint& a, const ExponentPoint& b, const ExponentPoint& c)
{
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// Strictly convex polygon, counterclockwise from its lexicographic minimum.
// Degenerate hulls have one vertex (a point) or two (a segment).
class ExponentRegion
{
public:
  ExponentRegion() = default;
  ExponentRegion(std::vector<ExponentPoint> vertices, std::string label)
    : vertices_(std::move(vertices))
    , label_(std::move(label))
  {
  }

  const std::vector<ExponentPoint>& vertices() const noexcept { return vertices_; }
  const std::string& label() const noexcept { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  friend bool operator==(const ExponentRegion& a, const ExponentRegion& b) { return a.vertices_ == b.vertices_; }

private:
  std::vector<ExponentPoint> vertices_;
  std::string label_;
};

// Monotone chain; collinear and duplicate points are dropped.
inline ExponentRegion
hull(std::vector<ExponentPoint> pts, std::string label = {})
{
  if (pts.empty()) {
    throw std::invalid_argument("hull: at least one point is required");
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) {
    return { std::move(pts), std::move(label) };
  }
  std::vector<ExponentPoint> h(2 * pts.size());
  std::size_t n = 0;
  for (const auto& pt : pts) {
    while (n >= 2 && orientation(h[n - 2], h[n - 1], pt) <= 0) {
      --n;
    }
    h[n++] = pt;
  }
  const std::size_t lower = n + 1;
  for (std::size_t i = pts.size() - 1; i-- > 0;) {
    while (n >= lower && orientation(h[n - 2], h[n - 1], pts[i]) <= 0) {
      --n;
    }
    h[n++] = pts[i];
  }
  h.resize(n - 1);
  return { std::move(h), std::move(label) };
}

// Boundary inclusive.
inline bool
contains(const ExponentRegion& region, const ExponentPoint& pt)
{
  const auto& v = region.vertices();
  if (v.size() == 1) {
    return v[0] == pt;
  }
  if (v.size() == 2) {
    if (orientation(v[0], v[1], pt) != 0) {
      return false;
    }
    return std::min(v[0].x, v[1].x) <= pt.x && pt.x <= std::max(v[0].x, v[1].x) &&
           std::min(v[0].y, v[1].y) <= pt.y && pt.y <= std::max(v[0].y, v[1].y);
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (orientation(v[i], v[(i + 1) % v.size()], pt) < 0) {
      return false;
    }
  }
  return true;
}

inline bool
contains(const ExponentRegion& outer, const ExponentRegion& inner)
{
  return std::all_of(inner.vertices().begin(), inner.vertices().end(),
                     [&](const ExponentPoint& v) { return contains(outer, v); });
}

inline ExponentPoint
corner_origin()
{
  return { 0, 0 };
}
inline ExponentPoint
corner_top_left()
{
  return { 0, 1 };
}
inline ExponentPoint
corner_top_right()
{
  return { 1, 1 };
}

namespace detail {

inline void
require(bool ok, const std::string& what)
{
  if (!ok) {
    throw std::invalid_argument(what);
  }
}

inline Rational
ratio(std::int64_t num, std::int64_t den)
{
  return make_rational(num, den);
}

} // namespace detail

// Vertex of the region forced by the delta test function: (d/(2d-k), (d-k)/(2d-k)).
inline ExponentPoint
delta_vertex(std::int64_t d, std::int64_t k)
{
  detail::require(d >= 2 && k >= 1 && k <= d - 1, "delta_vertex: need 1 <= k <= d - 1");
  return { detail::ratio(d, 2 * d - k), detail::ratio(d - k, 2 * d - k) };
}

// ((d-1)/(2d-k-1), (d-k)/(2d-k-1)) for max(d-3, 3) <= k <= d-1.
inline ExponentPoint
smooth_vertex(std::int64_t d, std::int64_t k)
{
  detail::require(k >= std::max<std::int64_t>(d - 3, 3) && k <= d - 1,
                  "smooth_vertex: need max(d - 3, 3) <= k <= d - 1");
  return { detail::ratio(d - 1, 2 * d - k - 1), detail::ratio(d - k, 2 * d - k - 1) };
}

// The two odd-k vertices; duality swaps them.
inline std::pair<ExponentPoint, ExponentPoint>
conjectured_vertices(std::int64_t d, std::int64_t k)
{
  detail::require(k >= 1 && k <= d - 1 && k % 2 == 1, "conjectured_vertices: need odd k with 1 <= k <= d - 1");
  const std::int64_t den = k * (2 * d - k - 1);
  return { { detail::ratio(d * k - 2 * k + d, den), detail::ratio((k + 1) * (d - k), den) },
           { detail::ratio(d * (k - 1), den), detail::ratio((d - k) * (k - 1), den) } };
}

// Vertices forced by an alpha-dimensional subspace inside the variety.
inline std::pair<ExponentPoint, ExponentPoint>
subspace_vertices(std::int64_t d, std::int64_t k, const Rational& alpha)
{
  detail::require(k >= 1 && k <= d - 1, "subspace_vertices: need 1 <= k <= d - 1");
  detail::require(alpha >= 0 && alpha <= k, "subspace_vertices: need 0 <= alpha <= k");
  const Rational K(k);
  const Rational D(d);
  const Rational den = K * (D - alpha);
  return { { (K * K + alpha * D - 2 * alpha * K) / den, alpha * (D - K) / den },
           { D * (K - alpha) / den, (D - K) * (K - alpha) / den } };
}

// Interpolation endpoint for decay exponent theta on an s-dimensional measure:
// ((s + theta)/(2s + theta), s/(2s + theta)).
inline ExponentPoint
interpolation_point(const Rational& s, const Rational& theta)
{
  detail::require(s > 0, "interpolation_point: need s > 0");
  detail::require(theta > 0, "interpolation_point: need theta > 0");
  return { (s + theta) / (2 * s + theta), s / (2 * s + theta) };
}

// Holder duality (x, y) -> (1 - y, 1 - x).
inline ExponentPoint
dual_point(const ExponentPoint& pt)
{
  return { 1 - pt.y, 1 - pt.x };
}

inline ExponentRegion
dual_region(const ExponentRegion& region)
{
  std::vector<ExponentPoint> pts;
  for (const auto& v : region.vertices()) {
    pts.push_back(dual_point(v));
  }
  return hull(std::move(pts), region.label());
}

inline ExponentRegion
region_with_corners(std::vector<ExponentPoint> extra, std::string label)
{
  extra.push_back(corner_origin());
  extra.push_back(corner_top_left());
  extra.push_back(corner_top_right());
  return hull(std::move(extra), std::move(label));
}

// Necessary region from the delta test; the conjectured region for even k and
// the proved region for k = 2.
inline ExponentRegion
delta_region(std::int64_t d, std::int64_t k)
{
  return region_with_corners({ delta_vertex(d, k) }, "delta-necessary d=" + std::to_string(d) + " k=" + std::to_string(k));
}

// Conjectured region: the delta vertex for even k, the two odd-k vertices otherwise.
inline ExponentRegion
conjecture_region(std::int64_t d, std::int64_t k)
{
  if (k % 2 == 0) {
    auto r = delta_region(d, k);
    r.set_label("conjecture even k d=" + std::to_string(d) + " k=" + std::to_string(k));
    return r;
  }
  const auto [s, t] = conjectured_vertices(d, k);
  return region_with_corners({ s, t }, "conjecture odd k d=" + std::to_string(d) + " k=" + std::to_string(k));
}

// Proved sufficient region for the smooth range of k.
inline ExponentRegion
smooth_region(std::int64_t d, std::int64_t k)
{
  return region_with_corners({ smooth_vertex(d, k) }, "smooth-case sufficient d=" + std::to_string(d) + " k=" + std::to_string(k));
}

inline ExponentRegion
qr_region(std::int64_t d, std::int64_t k, const Rational& alpha)
{
  const auto [q, r] = subspace_vertices(d, k, alpha);
  return region_with_corners({ q, r }, "subspace-necessary d=" + std::to_string(d) + " k=" + std::to_string(k) +
                                         " alpha=" + to_string(alpha));
}

// Unit-square plot, one polygon per region, vertices labelled by exact fractions.
inline std::string
emit_svg(std::span<const ExponentRegion> regions, const std::string& title = {})
{
  if (regions.empty()) {
    throw std::invalid_argument("emit_svg: at least one region is required");
  }
  if (regions.size() > 8) {
    throw std::invalid_argument("emit_svg: at most 8 regions per figure");
  }
  static constexpr const char* palette[] = { "#4477aa", "#ee6677", "#228833", "#ccbb44",
                                             "#66ccee", "#aa3377", "#bbbbbb", "#000000" };
  constexpr double size = 400.0;
  constexpr double margin = 60.0;
  constexpr double legend = 220.0;
  auto sx = [&](const Rational& x) { return margin + to_double(x) * size; };
  auto sy = [&](const Rational& y) { return margin + (1.0 - to_double(y)) * size; };
  auto escape = [](const std::string& s) {
    std::string out;
    for (char c : s) {
      switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += c;
      }
    }
    return out;
  };

  std::ostringstream svg;
  svg << std::fixed << std::setprecision(2);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (2 * margin + size + legend) << "\" height=\""
      << (2 * margin + size) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  if (!title.empty()) {
    svg << "  <text x=\"" << margin << "\" y=\"" << (margin / 2) << "\" font-size=\"14\">" << escape(title)
        << "</text>\n";
  }
  svg << "  <rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << size << "\" height=\"" << size
      << "\" fill=\"none\" stroke=\"#000\"/>\n";
  svg << "  <text x=\"" << (margin + size / 2) << "\" y=\"" << (margin + size + 35) << "\">1/p</text>\n";
  svg << "  <text x=\"" << (margin - 45) << "\" y=\"" << (margin + size / 2) << "\">1/r</text>\n";
  svg << "  <line x1=\"" << margin << "\" y1=\"" << (margin + size) << "\" x2=\"" << (margin + size) << "\" y2=\""
      << margin << "\" stroke=\"#999\" stroke-dasharray=\"4 4\"/>\n";

  for (std::size_t i = 0; i < regions.size(); ++i) {
    const auto& r = regions[i];
    svg << "  <polygon points=\"";
    for (std::size_t j = 0; j < r.vertices().size(); ++j) {
      svg << (j ? " " : "") << sx(r.vertices()[j].x) << "," << sy(r.vertices()[j].y);
    }
    svg << "\" fill=\"" << palette[i] << "\" fill-opacity=\"0.25\" stroke=\"" << palette[i]
        << "\" stroke-width=\"1.5\"/>\n";
  }
  std::vector<ExponentPoint> labelled;
  for (const auto& r : regions) {
    for (const auto& v : r.vertices()) {
      if (std::find(labelled.begin(), labelled.end(), v) != labelled.end()) {
        continue;
      }
      labelled.push_back(v);
      svg << "  <circle cx=\"" << sx(v.x) << "\" cy=\"" << sy(v.y) << "\" r=\"2.5\" fill=\"#000\"/>\n";
      svg << "  <text x=\"" << (sx(v.x) + 5) << "\" y=\"" << (sy(v.y) - 5) << "\">" << escape(v.str()) << "</text>\n";
    }
  }
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const double y = margin + 15.0 + 20.0 * static_cast<double>(i);
    svg << "  <rect x=\"" << (2 * margin + size) << "\" y=\"" << (y - 10) << "\" width=\"12\" height=\"12\" fill=\""
        << palette[i] << "\" fill-opacity=\"0.5\"/>\n";
    svg << "  <text x=\"" << (2 * margin + size + 18) << "\" y=\"" << y << "\">" << escape(regions[i].label())
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

// Regions of the standard figure for (d, k): the delta-necessary region, the
// odd-k conjectured region, and the smooth-case sufficient region when defined.
inline std::vector<ExponentRegion>
figure_regions(std::int64_t d, std::int64_t k)
{
  std::vector<ExponentRegion> out;
  out.push_back(delta_region(d, k));
  if (k % 2 == 1) {
    out.push_back(conjecture_region(d, k));
  }
  if (k >= std::max<std::int64_t>(d - 3, 3) && k <= d - 1) {
    out.push_back(smooth_region(d, k));
  }
  return out;
}

} // namespace ffavg
