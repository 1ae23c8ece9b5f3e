#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "forge/image.hpp"
#include "forge/lattice.hpp"
#include "forge/planar.hpp"
#include "forge/rotation_task.hpp"

namespace forge {

/// Flat shading: one gray level per object-space face axis (x, y, z).
struct RenderStyle {
  std::array<std::uint8_t, 3> shades{90, 150, 205};
  bool outline = true;
  std::uint8_t outline_level = 20;
  double margin = 0.1;  ///< fraction of the canvas kept empty on each side

  void validate() const {
    if (shades[0] == shades[1] || shades[1] == shades[2] || shades[0] == shades[2])
      throw std::invalid_argument("render style shades must be pairwise distinct");
    if (!(margin >= 0.0 && margin < 0.3)) throw std::invalid_argument("render margin must be in [0, 0.3)");
  }
};

/// Identifies the rendering rules recorded in manifests.
inline constexpr const char* kRenderStyleVersion = "ortho-flat3-outline/1";

struct Vec2 {
  double x, y;
};

namespace detail {

/// Fills pixels whose centre lies inside or on the convex quad (any winding).
inline void fill_convex(Image& img, const std::array<Vec2, 4>& q, std::uint8_t value) {
  double x0 = q[0].x, x1 = q[0].x, y0 = q[0].y, y1 = q[0].y;
  for (const auto& p : q) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  const int cx0 = std::max(0, static_cast<int>(std::floor(x0)));
  const int cx1 = std::min(img.width - 1, static_cast<int>(std::ceil(x1)));
  const int cy0 = std::max(0, static_cast<int>(std::floor(y0)));
  const int cy1 = std::min(img.height - 1, static_cast<int>(std::ceil(y1)));
  double area2 = 0;
  for (int i = 0; i < 4; ++i) {
    const auto& a = q[static_cast<std::size_t>(i)];
    const auto& b = q[static_cast<std::size_t>((i + 1) % 4)];
    area2 += a.x * b.y - b.x * a.y;
  }
  const double orient = area2 >= 0 ? 1.0 : -1.0;
  constexpr double kEps = 1e-9;
  for (int y = cy0; y <= cy1; ++y) {
    for (int x = cx0; x <= cx1; ++x) {
      const double px = x + 0.5, py = y + 0.5;
      bool inside = true;
      for (int i = 0; i < 4 && inside; ++i) {
        const auto& a = q[static_cast<std::size_t>(i)];
        const auto& b = q[static_cast<std::size_t>((i + 1) % 4)];
        const double c = (b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x);
        inside = c * orient >= -kEps;
      }
      if (inside) img.at(x, y) = value;
    }
  }
}

inline void draw_segment(Image& img, Vec2 a, Vec2 b, int thickness, std::uint8_t value) {
  const double len = std::hypot(b.x - a.x, b.y - a.y);
  const int steps = std::max(1, static_cast<int>(std::ceil(len * 4)));
  const int lo = -(thickness - 1) / 2;
  for (int s = 0; s <= steps; ++s) {
    const double t = static_cast<double>(s) / steps;
    const int px = static_cast<int>(std::floor(a.x + t * (b.x - a.x)));
    const int py = static_cast<int>(std::floor(a.y + t * (b.y - a.y)));
    for (int dy = lo; dy < lo + thickness; ++dy)
      for (int dx = lo; dx < lo + thickness; ++dx) {
        const int x = px + dx, y = py + dy;
        if (x >= 0 && y >= 0 && x < img.width && y < img.height) img.at(x, y) = value;
      }
  }
}

struct Face {
  std::array<std::array<double, 3>, 4> corners;  // view space
  double depth;
  int axis;
  std::size_t order;
};

}  // namespace detail

/// Rotation matrix for a pose: first the vertical angle about the x axis,
/// then the horizontal angle about the y axis (fixed world axes).
inline std::array<std::array<double, 3>, 3> pose_matrix(double vertical_deg, double horizontal_deg) {
  const double v = vertical_deg * std::numbers::pi / 180.0;
  const double h = horizontal_deg * std::numbers::pi / 180.0;
  const double cv = std::cos(v), sv = std::sin(v), ch = std::cos(h), sh = std::sin(h);
  // Ry(h) * Rx(v)
  return {{{ch, sh * sv, sh * cv}, {0, cv, -sv}, {-sh, ch * sv, ch * cv}}};
}

/// Orthographic view of a block set. Exposed, camera-facing cube faces are
/// painted far to near by face-centre depth; the drawing is scaled to fit
/// the canvas minus the style margin and centred on its 2D bounding box.
inline Image render_polyomino(const BlockSet& blocks, double vertical_deg, double horizontal_deg,
                              const RenderStyle& style = {}, int size = kCanvas) {
  style.validate();
  const auto m = pose_matrix(vertical_deg, horizontal_deg);
  auto view = [&](double x, double y, double z) {
    return std::array<double, 3>{m[0][0] * x + m[0][1] * y + m[0][2] * z,
                                 m[1][0] * x + m[1][1] * y + m[1][2] * z,
                                 m[2][0] * x + m[2][1] * y + m[2][2] * z};
  };

  std::vector<detail::Face> faces;
  for (const auto& c : blocks.cells()) {
    for (int axis = 0; axis < 3; ++axis) {
      for (int dir : {-1, 1}) {
        Cell n = c;
        n[static_cast<std::size_t>(axis)] += dir;
        if (blocks.contains(n)) continue;
        std::array<double, 3> normal{0, 0, 0};
        normal[static_cast<std::size_t>(axis)] = dir;
        if (view(normal[0], normal[1], normal[2])[2] <= 1e-9) continue;
        const int u = (axis + 1) % 3, w = (axis + 2) % 3;
        detail::Face f{};
        const std::array<std::array<double, 2>, 4> offs{{{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}}};
        double depth = 0;
        for (std::size_t k = 0; k < 4; ++k) {
          std::array<double, 3> p{static_cast<double>(c[0]), static_cast<double>(c[1]),
                                  static_cast<double>(c[2])};
          p[static_cast<std::size_t>(axis)] += 0.5 * dir;
          p[static_cast<std::size_t>(u)] += offs[k][0];
          p[static_cast<std::size_t>(w)] += offs[k][1];
          f.corners[k] = view(p[0], p[1], p[2]);
          depth += f.corners[k][2];
        }
        f.depth = depth / 4;
        f.axis = axis;
        f.order = faces.size();
        faces.push_back(f);
      }
    }
  }
  Image img(size, size, kWhite);
  if (faces.empty()) return img;

  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto& f : faces)
    for (const auto& p : f.corners) {
      x0 = std::min(x0, p[0]);
      x1 = std::max(x1, p[0]);
      y0 = std::min(y0, p[1]);
      y1 = std::max(y1, p[1]);
    }
  const double extent = std::max({x1 - x0, y1 - y0, 1e-9});
  const double scale = size * (1.0 - 2.0 * style.margin) / extent;
  const double mx = (x0 + x1) / 2, my = (y0 + y1) / 2;
  auto to_pixel = [&](const std::array<double, 3>& p) {
    return Vec2{size / 2.0 + (p[0] - mx) * scale, size / 2.0 - (p[1] - my) * scale};
  };

  std::sort(faces.begin(), faces.end(), [](const detail::Face& a, const detail::Face& b) {
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.order < b.order;
  });
  const int thickness = std::max(1, static_cast<int>(std::lround(size / 224.0)));
  for (const auto& f : faces) {
    std::array<Vec2, 4> q{};
    for (std::size_t k = 0; k < 4; ++k) q[k] = to_pixel(f.corners[k]);
    detail::fill_convex(img, q, style.shades[static_cast<std::size_t>(f.axis)]);
    if (style.outline)
      for (std::size_t k = 0; k < 4; ++k)
        detail::draw_segment(img, q[k], q[(k + 1) % 4], thickness, style.outline_level);
  }
  return img;
}

inline Image render_polyomino(const BlockSet& blocks, const PoseAngles& pose,
                              const RenderStyle& style = {}, int size = kCanvas) {
  return render_polyomino(blocks, pose.vertical_deg(), pose.horizontal_deg(), style, size);
}

namespace detail {

inline Rational ratio(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline long ceil_to_long(const Rational& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q.get_si();
}

}  // namespace detail

/// Fills `p` (given in the 224-pixel reference frame) into `img`, mapping
/// reference coordinates through scale and offset. Pixel centres are
/// sampled exactly with an even-odd scanline rule. A centre lying on the
/// boundary covers half of its pixel, so ties alternate: on a vertical edge
/// the pixel is filled on even rows, on any other edge on even columns.
inline void fill_polygon(Image& img, const Polygon& p, const Rational& scale, const Point& offset,
                         std::uint8_t value = kBlack) {
  std::vector<Point> v;
  v.reserve(p.size());
  for (const auto& q : p.vertices()) v.push_back({q.x * scale + offset.x, q.y * scale + offset.y});
  Rational ylo = v[0].y, yhi = v[0].y;
  for (const auto& q : v) {
    ylo = std::min(ylo, q.y);
    yhi = std::max(yhi, q.y);
  }
  const Rational half(1, 2);
  const long r0 = std::max(0L, detail::ceil_to_long(ylo - half));
  const long r1 = std::min<long>(img.height - 1, detail::ceil_to_long(yhi - half));
  const long w = img.width;
  std::vector<Rational> xs;
  std::vector<char> row(static_cast<std::size_t>(w));
  for (long r = r0; r <= r1; ++r) {
    const Rational yc = Rational(2 * r + 1, 2);
    xs.clear();
    std::fill(row.begin(), row.end(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& a = v[i];
      const auto& b = v[(i + 1) % v.size()];
      if ((a.y <= yc && yc < b.y) || (b.y <= yc && yc < a.y))
        xs.push_back(a.x + (yc - a.y) * (b.x - a.x) / (b.y - a.y));
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 0; i + 1 < xs.size(); i += 2) {
      // pixel centres c + 1/2 in [xs[i], xs[i+1])
      const long c0 = std::max(0L, detail::ceil_to_long(xs[i] - half));
      const long c1 = std::min(w - 1, detail::ceil_to_long(xs[i + 1] - half) - 1);
      for (long c = c0; c <= c1; ++c) row[static_cast<std::size_t>(c)] = 1;
    }
    // Boundary ties.
    auto tie = [&](long c, bool vertical) {
      if (c >= 0 && c < w) row[static_cast<std::size_t>(c)] = vertical ? (r % 2 == 0) : (c % 2 == 0);
    };
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& a = v[i];
      const auto& b = v[(i + 1) % v.size()];
      if (yc < std::min(a.y, b.y) || yc > std::max(a.y, b.y)) continue;
      if (a.y == b.y) {
        const long c0 = detail::ceil_to_long(std::min(a.x, b.x) - half);
        const long c1 = detail::ceil_to_long(std::max(a.x, b.x) - half + 1) - 1;
        for (long c = std::max(0L, c0); c <= std::min(w - 1, c1); ++c) tie(c, false);
        continue;
      }
      const Rational x = a.x + (yc - a.y) * (b.x - a.x) / (b.y - a.y) - half;
      if (x.get_den() == 1) tie(x.get_num().get_si(), a.x == b.x);
    }
    for (long c = 0; c < w; ++c)
      if (row[static_cast<std::size_t>(c)]) img.at(static_cast<int>(c), static_cast<int>(r)) = value;
  }
}

/// Black silhouette of `p` on white; the 224-pixel reference frame is
/// scaled to `size`.
inline Image render_polygon(const Polygon& p, int size = kCanvas) {
  Image img(size, size, kWhite);
  fill_polygon(img, p, detail::ratio(size, kCanvas), {0, 0});
  return img;
}

/// All pieces of one candidate side by side on a grid, for human inspection.
inline Image render_montage(const std::vector<Polygon>& pieces, int size = kCanvas) {
  Image img(size, size, kWhite);
  if (pieces.empty()) return img;
  const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(pieces.size()))));
  const Rational cell = detail::ratio(size, cols);
  const Rational scale = detail::ratio(size, static_cast<long>(cols) * kCanvas);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const int r = static_cast<int>(i) / cols, c = static_cast<int>(i) % cols;
    fill_polygon(img, pieces[i], scale, {c * cell, r * cell});
  }
  return img;
}

}  // namespace forge
