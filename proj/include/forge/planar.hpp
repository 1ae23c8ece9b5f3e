#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "forge/errors.hpp"

namespace forge {

using Rational = mpq_class;

/// Canvas side length of the reference frame, in pixels.
inline constexpr int kCanvas = 224;

struct Point {
  Rational x;
  Rational y;
  friend bool operator==(const Point&, const Point&) = default;
};

inline Rational cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline Rational parse_rational(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Signed shoelace area (positive for counter-clockwise in a y-up frame).
inline Rational signed_area(const std::vector<Point>& pts) {
  Rational twice = 0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = pts[i];
    const auto& b = pts[(i + 1) % n];
    twice += a.x * b.y - b.x * a.y;
  }
  return twice / 2;
}

namespace detail {

inline int sgn(const Rational& r) { return ::sgn(r); }

inline bool on_segment(const Point& p, const Point& a, const Point& b) {
  return cross(a, b, p) == 0 && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

/// Closed segments [a,b] and [c,d] share at least one point.
inline bool segments_touch(const Point& a, const Point& b, const Point& c, const Point& d) {
  const int d1 = sgn(cross(c, d, a));
  const int d2 = sgn(cross(c, d, b));
  const int d3 = sgn(cross(a, b, c));
  const int d4 = sgn(cross(a, b, d));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  return (d1 == 0 && on_segment(a, c, d)) || (d2 == 0 && on_segment(b, c, d)) ||
         (d3 == 0 && on_segment(c, a, b)) || (d4 == 0 && on_segment(d, a, b));
}

/// Drops repeated vertices and vertices with zero turn (straight or spike).
inline std::vector<Point> clean_ring(std::vector<Point> pts) {
  // GMP comparisons assume canonical fractions.
  for (auto& p : pts) {
    p.x.canonicalize();
    p.y.canonicalize();
  }
  bool changed = true;
  while (changed && pts.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < pts.size() && pts.size() >= 3; ++i) {
      const std::size_t n = pts.size();
      const auto& prev = pts[(i + n - 1) % n];
      const auto& next = pts[(i + 1) % n];
      if (pts[i] == next || cross(prev, pts[i], next) == 0) {
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        --i;
      }
    }
  }
  return pts;
}

}  // namespace detail

/// Simple polygon with exact rational vertices, stored counter-clockwise
/// (positive signed area) with no repeated or collinear vertices.
class Polygon {
 public:
  Polygon() = default;

  explicit Polygon(std::vector<Point> pts) : pts_(detail::clean_ring(std::move(pts))) {
    if (pts_.size() < 3) throw std::invalid_argument("polygon needs at least 3 non-collinear vertices");
    Rational a = signed_area(pts_);
    if (a == 0) throw std::invalid_argument("polygon has zero area");
    if (a < 0) std::reverse(pts_.begin(), pts_.end());
    // Start the ring at the lexicographically smallest vertex so equal
    // polygons compare equal.
    auto first = std::min_element(pts_.begin(), pts_.end(), [](const Point& p, const Point& q) {
      return p.x < q.x || (p.x == q.x && p.y < q.y);
    });
    std::rotate(pts_.begin(), first, pts_.end());
    if (!is_simple(pts_)) throw std::invalid_argument("polygon is not simple");
  }

  static Polygon rectangle(const Rational& x0, const Rational& y0, const Rational& x1,
                           const Rational& y1) {
    return Polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
  }

  static Polygon canvas_square() { return rectangle(0, 0, kCanvas, kCanvas); }

  const std::vector<Point>& vertices() const { return pts_; }
  std::size_t size() const { return pts_.size(); }

  bool is_convex() const {
    const std::size_t n = pts_.size();
    for (std::size_t i = 0; i < n; ++i)
      if (cross(pts_[i], pts_[(i + 1) % n], pts_[(i + 2) % n]) < 0) return false;
    return true;
  }

  friend bool operator==(const Polygon&, const Polygon&) = default;

  static bool is_simple(const std::vector<Point>& p) {
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
        const auto& a = p[i];
        const auto& b = p[(i + 1) % n];
        const auto& c = p[j];
        const auto& d = p[(j + 1) % n];
        if (adjacent) {
          // Adjacent edges share one endpoint; any further contact is overlap.
          const Point& shared = (j == i + 1) ? b : a;
          const Point& far1 = (j == i + 1) ? a : b;
          const Point& far2 = (j == i + 1) ? d : c;
          if (detail::on_segment(far1, shared, far2) || detail::on_segment(far2, shared, far1))
            return false;
          continue;
        }
        if (detail::segments_touch(a, b, c, d)) return false;
      }
    }
    return true;
  }

 private:
  std::vector<Point> pts_;
};

inline Rational polygon_area(const Polygon& p) { return signed_area(p.vertices()); }

struct BoundingBox {
  Rational x0, y0, x1, y1;
  Rational width() const { return x1 - x0; }
  Rational height() const { return y1 - y0; }
};

inline BoundingBox bounding_box(const Polygon& p) {
  const auto& v = p.vertices();
  BoundingBox b{v[0].x, v[0].y, v[0].x, v[0].y};
  for (const auto& q : v) {
    if (q.x < b.x0) b.x0 = q.x;
    if (q.y < b.y0) b.y0 = q.y;
    if (q.x > b.x1) b.x1 = q.x;
    if (q.y > b.y1) b.y1 = q.y;
  }
  return b;
}

/// Slope angles allowed for cut lines, in degrees.
inline constexpr int kCutAngles[4] = {0, 30, 45, 60};

/// A cutting line y = s*x + anchor with slope s = sign * tan(angle).
///
/// tan 30 and tan 60 are irrational; they are represented by the continued
/// fraction convergents 56/97 and 97/56 (angle error below 0.002 degrees) so
/// every cut stays exact.
struct CutLine {
  int angle_deg = 0;  ///< one of kCutAngles
  int sign = 1;       ///< +1 or -1
  Rational anchor;    ///< the line passes through (0, anchor)

  Rational slope() const {
    Rational t;
    switch (angle_deg) {
      case 0: t = 0; break;
      case 30: t = Rational(56, 97); break;
      case 45: t = 1; break;
      case 60: t = Rational(97, 56); break;
      default: throw std::invalid_argument("cut angle must be 0, 30, 45 or 60");
    }
    t.canonicalize();
    return sign < 0 ? Rational(-t) : t;
  }

  /// Negative below the line (smaller y), positive above.
  Rational side(const Point& p) const {
    Rational b = anchor;
    b.canonicalize();
    return p.y - slope() * p.x - b;
  }

  friend bool operator==(const CutLine&, const CutLine&) = default;
};

/// Splits `p` along `line` into (negative side, positive side).
inline std::pair<Polygon, Polygon> cut_polygon(const Polygon& p, CutLine line) {
  line.anchor.canonicalize();
  const Rational s = line.slope();
  const auto& v = p.vertices();
  const std::size_t n = v.size();
  std::vector<Rational> f(n);
  std::vector<int> sg(n);
  bool any_neg = false;
  bool any_pos = false;
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = v[i].y - s * v[i].x - line.anchor;
    sg[i] = detail::sgn(f[i]);
    any_neg |= sg[i] < 0;
    any_pos |= sg[i] > 0;
  }
  if (!any_neg || !any_pos) throw DegenerateCut("cut line misses the polygon");

  // Each pair of sign changes along the boundary adds one component; more
  // than two changes means at least one side is disconnected.
  int changes = 0;
  int last = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (sg[i] != 0) last = sg[i];
  for (std::size_t i = 0; i < n; ++i) {
    if (sg[i] == 0) continue;
    if (sg[i] != last) ++changes;
    last = sg[i];
  }
  if (changes != 2) throw DegenerateCut("cut would disconnect a side");

  std::vector<Point> neg;
  std::vector<Point> pos;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    if (sg[i] <= 0) neg.push_back(v[i]);
    if (sg[i] >= 0) pos.push_back(v[i]);
    if (sg[i] * sg[j] < 0) {
      const Rational t = f[i] / (f[i] - f[j]);
      Point x{v[i].x + t * (v[j].x - v[i].x), v[i].y + t * (v[j].y - v[i].y)};
      neg.push_back(x);
      pos.push_back(x);
    }
  }
  try {
    return {Polygon(std::move(neg)), Polygon(std::move(pos))};
  } catch (const std::invalid_argument& e) {
    throw DegenerateCut(std::string("cut produced an invalid side: ") + e.what());
  }
}

/// Rigid placement: rotate by quarter_turns * 90 degrees about the origin,
/// then translate. No reflection is representable.
struct Placement {
  int piece_index = 0;
  int quarter_turns = 0;  ///< 0..3
  Point translation{0, 0};

  int rotation_deg() const { return 90 * quarter_turns; }

  friend bool operator==(const Placement&, const Placement&) = default;
};

inline Point rotate_quarter(const Point& p, int quarter_turns) {
  switch (((quarter_turns % 4) + 4) % 4) {
    case 0: return p;
    case 1: return {-p.y, p.x};
    case 2: return {-p.x, -p.y};
    default: return {p.y, -p.x};
  }
}

/// Determinant of the linear part used for `quarter_turns` (always +1).
inline int placement_determinant(int quarter_turns) {
  const Point ex = rotate_quarter({1, 0}, quarter_turns);
  const Point ey = rotate_quarter({0, 1}, quarter_turns);
  Rational det = ex.x * ey.y - ex.y * ey.x;
  return det.get_num().get_si();
}

inline Polygon transform_polygon(const Polygon& p, const Placement& pl) {
  if (pl.quarter_turns < 0 || pl.quarter_turns > 3)
    throw std::invalid_argument("placement rotation must be 0, 90, 180 or 270 degrees");
  std::vector<Point> out;
  out.reserve(p.size());
  for (const auto& v : p.vertices()) {
    Point r = rotate_quarter(v, pl.quarter_turns);
    out.push_back({r.x + pl.translation.x, r.y + pl.translation.y});
  }
  return Polygon(std::move(out));
}

inline Polygon translate_polygon(const Polygon& p, const Point& d) {
  return transform_polygon(p, Placement{0, 0, d});
}

/// Uniform scale about `center`.
inline Polygon scale_polygon(const Polygon& p, const Rational& factor, const Point& center) {
  std::vector<Point> out;
  out.reserve(p.size());
  for (const auto& v : p.vertices())
    out.push_back({center.x + factor * (v.x - center.x), center.y + factor * (v.y - center.y)});
  return Polygon(std::move(out));
}

namespace detail {

struct SweepEdge {
  Point a;  // a.x < b.x
  Point b;
  std::size_t owner;
};

inline Rational y_at(const SweepEdge& e, const Rational& x) {
  return e.a.y + (e.b.y - e.a.y) * (x - e.a.x) / (e.b.x - e.a.x);
}

/// Exact area of the region where the number of `layers` covering a point
/// differs from the indicator of `base`. Zero means the layers tile the base.
inline Rational cover_mismatch_area(const Polygon& base, const std::vector<Polygon>& layers) {
  std::vector<SweepEdge> edges;
  std::vector<Rational> xs;
  auto add = [&](const Polygon& poly, std::size_t owner) {
    const auto& v = poly.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& p = v[i];
      const auto& q = v[(i + 1) % v.size()];
      xs.push_back(p.x);
      if (p.x == q.x) continue;
      if (p.x < q.x)
        edges.push_back({p, q, owner});
      else
        edges.push_back({q, p, owner});
    }
  };
  add(base, 0);
  for (std::size_t i = 0; i < layers.size(); ++i) add(layers[i], i + 1);

  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const auto& e = edges[i];
      const auto& g = edges[j];
      const Rational lo = std::max(e.a.x, g.a.x);
      const Rational hi = std::min(e.b.x, g.b.x);
      if (lo >= hi) continue;
      const Rational se = (e.b.y - e.a.y) / (e.b.x - e.a.x);
      const Rational sg = (g.b.y - g.a.y) / (g.b.x - g.a.x);
      if (se == sg) continue;
      // e.a.y + se (x - e.a.x) = g.a.y + sg (x - g.a.x)
      const Rational x = (g.a.y - e.a.y + se * e.a.x - sg * g.a.x) / (se - sg);
      if (x > lo && x < hi) xs.push_back(x);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  Rational mismatch = 0;
  std::vector<std::pair<Rational, std::size_t>> crossing;
  std::vector<int> inside(layers.size() + 1);
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const Rational& xl = xs[k];
    const Rational& xr = xs[k + 1];
    const Rational xm = (xl + xr) / 2;
    crossing.clear();
    for (const auto& e : edges)
      if (e.a.x <= xl && e.b.x >= xr) crossing.emplace_back(y_at(e, xm), e.owner);
    std::sort(crossing.begin(), crossing.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    std::fill(inside.begin(), inside.end(), 0);
    const Rational width = xr - xl;
    for (std::size_t c = 0; c + 1 < crossing.size(); ++c) {
      inside[crossing[c].second] ^= 1;
      int count = 0;
      for (std::size_t l = 1; l < inside.size(); ++l) count += inside[l];
      const int diff = std::abs(count - inside[0]);
      if (diff == 0) continue;
      const Rational h = crossing[c + 1].first - crossing[c].first;
      mismatch += width * h * diff;
    }
  }
  return mismatch;
}

}  // namespace detail

/// True iff the placed pieces have pairwise disjoint interiors and their union
/// is exactly `original`. Placement j positions pieces[placements[j].piece_index];
/// every piece must be placed exactly once.
inline bool verify_cover(const Polygon& original, const std::vector<Polygon>& pieces,
                         const std::vector<Placement>& placements) {
  if (pieces.size() != placements.size())
    throw std::invalid_argument("verify_cover: pieces and placements differ in length");
  std::vector<bool> used(pieces.size(), false);
  std::vector<Polygon> placed;
  placed.reserve(pieces.size());
  Rational total = 0;
  for (const auto& pl : placements) {
    if (pl.piece_index < 0 || static_cast<std::size_t>(pl.piece_index) >= pieces.size())
      return false;
    if (used[static_cast<std::size_t>(pl.piece_index)]) return false;
    used[static_cast<std::size_t>(pl.piece_index)] = true;
    placed.push_back(transform_polygon(pieces[static_cast<std::size_t>(pl.piece_index)], pl));
    total += polygon_area(placed.back());
  }
  if (total != polygon_area(original)) return false;
  return detail::cover_mismatch_area(original, placed) == 0;
}

/// Piece-size window for piece count m: [3000, 30000] for m <= 4,
/// [2000, 30000] for m = 5. Bounds inclusive.
inline bool piece_area_in_range(const Polygon& p, int m) {
  if (m < 2 || m > 5) throw std::invalid_argument("piece count must be in [2,5]");
  const Rational a = polygon_area(p);
  const int lo = m == 5 ? 2000 : 3000;
  return a >= lo && a <= 30000;
}

}  // namespace forge
