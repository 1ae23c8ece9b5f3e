#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "forge/errors.hpp"
#include "forge/planar.hpp"

namespace forge {

namespace detail {

/// Area of subject ∩ clip for a convex, counter-clockwise `clip`
/// (Sutherland-Hodgman; degenerate output edges carry no area).
inline Rational convex_intersection_area(const std::vector<Point>& subject,
                                         const std::vector<Point>& clip) {
  std::vector<Point> cur = subject;
  std::vector<Point> next;
  const std::size_t n = clip.size();
  for (std::size_t i = 0; i < n && !cur.empty(); ++i) {
    const Point& a = clip[i];
    const Point& b = clip[(i + 1) % n];
    next.clear();
    for (std::size_t j = 0; j < cur.size(); ++j) {
      const Point& p = cur[j];
      const Point& q = cur[(j + 1) % cur.size()];
      const Rational fp = cross(a, b, p);
      const Rational fq = cross(a, b, q);
      if (fp >= 0) next.push_back(p);
      if ((fp > 0 && fq < 0) || (fp < 0 && fq > 0)) {
        const Rational t = fp / (fp - fq);
        next.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
      }
    }
    std::swap(cur, next);
  }
  if (cur.size() < 3) return 0;
  return signed_area(cur);
}

}  // namespace detail

/// Exhaustive tiling search used as an independent check of verify_cover on
/// small instances.
///
/// Tries every piece order, every quarter-turn and every translation that
/// puts a piece vertex onto a vertex of the original or of an already placed
/// piece. The lowest-leftmost point of the uncovered region is always such a
/// vertex and must be a vertex of whichever piece covers it, so this anchor
/// set is complete. Containment and disjointness are decided by exact convex
/// clipping areas. Requires convex inputs and at most three pieces.
inline bool brute_force_tiling(const Polygon& original, const std::vector<Polygon>& pieces,
                               std::size_t budget = 5'000'000) {
  if (pieces.empty() || pieces.size() > 3)
    throw std::invalid_argument("brute_force_tiling handles 1 to 3 pieces");
  if (!original.is_convex()) throw std::invalid_argument("brute_force_tiling needs a convex original");
  for (const auto& p : pieces)
    if (!p.is_convex()) throw std::invalid_argument("brute_force_tiling needs convex pieces");

  Rational total = 0;
  for (const auto& p : pieces) total += polygon_area(p);
  const Rational target = polygon_area(original);
  if (total != target) return false;

  std::vector<std::vector<Polygon>> rotations(pieces.size());
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (int q = 0; q < 4; ++q)
      rotations[i].push_back(transform_polygon(pieces[i], Placement{0, q, {0, 0}}));

  const BoundingBox obb = bounding_box(original);
  std::vector<Polygon> placed;
  std::vector<bool> used(pieces.size(), false);
  std::size_t spent = 0;

  auto fits = [&](const Polygon& cand) {
    const BoundingBox b = bounding_box(cand);
    if (b.x0 < obb.x0 || b.y0 < obb.y0 || b.x1 > obb.x1 || b.y1 > obb.y1) return false;
    const Rational a = polygon_area(cand);
    if (detail::convex_intersection_area(cand.vertices(), original.vertices()) != a) return false;
    for (const auto& other : placed)
      if (detail::convex_intersection_area(cand.vertices(), other.vertices()) != 0) return false;
    return true;
  };

  auto search = [&](auto&& self) -> bool {
    if (placed.size() == pieces.size()) return true;
    std::vector<Point> anchors = original.vertices();
    for (const auto& p : placed)
      anchors.insert(anchors.end(), p.vertices().begin(), p.vertices().end());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (used[i]) continue;
      for (const auto& rot : rotations[i]) {
        std::set<std::pair<Rational, Rational>> tried;
        for (const auto& v : rot.vertices()) {
          for (const auto& o : anchors) {
            Point t{o.x - v.x, o.y - v.y};
            if (!tried.emplace(t.x, t.y).second) continue;
            if (++spent > budget) throw SearchBudgetExceeded("brute_force_tiling budget exhausted");
            Polygon cand = translate_polygon(rot, t);
            if (!fits(cand)) continue;
            used[i] = true;
            placed.push_back(std::move(cand));
            if (self(self)) return true;
            placed.pop_back();
            used[i] = false;
          }
        }
      }
    }
    return false;
  };
  return search(search);
}

}  // namespace forge
