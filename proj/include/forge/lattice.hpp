#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "forge/errors.hpp"

namespace forge {

using Cell = std::array<int, 3>;

/// Edge lengths and joint directions of a 3D polyomino.
///
/// `lengths[i]` counts the cubes of edge i, including the joining cube it
/// shares with its neighbours. `directions[i]` picks the heading of edge i+1
/// among the four unit vectors perpendicular to edge i: with (a, b) the two
/// non-axis coordinates in xyz order, codes 0..3 mean +a, -a, +b, -b.
struct EdgeSpec {
  static constexpr int kMinEdges = 3;
  static constexpr int kMaxEdges = 5;
  static constexpr int kMinLength = 3;
  static constexpr int kMaxLength = 9;

  std::vector<int> lengths;
  std::vector<int> directions;

  int edge_count() const { return static_cast<int>(lengths.size()); }

  /// Checks the structural invariants; the edge-count bounds are only
  /// enforced when `strict` is set so shorter hand-built shapes remain usable.
  void validate(bool strict = true) const {
    const int k = edge_count();
    if (k < 1) throw std::invalid_argument("EdgeSpec needs at least one edge");
    if (strict && (k < kMinEdges || k > kMaxEdges))
      throw std::invalid_argument("EdgeSpec edge count must be in [3,5], got " + std::to_string(k));
    if (static_cast<int>(directions.size()) != k - 1)
      throw std::invalid_argument("EdgeSpec needs k-1 directions");
    for (int l : lengths)
      if (l < kMinLength || l > kMaxLength)
        throw std::invalid_argument("EdgeSpec length out of [3,9]: " + std::to_string(l));
    for (int d : directions)
      if (d < 0 || d > 3) throw std::invalid_argument("EdgeSpec direction code out of [0,3]");
  }

  friend bool operator==(const EdgeSpec&, const EdgeSpec&) = default;
};

/// Face-connected set of unit cubes on the integer lattice, stored sorted.
class BlockSet {
 public:
  BlockSet() = default;

  explicit BlockSet(std::vector<Cell> cells) : cells_(std::move(cells)) {
    if (cells_.empty()) throw std::invalid_argument("BlockSet must be non-empty");
    std::sort(cells_.begin(), cells_.end());
    if (std::adjacent_find(cells_.begin(), cells_.end()) != cells_.end())
      throw std::invalid_argument("BlockSet cells must be distinct");
    if (!face_connected())
      throw std::invalid_argument("BlockSet must be face-connected");
  }

  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }

  bool contains(const Cell& c) const {
    return std::binary_search(cells_.begin(), cells_.end(), c);
  }

  bool face_connected() const {
    if (cells_.size() <= 1) return true;
    std::vector<bool> seen(cells_.size(), false);
    std::queue<std::size_t> todo;
    todo.push(0);
    seen[0] = true;
    std::size_t reached = 1;
    while (!todo.empty()) {
      const Cell c = cells_[todo.front()];
      todo.pop();
      for (int axis = 0; axis < 3; ++axis) {
        for (int step : {-1, 1}) {
          Cell n = c;
          n[axis] += step;
          auto it = std::lower_bound(cells_.begin(), cells_.end(), n);
          if (it == cells_.end() || *it != n) continue;
          auto idx = static_cast<std::size_t>(it - cells_.begin());
          if (!seen[idx]) {
            seen[idx] = true;
            ++reached;
            todo.push(idx);
          }
        }
      }
    }
    return reached == cells_.size();
  }

  friend bool operator==(const BlockSet&, const BlockSet&) = default;

 private:
  std::vector<Cell> cells_;
};

/// Rotation-invariant representative of a BlockSet.
struct CanonicalKey {
  std::vector<Cell> coords;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

using Matrix3 = std::array<std::array<int, 3>, 3>;

namespace detail {

constexpr int determinant(const Matrix3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

constexpr std::array<Matrix3, 24> make_rotations() {
  std::array<Matrix3, 24> out{};
  constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::size_t n = 0;
  for (const auto& p : perms) {
    for (int signs = 0; signs < 8; ++signs) {
      Matrix3 m{};
      for (int row = 0; row < 3; ++row) m[row][p[row]] = (signs >> row) & 1 ? -1 : 1;
      if (determinant(m) == 1) out[n++] = m;
    }
  }
  return out;
}

}  // namespace detail

/// The 24 proper rotations of the cube. Index 0 is the identity.
inline constexpr std::array<Matrix3, 24> kCubeRotations = detail::make_rotations();
static_assert(kCubeRotations[0] == Matrix3{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}});

inline Cell apply(const Matrix3& m, const Cell& c) {
  Cell r{};
  for (int i = 0; i < 3; ++i) r[i] = m[i][0] * c[0] + m[i][1] * c[1] + m[i][2] * c[2];
  return r;
}

/// Translates a cell list so its minimum corner sits at the origin, then sorts it.
inline std::vector<Cell> normalized_cells(std::vector<Cell> cells) {
  if (cells.empty()) return cells;
  Cell lo = cells.front();
  for (const auto& c : cells)
    for (int i = 0; i < 3; ++i) lo[i] = std::min(lo[i], c[i]);
  for (auto& c : cells)
    for (int i = 0; i < 3; ++i) c[i] -= lo[i];
  std::sort(cells.begin(), cells.end());
  return cells;
}

inline BlockSet normalized(const BlockSet& b) { return BlockSet(normalized_cells(b.cells())); }

inline BlockSet rotate_blocks(const BlockSet& b, int rotation_index) {
  if (rotation_index < 0 || rotation_index >= 24)
    throw std::out_of_range("rotation index must be in [0,24)");
  const auto& m = kCubeRotations[static_cast<std::size_t>(rotation_index)];
  std::vector<Cell> out;
  out.reserve(b.size());
  for (const auto& c : b.cells()) out.push_back(apply(m, c));
  return BlockSet(std::move(out));
}

/// Lexicographically smallest normalized image over all 24 rotations.
inline CanonicalKey canonical_form(const BlockSet& b) {
  CanonicalKey best;
  std::vector<Cell> img(b.size());
  for (std::size_t r = 0; r < kCubeRotations.size(); ++r) {
    const auto& m = kCubeRotations[r];
    for (std::size_t i = 0; i < b.size(); ++i) img[i] = apply(m, b.cells()[i]);
    auto norm = normalized_cells(img);
    if (r == 0 || norm < best.coords) best.coords = std::move(norm);
  }
  return best;
}

inline bool equivalent(const BlockSet& a, const BlockSet& b) {
  if (a.size() != b.size()) return false;
  return canonical_form(a) == canonical_form(b);
}

/// Unit vector for direction code `code` perpendicular to `axis`.
inline Cell perpendicular_step(int axis, int code) {
  int a = axis == 0 ? 1 : 0;
  int b = axis == 2 ? 1 : 2;
  Cell step{0, 0, 0};
  step[code < 2 ? a : b] = (code % 2 == 0) ? 1 : -1;
  return step;
}

/// Walks the edges of `spec`: edge 0 runs along +x from the origin, and the
/// last cube of each edge is the first cube of the next.
inline BlockSet build_polyomino(const EdgeSpec& spec, bool strict = true) {
  spec.validate(strict);
  std::vector<Cell> cells;
  std::set<Cell> seen;
  Cell cur{0, 0, 0};
  Cell step{1, 0, 0};
  int axis = 0;
  cells.push_back(cur);
  seen.insert(cur);
  for (int e = 0; e < spec.edge_count(); ++e) {
    if (e > 0) {
      step = perpendicular_step(axis, spec.directions[static_cast<std::size_t>(e - 1)]);
      axis = step[0] != 0 ? 0 : (step[1] != 0 ? 1 : 2);
    }
    for (int i = 1; i < spec.lengths[static_cast<std::size_t>(e)]; ++i) {
      for (int d = 0; d < 3; ++d) cur[d] += step[d];
      if (!seen.insert(cur).second) {
        throw OverlapError("polyomino revisits cell (" + std::to_string(cur[0]) + "," +
                           std::to_string(cur[1]) + "," + std::to_string(cur[2]) + ")");
      }
      cells.push_back(cur);
    }
  }
  return BlockSet(std::move(cells));
}

}  // namespace forge
