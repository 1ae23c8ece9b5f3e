#pragma once

#include <array>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "forge/forge.hpp"

namespace testing_support {

namespace fs = std::filesystem;

using Mat = std::array<std::array<int, 3>, 3>;

inline Mat mul(const Mat& a, const Mat& b) {
  Mat r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

/// Rotation group of the cube by closure over quarter turns about x and z.
inline std::vector<Mat> closure_rotations() {
  const Mat rx{{{1, 0, 0}, {0, 0, -1}, {0, 1, 0}}};
  const Mat rz{{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}};
  std::set<Mat> seen{Mat{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}};
  std::vector<Mat> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<Mat> next;
    for (const auto& m : frontier)
      for (const auto& g : {rx, rz}) {
        Mat p = mul(g, m);
        if (seen.insert(p).second) next.push_back(p);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

inline std::vector<forge::Cell> apply_all(const Mat& m, const std::vector<forge::Cell>& cells) {
  std::vector<forge::Cell> out;
  for (const auto& c : cells) {
    forge::Cell r{};
    for (int i = 0; i < 3; ++i) r[i] = m[i][0] * c[0] + m[i][1] * c[1] + m[i][2] * c[2];
    out.push_back(r);
  }
  return out;
}

/// Translation-normalised cell set, independent of the library helpers.
inline std::set<forge::Cell> shape_of(const std::vector<forge::Cell>& cells) {
  forge::Cell lo = cells.front();
  for (const auto& c : cells)
    for (int i = 0; i < 3; ++i) lo[i] = std::min(lo[i], c[i]);
  std::set<forge::Cell> out;
  for (auto c : cells) {
    for (int i = 0; i < 3; ++i) c[i] -= lo[i];
    out.insert(c);
  }
  return out;
}

/// True when some rotation maps `a` onto a translate of `b`.
inline bool brute_equivalent(const std::vector<forge::Cell>& a, const std::vector<forge::Cell>& b) {
  if (a.size() != b.size()) return false;
  const auto target = shape_of(b);
  for (const auto& m : closure_rotations())
    if (shape_of(apply_all(m, a)) == target) return true;
  return false;
}

/// Independent walk of an edge spec into cells, or empty on a revisit.
inline std::vector<forge::Cell> walk(const std::vector<int>& lengths, const std::vector<int>& dirs) {
  std::vector<forge::Cell> cells{{0, 0, 0}};
  std::set<forge::Cell> seen{{0, 0, 0}};
  forge::Cell cur{0, 0, 0}, step{1, 0, 0};
  for (std::size_t e = 0; e < lengths.size(); ++e) {
    if (e > 0) {
      int axis = step[0] ? 0 : step[1] ? 1 : 2;
      std::vector<int> others;
      for (int i = 0; i < 3; ++i)
        if (i != axis) others.push_back(i);
      const int d = dirs[e - 1];
      step = {0, 0, 0};
      step[others[d / 2]] = d % 2 == 0 ? 1 : -1;
    }
    for (int i = 1; i < lengths[e]; ++i) {
      for (int k = 0; k < 3; ++k) cur[k] += step[k];
      if (!seen.insert(cur).second) return {};
      cells.push_back(cur);
    }
  }
  return cells;
}

/// Exact count of pixel centres (x+1/2, y+1/2) inside `p`, scaled by size/224,
/// by crossing parity with a half-open rule on edge endpoints.
inline long pixel_centre_count(const forge::Polygon& p, int size) {
  const auto& v = p.vertices();
  const forge::Rational k(size, forge::kCanvas);
  long count = 0;
  for (int y = 0; y < size; ++y) {
    forge::Rational cy(2 * y + 1, 2);
    for (int x = 0; x < size; ++x) {
      forge::Rational cx(2 * x + 1, 2);
      bool inside = false;
      for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
        const forge::Rational yi = v[i].y * k, yj = v[j].y * k;
        if ((yi > cy) == (yj > cy)) continue;
        const forge::Rational xi = v[i].x * k, xj = v[j].x * k;
        const forge::Rational xc = xi + (cy - yi) * (xj - xi) / (yj - yi);
        if (cx < xc) inside = !inside;
      }
      count += inside;
    }
  }
  return count;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("forge-test-" + tag + "-" + std::to_string(rd()));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& s) const { return path_ / s; }

 private:
  fs::path path_;
};

inline std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

/// Relative path -> sha256 of every regular file under `root`.
inline std::map<std::string, std::string> tree_digest(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = forge::sha256_hex(slurp(e.path()));
  return out;
}

}  // namespace testing_support
