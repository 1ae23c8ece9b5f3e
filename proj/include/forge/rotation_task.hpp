#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "forge/errors.hpp"
#include "forge/lattice.hpp"
#include "forge/rng.hpp"

namespace forge {

inline constexpr int kMaxResampleAttempts = 1000;

/// Half-open viewing-angle interval [base+15, base+75) degrees, base in
/// {0, 90, 180, 270}. Angles are held in tenths of a degree.
struct AngleInterval {
  int index = 0;  ///< 0..3, base = 90 * index

  int base_deg() const { return 90 * index; }
  int lo_tenths() const { return base_deg() * 10 + 150; }
  int hi_tenths() const { return base_deg() * 10 + 750; }  // exclusive
  bool contains(int tenths) const { return tenths >= lo_tenths() && tenths < hi_tenths(); }
};

/// Vertical/horizontal viewing rotation with the interval each was drawn from.
struct PoseAngles {
  int vertical_tenths = 0;
  int horizontal_tenths = 0;
  int vertical_interval = 0;
  int horizontal_interval = 0;

  double vertical_deg() const { return vertical_tenths / 10.0; }
  double horizontal_deg() const { return horizontal_tenths / 10.0; }

  bool consistent() const {
    return vertical_interval >= 0 && vertical_interval < 4 && horizontal_interval >= 0 &&
           horizontal_interval < 4 &&
           AngleInterval{vertical_interval}.contains(vertical_tenths) &&
           AngleInterval{horizontal_interval}.contains(horizontal_tenths);
  }

  friend bool operator==(const PoseAngles&, const PoseAngles&) = default;
};

/// True when `tenths` is within 15 degrees of a multiple of 90 degrees.
inline bool near_right_angle(int tenths) {
  int r = ((tenths % 900) + 900) % 900;
  return r < 150 || r > 750;
}

enum class IntervalScheme {
  /// Five distinct (v, h) interval pairs, each axis using all four intervals
  /// with exactly one repeat. Default.
  kMinimalSharing,
  /// Five distinct (v, h) pairs drawn uniformly from the 4x4 grid.
  kDistinctPairs,
};

inline const char* to_string(IntervalScheme s) {
  return s == IntervalScheme::kMinimalSharing ? "minimal_sharing" : "distinct_pairs";
}

inline IntervalScheme interval_scheme_from_string(const std::string& s) {
  if (s == "minimal_sharing") return IntervalScheme::kMinimalSharing;
  if (s == "distinct_pairs") return IntervalScheme::kDistinctPairs;
  throw std::invalid_argument("unknown interval scheme: " + s);
}

using IntervalPair = std::pair<int, int>;  // (vertical, horizontal) interval indices

inline bool minimal_sharing(const std::array<IntervalPair, 5>& pairs) {
  std::array<int, 4> v{}, h{};
  for (const auto& [a, b] : pairs) {
    ++v[static_cast<std::size_t>(a)];
    ++h[static_cast<std::size_t>(b)];
  }
  for (int i = 0; i < 4; ++i)
    if (v[static_cast<std::size_t>(i)] == 0 || h[static_cast<std::size_t>(i)] == 0) return false;
  return true;
}

/// Five pairwise-distinct interval pairs: question first, then candidates 0..3.
inline std::array<IntervalPair, 5> assign_angle_intervals(
    Rng& rng, IntervalScheme scheme = IntervalScheme::kMinimalSharing) {
  std::array<IntervalPair, 16> grid{};
  for (int i = 0; i < 16; ++i) grid[static_cast<std::size_t>(i)] = {i / 4, i % 4};
  for (;;) {
    rng.shuffle(std::span<IntervalPair>(grid));
    std::array<IntervalPair, 5> out{};
    std::copy_n(grid.begin(), 5, out.begin());
    if (scheme == IntervalScheme::kDistinctPairs || minimal_sharing(out)) return out;
  }
}

/// Uniform angle on a 0.1 degree grid inside the given interval.
inline int sample_angle_tenths(Rng& rng, int interval) {
  AngleInterval iv{interval};
  return static_cast<int>(rng.uniform_int(iv.lo_tenths(), iv.hi_tenths() - 1));
}

struct RotationView {
  EdgeSpec spec;
  PoseAngles pose;
  friend bool operator==(const RotationView&, const RotationView&) = default;
};

struct RotationProblem {
  int level = 1;  ///< 1..3, edges k = level + 2
  RotationView question;
  std::array<RotationView, 4> candidates;
  int answer_index = 0;
  std::uint64_t seed = 0;

  int edge_count() const { return level + 2; }
  friend bool operator==(const RotationProblem&, const RotationProblem&) = default;
};

/// Samples a full rotation problem (geometry and poses, no pixels).
inline RotationProblem sample_problem_spec(int level, Rng& rng, std::uint64_t seed = 0,
                                           IntervalScheme scheme = IntervalScheme::kMinimalSharing) {
  if (level < 1 || level > 3) throw std::invalid_argument("rotation level must be 1, 2 or 3");
  const int k = level + 2;
  int attempts = 0;
  auto exhausted = [&] {
    return ResampleExhausted("rotation problem: " + std::to_string(kMaxResampleAttempts) +
                             " attempts without a valid spec");
  };
  auto random_directions = [&] {
    std::vector<int> d(static_cast<std::size_t>(k - 1));
    for (auto& x : d) x = static_cast<int>(rng.uniform_int(0, 3));
    return d;
  };

  EdgeSpec question;
  BlockSet question_blocks;
  for (;;) {
    if (++attempts > kMaxResampleAttempts) throw exhausted();
    question.lengths.assign(static_cast<std::size_t>(k), 0);
    for (auto& l : question.lengths)
      l = static_cast<int>(rng.uniform_int(EdgeSpec::kMinLength, EdgeSpec::kMaxLength));
    question.directions = random_directions();
    try {
      question_blocks = build_polyomino(question);
      break;
    } catch (const OverlapError&) {
    }
  }

  const CanonicalKey question_key = canonical_form(question_blocks);
  EdgeSpec correct{question.lengths, {}};
  for (;;) {
    if (++attempts > kMaxResampleAttempts) throw exhausted();
    correct.directions = random_directions();
    if (correct.directions == question.directions) continue;
    try {
      if (canonical_form(build_polyomino(correct)) != question_key) break;
    } catch (const OverlapError&) {
    }
  }

  RotationProblem p;
  p.level = level;
  p.seed = seed;
  p.answer_index = static_cast<int>(rng.uniform_int(0, 3));
  const auto intervals = assign_angle_intervals(rng, scheme);
  auto pose_for = [&](const IntervalPair& iv) {
    PoseAngles pose;
    pose.vertical_interval = iv.first;
    pose.horizontal_interval = iv.second;
    pose.vertical_tenths = sample_angle_tenths(rng, iv.first);
    pose.horizontal_tenths = sample_angle_tenths(rng, iv.second);
    return pose;
  };
  p.question = {question, pose_for(intervals[0])};
  for (std::size_t c = 0; c < 4; ++c) {
    const bool is_answer = static_cast<int>(c) == p.answer_index;
    p.candidates[c] = {is_answer ? correct : question, pose_for(intervals[c + 1])};
  }
  return p;
}

/// Exact solver: the unique candidate that is not a rotation of the question.
inline int solve_rotation(const RotationProblem& p) {
  const CanonicalKey q = canonical_form(build_polyomino(p.question.spec, false));
  int found = -1;
  int differing = 0;
  for (std::size_t c = 0; c < 4; ++c) {
    if (canonical_form(build_polyomino(p.candidates[c].spec, false)) != q) {
      ++differing;
      found = static_cast<int>(c);
    }
  }
  if (differing != 1)
    throw AmbiguousProblem(std::to_string(differing) +
                           " candidates differ from the question (expected exactly 1)");
  return found;
}

}  // namespace forge
