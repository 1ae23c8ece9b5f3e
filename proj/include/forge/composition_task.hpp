#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "forge/errors.hpp"
#include "forge/planar.hpp"
#include "forge/rng.hpp"
#include "forge/rotation_task.hpp"

namespace forge {

inline constexpr int kMinOriginalArea = 25000;  // exclusive
inline constexpr int kAnchorMin = kCanvas / 4;  // 56
inline constexpr int kAnchorMax = 3 * kCanvas / 4;  // 168

/// One of the two cuts applied to the blank canvas square.
struct OriginalCut {
  CutLine line;
  bool keep_positive = false;
  friend bool operator==(const OriginalCut&, const OriginalCut&) = default;
};

struct OriginalShape {
  Polygon polygon;
  std::array<OriginalCut, 2> cuts;
  friend bool operator==(const OriginalShape&, const OriginalShape&) = default;
};

/// A cut applied while splitting the original: `target` indexes the piece
/// list at the time of the cut; the negative side replaces it in place and
/// the positive side is appended.
struct PieceCut {
  int target = 0;
  CutLine line;
  friend bool operator==(const PieceCut&, const PieceCut&) = default;
};

/// A piece of the correct answer.
struct PieceRecord {
  Polygon source;         ///< position inside the original
  Polygon shown;          ///< rotated and centred in its own canvas
  int quarter_turns = 0;  ///< rotation applied to go from source to shown
  Placement back;         ///< maps shown onto source
  friend bool operator==(const PieceRecord&, const PieceRecord&) = default;
};

struct PieceSet {
  std::vector<PieceRecord> pieces;
  std::vector<PieceCut> cuts;
};

struct CandidatePiece {
  Polygon shape;          ///< as displayed in its own canvas
  int quarter_turns = 0;  ///< rotation tag, multiples of 90 degrees only
  friend bool operator==(const CandidatePiece&, const CandidatePiece&) = default;
};

using Candidate = std::vector<CandidatePiece>;

enum class DistractorKind { kNone, kReplace, kScale };

inline const char* to_string(DistractorKind k) {
  switch (k) {
    case DistractorKind::kReplace: return "replace";
    case DistractorKind::kScale: return "scale";
    default: return "none";
  }
}

inline DistractorKind distractor_kind_from_string(const std::string& s) {
  if (s == "replace") return DistractorKind::kReplace;
  if (s == "scale") return DistractorKind::kScale;
  if (s == "none") return DistractorKind::kNone;
  throw std::invalid_argument("unknown distractor kind: " + s);
}

/// How a wrong candidate differs from the correct piece list.
///
/// Replace: the replacement area lies in [0.8a, 1.2a] minus [0.99a, 1.01a].
/// Scale: the piece is scaled uniformly by scale_percent/100, so its area is
/// multiplied by area_factor() = (scale_percent/100)^2, which lies in
/// [0.7, 0.9] or [1.1, 1.3].
struct DistractorSpec {
  DistractorKind kind = DistractorKind::kNone;
  int target = 0;
  int scale_percent = 100;
  Rational replaced_area;
  Rational new_area;

  Rational area_factor() const {
    Rational f(scale_percent * scale_percent, 10000);
    f.canonicalize();
    return f;
  }
  friend bool operator==(const DistractorSpec&, const DistractorSpec&) = default;
};

inline bool in_replace_band(const Rational& replacement, const Rational& replaced) {
  Rational lo(4, 5), hi(6, 5), flo(99, 100), fhi(101, 100);
  return replacement >= lo * replaced && replacement <= hi * replaced &&
         !(replacement >= flo * replaced && replacement <= fhi * replaced);
}

inline bool in_scale_band(const Rational& factor) {
  Rational a(7, 10), b(9, 10), c(11, 10), d(13, 10);
  return (factor >= a && factor <= b) || (factor >= c && factor <= d);
}

/// |candidate_total - original| >= 1% of original.
inline bool area_certificate(const Rational& candidate_total, const Rational& original) {
  Rational gap = abs(candidate_total - original);
  return gap * 100 >= original;
}

struct CompositionProblem {
  int level = 1;  ///< 1..4, piece count m = level + 1
  OriginalShape original;
  PieceSet correct;
  std::array<Candidate, 4> candidates;
  std::array<DistractorSpec, 4> distractors;  ///< kNone at answer_index
  int answer_index = 0;
  std::uint64_t seed = 0;

  int piece_count() const { return level + 1; }

  /// Placements of the correct-answer pieces back onto the original.
  std::vector<Placement> correct_placements() const {
    std::vector<Placement> out;
    for (const auto& p : correct.pieces) out.push_back(p.back);
    return out;
  }
};

inline CutLine sample_cut_line(Rng& rng, const Rational& anchor) {
  CutLine l;
  l.angle_deg = kCutAngles[rng.uniform_int(0, 3)];
  const bool negate = rng.coin();
  l.sign = (l.angle_deg == 0 || !negate) ? 1 : -1;
  l.anchor = anchor;
  return l;
}

/// Two cuts of the blank square with anchors in [56, 168] (half-pixel grid),
/// keeping a random side each time, until the area exceeds 25000.
inline OriginalShape generate_original(Rng& rng) {
  for (int attempt = 0; attempt < kMaxResampleAttempts; ++attempt) {
    Polygon cur = Polygon::canvas_square();
    OriginalShape out;
    bool ok = true;
    for (auto& cut : out.cuts) {
      Rational anchor(rng.uniform_int(2 * kAnchorMin, 2 * kAnchorMax), 2);
      anchor.canonicalize();
      cut.line = sample_cut_line(rng, anchor);
      cut.keep_positive = rng.coin();
      try {
        auto [neg, pos] = cut_polygon(cur, cut.line);
        cur = cut.keep_positive ? std::move(pos) : std::move(neg);
      } catch (const DegenerateCut&) {
        ok = false;
        break;
      }
    }
    if (!ok || polygon_area(cur) <= kMinOriginalArea) continue;
    out.polygon = std::move(cur);
    return out;
  }
  throw ResampleExhausted("generate_original: no original with area > 25000");
}

/// Rotates `source` by `quarter_turns` and centres its bounding box in the canvas.
inline PieceRecord present_piece(const Polygon& source, int quarter_turns) {
  PieceRecord r;
  r.source = source;
  r.quarter_turns = quarter_turns;
  Polygon rotated = transform_polygon(source, Placement{0, quarter_turns, {0, 0}});
  BoundingBox bb = bounding_box(rotated);
  const Rational half(kCanvas, 2);
  Point shift{half - (bb.x0 + bb.x1) / 2, half - (bb.y0 + bb.y1) / 2};
  r.shown = translate_polygon(rotated, shift);
  const int inverse = (4 - quarter_turns) % 4;
  Point back_shift = rotate_quarter(shift, inverse);
  r.back = Placement{0, inverse, {-back_shift.x, -back_shift.y}};
  return r;
}

/// Splits `original` into m pieces with m-1 cuts, always cutting the current
/// largest piece with a line through a random point of its bounding box.
inline PieceSet cut_into_pieces(const Polygon& original, int m, Rng& rng) {
  if (m < 2 || m > 5) throw std::invalid_argument("piece count must be in [2,5]");
  const int lo = m == 5 ? 2000 : 3000;
  int attempts = 0;
  while (attempts < kMaxResampleAttempts) {
    std::vector<Polygon> parts{original};
    std::vector<PieceCut> cuts;
    bool failed = false;
    while (static_cast<int>(parts.size()) < m && !failed) {
      std::size_t target = 0;
      for (std::size_t i = 1; i < parts.size(); ++i)
        if (polygon_area(parts[i]) > polygon_area(parts[target])) target = i;
      const BoundingBox bb = bounding_box(parts[target]);
      bool cut_done = false;
      while (!cut_done) {
        if (++attempts > kMaxResampleAttempts) {
          failed = true;
          break;
        }
        Rational fx(rng.uniform_int(1, 63), 64), fy(rng.uniform_int(1, 63), 64);
        fx.canonicalize();
        fy.canonicalize();
        const Point through{bb.x0 + fx * bb.width(), bb.y0 + fy * bb.height()};
        CutLine line = sample_cut_line(rng, 0);
        line.anchor = through.y - line.slope() * through.x;
        try {
          auto [neg, pos] = cut_polygon(parts[target], line);
          if (polygon_area(neg) < lo || polygon_area(pos) < lo) {
            // pieces only shrink from here on, so this split can never pass
            failed = true;
            break;
          }
          parts[target] = std::move(neg);
          parts.push_back(std::move(pos));
          cuts.push_back({static_cast<int>(target), line});
          cut_done = true;
        } catch (const DegenerateCut&) {
        }
      }
    }
    if (failed) continue;
    if (!std::all_of(parts.begin(), parts.end(),
                     [&](const Polygon& p) { return piece_area_in_range(p, m); })) {
      ++attempts;
      continue;
    }
    PieceSet out;
    out.cuts = std::move(cuts);
    for (const auto& p : parts) {
      const int q = static_cast<int>(rng.uniform_int(0, 3));
      out.pieces.push_back(present_piece(p, q));
      out.pieces.back().back.piece_index = static_cast<int>(out.pieces.size()) - 1;
    }
    return out;
  }
  throw ResampleExhausted("cut_into_pieces: no valid " + std::to_string(m) + "-piece split");
}

inline Candidate candidate_from(const PieceSet& set) {
  Candidate c;
  for (const auto& p : set.pieces) c.push_back({p.shown, p.quarter_turns});
  return c;
}

inline Rational total_area(const Candidate& c) {
  Rational t = 0;
  for (const auto& p : c) t += polygon_area(p.shape);
  return t;
}

inline bool fits_canvas(const Polygon& p) {
  BoundingBox bb = bounding_box(p);
  return bb.x0 >= 0 && bb.y0 >= 0 && bb.x1 <= kCanvas && bb.y1 <= kCanvas;
}

/// Builds one wrong candidate by changing exactly one correct piece.
/// Replacement pieces come from a freshly generated original cut into the
/// same number of pieces.
inline std::pair<Candidate, DistractorSpec> make_distractor(const PieceSet& correct,
                                                            DistractorKind kind, Rng& rng) {
  const int m = static_cast<int>(correct.pieces.size());
  Candidate base = candidate_from(correct);
  const Rational original_area = total_area(base);

  // Only pieces large enough for the 1% total-area certificate to be reachable.
  const Rational needed = original_area / 100;
  const Rational max_change = kind == DistractorKind::kScale ? Rational(3, 10) : Rational(1, 5);
  std::vector<int> eligible;
  for (int i = 0; i < m; ++i)
    if (polygon_area(base[static_cast<std::size_t>(i)].shape) * max_change >= needed)
      eligible.push_back(i);
  if (eligible.empty()) throw ResampleExhausted("make_distractor: no piece can carry the certificate");

  for (int attempt = 0; attempt < kMaxResampleAttempts; ++attempt) {
    const int target = eligible[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(eligible.size()) - 1))];
    const auto& old_piece = base[static_cast<std::size_t>(target)];
    const Rational a = polygon_area(old_piece.shape);
    DistractorSpec spec;
    spec.kind = kind;
    spec.target = target;
    spec.replaced_area = a;

    if (kind == DistractorKind::kScale) {
      int pct = static_cast<int>(rng.uniform_int(0, 20));
      pct = pct <= 10 ? 84 + pct : 105 + (pct - 11);  // 84..94 or 105..114
      spec.scale_percent = pct;
      const Rational f = spec.area_factor();
      Rational s(pct, 100);
      s.canonicalize();
      const Rational half(kCanvas, 2);
      Polygon scaled = scale_polygon(old_piece.shape, s, {half, half});
      spec.new_area = polygon_area(scaled);
      if (!in_scale_band(f) || !fits_canvas(scaled) || !piece_area_in_range(scaled, m) ||
          !area_certificate(original_area - a + spec.new_area, original_area))
        continue;
      Candidate out = base;
      out[static_cast<std::size_t>(target)] = {std::move(scaled), old_piece.quarter_turns};
      return {std::move(out), spec};
    }

    if (kind != DistractorKind::kReplace) throw std::invalid_argument("distractor kind must be replace or scale");
    const OriginalShape donor = generate_original(rng);
    const PieceSet donor_pieces = cut_into_pieces(donor.polygon, m, rng);
    std::vector<std::size_t> order(donor_pieces.pieces.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t idx : order) {
      const auto& cand = donor_pieces.pieces[idx];
      const Rational a2 = polygon_area(cand.shown);
      if (!in_replace_band(a2, a)) continue;
      if (!area_certificate(original_area - a + a2, original_area)) continue;
      spec.new_area = a2;
      Candidate out = base;
      out[static_cast<std::size_t>(target)] = {cand.shown, cand.quarter_turns};
      return {std::move(out), spec};
    }
  }
  throw ResampleExhausted(std::string("make_distractor: no ") + to_string(kind) + " distractor found");
}

/// Samples a full composition problem. Two wrong candidates are Replace and
/// one is Scale, in random slots.
inline CompositionProblem sample_composition_problem(int level, Rng& rng, std::uint64_t seed = 0) {
  if (level < 1 || level > 4) throw std::invalid_argument("composition level must be in [1,4]");
  CompositionProblem p;
  p.level = level;
  p.seed = seed;
  p.original = generate_original(rng);
  p.correct = cut_into_pieces(p.original.polygon, p.piece_count(), rng);
  p.answer_index = static_cast<int>(rng.uniform_int(0, 3));
  std::array<DistractorKind, 3> kinds{DistractorKind::kReplace, DistractorKind::kReplace,
                                      DistractorKind::kScale};
  rng.shuffle(std::span<DistractorKind>(kinds));
  std::size_t next = 0;
  for (std::size_t c = 0; c < 4; ++c) {
    if (static_cast<int>(c) == p.answer_index) {
      p.candidates[c] = candidate_from(p.correct);
      p.distractors[c] = DistractorSpec{};
      continue;
    }
    auto [cand, spec] = make_distractor(p.correct, kinds[next++], rng);
    p.candidates[c] = std::move(cand);
    p.distractors[c] = spec;
  }
  return p;
}

/// Exact solver: the unique candidate whose total area equals the original's,
/// confirmed by replaying the recorded placements as an exact cover.
inline int solve_composition(const Polygon& original, const std::array<Candidate, 4>& candidates,
                             const std::vector<Placement>& placements) {
  const Rational target = polygon_area(original);
  std::vector<int> matches;
  for (std::size_t c = 0; c < 4; ++c)
    if (total_area(candidates[c]) == target) matches.push_back(static_cast<int>(c));
  if (matches.size() != 1)
    throw AmbiguousProblem(std::to_string(matches.size()) +
                           " candidates match the original area (expected exactly 1)");
  const auto& cand = candidates[static_cast<std::size_t>(matches[0])];
  std::vector<Polygon> shapes;
  for (const auto& p : cand) shapes.push_back(p.shape);
  if (placements.size() != shapes.size() || !verify_cover(original, shapes, placements))
    throw AmbiguousProblem("area-matching candidate does not replay to an exact cover");
  return matches[0];
}

inline int solve_composition(const CompositionProblem& p) {
  return solve_composition(p.original.polygon, p.candidates, p.correct_placements());
}

}  // namespace forge
