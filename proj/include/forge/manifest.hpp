#pragma once

#include <json.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "forge/composition_task.hpp"
#include "forge/errors.hpp"
#include "forge/rotation_task.hpp"

namespace forge {

using json = nlohmann::json;

inline constexpr const char* kLibraryVersion = "1.0.0";
inline constexpr const char* kManifestFormat = "forge-manifest/1";

enum class Task { kRotation, kComposition };

inline const char* to_string(Task t) { return t == Task::kRotation ? "rotation" : "composition"; }

inline Task task_from_string(const std::string& s) {
  if (s == "rotation") return Task::kRotation;
  if (s == "composition") return Task::kComposition;
  throw ConfigError("unknown task: " + s + " (expected rotation or composition)");
}

inline int max_level(Task t) { return t == Task::kRotation ? 3 : 4; }

// -- geometry records ------------------------------------------------------

inline json to_json(const Point& p) { return json::array({to_string(p.x), to_string(p.y)}); }

inline Point point_from_json(const json& j) {
  return {parse_rational(j.at(0).get<std::string>()), parse_rational(j.at(1).get<std::string>())};
}

inline json to_json(const Polygon& p) {
  json a = json::array();
  for (const auto& v : p.vertices()) a.push_back(to_json(v));
  return a;
}

inline Polygon polygon_from_json(const json& j) {
  std::vector<Point> pts;
  for (const auto& v : j) pts.push_back(point_from_json(v));
  return Polygon(std::move(pts));
}

inline json to_json(const CutLine& l) {
  return {{"angle_deg", l.angle_deg}, {"sign", l.sign}, {"anchor", to_string(l.anchor)}};
}

inline CutLine cut_line_from_json(const json& j) {
  CutLine l;
  l.angle_deg = j.at("angle_deg").get<int>();
  l.sign = j.at("sign").get<int>();
  l.anchor = parse_rational(j.at("anchor").get<std::string>());
  return l;
}

inline json to_json(const Placement& p) {
  return {{"piece_index", p.piece_index},
          {"rotation_deg", p.rotation_deg()},
          {"translation", to_json(p.translation)}};
}

inline Placement placement_from_json(const json& j) {
  Placement p;
  p.piece_index = j.at("piece_index").get<int>();
  const int deg = j.at("rotation_deg").get<int>();
  if (deg % 90 != 0 || deg < 0 || deg > 270) throw CorruptManifest("placement rotation not a right angle");
  p.quarter_turns = deg / 90;
  p.translation = point_from_json(j.at("translation"));
  return p;
}

inline json to_json(const PoseAngles& p) {
  return {{"vertical_tenths", p.vertical_tenths},
          {"horizontal_tenths", p.horizontal_tenths},
          {"vertical_interval", p.vertical_interval},
          {"horizontal_interval", p.horizontal_interval}};
}

inline PoseAngles pose_from_json(const json& j) {
  PoseAngles p;
  p.vertical_tenths = j.at("vertical_tenths").get<int>();
  p.horizontal_tenths = j.at("horizontal_tenths").get<int>();
  p.vertical_interval = j.at("vertical_interval").get<int>();
  p.horizontal_interval = j.at("horizontal_interval").get<int>();
  return p;
}

inline json to_json(const RotationView& v) {
  return {{"lengths", v.spec.lengths}, {"directions", v.spec.directions}, {"pose", to_json(v.pose)}};
}

inline RotationView rotation_view_from_json(const json& j) {
  RotationView v;
  v.spec.lengths = j.at("lengths").get<std::vector<int>>();
  v.spec.directions = j.at("directions").get<std::vector<int>>();
  v.pose = pose_from_json(j.at("pose"));
  return v;
}

inline json to_json(const RotationProblem& p) {
  json c = json::array();
  for (const auto& v : p.candidates) c.push_back(to_json(v));
  return {{"edges", p.edge_count()}, {"question", to_json(p.question)}, {"candidates", c}};
}

inline RotationProblem rotation_problem_from_json(const json& record) {
  RotationProblem p;
  p.level = record.at("level").get<int>();
  p.answer_index = record.at("answer_index").get<int>();
  p.seed = std::stoull(record.at("seed").get<std::string>());
  const json& g = record.at("rotation");
  p.question = rotation_view_from_json(g.at("question"));
  const auto& cands = g.at("candidates");
  if (cands.size() != 4) throw CorruptManifest("rotation problem needs 4 candidates");
  for (std::size_t i = 0; i < 4; ++i) p.candidates[i] = rotation_view_from_json(cands[i]);
  return p;
}

inline json to_json(const DistractorSpec& d) {
  json j = {{"kind", to_string(d.kind)}};
  if (d.kind == DistractorKind::kNone) return j;
  j["target"] = d.target;
  j["replaced_area"] = to_string(d.replaced_area);
  j["new_area"] = to_string(d.new_area);
  if (d.kind == DistractorKind::kScale) {
    j["scale_percent"] = d.scale_percent;
    j["area_factor"] = to_string(d.area_factor());
  }
  return j;
}

inline DistractorSpec distractor_from_json(const json& j) {
  DistractorSpec d;
  d.kind = distractor_kind_from_string(j.at("kind").get<std::string>());
  if (d.kind == DistractorKind::kNone) return d;
  d.target = j.at("target").get<int>();
  d.replaced_area = parse_rational(j.at("replaced_area").get<std::string>());
  d.new_area = parse_rational(j.at("new_area").get<std::string>());
  if (d.kind == DistractorKind::kScale) d.scale_percent = j.at("scale_percent").get<int>();
  return d;
}

inline json to_json(const CompositionProblem& p) {
  json cuts = json::array();
  for (const auto& c : p.original.cuts)
    cuts.push_back({{"line", to_json(c.line)}, {"keep", c.keep_positive ? "positive" : "negative"}});
  json piece_cuts = json::array();
  for (const auto& c : p.correct.cuts) piece_cuts.push_back({{"target", c.target}, {"line", to_json(c.line)}});
  json pieces = json::array();
  for (const auto& r : p.correct.pieces)
    pieces.push_back({{"source", to_json(r.source)},
                      {"rotation_deg", 90 * r.quarter_turns},
                      {"placement", to_json(r.back)}});
  json cands = json::array();
  for (std::size_t c = 0; c < 4; ++c) {
    json ps = json::array();
    for (const auto& piece : p.candidates[c])
      ps.push_back({{"polygon", to_json(piece.shape)}, {"rotation_deg", 90 * piece.quarter_turns}});
    cands.push_back({{"pieces", ps}, {"distractor", to_json(p.distractors[c])}});
  }
  return {{"pieces", p.piece_count()},
          {"original",
           {{"polygon", to_json(p.original.polygon)},
            {"area", to_string(polygon_area(p.original.polygon))},
            {"cuts", cuts}}},
          {"piece_cuts", piece_cuts},
          {"correct_pieces", pieces},
          {"candidates", cands}};
}

inline CompositionProblem composition_problem_from_json(const json& record) {
  CompositionProblem p;
  p.level = record.at("level").get<int>();
  p.answer_index = record.at("answer_index").get<int>();
  p.seed = std::stoull(record.at("seed").get<std::string>());
  const json& g = record.at("composition");
  p.original.polygon = polygon_from_json(g.at("original").at("polygon"));
  const auto& cuts = g.at("original").at("cuts");
  if (cuts.size() != 2) throw CorruptManifest("original needs exactly two cuts");
  for (std::size_t i = 0; i < 2; ++i) {
    p.original.cuts[i].line = cut_line_from_json(cuts[i].at("line"));
    p.original.cuts[i].keep_positive = cuts[i].at("keep").get<std::string>() == "positive";
  }
  for (const auto& c : g.at("piece_cuts"))
    p.correct.cuts.push_back({c.at("target").get<int>(), cut_line_from_json(c.at("line"))});
  for (const auto& r : g.at("correct_pieces")) {
    PieceRecord rec;
    rec.source = polygon_from_json(r.at("source"));
    rec.quarter_turns = r.at("rotation_deg").get<int>() / 90;
    rec.back = placement_from_json(r.at("placement"));
    p.correct.pieces.push_back(std::move(rec));
  }
  const auto& cands = g.at("candidates");
  if (cands.size() != 4) throw CorruptManifest("composition problem needs 4 candidates");
  for (std::size_t c = 0; c < 4; ++c) {
    for (const auto& piece : cands[c].at("pieces")) {
      const int deg = piece.at("rotation_deg").get<int>();
      p.candidates[c].push_back({polygon_from_json(piece.at("polygon")), deg / 90});
    }
    p.distractors[c] = distractor_from_json(cands[c].at("distractor"));
  }
  // The shown correct pieces live in the answer candidate; fill them back in.
  for (std::size_t c = 0; c < 4; ++c)
    if (p.distractors[c].kind == DistractorKind::kNone && p.candidates[c].size() == p.correct.pieces.size())
      for (std::size_t i = 0; i < p.correct.pieces.size(); ++i)
        p.correct.pieces[i].shown = p.candidates[c][i].shape;
  return p;
}

}  // namespace forge
