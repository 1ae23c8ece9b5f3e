#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "forge/composition_task.hpp"
#include "forge/errors.hpp"
#include "forge/hash.hpp"
#include "forge/manifest.hpp"
#include "forge/png.hpp"
#include "forge/render.hpp"
#include "forge/rotation_task.hpp"

namespace forge {

namespace fs = std::filesystem;

inline constexpr std::array<const char*, 4> kSplitNames = {"train", "val", "test_in", "test_out"};

/// What to build: task, level mix per split, sizes and seed.
struct ExperimentSpec {
  Task task = Task::kRotation;
  std::vector<int> train_levels{1, 2, 3};
  std::vector<int> ratios;  ///< empty means equal weights
  std::vector<int> test_levels;  ///< empty means neutral (no out-dist split)
  std::array<int, 4> sizes{7000, 1000, 1000, 1000};
  std::uint64_t seed = 0;
  int image_size = kCanvas;
  IntervalScheme interval_scheme = IntervalScheme::kMinimalSharing;
  bool montage = true;  ///< composition: also write one composite image per candidate

  std::vector<int> weights() const {
    return ratios.empty() ? std::vector<int>(train_levels.size(), 1) : ratios;
  }

  bool neutral() const { return test_levels.empty(); }

  int split_size(std::size_t split) const { return split == 3 && neutral() ? 0 : sizes[split]; }

  void validate() const {
    const int top = max_level(task);
    auto check_levels = [&](const std::vector<int>& lv, const char* what) {
      std::set<int> seen;
      for (int l : lv) {
        if (l < 1 || l > top)
          throw ConfigError(std::string(what) + " level " + std::to_string(l) + " out of [1," +
                            std::to_string(top) + "] for task " + to_string(task));
        if (!seen.insert(l).second) throw ConfigError(std::string(what) + " levels repeat " + std::to_string(l));
      }
    };
    if (train_levels.empty()) throw ConfigError("at least one training level is required");
    check_levels(train_levels, "train");
    check_levels(test_levels, "test");
    if (!ratios.empty() && ratios.size() != train_levels.size())
      throw ConfigError("ratios must have one weight per training level");
    for (int r : ratios)
      if (r <= 0) throw ConfigError("ratio weights must be positive");
    for (int t : test_levels)
      if (std::find(train_levels.begin(), train_levels.end(), t) != train_levels.end())
        throw ConfigError("out-dist test levels must be disjoint from training levels");
    for (int s : sizes)
      if (s < 0) throw ConfigError("split sizes must be non-negative");
    if (image_size < 16 || image_size > 1024) throw ConfigError("image size must be in [16, 1024]");
  }

  json to_json() const {
    return {{"task", to_string(task)},
            {"train_levels", train_levels},
            {"ratios", weights()},
            {"test_levels", test_levels},
            {"sizes", {{"train", sizes[0]}, {"val", sizes[1]}, {"test_in", sizes[2]}, {"test_out", sizes[3]}}},
            {"seed", std::to_string(seed)},
            {"image_size", image_size},
            {"interval_scheme", to_string(interval_scheme)},
            {"montage", montage},
            {"render_style_version", kRenderStyleVersion}};
  }

  static ExperimentSpec from_json(const json& j) {
    ExperimentSpec s;
    s.task = task_from_string(j.at("task").get<std::string>());
    s.train_levels = j.at("train_levels").get<std::vector<int>>();
    s.ratios = j.at("ratios").get<std::vector<int>>();
    s.test_levels = j.at("test_levels").get<std::vector<int>>();
    const auto& sz = j.at("sizes");
    for (std::size_t i = 0; i < 4; ++i) s.sizes[i] = sz.at(kSplitNames[i]).get<int>();
    s.seed = std::stoull(j.at("seed").get<std::string>());
    s.image_size = j.at("image_size").get<int>();
    s.interval_scheme = interval_scheme_from_string(j.at("interval_scheme").get<std::string>());
    s.montage = j.at("montage").get<bool>();
    return s;
  }

  std::string config_hash() const { return sha256_hex(to_json().dump()); }
};

/// Splits `total` over `weights` by largest remainder (ties to the lower index).
inline std::vector<int> apportion(int total, const std::vector<int>& weights) {
  const long long wsum = std::accumulate(weights.begin(), weights.end(), 0LL);
  std::vector<int> out(weights.size());
  std::vector<std::pair<long long, std::size_t>> rem;
  int given = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const long long num = static_cast<long long>(total) * weights[i];
    out[i] = static_cast<int>(num / wsum);
    given += out[i];
    rem.emplace_back(num % wsum, i);
  }
  std::stable_sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; given < total; ++k, ++given) ++out[rem[k].second];
  return out;
}

/// Level of every problem in one split: exact apportionment, seeded shuffle.
inline std::vector<int> split_levels(const ExperimentSpec& spec, std::size_t split) {
  const bool out_dist = split == 3;
  const std::vector<int>& levels = out_dist ? spec.test_levels : spec.train_levels;
  const std::vector<int> weights = out_dist ? std::vector<int>(levels.size(), 1) : spec.weights();
  const int n = spec.split_size(split);
  std::vector<int> seq;
  if (n == 0 || levels.empty()) return seq;
  const auto counts = apportion(n, weights);
  for (std::size_t i = 0; i < levels.size(); ++i) seq.insert(seq.end(), static_cast<std::size_t>(counts[i]), levels[i]);
  Rng rng(derive_seed(spec.seed, std::string(kSplitNames[split]) + "/levels", 0));
  rng.shuffle(std::span<int>(seq));
  return seq;
}

inline std::string problem_id(std::size_t split, int index) {
  std::ostringstream s;
  s << kSplitNames[split] << '-';
  s.width(6);
  s.fill('0');
  s << index;
  return s.str();
}

struct ImageFile {
  std::string role;
  std::string path;  ///< relative to the dataset root
  std::vector<std::uint8_t> bytes;
};

struct BuiltProblem {
  json record;
  std::vector<ImageFile> images;
};

/// Generates one problem and its images from an explicit per-problem seed.
inline BuiltProblem build_problem(Task task, int level, std::uint64_t seed, const std::string& id,
                                  int image_size, IntervalScheme scheme = IntervalScheme::kMinimalSharing,
                                  bool montage = true, const RenderStyle& style = {}) {
  Rng rng(seed);
  BuiltProblem out;
  const std::string dir = "images/" + id + "/";
  auto add = [&](const std::string& role, const std::string& name, const Image& img) {
    out.images.push_back({role, dir + name, encode_png(img)});
  };
  json record = {{"id", id}, {"level", level}, {"seed", std::to_string(seed)}};
  json kinds = json::array();
  if (task == Task::kRotation) {
    RotationProblem p = sample_problem_spec(level, rng, seed, scheme);
    record["answer_index"] = p.answer_index;
    record["rotation"] = to_json(p);
    add("question", "q.png", render_polyomino(build_polyomino(p.question.spec), p.question.pose, style, image_size));
    for (std::size_t c = 0; c < 4; ++c) {
      const auto& v = p.candidates[c];
      add("candidate" + std::to_string(c), "c" + std::to_string(c) + ".png",
          render_polyomino(build_polyomino(v.spec), v.pose, style, image_size));
      kinds.push_back(static_cast<int>(c) == p.answer_index ? "none" : "rotated");
    }
  } else {
    CompositionProblem p = sample_composition_problem(level, rng, seed);
    record["answer_index"] = p.answer_index;
    record["composition"] = to_json(p);
    add("question", "q.png", render_polygon(p.original.polygon, image_size));
    for (std::size_t c = 0; c < 4; ++c) {
      const std::string cname = "c" + std::to_string(c);
      std::vector<Polygon> shapes;
      for (std::size_t j = 0; j < p.candidates[c].size(); ++j) {
        shapes.push_back(p.candidates[c][j].shape);
        add("candidate" + std::to_string(c) + "_piece" + std::to_string(j),
            cname + "_p" + std::to_string(j) + ".png", render_polygon(shapes.back(), image_size));
      }
      if (montage) add("candidate" + std::to_string(c), cname + ".png", render_montage(shapes, image_size));
      kinds.push_back(to_string(p.distractors[c].kind));
    }
  }
  record["distractor_kinds"] = kinds;
  json imgs = json::array();
  for (const auto& im : out.images) imgs.push_back({{"role", im.role}, {"path", im.path}, {"sha256", sha256_hex(im.bytes)}});
  record["images"] = imgs;
  out.record = std::move(record);
  return out;
}

inline void write_text_atomic(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw IoError("cannot write " + tmp.string());
    f << text;
    if (!f) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

inline std::string manifest_text(const json& manifest) { return manifest.dump(1) + "\n"; }

/// Builds every split of `spec` under `out_dir` and writes manifest.json.
/// Problems are generated by `jobs` workers; output order and bytes do not
/// depend on the worker count.
inline json build_dataset(const ExperimentSpec& spec, const fs::path& out_dir, unsigned jobs = 1) {
  spec.validate();
  std::error_code ec;
  fs::create_directories(out_dir / "images", ec);
  if (ec) throw IoError("cannot create " + (out_dir / "images").string() + ": " + ec.message());

  struct Job {
    std::size_t split;
    int index;
    int level;
  };
  std::vector<Job> todo;
  json splits = json::object();
  for (std::size_t s = 0; s < 4; ++s) {
    const auto levels = split_levels(spec, s);
    std::map<std::string, int> per_level;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      todo.push_back({s, static_cast<int>(i), levels[i]});
      ++per_level[std::to_string(levels[i])];
    }
    splits[kSplitNames[s]] = {{"count", levels.size()},
                              {"levels", s == 3 ? spec.test_levels : spec.train_levels},
                              {"weights", s == 3 ? std::vector<int>(spec.test_levels.size(), 1) : spec.weights()},
                              {"level_counts", per_level}};
  }

  std::vector<json> records(todo.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr first_error;
  std::string first_error_id;
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= todo.size()) return;
      {
        std::lock_guard lock(err_mu);
        if (first_error) return;
      }
      const Job& job = todo[k];
      const std::string id = problem_id(job.split, job.index);
      try {
        const std::uint64_t seed = derive_seed(spec.seed, kSplitNames[job.split], static_cast<std::uint64_t>(job.index));
        BuiltProblem bp = build_problem(spec.task, job.level, seed, id, spec.image_size, spec.interval_scheme, spec.montage);
        fs::create_directories(out_dir / "images" / id);
        for (const auto& im : bp.images) write_file((out_dir / im.path).string(), im.bytes);
        bp.record["split"] = kSplitNames[job.split];
        bp.record["index"] = job.index;
        records[k] = std::move(bp.record);
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!first_error) {
          first_error = std::current_exception();
          first_error_id = id;
        }
      }
    }
  };
  jobs = std::max(1u, jobs);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (first_error) {
    try {
      std::rethrow_exception(first_error);
    } catch (const ResampleExhausted& e) {
      throw ResampleExhausted("problem " + first_error_id + ": " + e.what());
    } catch (const IoError&) {
      throw;
    } catch (const std::exception& e) {
      throw Error("problem " + first_error_id + ": " + e.what());
    }
  }

  json manifest = {{"format", kManifestFormat},
                   {"library_version", kLibraryVersion},
                   {"render_style_version", kRenderStyleVersion},
                   {"spec", spec.to_json()},
                   {"config_hash", spec.config_hash()},
                   {"splits", splits},
                   {"problems", records}};
  write_text_atomic(out_dir / "manifest.json", manifest_text(manifest));
  return manifest;
}

inline json load_manifest(const fs::path& dir) {
  const fs::path path = dir / "manifest.json";
  if (!fs::exists(path)) throw CorruptManifest("no manifest.json in " + dir.string());
  std::ifstream f(path);
  json m;
  try {
    f >> m;
  } catch (const json::exception& e) {
    throw CorruptManifest(std::string("manifest.json is not valid JSON: ") + e.what());
  }
  if (!m.is_object() || m.value("format", "") != kManifestFormat || !m.contains("problems") ||
      !m.at("problems").is_array() || !m.contains("spec"))
    throw CorruptManifest("manifest.json lacks the forge manifest structure");
  return m;
}

struct VerifyFailure {
  std::string id;
  std::string reason;
};

struct VerifyReport {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::vector<VerifyFailure> failures;
  std::vector<std::string> audits;  ///< one line per dataset-level check

  bool ok() const { return failures.empty(); }
};

namespace detail {

inline void audit_rotation(const json& rec, std::vector<std::string>& why) {
  const RotationProblem p = rotation_problem_from_json(rec);
  const int k = p.level + 2;
  std::set<IntervalPair> pairs;
  auto check_view = [&](const RotationView& v, const std::string& name) {
    if (v.spec.edge_count() != k) why.push_back(name + ": edge count does not match level");
    for (int l : v.spec.lengths)
      if (l < EdgeSpec::kMinLength || l > EdgeSpec::kMaxLength)
        why.push_back(name + ": edge length " + std::to_string(l) + " outside [3,9]");
    if (!v.pose.consistent()) why.push_back(name + ": angle outside its tagged interval");
    if (near_right_angle(v.pose.vertical_tenths) || near_right_angle(v.pose.horizontal_tenths))
      why.push_back(name + ": angle within 15 degrees of a right angle");
    pairs.insert({v.pose.vertical_interval, v.pose.horizontal_interval});
  };
  check_view(p.question, "question");
  for (std::size_t c = 0; c < 4; ++c) check_view(p.candidates[c], "candidate " + std::to_string(c));
  if (pairs.size() != 5) why.push_back("interval pairs are not pairwise distinct");
  for (std::size_t c = 0; c < 4; ++c)
    if (p.candidates[c].spec.lengths != p.question.spec.lengths)
      why.push_back("candidate " + std::to_string(c) + " has different edge lengths");
  int same = 0;
  for (std::size_t c = 0; c < 4; ++c) same += p.candidates[c].spec == p.question.spec;
  if (same != 3) why.push_back("expected three candidates sharing the question's directions");
}

inline void audit_composition(const json& rec, std::vector<std::string>& why) {
  const CompositionProblem p = composition_problem_from_json(rec);
  const int m = p.piece_count();
  const Rational area = polygon_area(p.original.polygon);
  if (area <= kMinOriginalArea) why.push_back("original area not above 25000");
  Polygon replay = Polygon::canvas_square();
  try {
    for (const auto& c : p.original.cuts) {
      if (c.line.anchor < kAnchorMin || c.line.anchor > kAnchorMax) why.push_back("original cut anchor outside [56,168]");
      auto [neg, pos] = cut_polygon(replay, c.line);
      replay = c.keep_positive ? pos : neg;
    }
    if (!(replay == p.original.polygon)) why.push_back("original polygon does not match its recorded cuts");
  } catch (const DegenerateCut&) {
    why.push_back("recorded original cuts are degenerate");
  }
  const auto& cands = rec.at("composition").at("candidates");
  std::multiset<std::string> kinds;
  for (std::size_t c = 0; c < 4; ++c) {
    const std::string name = "candidate " + std::to_string(c);
    if (p.candidates[c].size() != static_cast<std::size_t>(m)) why.push_back(name + ": wrong piece count");
    for (const auto& piece : cands[c].at("pieces")) {
      const int deg = piece.at("rotation_deg").get<int>();
      if (deg != 0 && deg != 90 && deg != 180 && deg != 270) why.push_back(name + ": rotation not a right angle");
    }
    for (const auto& piece : p.candidates[c])
      if (!piece_area_in_range(piece.shape, m)) why.push_back(name + ": piece area outside level range");
    const auto& d = p.distractors[c];
    if (d.kind == DistractorKind::kNone) continue;
    kinds.insert(to_string(d.kind));
    if (!area_certificate(total_area(p.candidates[c]), area)) why.push_back(name + ": total area within 1% of the original");
    if (d.kind == DistractorKind::kReplace && !in_replace_band(d.new_area, d.replaced_area))
      why.push_back(name + ": replacement area outside the similar-size band");
    if (d.kind == DistractorKind::kScale && !in_scale_band(d.area_factor()))
      why.push_back(name + ": scale factor outside its band");
  }
  if (kinds != std::multiset<std::string>{"replace", "replace", "scale"})
    why.push_back("distractor kinds are not {replace, replace, scale}");
  for (const auto& r : p.correct.pieces) {
    if (placement_determinant(r.back.quarter_turns) != 1) why.push_back("placement is not a proper rotation");
    if (!piece_area_in_range(r.source, m)) why.push_back("correct piece area outside level range");
  }
}

}  // namespace detail

/// Re-runs the exact oracle on every problem and audits every generation
/// constraint. Throws MissingImage for an absent image file.
inline VerifyReport verify_dataset(const fs::path& dir) {
  const json m = load_manifest(dir);
  VerifyReport rep;
  Task task;
  ExperimentSpec spec;
  try {
    spec = ExperimentSpec::from_json(m.at("spec"));
    task = spec.task;
  } catch (const std::exception& e) {
    throw CorruptManifest(std::string("bad spec block: ") + e.what());
  }
  std::set<std::string> seeds;
  std::set<std::string> ids;
  std::map<std::string, std::map<int, int>> level_counts;
  for (const auto& rec : m.at("problems")) {
    ++rep.total;
    std::vector<std::string> why;
    std::string id = rec.value("id", "<no id>");
    try {
      if (!ids.insert(id).second) why.push_back("duplicate problem id");
      if (!seeds.insert(rec.at("seed").get<std::string>()).second) why.push_back("seed reused across problems");
      const int answer = rec.at("answer_index").get<int>();
      const int level = rec.at("level").get<int>();
      ++level_counts[rec.at("split").get<std::string>()][level];
      if (answer < 0 || answer > 3) why.push_back("answer_index outside 0..3");
      for (const auto& im : rec.at("images")) {
        const fs::path path = dir / im.at("path").get<std::string>();
        if (!fs::exists(path)) throw MissingImage(path.string());
        if (sha256_hex(read_file(path.string())) != im.at("sha256").get<std::string>())
          why.push_back("image digest mismatch: " + im.at("path").get<std::string>());
      }
      int solved = -1;
      try {
        if (task == Task::kRotation) {
          detail::audit_rotation(rec, why);
          solved = solve_rotation(rotation_problem_from_json(rec));
        } else {
          detail::audit_composition(rec, why);
          solved = solve_composition(composition_problem_from_json(rec));
        }
      } catch (const AmbiguousProblem& e) {
        why.push_back(std::string("oracle: ") + e.what());
      }
      if (solved >= 0 && solved != answer)
        why.push_back("oracle answer " + std::to_string(solved) + " != labelled " + std::to_string(answer));
    } catch (const MissingImage&) {
      throw;
    } catch (const json::exception& e) {
      throw CorruptManifest("problem " + id + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      why.push_back(std::string("invalid geometry: ") + e.what());
    }
    if (why.empty()) {
      ++rep.passed;
    } else {
      std::string joined;
      for (const auto& w : why) joined += (joined.empty() ? "" : "; ") + w;
      rep.failures.push_back({id, joined});
    }
  }

  // Level proportions per split, against the recorded weights.
  for (std::size_t s = 0; s < 4; ++s) {
    const std::string name = kSplitNames[s];
    const auto& counts = level_counts[name];
    const int n = std::accumulate(counts.begin(), counts.end(), 0, [](int a, const auto& kv) { return a + kv.second; });
    if (n == 0) continue;
    const auto& levels = s == 3 ? spec.test_levels : spec.train_levels;
    const auto weights = s == 3 ? std::vector<int>(levels.size(), 1) : spec.weights();
    const double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
    std::ostringstream line;
    line << "split " << name << ": " << n << " problems;";
    bool ok = true;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      const auto it = counts.find(levels[i]);
      const int c = it == counts.end() ? 0 : it->second;
      const double got = static_cast<double>(c) / n, want = weights[i] / wsum;
      line << " level " << levels[i] << " " << c << " (" << got * 100 << "% vs " << want * 100 << "%)";
      if (n >= 1000 && std::abs(got - want) > 0.01) ok = false;
    }
    for (const auto& [lv, c] : counts)
      if (std::find(levels.begin(), levels.end(), lv) == levels.end()) {
        ok = false;
        line << " unexpected level " << lv;
      }
    line << (ok ? " ok" : " MISMATCH");
    rep.audits.push_back(line.str());
    if (!ok) rep.failures.push_back({"split:" + name, "level proportions deviate from the weights"});
  }
  return rep;
}

/// Summary table text: per-split level counts, answer histogram, and
/// angle or area distributions.
inline std::string dataset_stats(const fs::path& dir) {
  const json m = load_manifest(dir);
  std::ostringstream out;
  const std::string task = m.at("spec").at("task").get<std::string>();
  out << "task " << task << ", " << m.at("problems").size() << " problems, config "
      << m.at("config_hash").get<std::string>().substr(0, 12) << "\n";
  std::map<std::string, std::map<int, int>> counts;
  std::array<long, 4> answers{};
  std::vector<double> areas, piece_areas;
  std::map<int, long> interval_use;
  double amin = 1e9, amax = -1e9;
  for (const auto& rec : m.at("problems")) {
    ++counts[rec.at("split").get<std::string>()][rec.at("level").get<int>()];
    const int a = rec.at("answer_index").get<int>();
    if (a >= 0 && a < 4) ++answers[static_cast<std::size_t>(a)];
    if (rec.contains("rotation")) {
      const auto& g = rec.at("rotation");
      std::vector<json> views{g.at("question")};
      for (const auto& c : g.at("candidates")) views.push_back(c);
      for (const auto& v : views) {
        const auto& pose = v.at("pose");
        for (const char* key : {"vertical_tenths", "horizontal_tenths"}) {
          const double deg = pose.at(key).get<int>() / 10.0;
          amin = std::min(amin, deg);
          amax = std::max(amax, deg);
        }
        ++interval_use[pose.at("vertical_interval").get<int>()];
        ++interval_use[pose.at("horizontal_interval").get<int>()];
      }
    } else if (rec.contains("composition")) {
      const auto& g = rec.at("composition");
      areas.push_back(parse_rational(g.at("original").at("area").get<std::string>()).get_d());
      for (const auto& piece : g.at("correct_pieces"))
        piece_areas.push_back(polygon_area(polygon_from_json(piece.at("source"))).get_d());
    }
  }
  out << "split      level  count\n";
  for (const char* s : kSplitNames) {
    const auto it = counts.find(s);
    if (it == counts.end()) continue;
    int total = 0;
    for (const auto& [lv, c] : it->second) {
      out << "  ";
      out.width(9);
      out << std::left << s << std::right;
      out.width(5);
      out << lv;
      out.width(7);
      out << c << "\n";
      total += c;
    }
    out << "  " << s << " total " << total << "\n";
  }
  const double n = std::max<double>(1, static_cast<double>(answers[0] + answers[1] + answers[2] + answers[3]));
  out << "answer index histogram:";
  for (std::size_t i = 0; i < 4; ++i) out << " " << i << ":" << answers[i] << " (" << answers[i] / n << ")";
  out << "\n";
  auto summary = [&](const char* name, const std::vector<double>& v) {
    if (v.empty()) return;
    const double lo = *std::min_element(v.begin(), v.end());
    const double hi = *std::max_element(v.begin(), v.end());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    out << name << ": min " << lo << " mean " << mean << " max " << hi << "\n";
  };
  if (task == "rotation") {
    out << "angles (deg): min " << amin << " max " << amax << "\n";
    out << "interval usage:";
    for (const auto& [iv, c] : interval_use) out << " [" << 90 * iv + 15 << "," << 90 * iv + 75 << "):" << c;
    out << "\n";
  }
  summary("original area", areas);
  summary("piece area", piece_areas);
  return out.str();
}

/// Copies a dataset into `out_dir` with every image padded by `margin`
/// white pixels per side and rescaled to its original size. The manifest
/// is copied with refreshed digests and a preprocessing note.
inline json pad_dataset(const fs::path& dir, const fs::path& out_dir, int margin) {
  json m = load_manifest(dir);
  if (margin < 0) throw ConfigError("margin must be non-negative");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  for (auto& rec : m.at("problems")) {
    for (auto& im : rec.at("images")) {
      const std::string rel = im.at("path").get<std::string>();
      const fs::path src = dir / rel;
      if (!fs::exists(src)) throw MissingImage(src.string());
      const Image padded = pad_and_rescale(decode_png(read_file(src.string())), margin);
      const auto bytes = encode_png(padded);
      fs::create_directories((out_dir / rel).parent_path());
      write_file((out_dir / rel).string(), bytes);
      im["sha256"] = sha256_hex(bytes);
    }
  }
  m["preprocessing"] = {{"pad_margin", margin}, {"resample", "nearest"}};
  write_text_atomic(out_dir / "manifest.json", manifest_text(m));
  return m;
}

}  // namespace forge
