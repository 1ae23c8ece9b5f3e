// forge: build, verify and inspect spatial-reasoning datasets.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "forge/forge.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::vector<int> parse_list(const std::string& text, char sep, const char* what) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw forge::ConfigError(std::string("bad ") + what + ": '" + text + "'");
    }
  }
  return out;
}

struct BuildOptions {
  std::string config;
  std::string task;
  std::string train_levels;
  std::string ratios;
  std::string test_levels;
  std::string sizes;
  std::string seed;
  int img_size = 0;
  std::string out;
  std::string interval_scheme;
  unsigned jobs = 0;
  bool no_montage = false;
};

/// Defaults, overlaid by the JSON config file, overlaid by flags.
forge::ExperimentSpec resolve_spec(const BuildOptions& o) {
  forge::ExperimentSpec spec;
  std::string config = o.config;
  if (config.empty())
    if (const char* env = std::getenv("FORGE_CONFIG")) config = env;
  forge::json cfg = forge::json::object();
  if (!config.empty()) {
    std::ifstream f(config);
    if (!f) throw forge::ConfigError("cannot read config file " + config);
    try {
      f >> cfg;
    } catch (const forge::json::exception& e) {
      throw forge::ConfigError("config file " + config + " is not valid JSON: " + e.what());
    }
  }
  auto pick = [&](const std::string& flag, const char* key) -> std::string {
    if (!flag.empty()) return flag;
    if (!cfg.contains(key)) return {};
    const auto& v = cfg.at(key);
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  const std::string task = pick(o.task, "task");
  if (!task.empty()) spec.task = forge::task_from_string(task);
  const std::string train = pick(o.train_levels, "train_levels");
  if (!train.empty()) spec.train_levels = parse_list(train, ',', "--train-levels");
  spec.ratios = parse_list(pick(o.ratios, "ratios"), ':', "--ratios");
  spec.test_levels = parse_list(pick(o.test_levels, "test_levels"), ',', "--test-levels");
  const std::string sizes = pick(o.sizes, "sizes");
  if (!sizes.empty()) {
    auto v = parse_list(sizes, ',', "--sizes");
    if (v.size() != 4) throw forge::ConfigError("--sizes needs four numbers: train,val,test_in,test_out");
    std::copy(v.begin(), v.end(), spec.sizes.begin());
  }
  const std::string seed = pick(o.seed, "seed");
  if (!seed.empty()) {
    try {
      spec.seed = std::stoull(seed);
    } catch (const std::exception&) {
      throw forge::ConfigError("bad seed: " + seed);
    }
  }
  if (o.img_size > 0)
    spec.image_size = o.img_size;
  else if (cfg.contains("img_size"))
    spec.image_size = cfg.at("img_size").get<int>();
  const std::string scheme = pick(o.interval_scheme, "interval_scheme");
  if (!scheme.empty()) {
    try {
      spec.interval_scheme = forge::interval_scheme_from_string(scheme);
    } catch (const std::invalid_argument& e) {
      throw forge::ConfigError(e.what());
    }
  }
  if (o.no_montage || (cfg.contains("montage") && !cfg.at("montage").get<bool>())) spec.montage = false;
  spec.validate();
  return spec;
}

int run_verify(const std::string& dir) {
  const forge::VerifyReport rep = forge::verify_dataset(dir);
  for (const auto& a : rep.audits) std::cout << "audit " << a << "\n";
  for (const auto& f : rep.failures) std::cout << "FAIL " << f.id << ": " << f.reason << "\n";
  std::cout << "verified " << rep.passed << "/" << rep.total << " problems, " << rep.failures.size()
            << " failure(s)\n";
  return rep.ok() ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forge: procedural spatial-reasoning datasets with exact oracles"};
  app.require_subcommand(1);

  BuildOptions bo;
  auto* build = app.add_subcommand("build", "generate a dataset with manifest");
  build->add_option("--config", bo.config, "JSON config file (default: $FORGE_CONFIG)");
  build->add_option("--task", bo.task, "rotation | composition");
  build->add_option("--train-levels", bo.train_levels, "comma-separated training levels, e.g. 1,2");
  build->add_option("--ratios", bo.ratios, "colon-separated level weights, e.g. 1:2");
  build->add_option("--test-levels", bo.test_levels, "comma-separated out-dist levels (empty = neutral)");
  build->add_option("--sizes", bo.sizes, "train,val,test_in,test_out (default 7000,1000,1000,1000)");
  build->add_option("--seed", bo.seed, "master seed");
  build->add_option("--img-size", bo.img_size, "image side in pixels (default 224)");
  build->add_option("--interval-scheme", bo.interval_scheme, "minimal_sharing | distinct_pairs");
  build->add_option("--jobs", bo.jobs, "worker threads (default: hardware concurrency)");
  build->add_flag("--no-montage", bo.no_montage, "composition: skip per-candidate montage images");
  build->add_option("--out", bo.out, "output directory")->required();

  std::string verify_dir;
  auto* verify = app.add_subcommand("verify", "re-run the oracles and constraint audits");
  verify->add_option("dir", verify_dir, "dataset directory")->required();

  std::string stats_dir;
  auto* stats = app.add_subcommand("stats", "print per-split statistics");
  stats->add_option("dir", stats_dir, "dataset directory")->required();

  std::string one_task = "rotation", one_seed = "0", one_out;
  int one_level = 1, one_size = forge::kCanvas;
  auto* one = app.add_subcommand("render-one", "generate and render a single problem");
  one->add_option("--task", one_task, "rotation | composition");
  one->add_option("--level", one_level, "complexity level");
  one->add_option("--seed", one_seed, "problem seed");
  one->add_option("--img-size", one_size, "image side in pixels");
  one->add_option("--out", one_out, "output directory (default: render-one-<task>-<seed>)");

  std::string pad_dir, pad_out;
  int pad_margin = 50;
  auto* pad = app.add_subcommand("pad", "pad every image and rescale into a sibling directory");
  pad->add_option("--margin", pad_margin, "margin in pixels per side (default 50)");
  pad->add_option("--out", pad_out, "output directory (default: <DIR>_pad<margin>)");
  pad->add_option("dir", pad_dir, "dataset directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*build) {
      const forge::ExperimentSpec spec = resolve_spec(bo);
      const unsigned jobs = bo.jobs ? bo.jobs : std::max(1u, std::thread::hardware_concurrency());
      const forge::json m = forge::build_dataset(spec, bo.out, jobs);
      std::cout << "built " << m.at("problems").size() << " " << forge::to_string(spec.task)
                << " problems in " << bo.out << " (config " << m.at("config_hash").get<std::string>().substr(0, 12)
                << ")\n";
      return kExitOk;
    }
    if (*verify) return run_verify(verify_dir);
    if (*stats) {
      std::cout << forge::dataset_stats(stats_dir);
      return kExitOk;
    }
    if (*one) {
      const forge::Task task = forge::task_from_string(one_task);
      if (one_level < 1 || one_level > forge::max_level(task))
        throw forge::ConfigError("level out of range for task " + one_task);
      std::uint64_t seed = 0;
      try {
        seed = std::stoull(one_seed);
      } catch (const std::exception&) {
        throw forge::ConfigError("bad seed: " + one_seed);
      }
      const std::string out = one_out.empty() ? "render-one-" + one_task + "-" + one_seed : one_out;
      const forge::BuiltProblem bp = forge::build_problem(task, one_level, seed, "single", one_size);
      for (const auto& im : bp.images) {
        fs::create_directories((fs::path(out) / im.path).parent_path());
        forge::write_file((fs::path(out) / im.path).string(), im.bytes);
      }
      forge::write_text_atomic(fs::path(out) / "problem.json", bp.record.dump(1) + "\n");
      std::cout << bp.record.dump(1) << "\n";
      return kExitOk;
    }
    if (*pad) {
      std::string src = pad_dir;
      while (src.size() > 1 && src.back() == '/') src.pop_back();
      const std::string out = pad_out.empty() ? src + "_pad" + std::to_string(pad_margin) : pad_out;
      const forge::json m = forge::pad_dataset(src, out, pad_margin);
      std::cout << "padded " << m.at("problems").size() << " problems into " << out << "\n";
      return kExitOk;
    }
  } catch (const forge::ConfigError& e) {
    std::cerr << "forge: config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const forge::MissingImage& e) {
    std::cerr << "forge: " << e.what() << "\n";
    return kExitVerify;
  } catch (const forge::CorruptManifest& e) {
    std::cerr << "forge: corrupt manifest: " << e.what() << "\n";
    return kExitVerify;
  } catch (const forge::IoError& e) {
    std::cerr << "forge: i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "forge: i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "forge: " << e.what() << "\n";
    return kExitVerify;
  }
  return kExitUsage;
}
