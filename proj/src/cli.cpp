// Copyright 2026 The trackfuse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trackfuse/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "trackfuse/eval.hpp"
#include "trackfuse/interpolate.hpp"
#include "trackfuse/synth.hpp"

namespace fs = std::filesystem;

namespace trackfuse::cli {

TrackSet fuse(const std::vector<TrackSet>& inputs, const EnsembleConfig& cfg,
              std::optional<int> interpolate_gap) {
  TrackSet result = ensemble_pipeline(inputs, cfg);
  if (interpolate_gap) result = linear_interpolate(result, *interpolate_gap);
  return result;
}

namespace {

// Input problems (missing files, parse errors) map to kInputError.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

TrackSet load(const fs::path& path, bool is_ground_truth) {
  if (!fs::is_regular_file(path)) {
    throw InputError(fmt::format("cannot read '{}'", path.string()));
  }
  try {
    TrackSet ts = load_trackset(path.string(), is_ground_truth);
    ts.sequence = path.stem().string();
    return ts;
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

std::vector<std::string> sequences_in(const fs::path& dir) {
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      names.push_back(entry.path().stem().string());
    }
  }
  std::sort(names.begin(), names.end());
  return names;
}

struct MergeOptions {
  std::vector<std::string> inputs;
  std::string output;
  EnsembleConfig cfg;
  std::string mode = "drop";
  std::optional<int> interpolate;
};

int do_merge(MergeOptions opt, std::ostream& out) {
  opt.cfg.merge_mode = parse_merge_mode(opt.mode);
  opt.cfg.validate();
  if (opt.interpolate && *opt.interpolate < 1) {
    throw std::invalid_argument("--interpolate needs a positive gap");
  }

  const bool dir_mode = std::all_of(opt.inputs.begin(), opt.inputs.end(),
                                    [](const std::string& p) { return fs::is_directory(p); });
  if (!dir_mode) {
    std::vector<TrackSet> sets;
    for (const auto& p : opt.inputs) sets.push_back(load(p, false));
    const TrackSet fused = fuse(sets, opt.cfg, opt.interpolate);
    try {
      save_trackset(opt.output, fused);
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
    out << fmt::format("{}: {} trajectories, {} boxes\n", opt.output, fused.trajectories.size(),
                       fused.num_boxes());
    return kSuccess;
  }

  // Directory mode: one <sequence>.txt per input directory, fused independently.
  const auto names = sequences_in(opt.inputs.front());
  fs::create_directories(opt.output);
  std::vector<std::future<TrackSet>> jobs;
  for (const auto& name : names) {
    jobs.push_back(std::async(std::launch::async, [&opt, name] {
      std::vector<TrackSet> sets;
      for (const auto& dir : opt.inputs) sets.push_back(load(fs::path(dir) / (name + ".txt"), false));
      return fuse(sets, opt.cfg, opt.interpolate);
    }));
  }
  for (std::size_t s = 0; s < names.size(); ++s) {
    const TrackSet fused = jobs[s].get();
    const auto path = fs::path(opt.output) / (names[s] + ".txt");
    save_trackset(path.string(), fused);
    out << fmt::format("{}: {} trajectories, {} boxes\n", path.string(),
                       fused.trajectories.size(), fused.num_boxes());
  }
  return kSuccess;
}

struct EvalOptions {
  std::string gt;
  std::string pred;
  double iou = kDefaultMatchIoU;
};

fs::path gt_file_for(const fs::path& gt_dir, const std::string& name) {
  const auto mot_layout = gt_dir / name / "gt" / "gt.txt";
  if (fs::is_regular_file(mot_layout)) return mot_layout;
  return gt_dir / (name + ".txt");
}

std::vector<std::string> gt_sequences(const fs::path& gt_dir) {
  std::vector<std::string> names = sequences_in(gt_dir);
  for (const auto& entry : fs::directory_iterator(gt_dir)) {
    if (entry.is_directory() && fs::is_regular_file(entry.path() / "gt" / "gt.txt")) {
      names.push_back(entry.path().filename().string());
    }
  }
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

int do_eval(const EvalOptions& opt, std::ostream& out, std::ostream& err) {
  if (!(opt.iou > 0.0 && opt.iou <= 1.0)) throw std::invalid_argument("--iou must be in (0, 1]");

  EvalReport total;
  if (fs::is_directory(opt.gt)) {
    const auto names = gt_sequences(opt.gt);
    std::vector<std::future<EvalReport>> jobs;
    for (const auto& name : names) {
      jobs.push_back(std::async(std::launch::async, [&opt, name] {
        const TrackSet gt = load(gt_file_for(opt.gt, name), true);
        const TrackSet pred = load(fs::path(opt.pred) / (name + ".txt"), false);
        return evaluate(gt, pred, opt.iou);
      }));
    }
    for (std::size_t s = 0; s < names.size(); ++s) {
      const EvalReport r = jobs[s].get();
      out << "== " << names[s] << "\n" << format_table(r);
      total.accumulate(r);
    }
    out << "== OVERALL\n";
  } else {
    total = evaluate(load(opt.gt, true), load(opt.pred, false), opt.iou);
  }

  out << format_table(total) << format_metric_lines(total);
  if (total.num_gt == 0) {
    err << "error: ground truth contains no boxes; MOTA is undefined\n";
    return kInputError;
  }
  return kSuccess;
}

struct SynthOptions {
  std::string output;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> objects;
  std::optional<int> frames;
  std::optional<int> trackers;
  std::optional<double> width;
  std::optional<double> height;
  std::optional<double> idswitch_rate;
  std::optional<double> drop_rate;
  std::optional<double> jitter;
  std::optional<double> segment_drop;
  bool complementary = false;
};

// Used for trackers that neither the config nor the flags describe.
constexpr Degradation kDefaultDegradation{0.005, 0.01, 2.0, 8.0};

ScenarioSpec build_spec(const SynthOptions& opt) {
  ScenarioSpec spec;
  spec.trackers.assign(2, kDefaultDegradation);
  if (!opt.config.empty()) {
    std::ifstream in(opt.config);
    if (!in) throw InputError(fmt::format("cannot read '{}'", opt.config));
    ScenarioSpec base = spec;
    base.trackers.clear();
    spec = parse_scenario_config(in, base);
    if (spec.trackers.empty()) spec.trackers.assign(2, kDefaultDegradation);
  }
  if (opt.seed) spec.seed = *opt.seed;
  if (opt.objects) spec.num_objects = *opt.objects;
  if (opt.frames) spec.num_frames = *opt.frames;
  if (opt.width) spec.arena_width = *opt.width;
  if (opt.height) spec.arena_height = *opt.height;
  if (opt.trackers) {
    if (*opt.trackers < 1) throw std::invalid_argument("--trackers must be positive");
    spec.trackers.resize(static_cast<std::size_t>(*opt.trackers), kDefaultDegradation);
  }
  for (auto& d : spec.trackers) {
    if (opt.idswitch_rate) d.idswitch_rate = *opt.idswitch_rate;
    if (opt.drop_rate) d.drop_rate = *opt.drop_rate;
    if (opt.jitter) d.jitter = *opt.jitter;
    if (opt.segment_drop) d.segment_drop = *opt.segment_drop;
  }
  if (opt.complementary && opt.trackers && *opt.trackers != 2) {
    throw std::invalid_argument("--complementary always produces two trackers");
  }
  spec.validate();
  return spec;
}

int do_synth(const SynthOptions& opt, std::ostream& out) {
  const ScenarioSpec spec = build_spec(opt);
  const Scenario sc = opt.complementary ? complementary_pair(spec) : generate_scenario(spec);

  const fs::path dir(opt.output);
  fs::create_directories(dir);
  auto write = [&](const fs::path& path, const TrackSet& ts) {
    try {
      save_trackset(path.string(), ts);
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
    out << fmt::format("wrote {} ({} trajectories)\n", path.string(), ts.trajectories.size());
  };
  write(dir / "gt.txt", sc.gt);
  for (std::size_t k = 0; k < sc.trackers.size(); ++k) {
    write(dir / fmt::format("tracker_{}.txt", k + 1), sc.trackers[k]);
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fuse, score and simulate multi-object tracking results", "trackfuse"};
  app.require_subcommand(1);

  MergeOptions merge;
  auto* merge_cmd = app.add_subcommand("merge", "Fuse tracking results from several trackers");
  merge_cmd->add_option("-i,--input", merge.inputs, "Result file or directory (repeatable)")
      ->required();
  merge_cmd->add_option("-o,--output", merge.output, "Output file or directory")->required();
  merge_cmd->add_option("--thr-s", merge.cfg.thr_s, "Per-frame IoU threshold for st-IoU")
      ->capture_default_str();
  merge_cmd->add_option("--thr-t", merge.cfg.thr_t, "st-IoU threshold for merging")
      ->capture_default_str();
  merge_cmd->add_option("--thr-nms", merge.cfg.thr_nms, "IoU threshold for length NMS")
      ->capture_default_str();
  merge_cmd->add_option("--thr-len", merge.cfg.thr_len, "Minimum trajectory length in frames")
      ->capture_default_str();
  merge_cmd->add_option("--mode", merge.mode, "Overlap handling: drop or average")
      ->check(CLI::IsMember({"drop", "average"}))
      ->capture_default_str();
  merge_cmd->add_option("--interpolate", merge.interpolate,
                        "Fill gaps of at most this many frames afterwards");

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score a result against ground truth");
  eval_cmd->add_option("--gt", eval.gt, "Ground-truth file or directory")->required();
  eval_cmd->add_option("--pred", eval.pred, "Result file or directory")->required();
  eval_cmd->add_option("--iou", eval.iou, "IoU needed for a match")->capture_default_str();

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic scenario");
  synth_cmd->add_option("-o,--output", synth.output, "Output directory")->required();
  synth_cmd->add_option("--config", synth.config, "key=value scenario file");
  synth_cmd->add_option("--seed", synth.seed, "Random seed");
  synth_cmd->add_option("--objects", synth.objects, "Number of objects");
  synth_cmd->add_option("--frames", synth.frames, "Number of frames");
  synth_cmd->add_option("--trackers", synth.trackers, "Number of simulated trackers");
  synth_cmd->add_option("--width", synth.width, "Arena width in pixels");
  synth_cmd->add_option("--height", synth.height, "Arena height in pixels");
  synth_cmd->add_option("--idswitch-rate", synth.idswitch_rate, "Per-frame id switch probability");
  synth_cmd->add_option("--drop-rate", synth.drop_rate, "Per-frame drop probability");
  synth_cmd->add_option("--jitter", synth.jitter, "Box noise std-dev in pixels");
  synth_cmd->add_option("--segment-drop", synth.segment_drop, "Mean dropped-segment length");
  synth_cmd->add_flag("--complementary", synth.complementary,
                      "Two trackers with mirrored failures");

  // CLI11 consumes a vector argument list back to front.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (merge_cmd->parsed()) return do_merge(merge, out);
    if (eval_cmd->parsed()) return do_eval(eval, out, err);
    if (synth_cmd->parsed()) return do_synth(synth, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kUsageError;
}

}  // namespace trackfuse::cli
