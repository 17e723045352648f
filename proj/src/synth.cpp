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

#include "trackfuse/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ranges>
#include <stdexcept>
#include <string_view>

#include <fmt/format.h>

#include "trackfuse/rng.hpp"

namespace trackfuse {

void ScenarioSpec::validate() const {
  if (num_objects < 1) throw std::invalid_argument("objects must be positive");
  if (num_frames < 1) throw std::invalid_argument("frames must be positive");
  if (!(arena_width > 0.0) || !(arena_height > 0.0) || !std::isfinite(arena_width) ||
      !std::isfinite(arena_height)) {
    throw std::invalid_argument("arena size must be positive");
  }
  if (arena_height / num_objects < 4.0) {
    throw std::invalid_argument("arena too small for the number of objects");
  }
  for (std::size_t k = 0; k < trackers.size(); ++k) {
    const auto& d = trackers[k];
    auto rate = [k](double v, const char* name) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument(fmt::format("tracker {} {} must be in [0,1]", k, name));
      }
    };
    rate(d.idswitch_rate, "idswitch_rate");
    rate(d.drop_rate, "drop_rate");
    if (!(d.jitter >= 0.0) || !std::isfinite(d.jitter)) {
      throw std::invalid_argument(fmt::format("tracker {} jitter must be >= 0", k));
    }
    if (!(d.segment_drop >= 0.0) || !std::isfinite(d.segment_drop)) {
      throw std::invalid_argument(fmt::format("tracker {} segment_drop must be >= 0", k));
    }
  }
}

namespace {

// Stream tags; the high word selects the purpose, the low word the object.
constexpr std::uint64_t kGroundTruthTag = 0;
constexpr std::uint64_t kTrackerTagBase = 1;
constexpr std::uint64_t kComplementaryTag = 0x100;

std::uint64_t tag(std::uint64_t purpose, std::uint64_t object) {
  return (purpose << 32) | object;
}

constexpr double kMinSpeed = 1.0;
constexpr double kMaxSpeed = 6.0;

Trajectory make_object_path(const ScenarioSpec& spec, int object) {
  SplitMix64 rng(SplitMix64::derive(spec.seed, tag(kGroundTruthTag, object)));
  const double lane_h = spec.arena_height / spec.num_objects;
  const double lane_top = lane_h * object;

  const double h = std::floor(lane_h * rng.uniform(0.5, 0.8));
  const double w =
      std::max(1.0, std::min(std::floor(h * rng.uniform(0.35, 0.5)), spec.arena_width / 2.0));
  const double max_x = spec.arena_width - w;
  const double min_y = lane_top;
  const double max_y = lane_top + lane_h - h;

  auto waypoint = [&] {
    return std::pair{rng.uniform(0.0, max_x), rng.uniform(min_y, max_y)};
  };

  std::vector<Detection> dets;
  dets.reserve(static_cast<std::size_t>(spec.num_frames));
  auto [x0, y0] = waypoint();
  int frame = 1;
  dets.push_back({frame, {x0, y0, w, h}, 1.0, 0});
  while (frame < spec.num_frames) {
    const auto [x1, y1] = waypoint();
    const double speed = rng.uniform(kMinSpeed, kMaxSpeed);
    const double dist = std::hypot(x1 - x0, y1 - y0);
    const int steps = std::max(1, static_cast<int>(std::ceil(dist / speed)));
    for (int s = 1; s <= steps && frame < spec.num_frames; ++s) {
      const double t = static_cast<double>(s) / steps;
      ++frame;
      dets.push_back({frame, {x0 + (x1 - x0) * t, y0 + (y1 - y0) * t, w, h}, 1.0, 0});
    }
    x0 = x1;
    y0 = y1;
  }
  return Trajectory(object + 1, dets);
}

TrackSet make_ground_truth(const ScenarioSpec& spec) {
  TrackSet gt;
  gt.sequence = fmt::format("synth-{}", spec.seed);
  for (int o = 0; o < spec.num_objects; ++o) gt.trajectories.push_back(make_object_path(spec, o));
  return gt;
}

std::int64_t drop_length(SplitMix64& rng, double mean) {
  if (mean <= 1.0) return 1;
  const auto cap = static_cast<std::int64_t>(std::ceil(2.0 * mean));
  return std::min(rng.geometric(1.0 / mean), cap);
}

// Collects per-id detections, then emits trajectories in id order.
class TrackBuilder {
 public:
  int fresh_id() { return next_id_++; }
  void add(int id, const Detection& d) { frames_[id].push_back(d); }

  TrackSet build(const std::string& sequence) const {
    TrackSet ts;
    ts.sequence = sequence;
    for (const auto& [id, dets] : frames_) {
      if (!dets.empty()) ts.trajectories.emplace_back(id, dets);
    }
    return ts;
  }

 private:
  int next_id_ = 1;
  std::map<int, std::vector<Detection>> frames_;
};

TrackSet degrade(const TrackSet& gt, const Degradation& deg, std::size_t k,
                 std::uint64_t seed) {
  TrackBuilder out;
  for (std::size_t o = 0; o < gt.trajectories.size(); ++o) {
    SplitMix64 rng(SplitMix64::derive(seed, tag(kTrackerTagBase + k, o)));
    int id = out.fresh_id();
    std::int64_t skip = 0;
    bool first = true;
    for (const auto& [frame, truth] : gt.trajectories[o].detections()) {
      if (!first && deg.idswitch_rate > 0.0 && rng.bernoulli(deg.idswitch_rate)) {
        id = out.fresh_id();
      }
      first = false;
      if (skip > 0) {
        --skip;
        continue;
      }
      if (deg.drop_rate > 0.0 && rng.bernoulli(deg.drop_rate)) {
        skip = drop_length(rng, deg.segment_drop) - 1;
        continue;
      }
      Detection d = truth;
      if (deg.jitter > 0.0) {
        d.box.x += rng.normal(0.0, deg.jitter);
        d.box.y += rng.normal(0.0, deg.jitter);
        d.box.w = std::max(1.0, d.box.w + rng.normal(0.0, deg.jitter));
        d.box.h = std::max(1.0, d.box.h + rng.normal(0.0, deg.jitter));
      }
      d.source = static_cast<int>(k);
      out.add(id, d);
    }
  }
  return out.build(gt.sequence);
}

// Frames of [first, last] removed by one interior drop of about `mean` frames.
std::pair<int, int> interior_drop(SplitMix64& rng, int first, int last, double mean) {
  const int len = static_cast<int>(drop_length(rng, mean));
  const int lo = first + 1;
  const int hi = last - len;  // keeps `last` present
  if (hi < lo) return {0, -1};
  const int begin = static_cast<int>(rng.uniform_int(lo, hi));
  return {begin, begin + len - 1};
}

}  // namespace

Scenario generate_scenario(const ScenarioSpec& spec) {
  spec.validate();
  Scenario sc;
  sc.gt = make_ground_truth(spec);
  for (std::size_t k = 0; k < spec.trackers.size(); ++k) {
    sc.trackers.push_back(degrade(sc.gt, spec.trackers[k], k, spec.seed));
  }
  return sc;
}

Scenario complementary_pair(const ScenarioSpec& spec) {
  spec.validate();
  if (spec.num_objects < 2) throw std::invalid_argument("complementary pair needs two objects");
  const double mean_drop =
      spec.trackers.empty() || spec.trackers[0].segment_drop <= 0.0 ? 10.0
                                                                   : spec.trackers[0].segment_drop;

  Scenario sc;
  sc.gt = make_ground_truth(spec);
  for (int k = 0; k < 2; ++k) {
    TrackBuilder out;
    for (std::size_t o = 0; o < sc.gt.trajectories.size(); ++o) {
      const auto& truth = sc.gt.trajectories[o];
      const bool degraded = static_cast<int>(o % 2) != k;
      int id = out.fresh_id();
      if (!degraded) {
        for (auto d : truth.detections() | std::views::values) {
          d.source = k;
          out.add(id, d);
        }
        continue;
      }
      SplitMix64 rng(SplitMix64::derive(
          spec.seed, tag(kComplementaryTag + static_cast<std::uint64_t>(k), o)));
      const int first = truth.start();
      const int last = truth.stop();
      const int span = last - first + 1;
      const int switch_at =
          static_cast<int>(rng.uniform_int(first + span / 3, first + (2 * span) / 3));
      const auto drop_a = interior_drop(rng, first, switch_at - 1, mean_drop);
      const auto drop_b = interior_drop(rng, switch_at, last, mean_drop);
      const int second_id = out.fresh_id();
      for (auto d : truth.detections() | std::views::values) {
        const bool dropped = (d.frame >= drop_a.first && d.frame <= drop_a.second) ||
                             (d.frame >= drop_b.first && d.frame <= drop_b.second);
        if (dropped) continue;
        d.source = k;
        out.add(d.frame < switch_at ? id : second_id, d);
      }
    }
    sc.trackers.push_back(out.build(sc.gt.sequence));
  }
  return sc;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(std::string_view v, std::size_t line) {
  try {
    std::size_t used = 0;
    const std::string s(v);
    const double x = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument(fmt::format("line {}: bad number '{}'", line, v));
  }
}

int to_int(std::string_view v, std::size_t line) {
  const double x = to_double(v, line);
  if (x != std::floor(x) || std::abs(x) > 1e9) {
    throw std::invalid_argument(fmt::format("line {}: expected an integer, got '{}'", line, v));
  }
  return static_cast<int>(x);
}

}  // namespace

ScenarioSpec parse_scenario_config(std::istream& in, ScenarioSpec spec) {
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text(raw);
    if (auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument(fmt::format("line {}: expected key=value", line));
    }
    const auto key = trim(text.substr(0, eq));
    const auto value = trim(text.substr(eq + 1));

    if (key == "seed") {
      try {
        spec.seed = std::stoull(std::string(value));
      } catch (const std::exception&) {
        throw std::invalid_argument(fmt::format("line {}: bad seed '{}'", line, value));
      }
    } else if (key == "objects") {
      spec.num_objects = to_int(value, line);
    } else if (key == "frames") {
      spec.num_frames = to_int(value, line);
    } else if (key == "width") {
      spec.arena_width = to_double(value, line);
    } else if (key == "height") {
      spec.arena_height = to_double(value, line);
    } else if (key == "trackers") {
      const int n = to_int(value, line);
      if (n < 0) throw std::invalid_argument(fmt::format("line {}: negative tracker count", line));
      spec.trackers.resize(static_cast<std::size_t>(n));
    } else if (key.starts_with("tracker.")) {
      const auto rest = key.substr(8);
      const auto dot = rest.find('.');
      if (dot == std::string_view::npos) {
        throw std::invalid_argument(fmt::format("line {}: expected tracker.<k>.<field>", line));
      }
      const int k = to_int(rest.substr(0, dot), line);
      if (k < 0) throw std::invalid_argument(fmt::format("line {}: negative tracker index", line));
      if (static_cast<std::size_t>(k) >= spec.trackers.size()) {
        spec.trackers.resize(static_cast<std::size_t>(k) + 1);
      }
      auto& d = spec.trackers[static_cast<std::size_t>(k)];
      const auto field = rest.substr(dot + 1);
      const double v = to_double(value, line);
      if (field == "idswitch_rate") {
        d.idswitch_rate = v;
      } else if (field == "drop_rate") {
        d.drop_rate = v;
      } else if (field == "jitter") {
        d.jitter = v;
      } else if (field == "segment_drop") {
        d.segment_drop = v;
      } else {
        throw std::invalid_argument(fmt::format("line {}: unknown tracker field '{}'", line, field));
      }
    } else {
      throw std::invalid_argument(fmt::format("line {}: unknown key '{}'", line, key));
    }
  }
  return spec;
}

}  // namespace trackfuse
