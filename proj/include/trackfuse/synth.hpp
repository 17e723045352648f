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

#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "trackfuse/track_model.hpp"

namespace trackfuse {

/// How one simulated tracker corrupts the ground truth.
struct Degradation {
  double idswitch_rate = 0.0;  // per-frame probability of switching to a fresh id
  double drop_rate = 0.0;      // per-frame probability that a drop starts
  double jitter = 0.0;         // std-dev in pixels added to x, y, w, h
  double segment_drop = 0.0;   // mean length of a drop; <= 1 drops single frames

  friend bool operator==(const Degradation&, const Degradation&) = default;
};

struct ScenarioSpec {
  int num_objects = 4;
  int num_frames = 200;
  double arena_width = 1920.0;
  double arena_height = 1080.0;
  std::uint64_t seed = 0;
  std::vector<Degradation> trackers;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

struct Scenario {
  TrackSet gt;
  std::vector<TrackSet> trackers;
};

/// Ground truth plus one degraded copy per entry of `spec.trackers`.
///
/// Each object lives in its own horizontal lane of the arena (lanes split the
/// height evenly) so ground-truth boxes never overlap. Inside its lane an
/// object moves along straight segments between random waypoints at a random
/// speed of 1 to 6 px/frame. All objects are visible for the whole sequence.
Scenario generate_scenario(const ScenarioSpec& spec);

/// Two trackers with complementary failures. Tracker A follows even-indexed
/// objects perfectly and, for odd-indexed objects, switches id once in the
/// middle third of the sequence and drops one contiguous segment inside each
/// of the two resulting fragments. Tracker B is the mirror image. The mean
/// segment length is `spec.trackers[0].segment_drop` when given, else 10.
/// Requires at least two objects.
Scenario complementary_pair(const ScenarioSpec& spec);

/// Reads `key = value` lines ('#' starts a comment) on top of `base`.
/// Keys: seed, objects, frames, width, height, trackers (count) and
/// tracker.<k>.{idswitch_rate,drop_rate,jitter,segment_drop}.
ScenarioSpec parse_scenario_config(std::istream& in, ScenarioSpec base = {});

}  // namespace trackfuse
