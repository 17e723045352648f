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

#include <string_view>
#include <vector>

#include "trackfuse/track_model.hpp"

namespace trackfuse {

/// How boxes are combined at frames covered by more than one merged member.
enum class MergeMode {
  kDrop,     // keep the box of the longest member present at that frame
  kAverage,  // coordinate-wise mean of every box present
};

/// Parses "drop" / "average"; throws std::invalid_argument otherwise.
MergeMode parse_merge_mode(std::string_view name);
std::string_view to_string(MergeMode mode);

struct EnsembleConfig {
  double thr_s = 0.5;    // per-frame IoU needed for a frame to count as shared
  double thr_t = 0.5;    // st-IoU needed to merge two trajectories
  double thr_nms = 0.7;  // per-frame IoU above which the shorter track's box is dropped
  int thr_len = 20;      // minimum inclusive frame span kept after NMS
  MergeMode merge_mode = MergeMode::kDrop;

  /// Throws std::invalid_argument when a threshold is out of range.
  void validate() const;
};

/// Pools the trajectories of several trackers for one sequence. Ids are
/// reassigned 1..N in (tracker index, original id) order and every detection
/// is tagged with its tracker index.
std::vector<Trajectory> mix(const std::vector<TrackSet>& tracksets);

/// Combines a group into one trajectory. The first member is the anchor and
/// gives the id; members are expected longest-first, which decides the
/// winner in drop mode.
Trajectory merge_group(const std::vector<Trajectory>& group, MergeMode mode);

/// Ids of the pooled trajectories merged together; the anchor comes first and
/// the matches follow in processing order.
using MergeGroupIds = std::vector<int>;

/// Orders the pool longest-first (ties: source tracker, then id) and walks it
/// once. Each unconsumed anchor claims every later unconsumed trajectory whose
/// st-IoU with it exceeds `thr_t`. Returns one entry per output trajectory.
std::vector<MergeGroupIds> plan_merges(const std::vector<Trajectory>& pool,
                                       double thr_s, double thr_t);

std::vector<Trajectory> merge_trajectories(const std::vector<Trajectory>& pool,
                                           double thr_s, double thr_t,
                                           MergeMode mode);

/// Per-frame greedy suppression ranked by trajectory length (ties: lower id).
/// A box goes when its IoU with a box already kept at the same frame exceeds
/// `thr_nms`. Trajectories that lose every box are removed.
std::vector<Trajectory> length_nms(const std::vector<Trajectory>& tracks,
                                   double thr_nms);

/// Keeps trajectories whose length is at least `thr_len`, preserving order.
std::vector<Trajectory> length_filter(const std::vector<Trajectory>& tracks,
                                      int thr_len);

/// mix -> merge -> length NMS -> length filter, with output ids 1..M.
/// The sequence label is taken from the first input.
TrackSet ensemble_pipeline(const std::vector<TrackSet>& tracksets,
                           const EnsembleConfig& cfg);

}  // namespace trackfuse
