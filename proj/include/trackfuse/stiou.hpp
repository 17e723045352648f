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

#include <vector>

#include "trackfuse/track_model.hpp"

namespace trackfuse {

struct IoUSample {
  int frame;
  double iou;

  friend bool operator==(const IoUSample&, const IoUSample&) = default;
};

/// Frame-level IoU at every frame where both trajectories have a box,
/// in increasing frame order.
using IoUProfile = std::vector<IoUSample>;

/// Intersection over union of two boxes; 0 when they only touch or are apart.
double box_iou(const BoundingBox& a, const BoundingBox& b);

IoUProfile spatial_iou_profile(const Trajectory& ti, const Trajectory& tj);

/// Spatio-temporal IoU: the number of shared frames whose box IoU is strictly
/// above `thr_s`, divided by the length of the shorter trajectory.
double st_iou(const Trajectory& ti, const Trajectory& tj, double thr_s);

}  // namespace trackfuse
