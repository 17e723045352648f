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

#include "trackfuse/track_model.hpp"

namespace trackfuse {

inline constexpr int kDefaultMaxGap = 20;

/// Fills every internal gap of at most `max_gap` missing frames by linear
/// interpolation between the boxes on either side. Longer gaps and the frames
/// outside [start, stop] are left alone.
Trajectory linear_interpolate(const Trajectory& track, int max_gap = kDefaultMaxGap);

TrackSet linear_interpolate(const TrackSet& ts, int max_gap = kDefaultMaxGap);

}  // namespace trackfuse
