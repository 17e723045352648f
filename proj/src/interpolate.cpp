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

#include "trackfuse/interpolate.hpp"

#include <algorithm>
#include <iterator>

namespace trackfuse {

namespace {

// Clamped so rounding never leaves the [a, b] envelope.
double lerp(double a, double b, double t) {
  return std::clamp(a + (b - a) * t, std::min(a, b), std::max(a, b));
}

}  // namespace

Trajectory linear_interpolate(const Trajectory& track, int max_gap) {
  if (track.size() < 2 || max_gap < 1) return track;
  Trajectory out = track;
  const auto& dets = track.detections();
  for (auto it = dets.begin(), next = std::next(it); next != dets.end(); ++it, ++next) {
    const int f0 = it->first;
    const int f1 = next->first;
    const int missing = f1 - f0 - 1;
    if (missing < 1 || missing > max_gap) continue;
    const Detection& a = it->second;
    const Detection& b = next->second;
    for (int f = f0 + 1; f < f1; ++f) {
      const double t = static_cast<double>(f - f0) / static_cast<double>(f1 - f0);
      Detection d = a;
      d.frame = f;
      d.box = {lerp(a.box.x, b.box.x, t), lerp(a.box.y, b.box.y, t),
               lerp(a.box.w, b.box.w, t), lerp(a.box.h, b.box.h, t)};
      d.confidence = lerp(a.confidence, b.confidence, t);
      out.put(d);
    }
  }
  return out;
}

TrackSet linear_interpolate(const TrackSet& ts, int max_gap) {
  TrackSet out;
  out.sequence = ts.sequence;
  out.trajectories.reserve(ts.trajectories.size());
  for (const auto& t : ts.trajectories) out.trajectories.push_back(linear_interpolate(t, max_gap));
  return out;
}

}  // namespace trackfuse
