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

#include "trackfuse/stiou.hpp"

#include <algorithm>

namespace trackfuse {

double box_iou(const BoundingBox& a, const BoundingBox& b) {
  if (a == b) return a.area() > 0.0 ? 1.0 : 0.0;
  const double iw = std::min(a.right(), b.right()) - std::max(a.x, b.x);
  const double ih = std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

IoUProfile spatial_iou_profile(const Trajectory& ti, const Trajectory& tj) {
  IoUProfile profile;
  const auto& a = ti.detections();
  const auto& b = tj.detections();
  auto ia = a.begin();
  auto ib = b.begin();
  // Merge-walk over the two frame-sorted maps.
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      profile.push_back({ia->first, box_iou(ia->second.box, ib->second.box)});
      ++ia;
      ++ib;
    }
  }
  return profile;
}

double st_iou(const Trajectory& ti, const Trajectory& tj, double thr_s) {
  if (ti.empty() || tj.empty()) return 0.0;
  if (ti.stop() < tj.start() || tj.stop() < ti.start()) return 0.0;
  const auto profile = spatial_iou_profile(ti, tj);
  if (profile.empty()) return 0.0;
  const auto inter = std::count_if(profile.begin(), profile.end(),
                                   [thr_s](const IoUSample& s) { return s.iou > thr_s; });
  const int shorter = std::min(ti.length(), tj.length());
  return static_cast<double>(inter) / static_cast<double>(shorter);
}

}  // namespace trackfuse
