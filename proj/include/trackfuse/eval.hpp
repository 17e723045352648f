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
#include <optional>
#include <string>

#include "trackfuse/track_model.hpp"

namespace trackfuse {

inline constexpr double kDefaultMatchIoU = 0.5;

/// CLEAR-MOT and identity scores of a prediction against ground truth.
/// Ratios are absent when their denominator is zero.
struct EvalReport {
  std::int64_t num_gt = 0;
  std::int64_t num_pred = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t idsw = 0;
  std::optional<double> mota;

  std::int64_t idtp = 0;
  std::int64_t idfp = 0;
  std::int64_t idfn = 0;
  std::optional<double> idf1;

  /// Adds the raw counts of `other` and recomputes both ratios.
  EvalReport& accumulate(const EvalReport& other);
  void finalize();
};

/// Frame-by-frame CLEAR-MOT matching. A ground-truth object keeps its last
/// matched prediction while their IoU stays at or above `iou_match`; the rest
/// are paired by minimum total (1 - IoU). Fills num_gt, fp, fn, idsw and mota.
EvalReport clear_mot(const TrackSet& gt, const TrackSet& pred,
                     double iou_match = kDefaultMatchIoU);

/// Global one-to-one identity correspondence that maximises co-located
/// frames. Fills idtp, idfp, idfn and idf1.
EvalReport idf1(const TrackSet& gt, const TrackSet& pred,
                double iou_match = kDefaultMatchIoU);

/// Both of the above in one report.
EvalReport evaluate(const TrackSet& gt, const TrackSet& pred,
                    double iou_match = kDefaultMatchIoU);

/// Aligned human-readable table.
std::string format_table(const EvalReport& r);
/// `#metric key=value` lines.
std::string format_metric_lines(const EvalReport& r);

}  // namespace trackfuse
