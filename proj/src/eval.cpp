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

#include "trackfuse/eval.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include <fmt/format.h>

#include "trackfuse/assignment.hpp"
#include "trackfuse/stiou.hpp"

namespace trackfuse {

void EvalReport::finalize() {
  mota.reset();
  idf1.reset();
  if (num_gt > 0) {
    mota = 1.0 - static_cast<double>(fn + fp + idsw) / static_cast<double>(num_gt);
  }
  const std::int64_t denom = 2 * idtp + idfp + idfn;
  if (denom > 0) idf1 = 2.0 * static_cast<double>(idtp) / static_cast<double>(denom);
}

EvalReport& EvalReport::accumulate(const EvalReport& o) {
  num_gt += o.num_gt;
  num_pred += o.num_pred;
  fp += o.fp;
  fn += o.fn;
  idsw += o.idsw;
  idtp += o.idtp;
  idfp += o.idfp;
  idfn += o.idfn;
  finalize();
  return *this;
}

namespace {

void check_threshold(double iou_match) {
  if (!(iou_match > 0.0 && iou_match <= 1.0)) {
    throw std::invalid_argument("iou_match must be in (0, 1]");
  }
}

struct FrameBox {
  int id;
  const BoundingBox* box;
};

using FrameIndex = std::map<int, std::vector<FrameBox>>;

FrameIndex index_by_frame(const TrackSet& ts) {
  FrameIndex idx;
  for (const auto& t : ts.trajectories) {
    for (const auto& [frame, d] : t.detections()) idx[frame].push_back({t.id(), &d.box});
  }
  return idx;
}

// Cost assigned to pairs that may not be matched. Larger than any feasible
// total so the solver first maximises the number of feasible pairs.
constexpr double kForbidden = 1e6;

}  // namespace

EvalReport clear_mot(const TrackSet& gt, const TrackSet& pred, double iou_match) {
  check_threshold(iou_match);
  const auto gt_frames = index_by_frame(gt);
  const auto pred_frames = index_by_frame(pred);
  static const std::vector<FrameBox> kNoBoxes;

  std::vector<int> frames;
  for (const auto& [f, _] : gt_frames) frames.push_back(f);
  for (const auto& [f, _] : pred_frames) frames.push_back(f);
  std::sort(frames.begin(), frames.end());
  frames.erase(std::unique(frames.begin(), frames.end()), frames.end());

  EvalReport r;
  std::unordered_map<int, int> last_match;  // gt id -> pred id
  for (int frame : frames) {
    auto git = gt_frames.find(frame);
    auto pit = pred_frames.find(frame);
    const auto& g = git == gt_frames.end() ? kNoBoxes : git->second;
    const auto& p = pit == pred_frames.end() ? kNoBoxes : pit->second;
    r.num_gt += static_cast<std::int64_t>(g.size());
    r.num_pred += static_cast<std::int64_t>(p.size());

    std::vector<int> pred_of_gt(g.size(), -1);  // index into p
    std::vector<bool> pred_used(p.size(), false);

    // Keep correspondences that are still valid.
    for (std::size_t gi = 0; gi < g.size(); ++gi) {
      auto lm = last_match.find(g[gi].id);
      if (lm == last_match.end()) continue;
      for (std::size_t pi = 0; pi < p.size(); ++pi) {
        if (pred_used[pi] || p[pi].id != lm->second) continue;
        if (box_iou(*g[gi].box, *p[pi].box) >= iou_match) {
          pred_of_gt[gi] = static_cast<int>(pi);
          pred_used[pi] = true;
        }
        break;
      }
    }

    std::vector<std::size_t> free_g, free_p;
    for (std::size_t gi = 0; gi < g.size(); ++gi) {
      if (pred_of_gt[gi] < 0) free_g.push_back(gi);
    }
    for (std::size_t pi = 0; pi < p.size(); ++pi) {
      if (!pred_used[pi]) free_p.push_back(pi);
    }
    if (!free_g.empty() && !free_p.empty()) {
      CostMatrix cost(free_g.size(), free_p.size());
      for (std::size_t a = 0; a < free_g.size(); ++a) {
        for (std::size_t b = 0; b < free_p.size(); ++b) {
          const double iou = box_iou(*g[free_g[a]].box, *p[free_p[b]].box);
          cost(a, b) = iou >= iou_match ? 1.0 - iou : kForbidden;
        }
      }
      for (auto [a, b] : solve_assignment(cost)) {
        if (cost(a, b) >= kForbidden) continue;
        pred_of_gt[free_g[a]] = static_cast<int>(free_p[b]);
        pred_used[free_p[b]] = true;
      }
    }

    for (std::size_t gi = 0; gi < g.size(); ++gi) {
      if (pred_of_gt[gi] < 0) {
        ++r.fn;
        continue;
      }
      const int pid = p[static_cast<std::size_t>(pred_of_gt[gi])].id;
      auto lm = last_match.find(g[gi].id);
      if (lm != last_match.end() && lm->second != pid) ++r.idsw;
      last_match[g[gi].id] = pid;
    }
    r.fp += static_cast<std::int64_t>(std::count(pred_used.begin(), pred_used.end(), false));
  }
  r.finalize();
  return r;
}

EvalReport idf1(const TrackSet& gt, const TrackSet& pred, double iou_match) {
  check_threshold(iou_match);
  const std::size_t ng = gt.trajectories.size();
  const std::size_t np = pred.trajectories.size();

  std::vector<double> gt_len(ng), pred_len(np);
  std::int64_t total_gt = 0, total_pred = 0;
  for (std::size_t i = 0; i < ng; ++i) {
    gt_len[i] = static_cast<double>(gt.trajectories[i].size());
    total_gt += static_cast<std::int64_t>(gt.trajectories[i].size());
  }
  for (std::size_t j = 0; j < np; ++j) {
    pred_len[j] = static_cast<double>(pred.trajectories[j].size());
    total_pred += static_cast<std::int64_t>(pred.trajectories[j].size());
  }

  // Co-located frame counts for every identity pair.
  std::vector<std::int64_t> overlap(ng * np, 0);
  {
    const auto pred_frames = index_by_frame(pred);
    std::unordered_map<int, std::size_t> pred_index;
    for (std::size_t j = 0; j < np; ++j) pred_index[pred.trajectories[j].id()] = j;
    for (std::size_t i = 0; i < ng; ++i) {
      for (const auto& [frame, d] : gt.trajectories[i].detections()) {
        auto it = pred_frames.find(frame);
        if (it == pred_frames.end()) continue;
        for (const auto& pb : it->second) {
          if (box_iou(d.box, *pb.box) >= iou_match) ++overlap[i * np + pred_index[pb.id]];
        }
      }
    }
  }

  EvalReport r;
  r.num_gt = total_gt;
  r.num_pred = total_pred;
  if (ng > 0 && np > 0) {
    // Square (ng + np) problem: real pairs top-left, "unmatched gt" diagonal
    // top-right, "unmatched pred" diagonal bottom-left, zeros bottom-right.
    const std::size_t n = ng + np;
    const double big = static_cast<double>(total_gt + total_pred) + 1.0;
    CostMatrix cost(n, n, 0.0);
    for (std::size_t i = 0; i < ng; ++i) {
      for (std::size_t j = 0; j < np; ++j) {
        cost(i, j) = gt_len[i] + pred_len[j] - 2.0 * static_cast<double>(overlap[i * np + j]);
      }
      for (std::size_t k = 0; k < ng; ++k) cost(i, np + k) = (k == i) ? gt_len[i] : big;
    }
    for (std::size_t j = 0; j < np; ++j) {
      for (std::size_t k = 0; k < np; ++k) cost(ng + j, k) = (k == j) ? pred_len[j] : big;
    }
    for (auto [row, col] : solve_assignment(cost)) {
      if (row < ng && col < np) r.idtp += overlap[row * np + col];
    }
  }
  r.idfn = total_gt - r.idtp;
  r.idfp = total_pred - r.idtp;
  r.finalize();
  r.mota.reset();
  return r;
}

EvalReport evaluate(const TrackSet& gt, const TrackSet& pred, double iou_match) {
  EvalReport r = clear_mot(gt, pred, iou_match);
  const EvalReport id = idf1(gt, pred, iou_match);
  r.idtp = id.idtp;
  r.idfp = id.idfp;
  r.idfn = id.idfn;
  r.finalize();
  return r;
}

namespace {

std::string ratio(const std::optional<double>& v) {
  return v ? fmt::format("{:.4f}", *v) : std::string("undefined");
}

}  // namespace

std::string format_table(const EvalReport& r) {
  std::string out;
  out += fmt::format("{:>8} {:>8} {:>8} {:>8} {:>8}\n", "GT", "FP", "FN", "IDSW", "MOTA");
  out += fmt::format("{:>8} {:>8} {:>8} {:>8} {:>8}\n", r.num_gt, r.fp, r.fn, r.idsw,
                     ratio(r.mota));
  out += fmt::format("{:>8} {:>8} {:>8} {:>8}\n", "IDTP", "IDFP", "IDFN", "IDF1");
  out += fmt::format("{:>8} {:>8} {:>8} {:>8}\n", r.idtp, r.idfp, r.idfn, ratio(r.idf1));
  return out;
}

std::string format_metric_lines(const EvalReport& r) {
  std::string out;
  out += fmt::format("#metric num_gt={}\n", r.num_gt);
  out += fmt::format("#metric FP={}\n", r.fp);
  out += fmt::format("#metric FN={}\n", r.fn);
  out += fmt::format("#metric IDSW={}\n", r.idsw);
  out += fmt::format("#metric MOTA={}\n", ratio(r.mota));
  out += fmt::format("#metric IDTP={}\n", r.idtp);
  out += fmt::format("#metric IDFP={}\n", r.idfp);
  out += fmt::format("#metric IDFN={}\n", r.idfn);
  out += fmt::format("#metric IDF1={}\n", ratio(r.idf1));
  return out;
}

}  // namespace trackfuse
