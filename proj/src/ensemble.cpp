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

#include "trackfuse/ensemble.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include <fmt/format.h>

#include "trackfuse/stiou.hpp"

namespace trackfuse {

MergeMode parse_merge_mode(std::string_view name) {
  if (name == "drop") return MergeMode::kDrop;
  if (name == "average") return MergeMode::kAverage;
  throw std::invalid_argument(fmt::format("unknown merge mode '{}'", name));
}

std::string_view to_string(MergeMode mode) {
  return mode == MergeMode::kDrop ? "drop" : "average";
}

void EnsembleConfig::validate() const {
  auto unit = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument(fmt::format("{} must be in [0,1], got {}", name, v));
    }
  };
  unit(thr_s, "thr_s");
  unit(thr_t, "thr_t");
  unit(thr_nms, "thr_nms");
  if (thr_len < 0) throw std::invalid_argument("thr_len must be non-negative");
}

std::vector<Trajectory> mix(const std::vector<TrackSet>& tracksets) {
  std::vector<Trajectory> pool;
  int next_id = 1;
  for (std::size_t k = 0; k < tracksets.size(); ++k) {
    std::vector<const Trajectory*> ordered;
    for (const auto& t : tracksets[k].trajectories) ordered.push_back(&t);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const Trajectory* a, const Trajectory* b) { return a->id() < b->id(); });
    for (const auto* t : ordered) {
      if (t->empty()) continue;
      Trajectory::FrameMap frames = t->detections();
      for (auto& [frame, d] : frames) d.source = static_cast<int>(k);
      pool.emplace_back(next_id++, std::move(frames));
    }
  }
  return pool;
}

Trajectory merge_group(const std::vector<Trajectory>& group, MergeMode mode) {
  if (group.empty()) throw std::invalid_argument("merge_group needs a member");
  if (group.size() == 1) return group.front();

  // Longest first; equal lengths keep the caller's order.
  std::vector<const Trajectory*> members;
  for (const auto& m : group) members.push_back(&m);
  std::stable_sort(members.begin(), members.end(),
                   [](const Trajectory* a, const Trajectory* b) { return a->length() > b->length(); });

  std::map<int, std::vector<const Detection*>> by_frame;
  for (const auto* member : members) {
    for (const auto& [frame, d] : member->detections()) by_frame[frame].push_back(&d);
  }

  Trajectory::FrameMap out;
  for (const auto& [frame, present] : by_frame) {
    if (mode == MergeMode::kDrop || present.size() == 1) {
      out.emplace(frame, *present.front());
      continue;
    }
    Detection avg = *present.front();
    avg.box = {0.0, 0.0, 0.0, 0.0};
    avg.confidence = 0.0;
    for (const auto* d : present) {
      avg.box.x += d->box.x;
      avg.box.y += d->box.y;
      avg.box.w += d->box.w;
      avg.box.h += d->box.h;
      avg.confidence += d->confidence;
    }
    const double n = static_cast<double>(present.size());
    avg.box.x /= n;
    avg.box.y /= n;
    avg.box.w /= n;
    avg.box.h /= n;
    avg.confidence /= n;
    out.emplace(frame, avg);
  }
  return Trajectory(group.front().id(), std::move(out));
}

namespace {

int source_of(const Trajectory& t) {
  return t.empty() ? 0 : t.detections().begin()->second.source;
}

// Indices of `pool` longest first; ties by source tracker, then id.
std::vector<std::size_t> length_order(const std::vector<Trajectory>& pool) {
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ta = pool[a];
    const auto& tb = pool[b];
    return std::make_tuple(-ta.length(), source_of(ta), ta.id()) <
           std::make_tuple(-tb.length(), source_of(tb), tb.id());
  });
  return order;
}

std::vector<std::vector<std::size_t>> plan_merge_indices(
    const std::vector<Trajectory>& pool, double thr_s, double thr_t) {
  const auto order = length_order(pool);
  std::vector<bool> consumed(pool.size(), false);
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t p = 0; p < order.size(); ++p) {
    const std::size_t i = order[p];
    if (consumed[i]) continue;
    consumed[i] = true;
    std::vector<std::size_t> group{i};
    for (std::size_t q = p + 1; q < order.size(); ++q) {
      const std::size_t j = order[q];
      if (consumed[j]) continue;
      if (st_iou(pool[i], pool[j], thr_s) > thr_t) {
        group.push_back(j);
        consumed[j] = true;
      }
    }
    groups.push_back(std::move(group));
  }
  return groups;
}

}  // namespace

std::vector<MergeGroupIds> plan_merges(const std::vector<Trajectory>& pool,
                                       double thr_s, double thr_t) {
  std::vector<MergeGroupIds> out;
  for (const auto& group : plan_merge_indices(pool, thr_s, thr_t)) {
    MergeGroupIds ids;
    for (auto idx : group) ids.push_back(pool[idx].id());
    out.push_back(std::move(ids));
  }
  return out;
}

std::vector<Trajectory> merge_trajectories(const std::vector<Trajectory>& pool,
                                           double thr_s, double thr_t,
                                           MergeMode mode) {
  std::vector<Trajectory> out;
  std::vector<Trajectory> members;
  for (const auto& group : plan_merge_indices(pool, thr_s, thr_t)) {
    members.clear();
    for (auto idx : group) members.push_back(pool[idx]);
    out.push_back(merge_group(members, mode));
  }
  return out;
}

std::vector<Trajectory> length_nms(const std::vector<Trajectory>& tracks,
                                   double thr_nms) {
  struct Candidate {
    std::size_t track;
    const Detection* det;
  };
  // Score each track once, before any suppression.
  std::vector<int> score(tracks.size());
  for (std::size_t t = 0; t < tracks.size(); ++t) score[t] = tracks[t].length();

  std::map<int, std::vector<Candidate>> by_frame;
  for (std::size_t t = 0; t < tracks.size(); ++t) {
    for (const auto& [frame, d] : tracks[t].detections()) by_frame[frame].push_back({t, &d});
  }

  std::vector<std::vector<int>> removed(tracks.size());
  std::vector<const BoundingBox*> kept;
  for (auto& [frame, cands] : by_frame) {
    std::sort(cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) {
      return std::make_pair(-score[a.track], tracks[a.track].id()) <
             std::make_pair(-score[b.track], tracks[b.track].id());
    });
    kept.clear();
    for (const auto& c : cands) {
      const bool suppressed = std::any_of(kept.begin(), kept.end(), [&](const BoundingBox* k) {
        return box_iou(*k, c.det->box) > thr_nms;
      });
      if (suppressed) {
        removed[c.track].push_back(frame);
      } else {
        kept.push_back(&c.det->box);
      }
    }
  }

  std::vector<Trajectory> out;
  out.reserve(tracks.size());
  for (std::size_t t = 0; t < tracks.size(); ++t) {
    if (removed[t].size() == tracks[t].size()) continue;
    Trajectory survivor = tracks[t];
    for (int frame : removed[t]) survivor.erase(frame);
    out.push_back(std::move(survivor));
  }
  return out;
}

std::vector<Trajectory> length_filter(const std::vector<Trajectory>& tracks,
                                      int thr_len) {
  std::vector<Trajectory> out;
  std::copy_if(tracks.begin(), tracks.end(), std::back_inserter(out),
               [thr_len](const Trajectory& t) { return t.length() >= thr_len; });
  return out;
}

TrackSet ensemble_pipeline(const std::vector<TrackSet>& tracksets,
                           const EnsembleConfig& cfg) {
  if (tracksets.empty()) throw std::invalid_argument("ensemble needs at least one input");
  cfg.validate();
  auto pool = mix(tracksets);
  auto merged = merge_trajectories(pool, cfg.thr_s, cfg.thr_t, cfg.merge_mode);
  auto survivors = length_nms(merged, cfg.thr_nms);
  auto kept = length_filter(survivors, cfg.thr_len);

  TrackSet out;
  out.sequence = tracksets.front().sequence;
  int next_id = 1;
  for (auto& t : kept) {
    t.set_id(next_id++);
    out.trajectories.push_back(std::move(t));
  }
  return out;
}

}  // namespace trackfuse
