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
#include <random>
#include <set>
#include <tuple>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "trackfuse/stiou.hpp"

namespace trackfuse {
namespace {

using oracle::make_track;

using BoxKey = std::tuple<int, double, double, double, double, double>;

// Trajectories as sorted lists of (frame, box, confidence); ids and source
// tags are ignored, so two sets compare equal up to id relabeling.
std::vector<std::vector<BoxKey>> canonical(const std::vector<Trajectory>& tracks) {
  std::vector<std::vector<BoxKey>> out;
  for (const auto& t : tracks) {
    std::vector<BoxKey> keys;
    for (const auto& [f, d] : t.detections()) {
      keys.emplace_back(f, d.box.x, d.box.y, d.box.w, d.box.h, d.confidence);
    }
    out.push_back(std::move(keys));
  }
  std::sort(out.begin(), out.end());
  return out;
}

TrackSet random_trackset(std::mt19937_64& gen, int n, int max_frames = 50) {
  TrackSet ts;
  for (int i = 0; i < n; ++i) ts.trajectories.push_back(oracle::random_trajectory(gen, i + 1, max_frames));
  return ts;
}

TEST(Mix, ConcatenatesAndRelabels) {
  std::mt19937_64 gen(1);
  const auto a = random_trackset(gen, 3);
  const auto b = random_trackset(gen, 4);
  const auto pool = mix({a, b});
  ASSERT_EQ(pool.size(), 7u);
  for (int i = 0; i < 7; ++i) {
    EXPECT_EQ(pool[i].id(), i + 1);
    const int source = i < 3 ? 0 : 1;
    for (const auto& [f, d] : pool[i].detections()) EXPECT_EQ(d.source, source);
  }
}

TEST(Mix, SingleTracksetOrderedByOriginalId) {
  const BoundingBox box{0, 0, 5, 5};
  TrackSet ts;
  ts.trajectories = {make_track(9, 1, 3, box), make_track(4, 5, 7, box)};
  const auto pool = mix({ts});
  ASSERT_EQ(pool.size(), 2u);
  EXPECT_EQ(pool[0].id(), 1);
  EXPECT_EQ(pool[0].start(), 5);  // original id 4 first
  EXPECT_EQ(pool[1].id(), 2);
}

TEST(Mix, IdCollisionKeepsBothTrajectories) {
  TrackSet a, b;
  a.trajectories = {make_track(1, 1, 3, {0, 0, 5, 5})};
  b.trajectories = {make_track(1, 1, 3, {50, 0, 5, 5})};
  const auto pool = mix({a, b});
  ASSERT_EQ(pool.size(), 2u);
  EXPECT_NE(pool[0].id(), pool[1].id());
}

TEST(MergeGroup, SingletonUnchanged) {
  const auto t = make_track(3, 2, 8, {1, 2, 3, 4});
  EXPECT_EQ(merge_group({t}, MergeMode::kDrop), t);
  EXPECT_EQ(merge_group({t}, MergeMode::kAverage), t);
}

TEST(MergeGroup, IdenticalMembers) {
  const auto t = make_track(3, 2, 8, {1, 2, 3, 4});
  auto copy = t;
  copy.set_id(4);
  EXPECT_EQ(merge_group({t, copy}, MergeMode::kDrop), t);
  EXPECT_EQ(merge_group({t, copy}, MergeMode::kAverage), t);
}

TEST(MergeGroup, AverageIsCoordinateWiseMean) {
  const auto a = make_track(1, 1, 3, {0, 0, 10, 10});
  auto b = make_track(2, 3, 4, {10, 0, 10, 10});
  const auto m = merge_group({a, b}, MergeMode::kAverage);
  EXPECT_EQ(m.id(), 1);
  EXPECT_EQ(m.start(), 1);
  EXPECT_EQ(m.stop(), 4);
  EXPECT_EQ(m.at(3)->box, (BoundingBox{5, 0, 10, 10}));
  EXPECT_EQ(m.at(1)->box, (BoundingBox{0, 0, 10, 10}));
  EXPECT_EQ(m.at(4)->box, (BoundingBox{10, 0, 10, 10}));
}

TEST(MergeGroup, DropKeepsLongestMemberBox) {
  const auto longer = make_track(1, 1, 10, {0, 0, 10, 10});
  const auto shorter = make_track(2, 5, 12, {1, 1, 10, 10});
  for (const auto& group : {std::vector{longer, shorter}, std::vector{shorter, longer}}) {
    const auto m = merge_group(group, MergeMode::kDrop);
    EXPECT_EQ(m.at(7)->box, (BoundingBox{0, 0, 10, 10}));
    EXPECT_EQ(m.at(12)->box, (BoundingBox{1, 1, 10, 10}));
    EXPECT_EQ(m.length(), 12);
  }
}

TEST(MergeTrajectories, DisjointPoolIsUnchanged) {
  const BoundingBox box{0, 0, 10, 10};
  const std::vector<Trajectory> pool = {make_track(1, 1, 10, box), make_track(2, 11, 15, box),
                                        make_track(3, 16, 40, box)};
  const auto out = merge_trajectories(pool, 0.5, 0.5, MergeMode::kDrop);
  EXPECT_EQ(canonical(out), canonical(pool));
}

TEST(MergeTrajectories, CopyIsAbsorbed) {
  const auto t = make_track(1, 1, 10, {0, 0, 10, 10});
  auto copy = t;
  copy.set_id(2);
  const auto out = merge_trajectories({t, copy}, 0.5, 0.5, MergeMode::kDrop);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0], t);
}

TEST(MergeTrajectories, EqualLengthDuplicatesMerge) {
  // A strict length guard would never merge these.
  const auto a = make_track(1, 1, 30, {0, 0, 10, 10});
  const auto b = make_track(2, 1, 30, {0.5, 0, 10, 10});
  EXPECT_EQ(plan_merges({a, b}, 0.5, 0.5), (std::vector<MergeGroupIds>{{1, 2}}));
}

TEST(MergeTrajectories, MatchesAreCheckedAgainstAnchorOnly) {
  // B overlaps A; C overlaps B but not A. No transitive chaining through B.
  const auto a = make_track(1, 1, 20, {0, 0, 10, 10});
  const auto b = make_track(2, 1, 15, {3, 0, 10, 10});
  const auto c = make_track(3, 1, 10, {6, 0, 10, 10});
  ASSERT_GT(st_iou(a, b, 0.5), 0.5);
  ASSERT_GT(st_iou(b, c, 0.5), 0.5);
  ASSERT_EQ(st_iou(a, c, 0.5), 0.0);
  EXPECT_EQ(plan_merges({c, b, a}, 0.5, 0.5), (std::vector<MergeGroupIds>{{1, 2}, {3}}));
}

TEST(MergeTrajectories, PartitionProperty) {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto pool = mix({random_trackset(gen, 6), random_trackset(gen, 5)});
    const auto groups = plan_merges(pool, 0.5, 0.3);
    std::multiset<int> seen;
    for (const auto& g : groups) seen.insert(g.begin(), g.end());
    ASSERT_EQ(seen.size(), pool.size());
    for (const auto& t : pool) EXPECT_EQ(seen.count(t.id()), 1u);
    EXPECT_EQ(merge_trajectories(pool, 0.5, 0.3, MergeMode::kDrop).size(), groups.size());
  }
}

TEST(LengthNms, NonOverlappingUnchanged) {
  const std::vector<Trajectory> tracks = {make_track(1, 1, 10, {0, 0, 10, 10}),
                                          make_track(2, 1, 10, {8, 0, 10, 10})};
  EXPECT_EQ(length_nms(tracks, 0.7), tracks);
}

TEST(LengthNms, ShorterTrackLosesOverlappingBox) {
  // (0,0,10,10) vs (0,0,10,8): IoU 0.8.
  const auto longer = make_track(1, 1, 10, {0, 0, 10, 10});
  const auto shorter = make_track(2, 6, 10, {0, 0, 10, 8});
  ASSERT_DOUBLE_EQ(box_iou(longer.at(6)->box, shorter.at(6)->box), 0.8);
  const auto out = length_nms({shorter, longer}, 0.7);
  // Every frame of the shorter track collides, so it disappears.
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0], longer);

  auto partial = make_track(2, 6, 12, {0, 0, 10, 8});
  const auto out2 = length_nms({longer, partial}, 0.7);
  ASSERT_EQ(out2.size(), 2u);
  EXPECT_EQ(out2[1].start(), 11);
  EXPECT_EQ(out2[1].stop(), 12);
}

TEST(LengthNms, TieGoesToLowerId) {
  const auto a = make_track(5, 1, 4, {0, 0, 10, 10});
  const auto b = make_track(2, 1, 4, {0, 0, 10, 10});
  const auto out = length_nms({a, b}, 0.7);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].id(), 2);
}

TEST(LengthNms, SingleTrajectoryUnchanged) {
  const auto t = make_track(1, 1, 10, {0, 0, 10, 10});
  EXPECT_EQ(length_nms({t}, 0.0), std::vector<Trajectory>{t});
}

TEST(LengthFilter, Boundaries) {
  const BoundingBox box{0, 0, 10, 10};
  const std::vector<Trajectory> tracks = {make_track(1, 1, 19, box), make_track(2, 1, 20, box),
                                          make_track(3, 5, 5, box)};
  EXPECT_EQ(length_filter(tracks, 0), tracks);
  const auto kept = length_filter(tracks, 20);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].id(), 2);
}

TEST(Pipeline, NonOverlappingInputPassesThrough) {
  TrackSet s;
  s.trajectories = {make_track(7, 1, 50, {0, 0, 10, 10}), make_track(3, 1, 50, {100, 0, 10, 10}),
                    make_track(9, 20, 80, {0, 100, 10, 10})};
  const auto out = ensemble_pipeline({s}, EnsembleConfig{});
  EXPECT_EQ(canonical(out.trajectories), canonical(s.trajectories));
  for (std::size_t i = 0; i < out.trajectories.size(); ++i) {
    EXPECT_EQ(out.trajectories[i].id(), static_cast<int>(i) + 1);
  }
}

TEST(Pipeline, DuplicateInputIsAbsorbed) {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = random_trackset(gen, 8, 60);
    const auto single = ensemble_pipeline({s}, EnsembleConfig{});
    const auto doubled = ensemble_pipeline({s, s}, EnsembleConfig{});
    EXPECT_EQ(canonical(doubled.trajectories), canonical(single.trajectories));
  }
}

TEST(Pipeline, ComplementaryHalvesJoin) {
  const BoundingBox box{0, 0, 20, 40};
  TrackSet a, b;
  a.trajectories = {make_track(1, 1, 60, box)};
  b.trajectories = {make_track(1, 30, 100, box)};
  // 31 shared frames over the shorter length of 60.
  EXPECT_DOUBLE_EQ(st_iou(a.trajectories[0], b.trajectories[0], 0.5), 31.0 / 60.0);
  const auto out = ensemble_pipeline({a, b}, EnsembleConfig{});
  ASSERT_EQ(out.trajectories.size(), 1u);
  EXPECT_EQ(out.trajectories[0].start(), 1);
  EXPECT_EQ(out.trajectories[0].stop(), 100);
  EXPECT_EQ(out.trajectories[0].size(), 100u);
}

TEST(Pipeline, DeterministicSerializedOutput) {
  std::mt19937_64 gen(37);
  const auto a = random_trackset(gen, 10, 60);
  const auto b = random_trackset(gen, 10, 60);
  EnsembleConfig cfg;
  cfg.thr_len = 5;
  for (auto mode : {MergeMode::kDrop, MergeMode::kAverage}) {
    cfg.merge_mode = mode;
    EXPECT_EQ(serialize_trackset(ensemble_pipeline({a, b}, cfg)),
              serialize_trackset(ensemble_pipeline({a, b}, cfg)));
  }
}

TEST(Pipeline, ThrTOneDisablesMerging) {
  std::mt19937_64 gen(41);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_trackset(gen, 6);
    const auto b = random_trackset(gen, 6);
    EnsembleConfig cfg;
    cfg.thr_t = 1.0;
    cfg.thr_len = 0;
    const auto pool = mix({a, b});
    const auto expected = length_filter(length_nms(pool, cfg.thr_nms), cfg.thr_len);
    EXPECT_EQ(canonical(ensemble_pipeline({a, b}, cfg).trajectories), canonical(expected));
  }
}

TEST(Pipeline, RaisingThrLenNeverAddsTrajectories) {
  std::mt19937_64 gen(43);
  const auto a = random_trackset(gen, 12);
  const auto b = random_trackset(gen, 12);
  std::size_t prev = std::numeric_limits<std::size_t>::max();
  for (int len = 0; len <= 60; len += 5) {
    EnsembleConfig cfg;
    cfg.thr_len = len;
    const auto n = ensemble_pipeline({a, b}, cfg).trajectories.size();
    EXPECT_LE(n, prev);
    prev = n;
    for (const auto& t : ensemble_pipeline({a, b}, cfg).trajectories) EXPECT_GE(t.length(), len);
  }
}

TEST(Pipeline, DropModeConservesBoxes) {
  std::mt19937_64 gen(47);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_trackset(gen, 8);
    const auto b = random_trackset(gen, 8);
    EnsembleConfig cfg;
    cfg.thr_len = 0;
    std::set<std::tuple<int, double, double, double, double>> inputs;
    for (const auto* ts : {&a, &b}) {
      for (const auto& t : ts->trajectories) {
        for (const auto& [f, d] : t.detections()) inputs.emplace(f, d.box.x, d.box.y, d.box.w, d.box.h);
      }
    }
    for (const auto& t : ensemble_pipeline({a, b}, cfg).trajectories) {
      for (const auto& [f, d] : t.detections()) {
        EXPECT_TRUE(inputs.count({f, d.box.x, d.box.y, d.box.w, d.box.h}));
      }
    }
  }
}

TEST(Pipeline, RejectsBadConfigAndEmptyInput) {
  EXPECT_THROW(ensemble_pipeline({}, EnsembleConfig{}), std::invalid_argument);
  EnsembleConfig cfg;
  cfg.thr_t = 1.5;
  EXPECT_THROW(ensemble_pipeline({TrackSet{}}, cfg), std::invalid_argument);
  EXPECT_TRUE(ensemble_pipeline({TrackSet{}}, EnsembleConfig{}).trajectories.empty());
}

TEST(MergeModeNames, ParseAndPrint) {
  EXPECT_EQ(parse_merge_mode("drop"), MergeMode::kDrop);
  EXPECT_EQ(parse_merge_mode("average"), MergeMode::kAverage);
  EXPECT_EQ(to_string(MergeMode::kAverage), "average");
  EXPECT_THROW(parse_merge_mode("vote"), std::invalid_argument);
}

}  // namespace
}  // namespace trackfuse
