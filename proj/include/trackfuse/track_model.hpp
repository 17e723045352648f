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

#include <cstddef>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace trackfuse {

/// Axis-aligned pixel rectangle given by its top-left corner and size.
struct BoundingBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double right() const { return x + w; }
  double bottom() const { return y + h; }
  double area() const { return w * h; }

  /// Positive size and finite coordinates.
  bool valid() const;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// One box of a trajectory together with where it came from.
struct Detection {
  int frame = 1;
  BoundingBox box;
  double confidence = 1.0;
  int source = 0;  // index of the originating tracker

  friend bool operator==(const Detection&, const Detection&) = default;
};

/// A single identity over time. Holds at most one detection per frame and is
/// never empty once constructed through the checked constructor; gaps between
/// start() and stop() are allowed.
class Trajectory {
 public:
  using FrameMap = std::map<int, Detection>;

  Trajectory() = default;
  Trajectory(int id, FrameMap detections);
  Trajectory(int id, const std::vector<Detection>& detections);

  int id() const { return id_; }
  void set_id(int id) { id_ = id; }

  const FrameMap& detections() const { return detections_; }
  bool empty() const { return detections_.empty(); }
  std::size_t size() const { return detections_.size(); }

  int start() const { return detections_.begin()->first; }
  int stop() const { return detections_.rbegin()->first; }
  /// Inclusive frame span, stop - start + 1. Zero for an empty trajectory.
  int length() const { return empty() ? 0 : stop() - start() + 1; }

  /// Detection at `frame` or nullptr.
  const Detection* at(int frame) const;

  /// Inserts or overwrites the detection at its frame.
  void put(const Detection& d) { detections_[d.frame] = d; }
  void erase(int frame) { detections_.erase(frame); }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

 private:
  int id_ = 0;
  FrameMap detections_;
};

/// All trajectories reported for one sequence by one tracker (or the ensemble).
struct TrackSet {
  std::string sequence;
  std::vector<Trajectory> trajectories;

  std::size_t num_boxes() const;
  friend bool operator==(const TrackSet&, const TrackSet&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads MOTChallenge rows `frame,id,x,y,w,h,conf,...`. With
/// `is_ground_truth` the 7th column is the active flag and inactive rows are
/// skipped; ground-truth confidence is always 1. Throws ParseError.
TrackSet parse_trackset(std::istream& in, bool is_ground_truth,
                        std::string sequence = {});
TrackSet parse_trackset(std::string_view text, bool is_ground_truth,
                        std::string sequence = {});

/// Reads a file; throws std::runtime_error when it cannot be opened.
TrackSet load_trackset(const std::string& path, bool is_ground_truth);

/// Writes rows sorted by (frame, id) as `frame,id,x,y,w,h,conf,-1,-1,-1`
/// with reals at two decimals.
std::string serialize_trackset(const TrackSet& ts);

void save_trackset(const std::string& path, const TrackSet& ts);

}  // namespace trackfuse
