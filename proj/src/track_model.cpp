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

#include "trackfuse/track_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include <fmt/format.h>

namespace trackfuse {

bool BoundingBox::valid() const {
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(w) &&
         std::isfinite(h) && w > 0.0 && h > 0.0;
}

namespace {

void check_detection(int key, const Detection& d) {
  if (d.frame != key) {
    throw std::invalid_argument("detection frame does not match its key");
  }
  if (d.frame < 1) throw std::invalid_argument("frame index must be >= 1");
  if (!d.box.valid()) throw std::invalid_argument("invalid bounding box");
}

}  // namespace

Trajectory::Trajectory(int id, FrameMap detections)
    : id_(id), detections_(std::move(detections)) {
  if (detections_.empty()) {
    throw std::invalid_argument("trajectory must contain a detection");
  }
  for (const auto& [frame, d] : detections_) check_detection(frame, d);
}

Trajectory::Trajectory(int id, const std::vector<Detection>& detections)
    : id_(id) {
  for (const auto& d : detections) {
    if (!detections_.emplace(d.frame, d).second) {
      throw std::invalid_argument("duplicate frame in trajectory");
    }
  }
  if (detections_.empty()) {
    throw std::invalid_argument("trajectory must contain a detection");
  }
  for (const auto& [frame, d] : detections_) check_detection(frame, d);
}

const Detection* Trajectory::at(int frame) const {
  auto it = detections_.find(frame);
  return it == detections_.end() ? nullptr : &it->second;
}

std::size_t TrackSet::num_boxes() const {
  std::size_t n = 0;
  for (const auto& t : trajectories) n += t.size();
  return n;
}

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(fmt::format("line {}: {}", line, message)),
      line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    out.push_back(trim(line.substr(pos, comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

double to_real(std::string_view field, std::size_t line, const char* what) {
  // from_chars rejects a leading '+', which some writers emit.
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ParseError(line, fmt::format("malformed number for {}: '{}'", what,
                                       field));
  }
  return value;
}

int to_index(std::string_view field, std::size_t line, const char* what) {
  const double v = to_real(field, line, what);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw ParseError(line, fmt::format("{} is not an integer: '{}'", what,
                                       field));
  }
  return static_cast<int>(v);
}

}  // namespace

TrackSet parse_trackset(std::istream& in, bool is_ground_truth,
                        std::string sequence) {
  std::map<int, Trajectory::FrameMap> by_id;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() < 6) {
      throw ParseError(line_no, fmt::format("expected at least 6 columns, got {}",
                                            f.size()));
    }
    Detection d;
    d.frame = to_index(f[0], line_no, "frame");
    const int id = to_index(f[1], line_no, "id");
    d.box = {to_real(f[2], line_no, "x"), to_real(f[3], line_no, "y"),
             to_real(f[4], line_no, "width"), to_real(f[5], line_no, "height")};
    double col7 = 1.0;
    if (f.size() > 6 && !f[6].empty()) col7 = to_real(f[6], line_no, "column 7");
    // Remaining columns are unused; they are validated only as numbers.
    for (std::size_t k = 7; k < f.size(); ++k) {
      if (!f[k].empty()) to_real(f[k], line_no, "trailing column");
    }

    if (d.frame < 1) throw ParseError(line_no, "frame index must be >= 1");
    if (id < 1) throw ParseError(line_no, "id must be >= 1");
    if (!(d.box.w > 0.0)) throw ParseError(line_no, "non-positive box width");
    if (!(d.box.h > 0.0)) throw ParseError(line_no, "non-positive box height");

    if (is_ground_truth) {
      if (col7 == 0.0) continue;
      d.confidence = 1.0;
    } else {
      d.confidence = col7;
    }
    if (!by_id[id].emplace(d.frame, d).second) {
      throw ParseError(line_no, fmt::format("duplicate entry for frame {} id {}",
                                            d.frame, id));
    }
  }
  if (in.bad()) throw std::runtime_error("read error");

  TrackSet ts;
  ts.sequence = std::move(sequence);
  for (auto& [id, frames] : by_id) {
    // An id whose rows were all inactive leaves an empty map behind.
    if (frames.empty()) continue;
    ts.trajectories.emplace_back(id, std::move(frames));
  }
  return ts;
}

TrackSet parse_trackset(std::string_view text, bool is_ground_truth,
                        std::string sequence) {
  std::istringstream in{std::string(text)};
  return parse_trackset(in, is_ground_truth, std::move(sequence));
}

TrackSet load_trackset(const std::string& path, bool is_ground_truth) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path));
  try {
    return parse_trackset(in, is_ground_truth);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), fmt::format("{}: {}", path, e.what()));
  }
}

std::string serialize_trackset(const TrackSet& ts) {
  struct Row {
    int frame;
    int id;
    const Detection* d;
  };
  std::vector<Row> rows;
  rows.reserve(ts.num_boxes());
  for (const auto& t : ts.trajectories) {
    for (const auto& [frame, d] : t.detections()) rows.push_back({frame, t.id(), &d});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.frame, a.id) < std::tie(b.frame, b.id);
  });

  fmt::memory_buffer out;
  for (const auto& r : rows) {
    const auto& b = r.d->box;
    fmt::format_to(std::back_inserter(out),
                   "{},{},{:.2f},{:.2f},{:.2f},{:.2f},{:.2f},-1,-1,-1\n",
                   r.frame, r.id, b.x, b.y, b.w, b.h, r.d->confidence);
  }
  return fmt::to_string(out);
}

void save_trackset(const std::string& path, const TrackSet& ts) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path));
  out << serialize_trackset(ts);
  if (!out) throw std::runtime_error(fmt::format("write failed for '{}'", path));
}

}  // namespace trackfuse
