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

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "trackfuse/ensemble.hpp"
#include "trackfuse/track_model.hpp"

namespace trackfuse::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kInputError = 2,
};

/// What `merge` computes for one sequence: the ensemble pipeline, optionally
/// followed by gap interpolation.
TrackSet fuse(const std::vector<TrackSet>& inputs, const EnsembleConfig& cfg,
              std::optional<int> interpolate_gap = std::nullopt);

/// Entry point of the `trackfuse` executable (subcommands merge, eval, synth).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trackfuse::cli
