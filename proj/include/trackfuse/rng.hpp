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

namespace trackfuse {

/// SplitMix64 used as a counter-based generator.
///
/// The n-th output (n = 1, 2, ...) is mix64(seed + n * 0x9E3779B97F4A7C15)
/// with the standard SplitMix64 finaliser
///
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   z =  z ^ (z >> 31)
///
/// all arithmetic modulo 2^64. Doubles take the top 53 bits: (x >> 11) * 2^-53.
/// Normal deviates use Box-Muller on two consecutive uniforms (cosine branch
/// only, one normal per two uniforms). Independent streams are derived with
/// `SplitMix64::derive(seed, tag)` = mix64(seed ^ mix64(tag)).
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix64(std::uint64_t z);
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t tag);

  std::uint64_t next();
  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  bool bernoulli(double p) { return uniform() < p; }
  double normal(double mean, double stddev);
  /// Number of trials up to and including the first success, mean 1/p.
  std::int64_t geometric(double p);

 private:
  std::uint64_t state_;
};

}  // namespace trackfuse
