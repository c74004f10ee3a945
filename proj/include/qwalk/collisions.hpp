// Copyright 2026 The qwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qwalk/rng.hpp"

namespace qwalk {

// Two atoms share a site for an interaction window. Each is lost on its own
// with probability P; if both stay, the pair is lost together with
// probability P_coll:
//   p0 = (1-P)^2 P_coll + P^2
//   p1 = 2 P (1-P)
//   p2 = (1-P)^2 (1-P_coll)

struct LossModelParams {
  double p = 0.09;
  double p_coll = 0.0;

  void validate() const;
};

struct OutcomeProbabilities {
  double p0, p1, p2;
};

/// Events in which zero, one or two atoms remain.
struct CollisionCounts {
  std::uint64_t n0 = 0;
  std::uint64_t n1 = 0;
  std::uint64_t n2 = 0;

  std::uint64_t total() const { return n0 + n1 + n2; }
  bool operator==(const CollisionCounts&) const = default;
};

struct PCollEstimate {
  double p_coll;
  double ci_low;
  double ci_high;
  double p;
  /// Set when an estimate had to be clamped or was not identified by the data.
  bool boundary;
};

/// Chi-square(1) 95% quantile used for the profile-likelihood interval.
inline constexpr double kChi2OneDof95 = 3.841458820694124;

OutcomeProbabilities outcome_probabilities(const LossModelParams& params);

CollisionCounts sample_counts(const LossModelParams& params, std::uint64_t n_events, Rng& rng);

/// Multinomial log-likelihood of the counts, with 0 log 0 = 0.
double collision_log_likelihood(const CollisionCounts& counts, double p, double p_coll);

/// Maximum-likelihood P_coll with a 95% profile-likelihood interval.
///
/// With `p_known` absent P is estimated from n1 alone (the root of
/// 2P(1-P) = n1/N that is <= 1/2) and profiled out of the interval;
/// otherwise P is held fixed. Given P the likelihood in P_coll is concave
/// with maximum at (n0 q - n2 P^2) / (q (n0 + n2)), q = (1-P)^2, clamped to
/// [0, 1].
PCollEstimate estimate_pcoll(const CollisionCounts& counts,
                             std::optional<double> p_known = std::nullopt);

struct LossSeriesRow {
  std::size_t point;
  double true_p_coll;
  PCollEstimate estimate;
};

/// Samples and estimates each interaction-time point; point i draws from
/// Rng::stream(seed, i).
std::vector<LossSeriesRow> loss_vs_time_series(std::span<const double> p_coll_per_point,
                                               double p, std::uint64_t n_events,
                                               std::uint64_t seed,
                                               std::optional<double> p_known = std::nullopt);

/// "point,true_pcoll,estimate,ci_low,ci_high" CSV body, 12 significant digits.
std::string to_csv(std::span<const LossSeriesRow> rows);

}  // namespace qwalk
