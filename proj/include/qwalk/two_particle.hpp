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
#include <vector>

#include "qwalk/lattice_state.hpp"
#include "qwalk/walk_ops.hpp"

namespace qwalk {

/// Two identical bosons on the single-particle basis of a lattice with half
/// width L. amplitude(a, b) is the coefficient of |a>|b> over ordered pairs of
/// single-particle indices, with A(a, b) = A(b, a). Two bosons in one mode a
/// have A(a, a) = 1; two in distinct modes a, b have A(a, b) = A(b, a) = 1/sqrt(2).
class TwoBosonState {
 public:
  /// Throws DomainError if the amplitudes are not exchange symmetric within 1e-12.
  TwoBosonState(int half_width, std::vector<cplx> amplitudes);

  int half_width() const { return half_width_; }
  std::size_t single_dim() const { return dim_; }
  cplx amplitude(std::size_t a, std::size_t b) const { return amps_[a * dim_ + b]; }
  std::span<const cplx> amplitudes() const { return amps_; }

  double norm_squared() const;

 private:
  int half_width_;
  std::size_t dim_;
  std::vector<cplx> amps_;
};

/// Normalized (|a>|b> + |b>|a>) for single-particle states a and b.
TwoBosonState symmetrized_pair(const PureState& a, const PureState& b);

/// The same single-particle step applied to both atoms.
TwoBosonState apply_coin_both(const TwoBosonState& psi, const CoinParams& c);
TwoBosonState apply_shift_both(const TwoBosonState& psi, const ShiftMap& shift);

/// <a|b> over ordered pairs.
cplx overlap(const TwoBosonState& a, const TwoBosonState& b);

struct SiteStatistics {
  double p_same_site = 0.0;
  double p_diff_site = 0.0;
};

SiteStatistics site_statistics(const TwoBosonState& psi);

/// Displacement used by the interferometer: Up -> +1 (right), Down -> -1 (left),
/// so that the output is written (|Right, up up> - |Left, down down>)/sqrt(2).
inline const ShiftMap kInterferometerShift{+1, -1};

/// (|+1, Up Up> - |-1, Down Down>) / sqrt(2), built by hand.
TwoBosonState noon_state(int half_width);

/// Up and Down atoms on site 0, a theta = pi/2 coin on both, then the
/// spin-dependent shift. Lattice half width 2.
TwoBosonState hom_ideal(const ShiftMap& shift = kInterferometerShift);

/// Same two inputs evolved as independent single-particle walks; the
/// different-site probability is 1 - sum_x P1(x) P2(x).
SiteStatistics distinguishable_site_statistics(const ShiftMap& shift = kInterferometerShift);

/// Weight of the indistinguishable sector in a two-sector mixture.
struct DistinguishabilityModel {
  double overlap = 1.0;

  /// Product rule: the pair interferes only if both atoms are in the 3D
  /// motional ground state.
  static DistinguishabilityModel from_ground_state_populations(double atom1, double atom2);
  void validate() const;
};

/// p_diff = V * 0 + (1 - V) * 1/2.
SiteStatistics hom_probabilities(const DistinguishabilityModel& model);

struct DetectionModel {
  double survival = 0.91;
  bool parity_projection = true;
  double pair_loss_efficiency = 1.0;

  void validate() const;
};

/// Disjoint tallies; they sum to the number of events.
///   both_seen         both atoms survive on one site and are imaged
///   one_seen          exactly one atom survives
///   none_seen         no atom survives, or a same-site pair is lost to parity projection
///   anti_bunched_seen both atoms survive on different sites
struct ObservedCounts {
  std::uint64_t both_seen = 0;
  std::uint64_t one_seen = 0;
  std::uint64_t none_seen = 0;
  std::uint64_t anti_bunched_seen = 0;

  std::uint64_t total() const { return both_seen + one_seen + none_seen + anti_bunched_seen; }
  bool operator==(const ObservedCounts&) const = default;
};

/// Event i draws from Rng::stream(seed, i).
ObservedCounts detection_mc(double p_diff, const DetectionModel& det, std::uint64_t n_events,
                            std::uint64_t seed);

/// Probability that an event is observed as anti-bunched: p_diff * survival^2.
double expected_anti_bunched_rate(double p_diff, const DetectionModel& det);

/// z = (expected - observed) / sqrt(n q (1 - q)), with q the anti-bunched
/// rate for fully distinguishable atoms under the same detection model.
double hom_significance(const ObservedCounts& observed, double baseline_rate);

}  // namespace qwalk
