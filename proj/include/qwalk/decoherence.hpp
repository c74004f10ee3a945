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
#include "qwalk/measurement.hpp"
#include "qwalk/rng.hpp"
#include "qwalk/walk_ops.hpp"

namespace qwalk {

/// Per-step projection probabilities for the two decoherence classes.
/// p_spin: the spin is measured (dephased) in the Up/Down basis.
/// p_pos: the position is measured (which-site projection).
struct NoiseModel {
  double p_spin = 0.0;
  double p_pos = 0.0;

  void validate() const;
  bool noiseless() const { return p_spin == 0.0 && p_pos == 0.0; }
};

/// A channel whose Kraus operators are all diagonal in the (site, spin) basis.
///
/// For diagonal K the map rho -> sum_k K rho K^dagger multiplies each entry
/// rho_ij by sum_k K_k[i] conj(K_k[j]), so the channel is stored as that
/// elementwise multiplier and applied in O(dim^2).
class DiagonalChannel {
 public:
  DiagonalChannel(int half_width, std::vector<std::vector<cplx>> kraus_diagonals);

  int half_width() const { return half_width_; }
  const std::vector<std::vector<cplx>>& kraus() const { return kraus_; }

  /// max_i |sum_k |K_k[i]|^2 - 1|, zero for a trace-preserving channel.
  double completeness_defect() const;

  DensityOperator apply(const DensityOperator& rho) const;
  void apply_in_place(std::vector<cplx>& matrix) const;

 private:
  int half_width_;
  std::vector<std::vector<cplx>> kraus_;
  std::vector<cplx> multiplier_;
};

/// Kraus set {sqrt(1-p) I, sqrt(p) Pi_Up, sqrt(p) Pi_Down}.
DiagonalChannel spin_projection_channel(int half_width, double p);
/// Kraus set {sqrt(1-p) I} plus sqrt(p) Pi_x for every site x.
DiagonalChannel position_projection_channel(int half_width, double p);

DensityOperator channel_spin_project(const DensityOperator& rho, double p);
DensityOperator channel_pos_project(const DensityOperator& rho, double p);

/// rho -> U rho U^dagger for one walk step.
DensityOperator apply_step(const DensityOperator& rho, const StepConfig& cfg);

/// n repetitions of: unitary step, spin channel, position channel.
DensityOperator evolve_density(const DensityOperator& rho, const StepConfig& cfg,
                               const NoiseModel& noise, int n);

/// Calls `observer(k, rho_k)` for k = 0..n, evolving as evolve_density.
template <typename Observer>
void evolve_density_observed(DensityOperator rho, const StepConfig& cfg,
                             const NoiseModel& noise, int n, Observer&& observer);

/// One Monte Carlo unraveling of evolve_density. After each unitary step the
/// spin is projected with probability p_spin and then the position with
/// probability p_pos; branches follow the Born rule and are renormalized.
PureState evolve_trajectory(const PureState& psi, const StepConfig& cfg,
                            const NoiseModel& noise, int n, Rng& rng);

/// Entrywise mean of |psi><psi| over trajectories with its standard error.
struct TrajectoryEnsemble {
  DensityOperator mean;
  std::vector<double> stderr_real;
  std::vector<double> stderr_imag;
  std::uint64_t trajectories;
};

/// Trajectory i uses Rng::stream(master_seed, i).
TrajectoryEnsemble trajectory_ensemble(const PureState& psi, const StepConfig& cfg,
                                       const NoiseModel& noise, int n,
                                       std::uint64_t trajectories, std::uint64_t master_seed);

/// Histogram of Born-sampled endpoints, one per trajectory, as frequencies.
PositionDistribution trajectory_histogram(const PureState& psi, const StepConfig& cfg,
                                          const NoiseModel& noise, int n,
                                          std::uint64_t trajectories,
                                          std::uint64_t master_seed);

template <typename Observer>
void evolve_density_observed(DensityOperator rho, const StepConfig& cfg,
                             const NoiseModel& noise, int n, Observer&& observer) {
  noise.validate();
  const int L = rho.half_width();
  const DiagonalChannel spin = spin_projection_channel(L, noise.p_spin);
  const DiagonalChannel pos = position_projection_channel(L, noise.p_pos);
  observer(0, static_cast<const DensityOperator&>(rho));
  for (int k = 1; k <= n; ++k) {
    rho = apply_step(rho, cfg);
    if (noise.p_spin > 0.0) rho = spin.apply(rho);
    if (noise.p_pos > 0.0) rho = pos.apply(rho);
    observer(k, static_cast<const DensityOperator&>(rho));
  }
}

}  // namespace qwalk
