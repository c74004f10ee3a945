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

#include <string>
#include <vector>

#include "qwalk/lattice_state.hpp"
#include "qwalk/rng.hpp"

namespace qwalk {

/// Probability per site on [-L, L]. `weight` is the total probability; it is
/// 1 for a physical distribution and the survival probability for a branch
/// conditioned on a spin removal.
struct PositionDistribution {
  int half_width = 0;
  std::vector<double> probs;

  double at(int x) const { return probs[static_cast<std::size_t>(x + half_width)]; }
  double weight() const;
  double mean() const;
};

PositionDistribution position_distribution(const PureState& psi);
PositionDistribution position_distribution(const DensityOperator& rho);

/// sqrt(<x^2> - <x>^2). Throws DomainError when the total weight differs
/// from 1 by more than 1e-10.
double rms_width(const PositionDistribution& d);

struct SpinRemoval {
  PureState state;  // not renormalized
  double survival;  // remaining norm squared
};

struct DensitySpinRemoval {
  DensityOperator state;  // not renormalized
  double survival;
};

/// Zeroes every amplitude carrying spin `removed`, as a spin-selective push-out.
SpinRemoval remove_spin(const PureState& psi, Spin removed);
DensitySpinRemoval remove_spin(const DensityOperator& rho, Spin removed);

/// Position observable at the final time: +1 for x > 0, -1 for x <= 0.
inline int q3_value(int x) { return x > 0 ? 1 : -1; }

/// Sum over sites of probability times q3_value.
double q3_expectation(const PositionDistribution& d);

/// Born-rule draw of a site from a normalized distribution.
int sample_position(const PositionDistribution& d, Rng& rng);

/// "x,probability" CSV body, ascending x, 12 significant digits, '\n' endings.
std::string to_csv(const PositionDistribution& d);

}  // namespace qwalk
