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

#include <span>

#include "qwalk/lattice_state.hpp"

namespace qwalk {

/// Coin rotation angle and phase dressing, all in radians.
///
/// The coin is diag(e^{i alpha}, 1) * C(theta) * diag(1, e^{i beta}) with
///   C(theta) = [[cos(theta/2), -sin(theta/2)],
///               [sin(theta/2),  cos(theta/2)]]
/// acting on the (Up, Down) pair. theta = pi/2 with alpha = beta = 0 is what
/// this library calls the Hadamard walk. Angles outside [0, 2pi) are reduced.
struct CoinParams {
  double theta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

/// 2x2 matrix acting on (Up, Down): up' = uu*up + ud*down, down' = du*up + dd*down.
struct CoinMatrix {
  cplx uu, ud, du, dd;
};

/// Per-spin displacement in sites. The two spins always move oppositely.
class ShiftMap {
 public:
  /// Up -> -1, Down -> +1.
  ShiftMap() = default;
  /// Throws DomainError unless {up, down} is {-1, +1} in some order.
  ShiftMap(int up, int down);

  int operator()(Spin s) const { return s == Spin::Up ? up_ : -up_; }
  bool operator==(const ShiftMap&) const = default;

 private:
  int up_ = -1;
};

struct StepConfig {
  CoinParams coin;
  ShiftMap shift;
  /// Phase per site per step; each step multiplies psi(x, s) by e^{i phi x}.
  double electric_phase = 0.0;
};

/// Reduces an angle into [0, 2pi).
double wrap_angle(double radians);

CoinMatrix coin_matrix(const CoinParams& c);

PureState apply_coin(const PureState& state, const CoinParams& c);
/// Throws BoundaryOverflow if the outermost sites carry amplitude.
PureState apply_shift(const PureState& state, const ShiftMap& shift);
PureState apply_electric_phase(const PureState& state, double phi);

/// Coin, then shift, then electric phase.
PureState step(const PureState& state, const StepConfig& cfg);
PureState evolve(const PureState& state, const StepConfig& cfg, int n);

// In-place kernels over a raw amplitude vector in the standard basis order.
// They are shared by the density-operator and two-particle engines. The
// shift kernel checks the boundary itself.
void coin_in_place(std::span<cplx> amplitudes, const CoinMatrix& m);
void shift_in_place(std::span<cplx> amplitudes, int half_width, const ShiftMap& shift);
void electric_phase_in_place(std::span<cplx> amplitudes, int half_width, double phi);
void step_in_place(std::span<cplx> amplitudes, int half_width, const StepConfig& cfg);

}  // namespace qwalk
