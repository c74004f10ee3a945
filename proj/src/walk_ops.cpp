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

#include "qwalk/walk_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace qwalk {

ShiftMap::ShiftMap(int up, int down) : up_(up) {
  if (!((up == -1 && down == 1) || (up == 1 && down == -1))) {
    throw DomainError(
        fmt::format("shift map must send the spins to opposite neighbours, got up={} down={}",
                    up, down));
  }
}

double wrap_angle(double radians) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(radians, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r;
}

CoinMatrix coin_matrix(const CoinParams& c) {
  const double half = wrap_angle(c.theta) / 2.0;
  const double co = std::cos(half);
  const double si = std::sin(half);
  const cplx ea = std::polar(1.0, wrap_angle(c.alpha));
  const cplx eb = std::polar(1.0, wrap_angle(c.beta));
  return CoinMatrix{ea * co, -ea * si * eb, cplx(si), co * eb};
}

void coin_in_place(std::span<cplx> amplitudes, const CoinMatrix& m) {
  for (std::size_t i = 0; i + 1 < amplitudes.size(); i += 2) {
    const cplx up = amplitudes[i];
    const cplx down = amplitudes[i + 1];
    amplitudes[i] = m.uu * up + m.ud * down;
    amplitudes[i + 1] = m.du * up + m.dd * down;
  }
}

void shift_in_place(std::span<cplx> amplitudes, int half_width, const ShiftMap& shift) {
  const std::size_t d = amplitudes.size();
  if (amplitudes[0] != 0.0 || amplitudes[1] != 0.0 || amplitudes[d - 2] != 0.0 ||
      amplitudes[d - 1] != 0.0) {
    throw BoundaryOverflow(fmt::format(
        "amplitude reached the lattice edge |x| = {}; allocate a larger half width", half_width));
  }
  for (Spin s : kSpins) {
    const std::size_t offset = s == Spin::Up ? 0 : 1;
    if (shift(s) < 0) {
      for (std::size_t i = offset; i + 2 < d; i += 2) amplitudes[i] = amplitudes[i + 2];
      amplitudes[d - 2 + offset] = 0.0;
    } else {
      for (std::size_t i = d - 2 + offset; i >= 2; i -= 2) amplitudes[i] = amplitudes[i - 2];
      amplitudes[offset] = 0.0;
    }
  }
}

void electric_phase_in_place(std::span<cplx> amplitudes, int half_width, double phi) {
  const double reduced = wrap_angle(phi);
  if (reduced == 0.0) return;
  for (int x = -half_width; x <= half_width; ++x) {
    const cplx ph = std::polar(1.0, reduced * x);
    const std::size_t i = basis_index(half_width, x, Spin::Up);
    amplitudes[i] *= ph;
    amplitudes[i + 1] *= ph;
  }
}

void step_in_place(std::span<cplx> amplitudes, int half_width, const StepConfig& cfg) {
  coin_in_place(amplitudes, coin_matrix(cfg.coin));
  shift_in_place(amplitudes, half_width, cfg.shift);
  electric_phase_in_place(amplitudes, half_width, cfg.electric_phase);
}

PureState apply_coin(const PureState& state, const CoinParams& c) {
  std::vector<cplx> amps(state.amplitudes().begin(), state.amplitudes().end());
  coin_in_place(amps, coin_matrix(c));
  return PureState(state.half_width(), std::move(amps));
}

PureState apply_shift(const PureState& state, const ShiftMap& shift) {
  std::vector<cplx> amps(state.amplitudes().begin(), state.amplitudes().end());
  shift_in_place(amps, state.half_width(), shift);
  return PureState(state.half_width(), std::move(amps));
}

PureState apply_electric_phase(const PureState& state, double phi) {
  std::vector<cplx> amps(state.amplitudes().begin(), state.amplitudes().end());
  electric_phase_in_place(amps, state.half_width(), phi);
  return PureState(state.half_width(), std::move(amps));
}

PureState step(const PureState& state, const StepConfig& cfg) { return evolve(state, cfg, 1); }

PureState evolve(const PureState& state, const StepConfig& cfg, int n) {
  if (n < 0) throw DomainError(fmt::format("step count must be >= 0, got {}", n));
  std::vector<cplx> amps(state.amplitudes().begin(), state.amplitudes().end());
  const CoinMatrix m = coin_matrix(cfg.coin);
  for (int k = 0; k < n; ++k) {
    coin_in_place(amps, m);
    shift_in_place(amps, state.half_width(), cfg.shift);
    electric_phase_in_place(amps, state.half_width(), cfg.electric_phase);
  }
  return PureState(state.half_width(), std::move(amps));
}

}  // namespace qwalk
