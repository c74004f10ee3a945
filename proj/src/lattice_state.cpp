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

#include "qwalk/lattice_state.hpp"

#include <cmath>

#include <fmt/format.h>

namespace qwalk {

const char* to_string(Spin s) { return s == Spin::Up ? "up" : "down"; }

Spinor Spinor::of(Spin s) {
  return s == Spin::Up ? Spinor{{1.0, 0.0}, {0.0, 0.0}}
                       : Spinor{{0.0, 0.0}, {1.0, 0.0}};
}

Spinor Spinor::equatorial(double phase) {
  const double r = 1.0 / std::sqrt(2.0);
  return Spinor{{r, 0.0}, std::polar(r, phase)};
}

std::size_t basis_index(int half_width, int x, Spin s) {
  return 2 * static_cast<std::size_t>(x + half_width) + (s == Spin::Down ? 1 : 0);
}

int basis_site(int half_width, std::size_t index) {
  return static_cast<int>(index / 2) - half_width;
}

Spin basis_spin(std::size_t index) { return index % 2 == 0 ? Spin::Up : Spin::Down; }

namespace {

void check_half_width(int half_width) {
  if (half_width < 1) {
    throw DomainError(fmt::format("half width must be >= 1, got {}", half_width));
  }
}

}  // namespace

PureState::PureState(int half_width, std::vector<cplx> amplitudes)
    : half_width_(half_width), amplitudes_(std::move(amplitudes)) {
  check_half_width(half_width);
  if (amplitudes_.size() != dimension(half_width)) {
    throw ShapeError(fmt::format("amplitude vector has length {}, expected {} for L={}",
                                 amplitudes_.size(), dimension(half_width), half_width));
  }
}

PureState PureState::zero(int half_width) {
  check_half_width(half_width);
  return PureState(half_width, std::vector<cplx>(dimension(half_width)));
}

double PureState::norm_squared() const {
  double sum = 0.0;
  for (const cplx& a : amplitudes_) sum += std::norm(a);
  return sum;
}

bool PureState::boundary_clear() const {
  const std::size_t d = amplitudes_.size();
  return amplitudes_[0] == 0.0 && amplitudes_[1] == 0.0 && amplitudes_[d - 2] == 0.0 &&
         amplitudes_[d - 1] == 0.0;
}

PureState PureState::normalized() const {
  const double n2 = norm_squared();
  if (!(n2 > 0.0)) throw DomainError("cannot normalize a zero state");
  const double inv = 1.0 / std::sqrt(n2);
  std::vector<cplx> out(amplitudes_);
  for (cplx& a : out) a *= inv;
  return PureState(half_width_, std::move(out));
}

DensityOperator::DensityOperator(int half_width, std::vector<cplx> matrix)
    : half_width_(half_width), dim_(dimension(half_width)), matrix_(std::move(matrix)) {
  check_half_width(half_width);
  if (matrix_.size() != dim_ * dim_) {
    throw ShapeError(fmt::format("density matrix has {} entries, expected {}x{}",
                                 matrix_.size(), dim_, dim_));
  }
}

cplx DensityOperator::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += matrix_[i * dim_ + i];
  return t;
}

double DensityOperator::max_hermitian_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i; j < dim_; ++j) {
      worst = std::max(worst, std::abs(matrix_[i * dim_ + j] - std::conj(matrix_[j * dim_ + i])));
    }
  }
  return worst;
}

bool DensityOperator::boundary_clear() const {
  // Positivity makes a zero diagonal entry imply a zero row and column.
  for (std::size_t i : {std::size_t{0}, std::size_t{1}, dim_ - 2, dim_ - 1}) {
    if (matrix_[i * dim_ + i] != 0.0) return false;
  }
  return true;
}

PureState new_localized(int half_width, int x0, Spin s0) {
  return new_localized(half_width, x0, Spinor::of(s0));
}

PureState new_localized(int half_width, int x0, const Spinor& spinor) {
  check_half_width(half_width);
  if (x0 <= -half_width || x0 >= half_width) {
    throw DomainError(fmt::format("initial site {} violates |x0| < L = {}", x0, half_width));
  }
  const double n = std::sqrt(std::norm(spinor.up) + std::norm(spinor.down));
  if (!(n > 0.0)) throw DomainError("initial spinor is zero");
  std::vector<cplx> amps(dimension(half_width));
  amps[basis_index(half_width, x0, Spin::Up)] = spinor.up / n;
  amps[basis_index(half_width, x0, Spin::Down)] = spinor.down / n;
  return PureState(half_width, std::move(amps));
}

DensityOperator to_density(const PureState& psi) {
  const std::size_t d = psi.dim();
  const auto a = psi.amplitudes();
  std::vector<cplx> rho(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < d; ++j) rho[i * d + j] = a[i] * std::conj(a[j]);
  }
  return DensityOperator(psi.half_width(), std::move(rho));
}

cplx inner(const PureState& a, const PureState& b) {
  if (a.half_width() != b.half_width()) {
    throw ShapeError(fmt::format("inner product of states with L={} and L={}", a.half_width(),
                                 b.half_width()));
  }
  cplx sum = 0.0;
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) sum += std::conj(x[i]) * y[i];
  return sum;
}

nlohmann::json to_json(const PureState& psi) {
  nlohmann::json amps = nlohmann::json::array();
  for (const cplx& a : psi.amplitudes()) amps.push_back({a.real(), a.imag()});
  return {{"half_width", psi.half_width()}, {"amplitudes", std::move(amps)}};
}

PureState pure_state_from_json(const nlohmann::json& j) {
  const int half_width = j.at("half_width").get<int>();
  std::vector<cplx> amps;
  for (const auto& pair : j.at("amplitudes")) {
    if (!pair.is_array() || pair.size() != 2) {
      throw ShapeError("each amplitude must be a [re, im] pair");
    }
    amps.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return PureState(half_width, std::move(amps));
}

}  // namespace qwalk
