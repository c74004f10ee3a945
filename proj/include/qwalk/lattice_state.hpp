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

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace qwalk {

using cplx = std::complex<double>;

/// Raised when an argument violates a documented numeric range.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when two objects with incompatible lattice sizes are combined.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when amplitude sits on the outermost site of the lattice when a
/// step is about to move it. The lattice is never wrapped or reflected.
class BoundaryOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Spin { Up, Down };

inline constexpr Spin kSpins[2] = {Spin::Up, Spin::Down};

const char* to_string(Spin s);

/// Single-particle spinor (Up, Down) components.
struct Spinor {
  cplx up{1.0, 0.0};
  cplx down{0.0, 0.0};

  static Spinor of(Spin s);
  /// (|Up> + e^{i phase} |Down>) / sqrt(2).
  static Spinor equatorial(double phase);
};

// Basis ordering: x ascending from -L to +L, and within one site Up before
// Down. index = 2 * (x + L) + (s == Down).
inline std::size_t dimension(int half_width) {
  return 2 * static_cast<std::size_t>(2 * half_width + 1);
}
std::size_t basis_index(int half_width, int x, Spin s);
int basis_site(int half_width, std::size_t index);
Spin basis_spin(std::size_t index);

/// Dense amplitude vector over (site, spin) on [-L, L].
class PureState {
 public:
  PureState(int half_width, std::vector<cplx> amplitudes);

  /// All-zero vector of the right size.
  static PureState zero(int half_width);

  int half_width() const { return half_width_; }
  std::size_t dim() const { return amplitudes_.size(); }

  cplx amplitude(int x, Spin s) const {
    return amplitudes_[basis_index(half_width_, x, s)];
  }
  std::span<const cplx> amplitudes() const { return amplitudes_; }

  double norm_squared() const;
  /// True when the outermost sites carry exactly zero amplitude.
  bool boundary_clear() const;

  /// Copy scaled by 1/norm. Throws DomainError on a zero state.
  PureState normalized() const;

  std::vector<cplx> take_amplitudes() && { return std::move(amplitudes_); }

 private:
  int half_width_;
  std::vector<cplx> amplitudes_;
};

/// Row-major dense density matrix over the same basis as PureState.
class DensityOperator {
 public:
  DensityOperator(int half_width, std::vector<cplx> matrix);

  int half_width() const { return half_width_; }
  std::size_t dim() const { return dim_; }

  cplx operator()(std::size_t row, std::size_t col) const {
    return matrix_[row * dim_ + col];
  }
  std::span<const cplx> data() const { return matrix_; }

  cplx trace() const;
  double max_hermitian_defect() const;
  bool boundary_clear() const;

  std::vector<cplx> take_data() && { return std::move(matrix_); }

 private:
  int half_width_;
  std::size_t dim_;
  std::vector<cplx> matrix_;
};

/// Basis state |x0, s0>. Requires |x0| < L so the boundary stays empty.
PureState new_localized(int half_width, int x0, Spin s0);
/// Site x0 with an arbitrary internal spinor; spinor is normalized.
PureState new_localized(int half_width, int x0, const Spinor& spinor);

DensityOperator to_density(const PureState& psi);

/// <a|b>, antilinear in a.
cplx inner(const PureState& a, const PureState& b);

// JSON: {"half_width": L, "amplitudes": [[re, im], ...]} in basis order.
nlohmann::json to_json(const PureState& psi);
PureState pure_state_from_json(const nlohmann::json& j);

}  // namespace qwalk
