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

#include "qwalk/two_particle.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qwalk/measurement.hpp"
#include "qwalk/rng.hpp"

namespace qwalk {

namespace {

void check_unit_interval(const char* name, double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw DomainError(fmt::format("{} must lie in [0, 1], got {}", name, v));
  }
}

void transpose_in_place(std::vector<cplx>& m, std::size_t d) {
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) std::swap(m[i * d + j], m[j * d + i]);
  }
}

// A -> U A U^T, applying `kernel` (the action of U on one vector) to every
// row, transposing, and repeating.
template <typename Kernel>
TwoBosonState apply_both(const TwoBosonState& psi, Kernel kernel) {
  const std::size_t d = psi.single_dim();
  std::vector<cplx> m(psi.amplitudes().begin(), psi.amplitudes().end());
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t i = 0; i < d; ++i) kernel(std::span<cplx>(m.data() + i * d, d));
    transpose_in_place(m, d);
  }
  return TwoBosonState(psi.half_width(), std::move(m));
}

}  // namespace

TwoBosonState::TwoBosonState(int half_width, std::vector<cplx> amplitudes)
    : half_width_(half_width), dim_(dimension(half_width)), amps_(std::move(amplitudes)) {
  if (amps_.size() != dim_ * dim_) {
    throw ShapeError(fmt::format("two-boson amplitude array has {} entries, expected {}",
                                 amps_.size(), dim_ * dim_));
  }
  for (std::size_t a = 0; a < dim_; ++a) {
    for (std::size_t b = a + 1; b < dim_; ++b) {
      if (std::abs(amps_[a * dim_ + b] - amps_[b * dim_ + a]) > 1e-12) {
        throw DomainError("two-boson amplitudes are not exchange symmetric");
      }
    }
  }
}

double TwoBosonState::norm_squared() const {
  double sum = 0.0;
  for (const cplx& a : amps_) sum += std::norm(a);
  return sum;
}

TwoBosonState symmetrized_pair(const PureState& a, const PureState& b) {
  if (a.half_width() != b.half_width()) {
    throw ShapeError("symmetrized pair needs states on the same lattice");
  }
  const std::size_t d = a.dim();
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  std::vector<cplx> m(d * d);
  double norm2 = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      m[i * d + j] = x[i] * y[j] + y[i] * x[j];
      norm2 += std::norm(m[i * d + j]);
    }
  }
  if (!(norm2 > 0.0)) throw DomainError("symmetrized pair vanishes");
  const double inv = 1.0 / std::sqrt(norm2);
  for (cplx& v : m) v *= inv;
  return TwoBosonState(a.half_width(), std::move(m));
}

TwoBosonState apply_coin_both(const TwoBosonState& psi, const CoinParams& c) {
  const CoinMatrix m = coin_matrix(c);
  return apply_both(psi, [&](std::span<cplx> v) { coin_in_place(v, m); });
}

TwoBosonState apply_shift_both(const TwoBosonState& psi, const ShiftMap& shift) {
  const int L = psi.half_width();
  return apply_both(psi, [&](std::span<cplx> v) { shift_in_place(v, L, shift); });
}

cplx overlap(const TwoBosonState& a, const TwoBosonState& b) {
  if (a.half_width() != b.half_width()) throw ShapeError("overlap of mismatched lattices");
  cplx sum = 0.0;
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) sum += std::conj(x[i]) * y[i];
  return sum;
}

SiteStatistics site_statistics(const TwoBosonState& psi) {
  const int L = psi.half_width();
  const std::size_t d = psi.single_dim();
  SiteStatistics s;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      const double p = std::norm(psi.amplitude(a, b));
      if (basis_site(L, a) == basis_site(L, b)) {
        s.p_same_site += p;
      } else {
        s.p_diff_site += p;
      }
    }
  }
  return s;
}

TwoBosonState noon_state(int half_width) {
  const std::size_t d = dimension(half_width);
  std::vector<cplx> m(d * d);
  const std::size_t right_up = basis_index(half_width, 1, Spin::Up);
  const std::size_t left_down = basis_index(half_width, -1, Spin::Down);
  m[right_up * d + right_up] = 1.0 / std::numbers::sqrt2;
  m[left_down * d + left_down] = -1.0 / std::numbers::sqrt2;
  return TwoBosonState(half_width, std::move(m));
}

TwoBosonState hom_ideal(const ShiftMap& shift) {
  constexpr int kHalfWidth = 2;
  const TwoBosonState start = symmetrized_pair(new_localized(kHalfWidth, 0, Spin::Up),
                                               new_localized(kHalfWidth, 0, Spin::Down));
  const TwoBosonState mixed = apply_coin_both(start, CoinParams{std::numbers::pi / 2, 0.0, 0.0});
  return apply_shift_both(mixed, shift);
}

SiteStatistics distinguishable_site_statistics(const ShiftMap& shift) {
  constexpr int kHalfWidth = 2;
  const StepConfig cfg{CoinParams{std::numbers::pi / 2, 0.0, 0.0}, shift, 0.0};
  const PositionDistribution p1 =
      position_distribution(step(new_localized(kHalfWidth, 0, Spin::Up), cfg));
  const PositionDistribution p2 =
      position_distribution(step(new_localized(kHalfWidth, 0, Spin::Down), cfg));
  double same = 0.0;
  for (int x = -kHalfWidth; x <= kHalfWidth; ++x) same += p1.at(x) * p2.at(x);
  return {same, 1.0 - same};
}

DistinguishabilityModel DistinguishabilityModel::from_ground_state_populations(double atom1,
                                                                                double atom2) {
  check_unit_interval("ground-state population", atom1);
  check_unit_interval("ground-state population", atom2);
  return {atom1 * atom2};
}

void DistinguishabilityModel::validate() const { check_unit_interval("overlap", overlap); }

SiteStatistics hom_probabilities(const DistinguishabilityModel& model) {
  model.validate();
  const double p_diff = (1.0 - model.overlap) * 0.5;
  return {1.0 - p_diff, p_diff};
}

void DetectionModel::validate() const {
  check_unit_interval("survival", survival);
  check_unit_interval("pair loss efficiency", pair_loss_efficiency);
}

ObservedCounts detection_mc(double p_diff, const DetectionModel& det, std::uint64_t n_events,
                            std::uint64_t seed) {
  check_unit_interval("p_diff", p_diff);
  det.validate();
  if (n_events == 0) throw DomainError("detection Monte Carlo needs at least one event");
  ObservedCounts c;
  for (std::uint64_t i = 0; i < n_events; ++i) {
    Rng rng = Rng::stream(seed, i);
    const bool anti_bunched = rng.bernoulli(p_diff);
    const bool first = rng.bernoulli(det.survival);
    const bool second = rng.bernoulli(det.survival);
    const bool pair_lost = rng.bernoulli(det.pair_loss_efficiency);
    const int survivors = static_cast<int>(first) + static_cast<int>(second);
    if (survivors == 0) {
      ++c.none_seen;
    } else if (survivors == 1) {
      ++c.one_seen;
    } else if (anti_bunched) {
      ++c.anti_bunched_seen;
    } else if (det.parity_projection && pair_lost) {
      ++c.none_seen;
    } else {
      ++c.both_seen;
    }
  }
  return c;
}

double expected_anti_bunched_rate(double p_diff, const DetectionModel& det) {
  return p_diff * det.survival * det.survival;
}

double hom_significance(const ObservedCounts& observed, double baseline_rate) {
  const double n = static_cast<double>(observed.total());
  const double expected = n * baseline_rate;
  const double variance = n * baseline_rate * (1.0 - baseline_rate);
  if (!(expected > 0.0) || !(variance > 0.0)) {
    throw DomainError("significance needs a baseline with nonzero expected counts and variance");
  }
  return (expected - static_cast<double>(observed.anti_bunched_seen)) / std::sqrt(variance);
}

}  // namespace qwalk
