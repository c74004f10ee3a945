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

#include "qwalk/decoherence.hpp"

#include <cmath>

#include <fmt/format.h>

namespace qwalk {

namespace {

void check_probability(const char* name, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError(fmt::format("{} must lie in [0, 1], got {}", name, p));
  }
}

// r <- conj(U conj(r)) for every row r, i.e. rho -> rho U^dagger.
void right_multiply_step_adjoint(std::vector<cplx>& m, std::size_t d, int half_width,
                                 const StepConfig& cfg) {
  const CoinMatrix coin = coin_matrix(cfg.coin);
  for (std::size_t i = 0; i < d; ++i) {
    std::span<cplx> row(m.data() + i * d, d);
    for (cplx& v : row) v = std::conj(v);
    coin_in_place(row, coin);
    shift_in_place(row, half_width, cfg.shift);
    electric_phase_in_place(row, half_width, cfg.electric_phase);
    for (cplx& v : row) v = std::conj(v);
  }
}

void adjoint_in_place(std::vector<cplx>& m, std::size_t d) {
  for (std::size_t i = 0; i < d; ++i) {
    m[i * d + i] = std::conj(m[i * d + i]);
    for (std::size_t j = i + 1; j < d; ++j) {
      const cplx a = m[i * d + j];
      m[i * d + j] = std::conj(m[j * d + i]);
      m[j * d + i] = std::conj(a);
    }
  }
}

void project_and_renormalize(std::vector<cplx>& amps, const std::vector<bool>& keep) {
  double kept = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (keep[i]) {
      kept += std::norm(amps[i]);
    } else {
      amps[i] = 0.0;
    }
  }
  const double inv = 1.0 / std::sqrt(kept);
  for (cplx& a : amps) a *= inv;
}

}  // namespace

void NoiseModel::validate() const {
  check_probability("p_spin", p_spin);
  check_probability("p_pos", p_pos);
}

DiagonalChannel::DiagonalChannel(int half_width, std::vector<std::vector<cplx>> kraus_diagonals)
    : half_width_(half_width), kraus_(std::move(kraus_diagonals)) {
  const std::size_t d = dimension(half_width);
  multiplier_.assign(d * d, 0.0);
  std::vector<std::size_t> support;
  for (const auto& k : kraus_) {
    if (k.size() != d) throw ShapeError("Kraus diagonal does not match the lattice dimension");
    support.clear();
    for (std::size_t i = 0; i < d; ++i) {
      if (k[i] != 0.0) support.push_back(i);
    }
    for (std::size_t i : support) {
      for (std::size_t j : support) multiplier_[i * d + j] += k[i] * std::conj(k[j]);
    }
  }
}

double DiagonalChannel::completeness_defect() const {
  const std::size_t d = dimension(half_width_);
  double worst = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    double sum = 0.0;
    for (const auto& k : kraus_) sum += std::norm(k[i]);
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

void DiagonalChannel::apply_in_place(std::vector<cplx>& matrix) const {
  for (std::size_t i = 0; i < matrix.size(); ++i) matrix[i] *= multiplier_[i];
}

DensityOperator DiagonalChannel::apply(const DensityOperator& rho) const {
  if (rho.half_width() != half_width_) {
    throw ShapeError(fmt::format("channel built for L={} applied to L={}", half_width_,
                                 rho.half_width()));
  }
  std::vector<cplx> m(rho.data().begin(), rho.data().end());
  apply_in_place(m);
  return DensityOperator(half_width_, std::move(m));
}

DiagonalChannel spin_projection_channel(int half_width, double p) {
  check_probability("spin projection probability", p);
  const std::size_t d = dimension(half_width);
  std::vector<std::vector<cplx>> kraus;
  kraus.emplace_back(d, cplx(std::sqrt(1.0 - p)));
  for (Spin s : kSpins) {
    std::vector<cplx> k(d);
    for (std::size_t i = 0; i < d; ++i) {
      if (basis_spin(i) == s) k[i] = std::sqrt(p);
    }
    kraus.push_back(std::move(k));
  }
  return DiagonalChannel(half_width, std::move(kraus));
}

DiagonalChannel position_projection_channel(int half_width, double p) {
  check_probability("position projection probability", p);
  const std::size_t d = dimension(half_width);
  std::vector<std::vector<cplx>> kraus;
  kraus.emplace_back(d, cplx(std::sqrt(1.0 - p)));
  for (int x = -half_width; x <= half_width; ++x) {
    std::vector<cplx> k(d);
    k[basis_index(half_width, x, Spin::Up)] = std::sqrt(p);
    k[basis_index(half_width, x, Spin::Down)] = std::sqrt(p);
    kraus.push_back(std::move(k));
  }
  return DiagonalChannel(half_width, std::move(kraus));
}

DensityOperator channel_spin_project(const DensityOperator& rho, double p) {
  return spin_projection_channel(rho.half_width(), p).apply(rho);
}

DensityOperator channel_pos_project(const DensityOperator& rho, double p) {
  return position_projection_channel(rho.half_width(), p).apply(rho);
}

DensityOperator apply_step(const DensityOperator& rho, const StepConfig& cfg) {
  if (!rho.boundary_clear()) {
    throw BoundaryOverflow(fmt::format(
        "density reached the lattice edge |x| = {}; allocate a larger half width",
        rho.half_width()));
  }
  const std::size_t d = rho.dim();
  std::vector<cplx> m(rho.data().begin(), rho.data().end());
  // rho U^dagger, then (rho U^dagger)^dagger = U rho, then U rho U^dagger.
  right_multiply_step_adjoint(m, d, rho.half_width(), cfg);
  adjoint_in_place(m, d);
  right_multiply_step_adjoint(m, d, rho.half_width(), cfg);
  return DensityOperator(rho.half_width(), std::move(m));
}

DensityOperator evolve_density(const DensityOperator& rho, const StepConfig& cfg,
                               const NoiseModel& noise, int n) {
  if (n < 0) throw DomainError(fmt::format("step count must be >= 0, got {}", n));
  DensityOperator out = rho;
  evolve_density_observed(rho, cfg, noise, n, [&](int k, const DensityOperator& r) {
    if (k == n) out = r;
  });
  return out;
}

PureState evolve_trajectory(const PureState& psi, const StepConfig& cfg,
                            const NoiseModel& noise, int n, Rng& rng) {
  noise.validate();
  if (n < 0) throw DomainError(fmt::format("step count must be >= 0, got {}", n));
  const int L = psi.half_width();
  std::vector<cplx> amps(psi.amplitudes().begin(), psi.amplitudes().end());
  std::vector<bool> keep(amps.size());
  for (int k = 0; k < n; ++k) {
    step_in_place(amps, L, cfg);

    if (rng.bernoulli(noise.p_spin)) {
      double p_up = 0.0;
      double total = 0.0;
      for (std::size_t i = 0; i < amps.size(); ++i) {
        total += std::norm(amps[i]);
        if (i % 2 == 0) p_up += std::norm(amps[i]);
      }
      const Spin kept = rng.uniform() * total < p_up ? Spin::Up : Spin::Down;
      for (std::size_t i = 0; i < amps.size(); ++i) keep[i] = basis_spin(i) == kept;
      project_and_renormalize(amps, keep);
    }

    if (rng.bernoulli(noise.p_pos)) {
      const PositionDistribution d = position_distribution(PureState(L, amps));
      const int x = sample_position(d, rng);
      for (std::size_t i = 0; i < amps.size(); ++i) keep[i] = basis_site(L, i) == x;
      project_and_renormalize(amps, keep);
    }
  }
  return PureState(L, std::move(amps));
}

TrajectoryEnsemble trajectory_ensemble(const PureState& psi, const StepConfig& cfg,
                                       const NoiseModel& noise, int n,
                                       std::uint64_t trajectories, std::uint64_t master_seed) {
  if (trajectories < 2) throw DomainError("an ensemble needs at least two trajectories");
  const std::size_t d = psi.dim();
  std::vector<cplx> sum(d * d);
  std::vector<double> sq_re(d * d);
  std::vector<double> sq_im(d * d);
  for (std::uint64_t t = 0; t < trajectories; ++t) {
    Rng rng = Rng::stream(master_seed, t);
    const PureState out = evolve_trajectory(psi, cfg, noise, n, rng);
    const auto a = out.amplitudes();
    for (std::size_t i = 0; i < d; ++i) {
      if (a[i] == 0.0) continue;
      for (std::size_t j = 0; j < d; ++j) {
        const cplx v = a[i] * std::conj(a[j]);
        sum[i * d + j] += v;
        sq_re[i * d + j] += v.real() * v.real();
        sq_im[i * d + j] += v.imag() * v.imag();
      }
    }
  }
  const double count = static_cast<double>(trajectories);
  std::vector<double> se_re(d * d);
  std::vector<double> se_im(d * d);
  for (std::size_t i = 0; i < d * d; ++i) {
    sum[i] /= count;
    const double var_re = (sq_re[i] / count - sum[i].real() * sum[i].real()) * count / (count - 1);
    const double var_im = (sq_im[i] / count - sum[i].imag() * sum[i].imag()) * count / (count - 1);
    se_re[i] = std::sqrt(std::max(0.0, var_re) / count);
    se_im[i] = std::sqrt(std::max(0.0, var_im) / count);
  }
  return {DensityOperator(psi.half_width(), std::move(sum)), std::move(se_re), std::move(se_im),
          trajectories};
}

PositionDistribution trajectory_histogram(const PureState& psi, const StepConfig& cfg,
                                          const NoiseModel& noise, int n,
                                          std::uint64_t trajectories,
                                          std::uint64_t master_seed) {
  if (trajectories == 0) throw DomainError("trajectory count must be positive");
  const int L = psi.half_width();
  std::vector<std::uint64_t> counts(2 * L + 1);
  for (std::uint64_t t = 0; t < trajectories; ++t) {
    Rng rng = Rng::stream(master_seed, t);
    const PureState out = evolve_trajectory(psi, cfg, noise, n, rng);
    const int x = sample_position(position_distribution(out), rng);
    ++counts[static_cast<std::size_t>(x + L)];
  }
  PositionDistribution d{L, std::vector<double>(counts.size())};
  for (std::size_t i = 0; i < counts.size(); ++i) {
    d.probs[i] = static_cast<double>(counts[i]) / static_cast<double>(trajectories);
  }
  return d;
}

}  // namespace qwalk
