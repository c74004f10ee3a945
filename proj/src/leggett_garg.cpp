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

#include "qwalk/leggett_garg.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "qwalk/measurement.hpp"

namespace qwalk {

namespace {

StepConfig step_config(const LGProtocolConfig& cfg) {
  return StepConfig{cfg.coin, cfg.shift, 0.0};
}

int lattice_half_width(const LGProtocolConfig& cfg) { return cfg.n_total + 1; }

DensityOperator initial_density(const LGProtocolConfig& cfg) {
  return to_density(new_localized(lattice_half_width(cfg), 0, cfg.initial));
}

double q3_of(const DensityOperator& rho) {
  const PositionDistribution d = position_distribution(rho);
  return q3_expectation(d) / d.weight();
}

DensityOperator scaled(const DensityOperator& rho, double factor) {
  std::vector<cplx> m(rho.data().begin(), rho.data().end());
  for (cplx& v : m) v *= factor;
  return DensityOperator(rho.half_width(), std::move(m));
}

double projective_c32(const LGProtocolConfig& cfg) {
  const StepConfig step = step_config(cfg);
  DensityOperator rho = evolve_density(initial_density(cfg), step, cfg.noise, cfg.t2_after_step);
  rho = channel_spin_project(rho, 1.0);
  rho = evolve_density(rho, step, cfg.noise, cfg.n_total - cfg.t2_after_step);
  return q3_of(rho);
}

double combine(const std::vector<LGBranch>& branches) {
  double sum = 0.0;
  for (const LGBranch& b : branches) sum += b.survival * b.q3_mean;  // Q2 = +1
  return sum;
}

}  // namespace

const char* to_string(MeasurementMode m) {
  switch (m) {
    case MeasurementMode::NegativeMeasurement:
      return "negative";
    case MeasurementMode::Projective:
      return "projective";
    case MeasurementMode::None:
      return "none";
  }
  return "?";
}

MeasurementMode measurement_mode_from_string(const std::string& s) {
  if (s == "negative") return MeasurementMode::NegativeMeasurement;
  if (s == "projective") return MeasurementMode::Projective;
  if (s == "none") return MeasurementMode::None;
  throw DomainError(fmt::format("unknown measurement mode '{}'", s));
}

void LGProtocolConfig::validate() const {
  if (!(t2_after_step >= 1 && t2_after_step < n_total)) {
    throw DomainError(fmt::format("need 1 <= t2_after_step < n_total, got t2={} n={}",
                                  t2_after_step, n_total));
  }
  noise.validate();
}

double correlator_c21() { return 1.0; }

double run_without_t2(const LGProtocolConfig& cfg) {
  cfg.validate();
  const StepConfig step = step_config(cfg);
  if (cfg.noise.noiseless()) {
    const PureState psi = new_localized(lattice_half_width(cfg), 0, cfg.initial);
    return q3_expectation(position_distribution(evolve(psi, step, cfg.n_total)));
  }
  return q3_of(evolve_density(initial_density(cfg), step, cfg.noise, cfg.n_total));
}

std::vector<LGBranch> negative_measurement_branches(const LGProtocolConfig& cfg) {
  cfg.validate();
  const StepConfig step = step_config(cfg);
  const int remaining = cfg.n_total - cfg.t2_after_step;
  std::vector<LGBranch> branches;
  // Removing Down keeps the Up branch, and the reverse.
  for (Spin removed : {Spin::Down, Spin::Up}) {
    LGBranch b{removed, 0.0, 0.0};
    if (cfg.noise.noiseless()) {
      const PureState psi = evolve(new_localized(lattice_half_width(cfg), 0, cfg.initial), step,
                                   cfg.t2_after_step);
      const SpinRemoval r = remove_spin(psi, removed);
      b.survival = r.survival;
      if (r.survival > 0.0) {
        const PureState rest = evolve(r.state.normalized(), step, remaining);
        b.q3_mean = q3_expectation(position_distribution(rest));
      }
    } else {
      const DensityOperator rho =
          evolve_density(initial_density(cfg), step, cfg.noise, cfg.t2_after_step);
      const DensitySpinRemoval r = remove_spin(rho, removed);
      b.survival = r.survival;
      if (r.survival > 0.0) {
        const DensityOperator rest =
            evolve_density(scaled(r.state, 1.0 / r.survival), step, cfg.noise, remaining);
        b.q3_mean = q3_of(rest);
      }
    }
    branches.push_back(b);
  }
  return branches;
}

double run_with_t2(const LGProtocolConfig& cfg) {
  cfg.validate();
  switch (cfg.mode) {
    case MeasurementMode::None:
      return run_without_t2(cfg);
    case MeasurementMode::Projective:
      return projective_c32(cfg);
    case MeasurementMode::NegativeMeasurement: {
      const double negative = combine(negative_measurement_branches(cfg));
      const double projective = projective_c32(cfg);
      if (std::abs(negative - projective) > 1e-12) {
        throw std::logic_error(fmt::format(
            "negative-measurement and projective correlators disagree: {} vs {}", negative,
            projective));
      }
      return negative;
    }
  }
  throw std::logic_error("unhandled measurement mode");
}

LGResult k_value(const LGProtocolConfig& cfg) {
  LGResult r;
  r.theta = cfg.coin.theta;
  r.c21 = correlator_c21();
  r.c32 = run_with_t2(cfg);
  r.c31 = run_without_t2(cfg);
  r.k = r.c21 + r.c32 - r.c31;
  return r;
}

std::vector<LGResult> theta_scan(std::span<const double> thetas, const LGProtocolConfig& templ) {
  if (thetas.empty()) throw DomainError("theta scan needs at least one angle");
  std::vector<LGResult> out;
  out.reserve(thetas.size());
  for (double theta : thetas) {
    LGProtocolConfig cfg = templ;
    cfg.coin.theta = theta;
    out.push_back(k_value(cfg));
  }
  return out;
}

std::string to_csv(std::span<const LGResult> rows) {
  std::string out = "theta,c21,c32,c31,k\n";
  for (const LGResult& r : rows) {
    out += fmt::format("{:.12g},{:.12g},{:.12g},{:.12g},{:.12g}\n", r.theta, r.c21, r.c32, r.c31,
                       r.k);
  }
  return out;
}

}  // namespace qwalk
