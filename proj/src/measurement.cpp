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

#include "qwalk/measurement.hpp"

#include <cmath>

#include <fmt/format.h>

namespace qwalk {

double PositionDistribution::weight() const {
  double sum = 0.0;
  for (double p : probs) sum += p;
  return sum;
}

double PositionDistribution::mean() const {
  double m = 0.0;
  for (int x = -half_width; x <= half_width; ++x) m += x * at(x);
  return m;
}

PositionDistribution position_distribution(const PureState& psi) {
  const int L = psi.half_width();
  PositionDistribution d{L, std::vector<double>(2 * L + 1)};
  const auto a = psi.amplitudes();
  for (std::size_t i = 0; i < a.size(); i += 2) {
    d.probs[i / 2] = std::norm(a[i]) + std::norm(a[i + 1]);
  }
  return d;
}

PositionDistribution position_distribution(const DensityOperator& rho) {
  const int L = rho.half_width();
  PositionDistribution d{L, std::vector<double>(2 * L + 1)};
  for (std::size_t i = 0; i < rho.dim(); i += 2) {
    d.probs[i / 2] = rho(i, i).real() + rho(i + 1, i + 1).real();
  }
  return d;
}

double rms_width(const PositionDistribution& d) {
  const double w = d.weight();
  if (std::abs(w - 1.0) > 1e-10) {
    throw DomainError(fmt::format("rms width needs a normalized distribution, total is {}", w));
  }
  double m1 = 0.0;
  double m2 = 0.0;
  for (int x = -d.half_width; x <= d.half_width; ++x) {
    m1 += x * d.at(x);
    m2 += static_cast<double>(x) * x * d.at(x);
  }
  return std::sqrt(std::max(0.0, m2 - m1 * m1));
}

SpinRemoval remove_spin(const PureState& psi, Spin removed) {
  std::vector<cplx> amps(psi.amplitudes().begin(), psi.amplitudes().end());
  const std::size_t offset = removed == Spin::Up ? 0 : 1;
  double survival = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i % 2 == offset) {
      amps[i] = 0.0;
    } else {
      survival += std::norm(amps[i]);
    }
  }
  return {PureState(psi.half_width(), std::move(amps)), survival};
}

DensitySpinRemoval remove_spin(const DensityOperator& rho, Spin removed) {
  const std::size_t d = rho.dim();
  const std::size_t offset = removed == Spin::Up ? 0 : 1;
  std::vector<cplx> m(rho.data().begin(), rho.data().end());
  double survival = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (i % 2 == offset || j % 2 == offset) m[i * d + j] = 0.0;
    }
    if (i % 2 != offset) survival += m[i * d + i].real();
  }
  return {DensityOperator(rho.half_width(), std::move(m)), survival};
}

double q3_expectation(const PositionDistribution& d) {
  double sum = 0.0;
  for (int x = -d.half_width; x <= d.half_width; ++x) sum += q3_value(x) * d.at(x);
  return sum;
}

int sample_position(const PositionDistribution& d, Rng& rng) {
  const double u = rng.uniform() * d.weight();
  double acc = 0.0;
  int last_nonzero = -d.half_width;
  for (int x = -d.half_width; x <= d.half_width; ++x) {
    const double p = d.at(x);
    if (p <= 0.0) continue;
    acc += p;
    last_nonzero = x;
    if (u < acc) return x;
  }
  return last_nonzero;
}

std::string to_csv(const PositionDistribution& d) {
  std::string out = "x,probability\n";
  for (int x = -d.half_width; x <= d.half_width; ++x) {
    out += fmt::format("{},{:.12g}\n", x, d.at(x));
  }
  return out;
}

}  // namespace qwalk
