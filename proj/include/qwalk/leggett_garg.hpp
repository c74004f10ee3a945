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
#include <string>
#include <vector>

#include "qwalk/decoherence.hpp"
#include "qwalk/walk_ops.hpp"

namespace qwalk {

// Leggett-Garg test on a short walk started at x = 0.
//
//   t1: preparation, Q1 = +1.
//   t2: after `t2_after_step` steps; Q2 = +1 whatever the outcome, so only
//       the fact that a measurement happened matters.
//   t3: after `n_total` steps; Q3 = q3_value(x).
//
// K = <Q2 Q1> + <Q3 Q2> - <Q3 Q1>, where <Q3 Q1> is taken from a run with no
// measurement at t2. Macrorealism bounds K <= 1.

enum class MeasurementMode {
  /// Two spin-selective removal runs, one per surviving branch, combined with
  /// their survival weights.
  NegativeMeasurement,
  /// Full spin dephasing of the t2 state.
  Projective,
  /// No t2 measurement at all; c32 then equals c31 and K = 1.
  None,
};

const char* to_string(MeasurementMode m);
MeasurementMode measurement_mode_from_string(const std::string& s);

struct LGProtocolConfig {
  CoinParams coin{};
  ShiftMap shift{};
  int n_total = 4;
  int t2_after_step = 1;
  Spinor initial = Spinor::of(Spin::Up);
  MeasurementMode mode = MeasurementMode::NegativeMeasurement;
  /// Applied after every step; the default is the closed quantum walk.
  NoiseModel noise{};

  void validate() const;
};

struct LGResult {
  double theta = 0.0;
  double c21 = 1.0;
  double c32 = 0.0;
  double c31 = 0.0;
  double k = 0.0;
};

/// One surviving branch of the negative-measurement protocol.
struct LGBranch {
  Spin removed;
  double survival;
  double q3_mean;  // <Q3> of the renormalized branch
};

/// <Q(t2) Q(t1)>; both values are +1 by construction.
double correlator_c21();

/// <Q(t3) Q(t1)> from an unmeasured walk.
double run_without_t2(const LGProtocolConfig& cfg);

/// <Q(t3) Q(t2)> with the t2 measurement of `cfg.mode`.
///
/// In NegativeMeasurement mode the result is also computed by spin dephasing
/// and a std::logic_error is raised if the two disagree by more than 1e-12.
double run_with_t2(const LGProtocolConfig& cfg);

/// Branch table behind run_with_t2 in NegativeMeasurement mode.
std::vector<LGBranch> negative_measurement_branches(const LGProtocolConfig& cfg);

LGResult k_value(const LGProtocolConfig& cfg);

/// k_value at each theta, keeping every other field of `templ`.
std::vector<LGResult> theta_scan(std::span<const double> thetas, const LGProtocolConfig& templ);

/// "theta,c21,c32,c31,k" CSV body, 12 significant digits.
std::string to_csv(std::span<const LGResult> rows);

}  // namespace qwalk
