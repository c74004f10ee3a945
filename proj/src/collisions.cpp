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

#include "qwalk/collisions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include "qwalk/lattice_state.hpp"

namespace qwalk {

namespace {

constexpr double kMinusInf = -std::numeric_limits<double>::infinity();

double term(std::uint64_t n, double prob) {
  if (n == 0) return 0.0;
  if (prob <= 0.0) return kMinusInf;
  return static_cast<double>(n) * std::log(prob);
}

// Profile log-likelihood in P_coll, maximizing over P unless it is known.
double profile(const CollisionCounts& c, double p_coll, std::optional<double> p_known) {
  if (p_known) return collision_log_likelihood(c, *p_known, p_coll);
  auto negative = [&](double p) {
    const double l = collision_log_likelihood(c, p, p_coll);
    return std::isfinite(l) ? -l : std::numeric_limits<double>::max();
  };
  const auto [p_best, neg_best] = boost::math::tools::brent_find_minima(negative, 0.0, 1.0, 52);
  (void)p_best;
  return -std::max(neg_best, -std::numeric_limits<double>::max());
}

double p_coll_given_p(const CollisionCounts& c, double p, bool& boundary) {
  const double q = (1.0 - p) * (1.0 - p);
  const double n0 = static_cast<double>(c.n0);
  const double n2 = static_cast<double>(c.n2);
  if (c.n0 + c.n2 == 0 || q == 0.0) {
    boundary = true;
    return 0.0;
  }
  const double raw = (n0 * q - n2 * p * p) / (q * (n0 + n2));
  const double clamped = std::clamp(raw, 0.0, 1.0);
  if (clamped != raw) boundary = true;
  return clamped;
}

}  // namespace

void LossModelParams::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError(fmt::format("P must lie in [0, 1], got {}", p));
  if (!(p_coll >= 0.0 && p_coll <= 1.0)) {
    throw DomainError(fmt::format("P_coll must lie in [0, 1], got {}", p_coll));
  }
}

OutcomeProbabilities outcome_probabilities(const LossModelParams& params) {
  params.validate();
  const double stay = 1.0 - params.p;
  return {stay * stay * params.p_coll + params.p * params.p, 2.0 * params.p * stay,
          stay * stay * (1.0 - params.p_coll)};
}

CollisionCounts sample_counts(const LossModelParams& params, std::uint64_t n_events, Rng& rng) {
  if (n_events == 0) throw DomainError("sampling needs at least one event");
  const OutcomeProbabilities pr = outcome_probabilities(params);
  CollisionCounts c;
  for (std::uint64_t i = 0; i < n_events; ++i) {
    const double u = rng.uniform();
    if (u < pr.p0) {
      ++c.n0;
    } else if (u < pr.p0 + pr.p1) {
      ++c.n1;
    } else {
      ++c.n2;
    }
  }
  return c;
}

double collision_log_likelihood(const CollisionCounts& counts, double p, double p_coll) {
  const OutcomeProbabilities pr = outcome_probabilities({p, p_coll});
  return term(counts.n0, pr.p0) + term(counts.n1, pr.p1) + term(counts.n2, pr.p2);
}

PCollEstimate estimate_pcoll(const CollisionCounts& counts, std::optional<double> p_known) {
  if (counts.total() == 0) throw DomainError("estimation needs at least one event");
  if (p_known && !(*p_known >= 0.0 && *p_known <= 1.0)) {
    throw DomainError(fmt::format("known P must lie in [0, 1], got {}", *p_known));
  }

  PCollEstimate est{0.0, 0.0, 1.0, 0.0, false};
  if (p_known) {
    est.p = *p_known;
    if (counts.n1 > 0 && (est.p == 0.0 || est.p == 1.0)) {
      throw DomainError("single-survivor events are impossible under the known P");
    }
  } else {
    const double f = static_cast<double>(counts.n1) / static_cast<double>(counts.total());
    if (f > 0.5) {
      est.p = 0.5;
      est.boundary = true;
    } else {
      est.p = 0.5 * (1.0 - std::sqrt(1.0 - 2.0 * f));
    }
  }
  est.p_coll = p_coll_given_p(counts, est.p, est.boundary);

  const double best = profile(counts, est.p_coll, p_known);
  const double threshold = best - 0.5 * kChi2OneDof95;
  auto excess = [&](double pc) {
    const double l = profile(counts, pc, p_known);
    return (std::isfinite(l) ? l : -1e300) - threshold;
  };
  boost::math::tools::eps_tolerance<double> tol(48);
  auto solve = [&](double lo, double hi) {
    std::uintmax_t iters = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(excess, lo, hi, tol, iters);
    return 0.5 * (a + b);
  };
  est.ci_low = excess(0.0) >= 0.0 ? 0.0 : solve(0.0, est.p_coll);
  est.ci_high = excess(1.0) >= 0.0 ? 1.0 : solve(est.p_coll, 1.0);
  return est;
}

std::vector<LossSeriesRow> loss_vs_time_series(std::span<const double> p_coll_per_point,
                                               double p, std::uint64_t n_events,
                                               std::uint64_t seed,
                                               std::optional<double> p_known) {
  if (p_coll_per_point.empty()) throw DomainError("loss series needs at least one point");
  std::vector<LossSeriesRow> rows;
  for (std::size_t i = 0; i < p_coll_per_point.size(); ++i) {
    Rng rng = Rng::stream(seed, i);
    const CollisionCounts c = sample_counts({p, p_coll_per_point[i]}, n_events, rng);
    rows.push_back({i, p_coll_per_point[i], estimate_pcoll(c, p_known)});
  }
  return rows;
}

std::string to_csv(std::span<const LossSeriesRow> rows) {
  std::string out = "point,true_pcoll,estimate,ci_low,ci_high\n";
  for (const LossSeriesRow& r : rows) {
    out += fmt::format("{},{:.12g},{:.12g},{:.12g},{:.12g}\n", r.point, r.true_p_coll,
                       r.estimate.p_coll, r.estimate.ci_low, r.estimate.ci_high);
  }
  return out;
}

}  // namespace qwalk
