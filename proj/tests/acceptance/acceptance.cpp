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

// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "qwalk/collisions.hpp"
#include "qwalk/decoherence.hpp"
#include "qwalk/leggett_garg.hpp"
#include "qwalk/measurement.hpp"
#include "qwalk/two_particle.hpp"
#include "qwalk/walk_ops.hpp"
#include "unit/oracles.hpp"

namespace {

using namespace qwalk;
namespace fs = std::filesystem;

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;
  std::function<Outcome()> check;
};

LGProtocolConfig lg_at(double theta) {
  LGProtocolConfig cfg;
  cfg.coin.theta = theta;
  return cfg;
}

std::vector<double> lg_grid() {
  std::vector<double> g(25);
  for (int i = 0; i < 25; ++i) g[static_cast<std::size_t>(i)] = kPi * i / 24.0;
  return g;
}

Outcome lg_boundary() {
  const double k0 = k_value(lg_at(0.0)).k;
  const double kpi = k_value(lg_at(kPi)).k;
  const bool ok = std::abs(k0 - 1.0) <= 1e-12 && std::abs(kpi - 1.0) <= 1e-12;
  return {ok, fmt::format("K(0)={:.15g} K(pi)={:.15g}", k0, kpi)};
}

Outcome lg_violation() {
  oracle::WalkSpec w;
  w.theta = kPi / 2;
  const double ref = oracle::leggett_garg(w, 4, 1).k;
  const double k = k_value(lg_at(kPi / 2)).k;
  double grid_max = -1e9;
  double arg = 0.0;
  const std::vector<double> g = lg_grid();
  for (const LGResult& r : theta_scan(g, LGProtocolConfig{})) {
    if (r.k > grid_max) {
      grid_max = r.k;
      arg = r.theta;
    }
  }
  const bool ok = k > 1.0 && std::abs(k - ref) <= 1e-12 && k >= grid_max - 1e-12 &&
                  std::abs(arg - kPi / 2) < 1e-12;
  return {ok, fmt::format("K(pi/2)={:.15g} oracle={:.15g} grid max {:.15g} at {:.6g}", k, ref,
                          grid_max, arg)};
}

Outcome lg_classical() {
  double worst = -1e9;
  for (double theta : lg_grid()) {
    LGProtocolConfig cfg = lg_at(theta);
    cfg.noise = NoiseModel{1.0, 0.0};
    worst = std::max(worst, k_value(cfg).k);
  }
  return {worst <= 1.0 + 1e-10, fmt::format("max K over grid = {:.15g}", worst)};
}

Outcome walk_distribution() {
  const int n = 20;
  const PureState psi = evolve(new_localized(n + 1, 0, Spin::Up), StepConfig{{kPi / 2}}, n);
  const PositionDistribution d = position_distribution(psi);
  oracle::WalkSpec w;
  w.theta = kPi / 2;
  const std::vector<double> ref = oracle::site_probs(oracle::path_sum(w, n, n + 1));
  double worst = 0.0;
  int argmax = -n - 1;
  for (int x = -n - 1; x <= n + 1; ++x) {
    worst = std::max(worst, std::abs(d.at(x) - ref[static_cast<std::size_t>(x + n + 1)]));
    if (d.at(x) > d.at(argmax)) argmax = x;
  }
  const double norm_defect = std::abs(d.weight() - 1.0);
  const bool ok = worst <= 1e-10 && norm_defect <= 1e-12 && argmax < 0;
  return {ok, fmt::format("max site diff {:.3g}, norm defect {:.3g}, peak at x={}", worst,
                          norm_defect, argmax)};
}

Outcome spreading_laws() {
  const int n_max = 100;
  const int L = n_max + 1;
  const StepConfig cfg{{kPi / 2}};
  double worst = 0.0;
  evolve_density_observed(to_density(new_localized(L, 0, Spin::Up)), cfg, NoiseModel{1.0, 0.0},
                          n_max, [&](int k, const DensityOperator& rho) {
                            const double w = rms_width(position_distribution(rho));
                            worst = std::max(worst, std::abs(w - std::sqrt(k)));
                          });
  const PureState start = new_localized(L, 0, Spin::Up);
  const PureState at50 = evolve(start, cfg, 50);
  const PureState at100 = evolve(at50, cfg, 50);
  const double ratio =
      rms_width(position_distribution(at100)) / rms_width(position_distribution(at50));
  const bool ok = worst <= 1e-8 && std::abs(ratio - 2.0) <= 0.04;
  return {ok, fmt::format("max |rms - sqrt(n)| = {:.3g}, rms(100)/rms(50) = {:.6f}", worst, ratio)};
}

Outcome channel_trajectory() {
  const int n = 6;
  const PureState psi = new_localized(n + 1, 0, Spin::Up);
  const StepConfig cfg{{kPi / 2}};
  const NoiseModel noise{0.05, 0.05};
  const TrajectoryEnsemble mc = trajectory_ensemble(psi, cfg, noise, n, 100000, 1);
  const DensityOperator exact = evolve_density(to_density(psi), cfg, noise, n);
  std::size_t outside = 0;
  double worst_sigma = 0.0;
  for (std::size_t i = 0; i < exact.data().size(); ++i) {
    const cplx diff = mc.mean.data()[i] - exact.data()[i];
    const double parts[2][2] = {{diff.real(), mc.stderr_real[i]},
                                {diff.imag(), mc.stderr_imag[i]}};
    for (const auto& [delta, se] : parts) {
      if (se == 0.0) {
        if (std::abs(delta) > 1e-12) ++outside;
        continue;
      }
      const double sigma = std::abs(delta) / se;
      worst_sigma = std::max(worst_sigma, sigma);
      if (sigma > 3.0) ++outside;
    }
  }
  return {outside == 0, fmt::format("{} of {} real/imag entries beyond 3 SE, worst {:.3f} SE",
                                    outside, 2 * exact.data().size(), worst_sigma)};
}

Outcome hom() {
  const TwoBosonState out = hom_ideal();
  const double ov = std::abs(overlap(out, noon_state(out.half_width())));
  const double p_diff_ideal = site_statistics(out).p_diff_site;
  const double p_diff_v0 = hom_probabilities({0.0}).p_diff_site;
  const double p_diff = hom_probabilities({0.36}).p_diff_site;
  const std::uint64_t n = 100000;
  const ObservedCounts counts = detection_mc(p_diff, DetectionModel{}, n, 1);
  const double q = 0.32 * 0.8281;
  const double se = std::sqrt(q * (1 - q) / n);
  const double rate = static_cast<double>(counts.anti_bunched_seen) / n;
  const bool ok = std::abs(ov - 1.0) <= 1e-12 && std::abs(p_diff_ideal) <= 1e-12 &&
                  p_diff_v0 == 0.5 && std::abs(rate - q) <= 3 * se;
  return {ok, fmt::format("|<out|NOON>|={:.15g} pDiff={:.3g} pDiff(V=0)={} rate {:.5f} vs {:.5f} "
                          "({:.2f} SE)",
                          ov, p_diff_ideal, p_diff_v0, rate, q, std::abs(rate - q) / se)};
}

Outcome collisions() {
  double worst_sum = 0.0;
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      const OutcomeProbabilities pr = outcome_probabilities({i / 20.0, j / 20.0});
      worst_sum = std::max(worst_sum, std::abs(pr.p0 + pr.p1 + pr.p2 - 1.0));
    }
  }
  const LossModelParams truth{0.09, 0.5};
  int covered = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng = Rng::stream(1, seed);
    const PCollEstimate e = estimate_pcoll(sample_counts(truth, 100000, rng));
    if (e.ci_low <= truth.p_coll && truth.p_coll <= e.ci_high) ++covered;
  }
  const bool ok = worst_sum <= 1e-14 && covered >= 93;
  return {ok, fmt::format("max |sum - 1| = {:.3g}, coverage {}/100", worst_sum, covered)};
}

Outcome electric() {
  const int n = 100;
  const int L = n + 1;
  const PureState start = new_localized(L, 0, Spin::Up);
  const StepConfig base{{kPi / 2}};
  StepConfig full = base;
  full.electric_phase = 2 * kPi;
  StepConfig half = base;
  half.electric_phase = kPi;

  const PureState free = evolve(start, base, n);
  const PureState turned = evolve(start, full, n);
  double worst = 0.0;
  for (std::size_t i = 0; i < free.dim(); ++i) {
    worst = std::max(worst, std::abs(free.amplitudes()[i] - turned.amplitudes()[i]));
  }
  const double w0 = rms_width(position_distribution(free));
  const double wpi = rms_width(position_distribution(evolve(start, half, n)));
  const bool ok = worst <= 1e-12 && wpi < 0.5 * w0;
  return {ok, fmt::format("max |psi(2pi) - psi(0)| = {:.3g}; rms(100): phi=pi {:.6g}, phi=0 {:.6g}",
                          worst, wpi, w0)};
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "qwalk_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> commands{
      {"walk", "walk --steps 20 --p-spin 0.05 --seed 3"},
      {"walk_mc", "walk --steps 8 --p-spin 0.1 --p-pos 0.05 --trajectories 2000 --seed 3"},
      {"widthscan", "widthscan --max-steps 30 --p-spin 0.2 --seed 3"},
      {"electric", "electric --steps 60 --phi 1.0 --seed 3"},
      {"lg", "lg --theta-range 0 3.141592653589793 25 --seed 3"},
      {"hom", "hom --overlap 0.36 --events 10000 --seed 3"},
      {"collide", "collide --pcoll 0.2 --pcoll 0.5 --events 20000 --seed 3"},
  };
  std::vector<std::string> mismatched;
  for (const auto& [tag, args] : commands) {
    std::string first_text;
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path out = dir / fmt::format("{}_{}.out", tag, rep);
      const std::string cmd =
          fmt::format("\"{}\" {} --out \"{}\"", QWALK_CLI_PATH, args, out.string());
      if (std::system(cmd.c_str()) != 0) {
        mismatched.push_back(tag + " (exit)");
        break;
      }
      std::string text = slurp(out);
      if (fs::exists(out.string() + ".json")) text += slurp(out.string() + ".json");
      if (rep == 0) {
        first_text = std::move(text);
      } else if (text != first_text || first_text.empty()) {
        mismatched.push_back(tag);
      }
    }
  }
  fs::remove_all(dir);
  std::string detail = fmt::format("{} commands rerun", commands.size());
  for (const std::string& m : mismatched) detail += ", differs: " + m;
  return {mismatched.empty(), detail};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "LG boundary cases K(0)=K(pi)=1", 1.0, lg_boundary},
      {2, "LG violation at pi/2 equals path oracle and is grid maximum", 1.0, lg_violation},
      {3, "fully decohered walker respects K <= 1", 5.0, lg_classical},
      {4, "20-step walk matches path oracle, left peak", 1.0, walk_distribution},
      {5, "diffusive sqrt(n) and ballistic width ratio", 30.0, spreading_laws},
      {6, "trajectory average matches channel evolution", 60.0, channel_trajectory},
      {7, "HOM NOON state, suppression and detection rate", 30.0, hom},
      {8, "collision probabilities and CI coverage", 60.0, collisions},
      {9, "electric walk periodicity and localization", 10.0, electric},
      {10, "CLI reruns are byte identical", 10.0, determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("[%s] AC%d %s: %s (%.2f s of %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id, c.title,
                o.detail.c_str(), secs, c.budget_seconds, in_time ? "" : " over budget");
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
