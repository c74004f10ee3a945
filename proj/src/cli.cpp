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

#include "qwalk/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "qwalk/collisions.hpp"
#include "qwalk/decoherence.hpp"
#include "qwalk/leggett_garg.hpp"
#include "qwalk/measurement.hpp"
#include "qwalk/two_particle.hpp"
#include "qwalk/walk_ops.hpp"

namespace qwalk::cli {

namespace {

using nlohmann::json;

struct OutputFile {
  std::string path;
  std::string content;
};

struct Common {
  std::string out;
  std::uint64_t seed = 1;
  std::string config;
};

json base_record(const std::string& command, const json& config, std::uint64_t seed) {
  return {{"version", QWALK_VERSION}, {"command", command}, {"config", config}, {"seed", seed}};
}

std::string csv_with_header(const json& record, const std::string& body) {
  return "# qwalk " + record.dump() + "\n" + body;
}

std::string sidecar_path(const std::string& out) { return out + ".json"; }

// Writes every file to a temporary sibling first so a failure leaves no
// partial outputs behind.
void write_outputs(const std::vector<OutputFile>& files) {
  std::vector<std::filesystem::path> temps;
  for (const OutputFile& f : files) {
    const std::filesystem::path tmp = f.path + ".tmp";
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error(fmt::format("cannot open {} for writing", tmp.string()));
    os << f.content;
    os.close();
    if (!os) throw std::runtime_error(fmt::format("failed writing {}", tmp.string()));
    temps.push_back(tmp);
  }
  for (std::size_t i = 0; i < files.size(); ++i) std::filesystem::rename(temps[i], files[i].path);
}

class Command {
 public:
  virtual ~Command() = default;
  virtual std::string name() const = 0;
  virtual void add_options(CLI::App& app) = 0;
  virtual json resolved() const = 0;
  virtual std::vector<OutputFile> execute(const Common& common) const = 0;
};

void add_coin_options(CLI::App& app, CoinParams& coin) {
  app.add_option("--theta", coin.theta, "coin angle in radians")->capture_default_str();
  app.add_option("--alpha", coin.alpha, "coin pre-rotation phase in radians")
      ->capture_default_str();
  app.add_option("--beta", coin.beta, "coin post-rotation phase in radians")
      ->capture_default_str();
}

void add_noise_options(CLI::App& app, NoiseModel& noise) {
  app.add_option("--p-spin", noise.p_spin, "per-step spin projection probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app.add_option("--p-pos", noise.p_pos, "per-step position projection probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
}

json coin_json(const CoinParams& c) {
  return {{"theta", c.theta}, {"alpha", c.alpha}, {"beta", c.beta}};
}

class WalkCommand : public Command {
 public:
  std::string name() const override { return "walk"; }

  void add_options(CLI::App& app) override {
    app.add_option("--steps", steps_, "number of walk steps")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    add_coin_options(app, coin_);
    add_noise_options(app, noise_);
    trajectories_opt_ = app.add_option("--trajectories", trajectories_,
                                       "sample this many quantum trajectories instead of "
                                       "evolving the density operator")
                            ->check(CLI::PositiveNumber);
    half_width_opt_ = app.add_option("--half-width", half_width_,
                                     "lattice half width (default steps + 1)")
                          ->check(CLI::PositiveNumber);
  }

  json resolved() const override {
    json j = coin_json(coin_);
    j["steps"] = steps_;
    j["p-spin"] = noise_.p_spin;
    j["p-pos"] = noise_.p_pos;
    j["half-width"] = half_width();
    j["trajectories"] = trajectories_opt_->count() ? json(trajectories_) : json(nullptr);
    return j;
  }

  std::vector<OutputFile> execute(const Common& common) const override {
    const StepConfig cfg{coin_, ShiftMap{}, 0.0};
    const PureState psi = new_localized(half_width(), 0, Spin::Up);
    PositionDistribution dist;
    if (trajectories_opt_->count()) {
      dist = trajectory_histogram(psi, cfg, noise_, steps_, trajectories_, common.seed);
    } else {
      dist = position_distribution(evolve_density(to_density(psi), cfg, noise_, steps_));
    }
    const json record = base_record(name(), resolved(), common.seed);
    json sidecar = record;
    sidecar["rms_width"] = rms_width(dist);
    sidecar["mean_position"] = dist.mean();
    return {{common.out, csv_with_header(record, to_csv(dist))},
            {sidecar_path(common.out), sidecar.dump(2) + "\n"}};
  }

 private:
  int half_width() const { return half_width_opt_->count() ? half_width_ : steps_ + 1; }

  int steps_ = 20;
  CoinParams coin_{std::numbers::pi / 2, 0.0, 0.0};
  NoiseModel noise_{};
  std::uint64_t trajectories_ = 0;
  int half_width_ = 0;
  CLI::Option* trajectories_opt_ = nullptr;
  CLI::Option* half_width_opt_ = nullptr;
};

class WidthScanCommand : public Command {
 public:
  std::string name() const override { return "widthscan"; }

  void add_options(CLI::App& app) override {
    app.add_option("--max-steps", max_steps_, "largest step count in the scan")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    add_coin_options(app, coin_);
    add_noise_options(app, noise_);
  }

  json resolved() const override {
    json j = coin_json(coin_);
    j["max-steps"] = max_steps_;
    j["p-spin"] = noise_.p_spin;
    j["p-pos"] = noise_.p_pos;
    return j;
  }

  std::vector<OutputFile> execute(const Common& common) const override {
    const StepConfig cfg{coin_, ShiftMap{}, 0.0};
    const int L = max_steps_ + 1;
    std::string body = "n,rms\n";
    if (noise_.noiseless()) {
      std::vector<cplx> amps = new_localized(L, 0, Spin::Up).take_amplitudes();
      for (int n = 0; n <= max_steps_; ++n) {
        if (n > 0) step_in_place(amps, L, cfg);
        body += fmt::format("{},{:.12g}\n", n,
                            rms_width(position_distribution(PureState(L, amps))));
      }
    } else {
      evolve_density_observed(to_density(new_localized(L, 0, Spin::Up)), cfg, noise_,
                              max_steps_, [&](int n, const DensityOperator& rho) {
                                body += fmt::format("{},{:.12g}\n", n,
                                                    rms_width(position_distribution(rho)));
                              });
    }
    return {{common.out, csv_with_header(base_record(name(), resolved(), common.seed), body)}};
  }

 private:
  int max_steps_ = 100;
  CoinParams coin_{std::numbers::pi / 2, 0.0, 0.0};
  NoiseModel noise_{};
};

class ElectricCommand : public Command {
 public:
  std::string name() const override { return "electric"; }

  void add_options(CLI::App& app) override {
    app.add_option("--steps", steps_, "number of walk steps")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    add_coin_options(app, coin_);
    app.add_option("--phi", phi_, "electric phase per site per step in radians")
        ->capture_default_str();
    half_width_opt_ = app.add_option("--half-width", half_width_,
                                     "lattice half width (default steps + 1)")
                          ->check(CLI::PositiveNumber);
  }

  json resolved() const override {
    json j = coin_json(coin_);
    j["steps"] = steps_;
    j["phi"] = phi_;
    j["half-width"] = half_width();
    return j;
  }

  std::vector<OutputFile> execute(const Common& common) const override {
    const StepConfig cfg{coin_, ShiftMap{}, phi_};
    const int L = half_width();
    std::vector<cplx> amps(dimension(L));
    amps[basis_index(L, 0, Spin::Up)] = 1.0;
    double max_width = 0.0;
    for (int n = 0; n < steps_; ++n) {
      step_in_place(amps, L, cfg);
      max_width = std::max(max_width, rms_width(position_distribution(PureState(L, amps))));
    }
    const PositionDistribution dist = position_distribution(PureState(L, std::move(amps)));
    const json record = base_record(name(), resolved(), common.seed);
    json sidecar = record;
    sidecar["rms_width"] = rms_width(dist);
    sidecar["max_rms_width"] = max_width;
    return {{common.out, csv_with_header(record, to_csv(dist))},
            {sidecar_path(common.out), sidecar.dump(2) + "\n"}};
  }

 private:
  int half_width() const { return half_width_opt_->count() ? half_width_ : steps_ + 1; }

  int steps_ = 100;
  CoinParams coin_{std::numbers::pi / 2, 0.0, 0.0};
  double phi_ = 0.0;
  int half_width_ = 0;
  CLI::Option* half_width_opt_ = nullptr;
};

class LGCommand : public Command {
 public:
  std::string name() const override { return "lg"; }

  void add_options(CLI::App& app) override {
    thetas_opt_ = app.add_option("--theta", thetas_, "coin angle(s) in radians; repeatable");
    range_opt_ = app.add_option("--theta-range", range_,
                                "evenly spaced scan: START STOP COUNT (inclusive)")
                     ->expected(3);
    app.add_option("--alpha", alpha_, "coin pre-rotation phase")->capture_default_str();
    app.add_option("--beta", beta_, "coin post-rotation phase")->capture_default_str();
    app.add_option("--mode", mode_, "t2 measurement: negative, projective or none")
        ->check(CLI::IsMember({"negative", "projective", "none"}))
        ->capture_default_str();
    app.add_option("--initial", initial_, "initial spin: up, down or equatorial")
        ->check(CLI::IsMember({"up", "down", "equatorial"}))
        ->capture_default_str();
    app.add_option("--initial-phase", initial_phase_, "phase of the equatorial initial spin")
        ->capture_default_str();
    app.add_option("--steps", n_total_, "total steps to t3")->capture_default_str();
    app.add_option("--t2-step", t2_, "step after which t2 is measured")->capture_default_str();
    add_noise_options(app, noise_);
  }

  json resolved() const override {
    return {{"theta", sorted_thetas()}, {"alpha", alpha_},   {"beta", beta_},
            {"mode", mode_},            {"initial", initial_}, {"initial-phase", initial_phase_},
            {"steps", n_total_},        {"t2-step", t2_},    {"p-spin", noise_.p_spin},
            {"p-pos", noise_.p_pos}};
  }

  std::vector<OutputFile> execute(const Common& common) const override {
    LGProtocolConfig cfg;
    cfg.coin = {0.0, alpha_, beta_};
    cfg.n_total = n_total_;
    cfg.t2_after_step = t2_;
    cfg.mode = measurement_mode_from_string(mode_);
    cfg.noise = noise_;
    if (initial_ == "up") {
      cfg.initial = Spinor::of(Spin::Up);
    } else if (initial_ == "down") {
      cfg.initial = Spinor::of(Spin::Down);
    } else {
      cfg.initial = Spinor::equatorial(initial_phase_);
    }
    const std::vector<double> thetas = sorted_thetas();
    const std::vector<LGResult> rows = theta_scan(thetas, cfg);
    return {{common.out,
             csv_with_header(base_record(name(), resolved(), common.seed), to_csv(rows))}};
  }

 private:
  std::vector<double> sorted_thetas() const {
    std::vector<double> t = thetas_;
    if (range_opt_->count()) {
      const double count = range_[2];
      if (count < 1 || count != std::floor(count)) {
        throw DomainError("--theta-range COUNT must be a positive integer");
      }
      const int n = static_cast<int>(count);
      for (int i = 0; i < n; ++i) {
        t.push_back(n == 1 ? range_[0] : range_[0] + (range_[1] - range_[0]) * i / (n - 1));
      }
    }
    if (t.empty()) throw DomainError("lg needs --theta or --theta-range");
    std::sort(t.begin(), t.end());
    return t;
  }

  std::vector<double> thetas_;
  std::vector<double> range_;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  std::string mode_ = "negative";
  std::string initial_ = "up";
  double initial_phase_ = 0.0;
  int n_total_ = 4;
  int t2_ = 1;
  NoiseModel noise_{};
  CLI::Option* thetas_opt_ = nullptr;
  CLI::Option* range_opt_ = nullptr;
};

class HomCommand : public Command {
 public:
  std::string name() const override { return "hom"; }

  void add_options(CLI::App& app) override {
    overlap_opt_ = app.add_option("--overlap", overlap_, "indistinguishable-sector weight V")
                       ->check(CLI::Range(0.0, 1.0));
    populations_opt_ = app.add_option("--ground-state-population", populations_,
                                      "two per-atom 3D ground-state populations; V = product")
                           ->expected(2)
                           ->check(CLI::Range(0.0, 1.0));
    overlap_opt_->excludes(populations_opt_);
    app.add_option("--survival", det_.survival, "per-atom survival probability")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    app.add_option("--parity", det_.parity_projection, "parity projection on/off")
        ->capture_default_str();
    app.add_option("--parity-eff", det_.pair_loss_efficiency,
                   "probability that a same-site pair is lost when imaged")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    app.add_option("--events", events_, "number of simulated events")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }

  json resolved() const override {
    return {{"overlap", overlap()},
            {"ground-state-population",
             populations_opt_->count() ? json(populations_) : json(nullptr)},
            {"survival", det_.survival},
            {"parity", det_.parity_projection},
            {"parity-eff", det_.pair_loss_efficiency},
            {"events", events_}};
  }

  std::vector<OutputFile> execute(const Common& common) const override {
    const SiteStatistics physical = hom_probabilities({overlap()});
    const ObservedCounts counts = detection_mc(physical.p_diff_site, det_, events_, common.seed);
    const double baseline = expected_anti_bunched_rate(hom_probabilities({0.0}).p_diff_site, det_);
    json report = base_record(name(), resolved(), common.seed);
    report["probabilities"] = {{"p_same_site", physical.p_same_site},
                               {"p_diff_site", physical.p_diff_site}};
    report["observed_counts"] = {{"both_seen", counts.both_seen},
                                 {"one_seen", counts.one_seen},
                                 {"none_seen", counts.none_seen},
                                 {"anti_bunched_seen", counts.anti_bunched_seen}};
    report["expected_anti_bunched_rate"] = expected_anti_bunched_rate(physical.p_diff_site, det_);
    report["baseline_anti_bunched_rate"] = baseline;
    report["z_score"] = hom_significance(counts, baseline);
    return {{common.out, report.dump(2) + "\n"}};
  }

 private:
  double overlap() const {
    if (populations_opt_->count()) {
      return DistinguishabilityModel::from_ground_state_populations(populations_[0],
                                                                    populations_[1])
          .overlap;
    }
    return overlap_opt_->count() ? overlap_ : 0.36;
  }

  double overlap_ = 0.36;
  std::vector<double> populations_;
  DetectionModel det_{};
  std::uint64_t events_ = 10000;
  CLI::Option* overlap_opt_ = nullptr;
  CLI::Option* populations_opt_ = nullptr;
};

class CollideCommand : public Command {
 public:
  std::string name() const override { return "collide"; }

  void add_options(CLI::App& app) override {
    app.add_option("--p", p_, "single-atom loss probability P")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    app.add_option("--pcoll", pcoll_, "true P_coll per interaction-time point; repeatable")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--events", events_, "events per point")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    p_known_opt_ = app.add_option("--p-known", p_known_,
                                  "hold P fixed at this value in the estimator")
                       ->check(CLI::Range(0.0, 1.0));
  }

  json resolved() const override {
    return {{"p", p_},
            {"pcoll", pcoll_},
            {"events", events_},
            {"p-known", p_known_opt_->count() ? json(p_known_) : json(nullptr)}};
  }

  std::vector<OutputFile> execute(const Common& common) const override {
    if (pcoll_.empty()) throw DomainError("collide needs at least one --pcoll value");
    std::optional<double> known;
    if (p_known_opt_->count()) known = p_known_;
    const auto rows = loss_vs_time_series(pcoll_, p_, events_, common.seed, known);
    return {{common.out,
             csv_with_header(base_record(name(), resolved(), common.seed), to_csv(rows))}};
  }

 private:
  double p_ = 0.09;
  std::vector<double> pcoll_;
  std::uint64_t events_ = 100000;
  double p_known_ = 0.0;
  CLI::Option* p_known_opt_ = nullptr;
};

std::string json_scalar_to_arg(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) return fmt::format("{:.17g}", v.get<double>());
  throw DomainError(fmt::format("unsupported config value {}", v.dump()));
}

// Appends "--key value" for every config entry not already given as a flag.
std::vector<std::string> config_arguments(const std::string& path, const CLI::App& sub) {
  std::ifstream is(path);
  if (!is) throw DomainError(fmt::format("cannot read config file {}", path));
  json cfg;
  try {
    cfg = json::parse(is);
  } catch (const json::parse_error& e) {
    throw DomainError(fmt::format("config file {} is not valid JSON: {}", path, e.what()));
  }
  if (!cfg.is_object()) throw DomainError("config file must hold a JSON object");

  std::vector<std::string> extra;
  for (const auto& [key, value] : cfg.items()) {
    if (key == "command") {
      if (value != sub.get_name()) {
        throw DomainError(fmt::format("config is for command '{}', not '{}'",
                                      value.dump(), sub.get_name()));
      }
      continue;
    }
    if (key == "config") throw DomainError("config files cannot nest");
    const CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr) throw DomainError(fmt::format("unknown config key '{}'", key));
    if (opt->count() > 0 || value.is_null()) continue;
    extra.push_back("--" + key);
    if (value.is_array()) {
      for (const json& item : value) extra.push_back(json_scalar_to_arg(item));
    } else {
      extra.push_back(json_scalar_to_arg(value));
    }
  }
  return extra;
}

void parse(CLI::App& app, std::vector<std::string> args) {
  std::reverse(args.begin(), args.end());
  app.parse(args);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum walk simulations: walks, Leggett-Garg, HOM and collision estimators",
               "qwalk"};
  app.require_subcommand(1);
  app.set_version_flag("--version", QWALK_VERSION);

  std::vector<std::unique_ptr<Command>> commands;
  commands.push_back(std::make_unique<WalkCommand>());
  commands.push_back(std::make_unique<WidthScanCommand>());
  commands.push_back(std::make_unique<ElectricCommand>());
  commands.push_back(std::make_unique<LGCommand>());
  commands.push_back(std::make_unique<HomCommand>());
  commands.push_back(std::make_unique<CollideCommand>());

  Common common;
  std::vector<std::pair<CLI::App*, Command*>> subs;
  for (auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c->name());
    c->add_options(*sub);
    sub->add_option("--out", common.out, "output file (required)");
    sub->add_option("--seed", common.seed, "master random seed")->capture_default_str();
    sub->add_option("--config", common.config, "JSON file with flag values");
    subs.emplace_back(sub, c.get());
  }

  try {
    parse(app, args);
    CLI::App* chosen = nullptr;
    Command* command = nullptr;
    for (auto& [sub, c] : subs) {
      if (sub->parsed()) {
        chosen = sub;
        command = c;
      }
    }
    if (chosen == nullptr) throw CLI::CallForHelp();
    if (const CLI::Option* cfg = chosen->get_option_no_throw("--config"); cfg->count() > 0) {
      std::vector<std::string> merged = args;
      for (std::string& a : config_arguments(cfg->as<std::string>(), *chosen)) {
        merged.push_back(std::move(a));
      }
      app.clear();
      parse(app, merged);
    }
    // Checked here rather than by CLI11 so the value may come from --config.
    if (common.out.empty()) throw DomainError("--out is required");
    write_outputs(command->execute(common));
    return kOk;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidArguments;
  } catch (const BoundaryOverflow& e) {
    err << "error: " << e.what() << "\n";
    return kBoundaryOverflow;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidArguments;
  } catch (const ShapeError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidArguments;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace qwalk::cli
