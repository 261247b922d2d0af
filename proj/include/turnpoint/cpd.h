/*
 * Copyright 2026 The Turnpoint Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TURNPOINT_CPD_H_
#define TURNPOINT_CPD_H_

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "turnpoint/error.h"
#include "turnpoint/labels.h"

namespace turnpoint {

// Probability that the gap since the last change point ends now, given it
// has lasted this long: H(g) = P(gap = g) / sum_{k >= g} P(gap = k).
class HazardTable {
 public:
  HazardTable() = default;
  // values[g - 1] is H(g) for g = 1..values.size(). Values must lie in
  // [0, 1]; throws UsageError otherwise or when empty.
  explicit HazardTable(std::vector<double> values);

  static HazardTable constant(double h);
  // From a (possibly unnormalized) mass function; pmf[g - 1] ~ P(gap = g).
  static HazardTable from_pmf(std::span<const double> pmf);

  // H(gap) for gap >= 1. Gaps past the support repeat the last value.
  double at(int gap) const {
    const int n = static_cast<int>(values_.size());
    return values_[std::clamp(gap, 1, n) - 1];
  }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_{0.0};
};

// Empirical hazard over observed gap lengths (each >= 1). Throws UsageError
// on an empty sample or a gap < 1.
HazardTable estimate_hazard(std::span<const int> gaps);

// Gaps between consecutive positives, counting the dialogue start as a
// change point at index -1 (so a first positive at t gives a gap of t + 1).
std::vector<int> gap_samples(std::span<const std::uint8_t> labels);

// P(utterance t is a change point) from training label counts with additive
// smoothing: (positives at t + alpha) / (dialogues longer than t + 2 alpha).
class PositionPrior {
 public:
  PositionPrior() = default;
  PositionPrior(std::vector<double> values, double unseen)
      : values_(std::move(values)), unseen_(unseen) {}

  double at(int t) const {
    return t >= 0 && t < static_cast<int>(values_.size()) ? values_[t] : unseen_;
  }
  const std::vector<double>& values() const { return values_; }
  // Value used past the longest training dialogue.
  double unseen() const { return unseen_; }

 private:
  std::vector<double> values_;
  double unseen_ = 0.0;
};

// Throws UsageError on an empty training set or negative alpha.
PositionPrior position_prior(std::span<const LabelSequence> train, double alpha = 1.0);

// Per-hypothesis observation model used by BOCPD.
template <typename M>
concept ObservationModel = requires(const M m, const typename M::Stats s, double x) {
  { m.prior() } -> std::same_as<typename M::Stats>;
  { m.predictive(s, x) } -> std::convertible_to<double>;
  { m.update(s, x) } -> std::same_as<typename M::Stats>;
};

struct NormalGammaParams {
  double mu0 = 0.5;
  double kappa0 = 0.1;
  double alpha0 = 1.0;
  double beta0 = 0.01;
};

// Normal likelihood with unknown mean and precision under a Normal-Gamma
// prior; the predictive is a Student-t with 2 alpha degrees of freedom.
class NormalGammaModel {
 public:
  struct Stats {
    double mu;
    double kappa;
    double alpha;
    double beta;
  };

  // Throws UsageError unless kappa0, alpha0, beta0 are positive and finite.
  explicit NormalGammaModel(NormalGammaParams params = {});

  Stats prior() const { return {p_.mu0, p_.kappa0, p_.alpha0, p_.beta0}; }
  double predictive(const Stats& s, double x) const;
  Stats update(const Stats& s, double x) const {
    const double kappa = s.kappa + 1.0;
    const double d = x - s.mu;
    return {(s.kappa * s.mu + x) / kappa, kappa, s.alpha + 0.5,
            s.beta + s.kappa * d * d / (2.0 * kappa)};
  }
  const NormalGammaParams& params() const { return p_; }

 private:
  NormalGammaParams p_;
};

// Constant predictive density; mostly useful for checking the recursion.
class UniformModel {
 public:
  struct Stats {};
  explicit UniformModel(double density = 1.0) : density_(density) {}
  Stats prior() const { return {}; }
  double predictive(const Stats&, double) const { return density_; }
  Stats update(const Stats&, double) const { return {}; }

 private:
  double density_;
};

template <ObservationModel M>
struct RunLengthPosterior {
  // weights[r] = P(run length r | observations so far), r = 0..time.
  std::vector<double> weights;
  std::vector<typename M::Stats> stats;
  int time = 0;

  static RunLengthPosterior initial(const M& model) {
    return {{1.0}, {model.prior()}, 0};
  }
};

// Which predictive density weighs the change-point branch.
enum class ChangeBranch {
  // New segment explains the observation under the prior predictive.
  kPriorPredictive,
  // Each old run's own predictive, as in the textbook recursion. The
  // normalized r = 0 mass then equals the hazard-weighted average of H and
  // does not react to the data under a constant hazard.
  kRunPredictive,
};

template <ObservationModel M>
struct BocpdStep {
  RunLengthPosterior<M> posterior;
  double cp_probability;
};

// One online update. Growth weight for r + 1 is w_r * pi_r * (1 - H(r + 1));
// the change weight sums w_r * pi * H(r + 1). Throws NumericError on a
// non-finite observation or when every weight vanishes.
template <ObservationModel M>
BocpdStep<M> bocpd_step(const RunLengthPosterior<M>& posterior, double obs,
                        const HazardTable& hazard, const M& model,
                        ChangeBranch branch = ChangeBranch::kPriorPredictive) {
  if (!std::isfinite(obs)) throw NumericError("bocpd_step: non-finite observation");
  const std::size_t n = posterior.weights.size();
  BocpdStep<M> out{{std::vector<double>(n + 1, 0.0),
                    std::vector<typename M::Stats>(n + 1), posterior.time + 1},
                   0.0};
  auto& next = out.posterior;
  const double prior_density =
      branch == ChangeBranch::kPriorPredictive ? model.predictive(model.prior(), obs) : 0.0;
  double change = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    const double w = posterior.weights[r];
    const double pi = model.predictive(posterior.stats[r], obs);
    const double h = hazard.at(static_cast<int>(r) + 1);
    next.weights[r + 1] = w * pi * (1.0 - h);
    change += w * h * (branch == ChangeBranch::kPriorPredictive ? prior_density : pi);
    next.stats[r + 1] = model.update(posterior.stats[r], obs);
  }
  next.weights[0] = change;
  next.stats[0] = branch == ChangeBranch::kPriorPredictive
                      ? model.update(model.prior(), obs)
                      : model.prior();

  double total = 0.0;
  for (double w : next.weights) total += w;
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw NumericError("bocpd_step: run-length weights degenerate at t=" +
                       std::to_string(next.time));
  }
  for (double& w : next.weights) w /= total;
  out.cp_probability = next.weights[0];
  return out;
}

enum class AgnosticMethod { kHazard, kPositionPrior, kBocpd };

// Accepts hazard|hazard-only, seqlen|position-prior, bocpd. Throws
// UsageError for anything else.
AgnosticMethod parse_agnostic_method(std::string_view name);
std::string_view to_string(AgnosticMethod method);

// Everything the language-agnostic predictors need, fit on training labels.
struct AgnosticModel {
  HazardTable hazard;
  PositionPrior prior;
  NormalGammaParams observation;
  ChangeBranch branch = ChangeBranch::kPriorPredictive;
};

AgnosticModel fit_agnostic(std::span<const LabelSequence> train,
                           NormalGammaParams observation = {}, double alpha = 1.0,
                           ChangeBranch branch = ChangeBranch::kPriorPredictive);

struct Prediction {
  std::vector<double> scores;
  std::vector<std::uint8_t> binary;
};

// Hazard-only scores restart the run after every predicted positive, so they
// depend on the threshold.
std::vector<double> hazard_scores(int length, const HazardTable& hazard, double threshold);
std::vector<double> bocpd_scores(std::span<const double> signal, const HazardTable& hazard,
                                 const NormalGammaParams& observation,
                                 ChangeBranch branch = ChangeBranch::kPriorPredictive);

// Scores in [0, 1] per utterance and binary = score >= threshold.
Prediction predict_agnostic(std::span<const double> signal, AgnosticMethod method,
                            double threshold, const AgnosticModel& model);

}  // namespace turnpoint

#endif  // TURNPOINT_CPD_H_
