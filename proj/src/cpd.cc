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

#include "turnpoint/cpd.h"

#include <algorithm>
#include <numbers>

namespace turnpoint {

HazardTable::HazardTable(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw UsageError("hazard table must not be empty");
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) throw UsageError("hazard values must lie in [0, 1]");
  }
}

HazardTable HazardTable::constant(double h) { return HazardTable({h}); }

HazardTable HazardTable::from_pmf(std::span<const double> pmf) {
  if (pmf.empty()) throw UsageError("hazard: empty gap distribution");
  // Tail sums from the far end keep small tails accurate.
  std::vector<double> tail(pmf.size() + 1, 0.0);
  for (std::size_t g = pmf.size(); g-- > 0;) {
    if (!(pmf[g] >= 0.0) || !std::isfinite(pmf[g])) {
      throw UsageError("hazard: gap probabilities must be finite and non-negative");
    }
    tail[g] = tail[g + 1] + pmf[g];
  }
  if (!(tail[0] > 0.0)) throw UsageError("hazard: gap distribution has no mass");
  // Trailing zero-mass gaps carry no information.
  std::size_t support = pmf.size();
  while (support > 0 && pmf[support - 1] == 0.0) --support;
  std::vector<double> values(support);
  for (std::size_t g = 0; g < support; ++g) values[g] = pmf[g] / tail[g];
  return HazardTable(std::move(values));
}

HazardTable estimate_hazard(std::span<const int> gaps) {
  if (gaps.empty()) throw UsageError("estimate_hazard: no gap samples");
  int longest = 0;
  for (int g : gaps) {
    if (g < 1) throw UsageError("estimate_hazard: gaps must be >= 1");
    longest = std::max(longest, g);
  }
  std::vector<double> counts(longest, 0.0);
  for (int g : gaps) counts[g - 1] += 1.0;
  return HazardTable::from_pmf(counts);
}

std::vector<int> gap_samples(std::span<const std::uint8_t> labels) {
  std::vector<int> gaps;
  int last = -1;
  for (int t = 0; t < static_cast<int>(labels.size()); ++t) {
    if (!labels[t]) continue;
    gaps.push_back(t - last);
    last = t;
  }
  return gaps;
}

PositionPrior position_prior(std::span<const LabelSequence> train, double alpha) {
  if (train.empty()) throw UsageError("position_prior: empty training set");
  if (!(alpha >= 0.0)) throw UsageError("position_prior: alpha must be >= 0");
  std::size_t longest = 0;
  for (const auto& seq : train) longest = std::max(longest, seq.labels.size());
  std::vector<double> positives(longest, 0.0), at_risk(longest, 0.0);
  for (const auto& seq : train) {
    for (std::size_t t = 0; t < seq.labels.size(); ++t) {
      at_risk[t] += 1.0;
      positives[t] += seq.labels[t];
    }
  }
  std::vector<double> values(longest);
  for (std::size_t t = 0; t < longest; ++t) {
    const double denom = at_risk[t] + 2.0 * alpha;
    values[t] = denom > 0.0 ? (positives[t] + alpha) / denom : 0.0;
  }
  return PositionPrior(std::move(values), alpha > 0.0 ? 0.5 : 0.0);
}

NormalGammaModel::NormalGammaModel(NormalGammaParams params) : p_(params) {
  const auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!std::isfinite(p_.mu0) || !ok(p_.kappa0) || !ok(p_.alpha0) || !ok(p_.beta0)) {
    throw UsageError("normal-gamma prior needs finite mu0 and positive kappa0, alpha0, beta0");
  }
}

double NormalGammaModel::predictive(const Stats& s, double x) const {
  const double nu = 2.0 * s.alpha;
  const double scale2 = s.beta * (s.kappa + 1.0) / (s.alpha * s.kappa);
  const double z2 = (x - s.mu) * (x - s.mu) / scale2;
  const double log_density = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                             0.5 * std::log(nu * std::numbers::pi * scale2) -
                             0.5 * (nu + 1.0) * std::log1p(z2 / nu);
  return std::exp(log_density);
}

AgnosticMethod parse_agnostic_method(std::string_view name) {
  if (name == "hazard" || name == "hazard-only") return AgnosticMethod::kHazard;
  if (name == "seqlen" || name == "position-prior") return AgnosticMethod::kPositionPrior;
  if (name == "bocpd") return AgnosticMethod::kBocpd;
  throw UsageError("unknown change-point method '" + std::string(name) +
                   "' (expected hazard, seqlen or bocpd)");
}

std::string_view to_string(AgnosticMethod method) {
  switch (method) {
    case AgnosticMethod::kHazard:
      return "hazard";
    case AgnosticMethod::kPositionPrior:
      return "seqlen";
    case AgnosticMethod::kBocpd:
      return "bocpd";
  }
  return "?";
}

AgnosticModel fit_agnostic(std::span<const LabelSequence> train,
                           NormalGammaParams observation, double alpha,
                           ChangeBranch branch) {
  std::vector<int> gaps;
  for (const auto& seq : train) {
    auto g = gap_samples(seq.labels);
    gaps.insert(gaps.end(), g.begin(), g.end());
  }
  if (gaps.empty()) throw DataError("fit_agnostic: training labels contain no positives");
  NormalGammaModel check(observation);
  (void)check;
  return {estimate_hazard(gaps), position_prior(train, alpha), observation, branch};
}

std::vector<double> hazard_scores(int length, const HazardTable& hazard, double threshold) {
  std::vector<double> scores(std::max(length, 0));
  int last = -1;
  for (int t = 0; t < length; ++t) {
    scores[t] = hazard.at(t - last);
    if (scores[t] >= threshold) last = t;
  }
  return scores;
}

std::vector<double> bocpd_scores(std::span<const double> signal, const HazardTable& hazard,
                                 const NormalGammaParams& observation, ChangeBranch branch) {
  const NormalGammaModel model(observation);
  auto posterior = RunLengthPosterior<NormalGammaModel>::initial(model);
  std::vector<double> scores;
  scores.reserve(signal.size());
  for (double x : signal) {
    auto step = bocpd_step(posterior, x, hazard, model, branch);
    scores.push_back(std::clamp(step.cp_probability, 0.0, 1.0));
    posterior = std::move(step.posterior);
  }
  return scores;
}

Prediction predict_agnostic(std::span<const double> signal, AgnosticMethod method,
                            double threshold, const AgnosticModel& model) {
  Prediction out;
  const int n = static_cast<int>(signal.size());
  switch (method) {
    case AgnosticMethod::kHazard:
      out.scores = hazard_scores(n, model.hazard, threshold);
      break;
    case AgnosticMethod::kPositionPrior:
      out.scores.resize(n);
      for (int t = 0; t < n; ++t) out.scores[t] = model.prior.at(t);
      break;
    case AgnosticMethod::kBocpd:
      out.scores = bocpd_scores(signal, model.hazard, model.observation, model.branch);
      break;
  }
  out.binary.resize(n);
  for (int t = 0; t < n; ++t) out.binary[t] = out.scores[t] >= threshold ? 1 : 0;
  return out;
}

}  // namespace turnpoint
