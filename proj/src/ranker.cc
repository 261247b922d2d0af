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

#include "turnpoint/ranker.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"
#include "turnpoint/error.h"
#include "turnpoint/hash.h"
#include "turnpoint/kernels/adadelta.h"
#include "turnpoint/log.h"

namespace turnpoint {
namespace {

// log(1 + e^x) without overflow.
double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

constexpr int kModelVersion = 1;

}  // namespace

Loss parse_loss(std::string_view name) {
  if (name == "logistic") return Loss::kLogistic;
  if (name == "ranknet") return Loss::kRankNet;
  throw UsageError("unknown loss '" + std::string(name) + "' (expected logistic|ranknet)");
}

std::string_view to_string(Loss loss) {
  return loss == Loss::kLogistic ? "logistic" : "ranknet";
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

PairLoss ranknet_loss(double pos, double neg) {
  const double d = pos - neg;
  const double lo = sigmoid(-d);
  const double hi = sigmoid(d);
  const double g = hi * lo;
  return {lo, -g, g};
}

PointLoss logistic_loss(double score, int label) {
  const double loss = label ? softplus(-score) : softplus(score);
  return {loss, sigmoid(score) - (label ? 1.0 : 0.0)};
}

Adadelta::Adadelta(std::size_t size, AdadeltaConfig config)
    : config_(config), sq_grad_(size, 0.0), sq_delta_(size, 0.0) {
  if (!(config.rho > 0.0 && config.rho < 1.0)) {
    throw UsageError("adadelta: rho must lie in (0, 1)");
  }
  if (!(config.epsilon > 0.0)) throw UsageError("adadelta: epsilon must be positive");
}

void Adadelta::step(std::span<double> params, std::span<const double> grad) {
  if (params.size() != sq_grad_.size() || grad.size() != sq_grad_.size()) {
    throw UsageError("adadelta: parameter and gradient sizes differ from the state");
  }
  for (std::size_t i = 0; i < grad.size(); ++i) {
    if (!std::isfinite(grad[i])) {
      throw NumericError("adadelta: non-finite gradient at index " + std::to_string(i));
    }
  }
  kernels::adadelta_omp(params, grad, sq_grad_, sq_delta_, config_.rho, config_.epsilon);
}

Scorer Scorer::linear(std::uint32_t input_dim) {
  if (input_dim == 0) throw UsageError("scorer: input dimension must be positive");
  Scorer s;
  s.input_dim_ = input_dim;
  s.params_.assign(static_cast<std::size_t>(input_dim) + 1, 0.0);
  return s;
}

Scorer Scorer::mlp(std::uint32_t input_dim, int hidden, std::uint64_t init_seed,
                   double dropout) {
  if (input_dim == 0) throw UsageError("scorer: input dimension must be positive");
  if (hidden < 1) throw UsageError("scorer: hidden width must be positive");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw UsageError("scorer: dropout must lie in [0, 1)");
  Scorer s;
  s.input_dim_ = input_dim;
  s.hidden_ = hidden;
  s.dropout_ = dropout;
  s.init_seed_ = init_seed;
  const std::size_t h = static_cast<std::size_t>(hidden);
  const std::size_t w1 = static_cast<std::size_t>(input_dim) * h;
  s.params_.assign(w1 + 2 * h + 1, 0.0);
  for (std::uint32_t row = 0; row < input_dim; ++row) {
    for (int u = 0; u < hidden; ++u) s.params_[row * h + u] = s.initial_weight(row, u);
  }
  Rng rng(mix_seed({init_seed, 0x6f7574}));
  const double scale = 1.0 / std::sqrt(static_cast<double>(hidden));
  for (std::size_t u = 0; u < h; ++u) {
    s.params_[w1 + h + u] = scale * (2.0 * uniform_unit(rng) - 1.0);
  }
  return s;
}

double Scorer::initial_weight(std::uint32_t row, int unit) const {
  const std::uint64_t bits =
      splitmix64(init_seed_ ^ splitmix64((static_cast<std::uint64_t>(row) << 20) ^
                                         static_cast<std::uint64_t>(unit)));
  const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
  return 0.1 * (2.0 * u - 1.0);
}

double Scorer::score(const FeatureVector& x) const {
  Cache cache;
  return forward(x, cache, nullptr);
}

double Scorer::forward(const FeatureVector& x, Cache& cache, Rng* rng) const {
  if (!x.indices.empty() && x.indices.back() >= input_dim_) {
    throw UsageError("scorer: feature index out of range");
  }
  if (hidden_ == 0) return x.dot(params_) + params_[input_dim_];
  const std::size_t h = static_cast<std::size_t>(hidden_);
  const std::size_t w1 = static_cast<std::size_t>(input_dim_) * h;
  cache.pre.assign(params_.begin() + w1, params_.begin() + w1 + h);
  for (std::size_t k = 0; k < x.indices.size(); ++k) {
    const double* row = &params_[x.indices[k] * h];
    for (std::size_t u = 0; u < h; ++u) cache.pre[u] += x.values[k] * row[u];
  }
  cache.mask.assign(h, 1.0);
  if (rng != nullptr && dropout_ > 0.0) {
    const double keep = 1.0 - dropout_;
    for (double& m : cache.mask) m = bernoulli(*rng, keep) ? 1.0 / keep : 0.0;
  }
  double s = params_[w1 + 2 * h];
  for (std::size_t u = 0; u < h; ++u) {
    s += params_[w1 + h + u] * std::max(cache.pre[u], 0.0) * cache.mask[u];
  }
  return s;
}

void Scorer::backward(const FeatureVector& x, const Cache& cache, double d_score,
                      std::span<double> grad) const {
  if (hidden_ == 0) {
    for (std::size_t k = 0; k < x.indices.size(); ++k) {
      grad[x.indices[k]] += d_score * x.values[k];
    }
    grad[input_dim_] += d_score;
    return;
  }
  const std::size_t h = static_cast<std::size_t>(hidden_);
  const std::size_t w1 = static_cast<std::size_t>(input_dim_) * h;
  grad[w1 + 2 * h] += d_score;
  std::vector<double> dz(h, 0.0);
  for (std::size_t u = 0; u < h; ++u) {
    const double a = std::max(cache.pre[u], 0.0) * cache.mask[u];
    grad[w1 + h + u] += d_score * a;
    if (cache.pre[u] > 0.0) dz[u] = d_score * params_[w1 + h + u] * cache.mask[u];
    grad[w1 + u] += dz[u];
  }
  for (std::size_t k = 0; k < x.indices.size(); ++k) {
    double* row = &grad[x.indices[k] * h];
    for (std::size_t u = 0; u < h; ++u) row[u] += dz[u] * x.values[k];
  }
}

std::vector<LabeledDialogue> make_labeled(std::span<const Dialogue* const> dialogues,
                                          std::span<const LabelSequence> labels,
                                          const FeatureConfig& config) {
  std::map<std::string_view, const LabelSequence*> by_id;
  for (const auto& l : labels) by_id[l.dialogue_id] = &l;
  std::vector<LabeledDialogue> out;
  out.reserve(dialogues.size());
  for (const Dialogue* d : dialogues) {
    const auto it = by_id.find(d->id);
    if (it == by_id.end()) throw DataError("no labels for dialogue '" + d->id + "'");
    if (it->second->size() != d->size()) {
      throw DataError("labels for dialogue '" + d->id + "' have length " +
                      std::to_string(it->second->size()) + ", dialogue has " +
                      std::to_string(d->size()));
    }
    out.push_back({d->id, featurize_dialogue(*d, config), it->second->labels});
  }
  return out;
}

std::vector<int> eligible_negatives(std::span<const std::uint8_t> labels) {
  const int n = static_cast<int>(labels.size());
  std::vector<int> out;
  for (int t = 0; t < n; ++t) {
    bool ok = true;
    for (int k = std::max(0, t - 2); k <= std::min(n - 1, t + 2) && ok; ++k) {
      if (labels[k]) ok = false;
    }
    if (ok) out.push_back(t);
  }
  return out;
}

std::vector<Pair> sample_pairs(const LabeledDialogue& dialogue, int epoch,
                               std::uint64_t base_seed) {
  std::vector<int> positives;
  for (int t = 0; t < static_cast<int>(dialogue.labels.size()); ++t) {
    if (dialogue.labels[t]) positives.push_back(t);
  }
  if (positives.empty()) return {};
  const auto negatives = eligible_negatives(dialogue.labels);
  if (negatives.empty()) {
    log_warning("dialogue '" + dialogue.id + "' has no eligible negatives; skipped");
    return {};
  }
  Rng rng(mix_seed({base_seed, static_cast<std::uint64_t>(epoch), fnv1a64(dialogue.id)}));
  std::vector<Pair> pairs;
  pairs.reserve(positives.size());
  for (int p : positives) {
    pairs.push_back({p, negatives[uniform_index(rng, negatives.size())]});
  }
  return pairs;
}

void TrainConfig::validate() const {
  if (batch_size < 1) throw UsageError("train: batch_size must be >= 1");
  if (epochs < 1) throw UsageError("train: epochs must be >= 1");
  if (hidden < 0) throw UsageError("train: hidden must be >= 0");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw UsageError("train: dropout must lie in [0, 1)");
  if (!(adadelta.rho > 0.0 && adadelta.rho < 1.0)) {
    throw UsageError("train: adadelta rho must lie in (0, 1)");
  }
  if (!(adadelta.epsilon > 0.0)) throw UsageError("train: adadelta epsilon must be positive");
}

std::vector<double> score_dialogue(const Scorer& scorer,
                                   std::span<const FeatureVector> features) {
  std::vector<double> out;
  out.reserve(features.size());
  for (const auto& x : features) out.push_back(scorer.score(x));
  return out;
}

namespace {

double validation_auc(const Scorer& scorer, std::span<const LabeledDialogue> validation) {
  std::vector<ScoredDialogue> scored(validation.size());
  const long n = static_cast<long>(validation.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    scored[i].scores = score_dialogue(scorer, validation[i].features);
    scored[i].gold = validation[i].labels;
  }
  return pr_curve(scored, Scope::kMicro).auc;
}

struct Sample {
  std::uint32_t dialogue;
  int first;
  int second;
};

}  // namespace

TrainResult train(std::span<const LabeledDialogue> train_set,
                  std::span<const LabeledDialogue> validation, const FeatureConfig& features,
                  const TrainConfig& config) {
  config.validate();
  if (train_set.empty()) throw UsageError("train: training split is empty");
  if (validation.empty()) {
    throw UsageError("train: validation split is empty; checkpointing needs one");
  }

  TrainResult result;
  result.model.features = features;
  result.model.loss = config.loss;
  Scorer scorer = config.hidden > 0
                      ? Scorer::mlp(features.total_dim(), config.hidden,
                                    mix_seed({config.seed, 0x696e6974}), config.dropout)
                      : Scorer::linear(features.total_dim());
  result.model.scorer = scorer;
  result.best_auc = -1.0;

  Adadelta optimizer(scorer.params().size(), config.adadelta);
  std::vector<double> grad(scorer.params().size(), 0.0);
  Scorer::Cache cache_a, cache_b;

  std::vector<Sample> pointwise;
  if (config.loss == Loss::kLogistic) {
    for (std::uint32_t d = 0; d < train_set.size(); ++d) {
      for (int t = 0; t < static_cast<int>(train_set[d].labels.size()); ++t) {
        pointwise.push_back({d, t, train_set[d].labels[t]});
      }
    }
  }

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    std::vector<Sample> samples;
    if (config.loss == Loss::kLogistic) {
      samples = pointwise;
    } else {
      for (std::uint32_t d = 0; d < train_set.size(); ++d) {
        for (const Pair& p : sample_pairs(train_set[d], epoch, config.seed)) {
          samples.push_back({d, p.positive, p.negative});
        }
      }
    }
    if (samples.empty()) throw DataError("train: no training examples or pairs");
    Rng order(mix_seed({config.seed, static_cast<std::uint64_t>(epoch), 0x6f72646572}));
    shuffle(std::span<Sample>(samples), order);
    Rng dropout_rng(mix_seed({config.seed, static_cast<std::uint64_t>(epoch), 0x64726f70}));
    Rng* drop = config.dropout > 0.0 ? &dropout_rng : nullptr;

    double total_loss = 0.0;
    int updates = 0;
    const std::size_t batch = static_cast<std::size_t>(config.batch_size);
    for (std::size_t start = 0; start < samples.size(); start += batch) {
      const std::size_t end = std::min(samples.size(), start + batch);
      const double inv = 1.0 / static_cast<double>(end - start);
      std::fill(grad.begin(), grad.end(), 0.0);
      for (std::size_t i = start; i < end; ++i) {
        const Sample& s = samples[i];
        const auto& f = train_set[s.dialogue].features;
        if (config.loss == Loss::kLogistic) {
          const double score = scorer.forward(f[s.first], cache_a, drop);
          const PointLoss l = logistic_loss(score, s.second);
          total_loss += l.loss;
          scorer.backward(f[s.first], cache_a, l.d_score * inv, grad);
        } else {
          const double pos = scorer.forward(f[s.first], cache_a, drop);
          const double neg = scorer.forward(f[s.second], cache_b, drop);
          const PairLoss l = ranknet_loss(pos, neg);
          total_loss += l.loss;
          scorer.backward(f[s.first], cache_a, l.d_pos * inv, grad);
          scorer.backward(f[s.second], cache_b, l.d_neg * inv, grad);
        }
      }
      if (!std::isfinite(total_loss)) {
        throw NumericError("train: non-finite loss at epoch " + std::to_string(epoch) +
                           ", batch starting at sample " + std::to_string(start));
      }
      optimizer.step(scorer.params(), grad);
      ++updates;
    }

    EpochLog entry;
    entry.epoch = epoch;
    entry.train_loss = total_loss / static_cast<double>(samples.size());
    entry.validation_auc = validation_auc(scorer, validation);
    entry.updates = updates;
    result.log.push_back(entry);
    if (entry.validation_auc > result.best_auc) {
      result.best_auc = entry.validation_auc;
      result.best_epoch = epoch;
      result.model.scorer = scorer;
    }
  }
  return result;
}

std::string model_to_json(const TrainedModel& model) {
  const Scorer& s = model.scorer;
  nlohmann::ordered_json j;
  j["format"] = "turnpoint-model";
  j["version"] = kModelVersion;
  j["loss"] = std::string(to_string(model.loss));
  j["feature_config"] = nlohmann::ordered_json::parse(model.features.to_json());
  j["fingerprint"] = model.features.fingerprint();
  j["input_dim"] = s.input_dim();
  j["hidden"] = s.hidden();
  const auto p = s.params();
  if (s.hidden() == 0) {
    j["bias"] = p[s.input_dim()];
    auto weights = nlohmann::ordered_json::array();
    for (std::uint32_t i = 0; i < s.input_dim(); ++i) {
      if (p[i] != 0.0) weights.push_back({i, p[i]});
    }
    j["weights"] = std::move(weights);
  } else {
    const std::size_t h = static_cast<std::size_t>(s.hidden());
    const std::size_t w1 = static_cast<std::size_t>(s.input_dim()) * h;
    j["dropout"] = s.dropout();
    j["init_seed"] = s.init_seed();
    auto rows = nlohmann::ordered_json::array();
    for (std::uint32_t r = 0; r < s.input_dim(); ++r) {
      bool changed = false;
      for (int u = 0; u < s.hidden() && !changed; ++u) {
        changed = p[r * h + u] != s.initial_weight(r, u);
      }
      if (changed) {
        rows.push_back({r, std::vector<double>(p.begin() + r * h, p.begin() + (r + 1) * h)});
      }
    }
    j["rows"] = std::move(rows);
    j["b1"] = std::vector<double>(p.begin() + w1, p.begin() + w1 + h);
    j["w2"] = std::vector<double>(p.begin() + w1 + h, p.begin() + w1 + 2 * h);
    j["b2"] = p[w1 + 2 * h];
  }
  return j.dump();
}

TrainedModel model_from_json(std::string_view text, const std::string& source) {
  TrainedModel m;
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != "turnpoint-model") {
      throw DataError(source + ": not a turnpoint model file");
    }
    if (j.at("version").get<int>() != kModelVersion) {
      throw DataError(source + ": unsupported model version");
    }
    m.loss = parse_loss(j.at("loss").get<std::string>());
    m.features = FeatureConfig::from_json(j.at("feature_config").dump());
    if (j.at("fingerprint").get<std::string>() != m.features.fingerprint()) {
      throw DataError(source + ": feature config fingerprint mismatch");
    }
    const auto dim = j.at("input_dim").get<std::uint32_t>();
    if (dim != m.features.total_dim()) {
      throw DataError(source + ": input_dim disagrees with the feature config");
    }
    const int hidden = j.at("hidden").get<int>();
    const auto finite = [&](double v) {
      if (!std::isfinite(v)) throw DataError(source + ": non-finite weight");
      return v;
    };
    if (hidden == 0) {
      m.scorer = Scorer::linear(dim);
      auto p = m.scorer.params();
      p[dim] = finite(j.at("bias").get<double>());
      for (const auto& w : j.at("weights")) {
        const auto i = w.at(0).get<std::uint32_t>();
        if (i >= dim) throw DataError(source + ": weight index out of range");
        p[i] = finite(w.at(1).get<double>());
      }
    } else {
      m.scorer = Scorer::mlp(dim, hidden, j.at("init_seed").get<std::uint64_t>(),
                             j.at("dropout").get<double>());
      auto p = m.scorer.params();
      const std::size_t h = static_cast<std::size_t>(hidden);
      const std::size_t w1 = static_cast<std::size_t>(dim) * h;
      for (const auto& row : j.at("rows")) {
        const auto r = row.at(0).get<std::uint32_t>();
        const auto values = row.at(1).get<std::vector<double>>();
        if (r >= dim || values.size() != h) throw DataError(source + ": malformed row");
        for (std::size_t u = 0; u < h; ++u) p[r * h + u] = finite(values[u]);
      }
      const auto b1 = j.at("b1").get<std::vector<double>>();
      const auto w2 = j.at("w2").get<std::vector<double>>();
      if (b1.size() != h || w2.size() != h) throw DataError(source + ": malformed layer");
      for (std::size_t u = 0; u < h; ++u) {
        p[w1 + u] = finite(b1[u]);
        p[w1 + h + u] = finite(w2[u]);
      }
      p[w1 + 2 * h] = finite(j.at("b2").get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(source + ": " + e.what());
  } catch (const UsageError& e) {
    throw DataError(source + ": " + e.what());
  }
  return m;
}

void save_model(const std::filesystem::path& path, const TrainedModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write model '" + path.string() + "'");
  out << model_to_json(model) << '\n';
  if (!out) throw DataError("failed writing model '" + path.string() + "'");
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open model '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str(), path.string());
}

}  // namespace turnpoint
