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

#ifndef TURNPOINT_RANKER_H_
#define TURNPOINT_RANKER_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "turnpoint/corpus.h"
#include "turnpoint/eval.h"
#include "turnpoint/features.h"
#include "turnpoint/labels.h"
#include "turnpoint/rng.h"

namespace turnpoint {

enum class Loss { kLogistic, kRankNet };

// Accepts logistic|ranknet; throws UsageError otherwise.
Loss parse_loss(std::string_view name);
std::string_view to_string(Loss loss);

double sigmoid(double x);

struct PairLoss {
  double loss;
  double d_pos;
  double d_neg;
};

// C = 1 - sigmoid(pos - neg), evaluated without overflow for any finite
// difference.
PairLoss ranknet_loss(double pos, double neg);

struct PointLoss {
  double loss;
  double d_score;
};

// Binary cross-entropy of sigmoid(score) against label in {0, 1}.
PointLoss logistic_loss(double score, int label);

struct AdadeltaConfig {
  double rho = 0.95;
  double epsilon = 1e-6;
};

class Adadelta {
 public:
  Adadelta(std::size_t size, AdadeltaConfig config);

  // Throws NumericError if any gradient entry is non-finite; params are left
  // untouched in that case.
  void step(std::span<double> params, std::span<const double> grad);

  const std::vector<double>& sq_grad() const { return sq_grad_; }
  const std::vector<double>& sq_delta() const { return sq_delta_; }

 private:
  AdadeltaConfig config_;
  std::vector<double> sq_grad_;
  std::vector<double> sq_delta_;
};

// Score function over feature vectors. With hidden() == 0 it is linear,
// score = w.x + b, and params() is [w..., b]. Otherwise one ReLU layer sits
// in front: params() is [W1 (row per input index), b1, w2, b2].
class Scorer {
 public:
  struct Cache {
    std::vector<double> pre;
    std::vector<double> mask;
  };

  static Scorer linear(std::uint32_t input_dim);
  static Scorer mlp(std::uint32_t input_dim, int hidden, std::uint64_t init_seed,
                    double dropout = 0.0);

  std::uint32_t input_dim() const { return input_dim_; }
  int hidden() const { return hidden_; }
  double dropout() const { return dropout_; }
  std::uint64_t init_seed() const { return init_seed_; }

  double score(const FeatureVector& x) const;

  // Training forward pass. When rng is given, hidden units are dropped with
  // probability dropout() (inverted scaling).
  double forward(const FeatureVector& x, Cache& cache, Rng* rng) const;
  // Accumulates d_score * dscore/dparams into grad.
  void backward(const FeatureVector& x, const Cache& cache, double d_score,
                std::span<double> grad) const;

  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }

  // Initial value of W1[row * hidden + unit] for the mlp variant.
  double initial_weight(std::uint32_t row, int unit) const;

  bool operator==(const Scorer&) const = default;

 private:
  std::uint32_t input_dim_ = 0;
  int hidden_ = 0;
  double dropout_ = 0.0;
  std::uint64_t init_seed_ = 0;
  std::vector<double> params_;
};

struct LabeledDialogue {
  std::string id;
  std::vector<FeatureVector> features;
  std::vector<std::uint8_t> labels;
};

// Pairs dialogues with their labels by id. Throws DataError when a dialogue
// has no labels or the lengths differ.
std::vector<LabeledDialogue> make_labeled(std::span<const Dialogue* const> dialogues,
                                          std::span<const LabelSequence> labels,
                                          const FeatureConfig& config);

// Indices whose distance to every positive is greater than 2.
std::vector<int> eligible_negatives(std::span<const std::uint8_t> labels);

struct Pair {
  int positive;
  int negative;
  bool operator==(const Pair&) const = default;
};

// One uniformly drawn eligible negative per positive, seeded by
// (base_seed, epoch, dialogue id). Logs a warning and returns nothing when a
// dialogue with positives has no eligible negative.
std::vector<Pair> sample_pairs(const LabeledDialogue& dialogue, int epoch,
                               std::uint64_t base_seed);

struct TrainConfig {
  Loss loss = Loss::kRankNet;
  int batch_size = 32;
  int epochs = 100;
  std::uint64_t seed = 0;
  AdadeltaConfig adadelta;
  int hidden = 0;
  double dropout = 0.0;

  // Throws UsageError on out-of-range values.
  void validate() const;
};

struct EpochLog {
  int epoch = 0;
  double train_loss = 0.0;
  double validation_auc = 0.0;
  int updates = 0;
};

struct TrainedModel {
  FeatureConfig features;
  Loss loss = Loss::kRankNet;
  Scorer scorer;
};

struct TrainResult {
  TrainedModel model;
  std::vector<EpochLog> log;
  int best_epoch = 0;
  double best_auc = 0.0;
};

// Trains on `train`, checkpointing the scorer with the best validation micro
// PR-AUC. Throws UsageError on an empty split and NumericError on a
// non-finite loss.
TrainResult train(std::span<const LabeledDialogue> train,
                  std::span<const LabeledDialogue> validation,
                  const FeatureConfig& features, const TrainConfig& config);

std::vector<double> score_dialogue(const Scorer& scorer,
                                   std::span<const FeatureVector> features);

std::string model_to_json(const TrainedModel& model);
TrainedModel model_from_json(std::string_view text, const std::string& source);
void save_model(const std::filesystem::path& path, const TrainedModel& model);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace turnpoint

#endif  // TURNPOINT_RANKER_H_
