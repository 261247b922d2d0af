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

#ifndef TURNPOINT_EVAL_H_
#define TURNPOINT_EVAL_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace turnpoint {

// Inclusive run [start, end] of consecutive positives.
struct ClusterSpan {
  int start = 0;
  int end = 0;

  int size() const { return end - start + 1; }
  bool operator==(const ClusterSpan&) const = default;
};

// Maximal runs of ones, in order.
std::vector<ClusterSpan> clusterize(std::span<const std::uint8_t> labels);

struct MatchResult {
  int tp = 0;
  int fp = 0;
  int fn = 0;

  MatchResult& operator+=(const MatchResult& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  bool operator==(const MatchResult&) const = default;
};

// Cluster alignment with one step of tolerance before the gold cluster and
// none after. Gold clusters are visited left to right; each takes the
// earliest unmatched predicted cluster overlapping [start - 1, end]. A
// matched pair is one true positive and consumes both clusters. Each
// utterance of an unmatched gold cluster is a false negative, each utterance
// of an unmatched predicted cluster a false positive.
//
// Spans must be sorted and disjoint; throws UsageError otherwise.
MatchResult match(std::span<const ClusterSpan> gold, std::span<const ClusterSpan> pred);

// Convenience over binary sequences of equal length.
MatchResult match_labels(std::span<const std::uint8_t> gold,
                         std::span<const std::uint8_t> pred);

struct PRPoint {
  double threshold = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  MatchResult counts;
};

struct PRCurve {
  // Thresholds strictly decreasing.
  std::vector<PRPoint> points;
  double auc = 0.0;
  // (P + R) / 2 at the point where |P - R| is smallest (highest threshold on
  // ties).
  double break_even = 0.0;
  double break_even_threshold = 0.0;
};

enum class Execution { kSerial, kParallel };
enum class Scope { kMicro, kMacro };

// Scores and gold labels for one dialogue. `forced`, when non-empty, holds
// positives ORed into the prediction at every threshold.
struct ScoredDialogue {
  std::vector<double> scores;
  std::vector<std::uint8_t> gold;
  std::vector<std::uint8_t> forced;
};

// Area under the interpolated curve: precision at recall r is the best
// precision among points with recall >= r. Trapezoids over recall, starting
// at recall 0 with the first point's interpolated precision.
double pr_auc(std::span<const PRPoint> points);

// Builds a curve from pooled counts per threshold. Thresholds with no
// predicted positives are dropped. Throws DataError when no gold positive
// exists.
PRCurve curve_from_counts(std::span<const double> thresholds,
                          std::span<const MatchResult> counts);

// Unique values in descending order.
std::vector<double> descending_thresholds(std::span<const std::vector<double>> scores);

// Binarizes dialogue `dialogue` at `threshold` into `out` (pre-sized).
using Binarizer =
    std::function<void(double threshold, std::size_t dialogue, std::vector<std::uint8_t>& out)>;

// Pooled counts per threshold for an arbitrary threshold -> prediction rule.
std::vector<MatchResult> sweep_predictions(std::span<const double> thresholds,
                                           std::span<const std::vector<std::uint8_t>> gold,
                                           const Binarizer& binarize,
                                           Execution execution = Execution::kParallel);

// Micro: pooled counts over all dialogues at every unique score. Macro: AUC
// averaged over per-dialogue curves of dialogues with at least one gold
// positive; points are left empty and break_even is the per-dialogue mean.
// Throws DataError when no gold positive exists.
PRCurve pr_curve(std::span<const ScoredDialogue> dialogues, Scope scope,
                 Execution execution = Execution::kParallel);

// Table-style summary of one model.
struct Summary {
  double micro_auc = 0.0;
  double macro_auc = 0.0;
  double break_even = 0.0;
  double break_even_threshold = 0.0;
  int macro_dialogues = 0;
  int macro_excluded = 0;
};

Summary summarize(std::span<const ScoredDialogue> dialogues,
                  Execution execution = Execution::kParallel);

// Same for predictors whose binary output is not a threshold on fixed scores
// (e.g. the resetting hazard predictor).
Summary summarize_predictions(std::span<const double> thresholds,
                              std::span<const std::vector<std::uint8_t>> gold,
                              const Binarizer& binarize,
                              Execution execution = Execution::kParallel);

}  // namespace turnpoint

#endif  // TURNPOINT_EVAL_H_
