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

#ifndef TURNPOINT_EXPERIMENT_H_
#define TURNPOINT_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "turnpoint/config.h"
#include "turnpoint/corpus.h"
#include "turnpoint/cpd.h"
#include "turnpoint/ensemble.h"
#include "turnpoint/eval.h"
#include "turnpoint/features.h"
#include "turnpoint/labels.h"
#include "turnpoint/ranker.h"
#include "turnpoint/wason.h"

namespace turnpoint {

// Dialogues of one split with their training or evaluation labels: weak
// labels for train, gold labels for validation and test.
struct SplitView {
  std::vector<const Dialogue*> dialogues;
  std::vector<LabelSequence> labels;

  std::size_t size() const { return dialogues.size(); }
  std::vector<std::vector<std::uint8_t>> gold() const;
};

SplitView split_view(const Corpus& corpus, Split split);

struct AgnosticSetup {
  AgnosticModel model;
  Lexicon lexicon;
  UpdateRule rule = UpdateRule::kReplace;
};

// Scores of one language-agnostic method; `threshold` only matters for the
// hazard-only method.
std::vector<double> agnostic_scores(const Dialogue& dialogue, AgnosticMethod method,
                                    double threshold, const AgnosticSetup& setup);

Summary evaluate_agnostic(const SplitView& split, AgnosticMethod method,
                          const AgnosticSetup& setup);

struct ExperimentConfig {
  std::filesystem::path corpus;
  CorpusFormat format = CorpusFormat::kCanonicalJson;
  std::optional<std::filesystem::path> tabular_config;
  std::optional<std::filesystem::path> lexicon;
  UpdateRule update_rule = UpdateRule::kReplace;
  // Recompute splits from split_seed, or keep the corpus's own assignment.
  bool recompute_splits = true;
  std::uint64_t split_seed = 0;
  FeatureConfig features;
  TrainConfig train;
  NormalGammaParams bocpd;
  ChangeBranch branch = ChangeBranch::kPriorPredictive;
  double position_alpha = 1.0;
  // How seqlen and bocpd are joined into the seqlen+bocpd predictor.
  CombineRule agnostic_rule = CombineRule::kOr;
  std::vector<std::string> models;

  // Relative paths resolve against base_dir. Throws UsageError.
  static ExperimentConfig from_settings(const Settings& settings,
                                        const std::filesystem::path& base_dir);
  static ExperimentConfig load(const std::filesystem::path& path);
};

// Report model names, in canonical order.
const std::vector<std::string>& known_models();

struct ReportRow {
  std::string model;
  double micro_auc = 0.0;
  double macro_auc = 0.0;
  double break_even = 0.0;
};

struct ExperimentResult {
  std::vector<ReportRow> rows;
  std::map<std::string, TrainResult> trained;
  // Validation break-even thresholds of the agnostic predictors.
  std::map<std::string, double> thresholds;
  int macro_excluded = 0;
};

// Runs every configured model on `corpus`. Stage failures are rethrown with
// the stage named.
ExperimentResult run_experiment(const ExperimentConfig& config, const Corpus& corpus);
ExperimentResult run_experiment(const ExperimentConfig& config);

void write_report(std::ostream& out, std::span<const ReportRow> rows);

}  // namespace turnpoint

#endif  // TURNPOINT_EXPERIMENT_H_
