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

#include "turnpoint/experiment.h"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <set>

#include "turnpoint/error.h"

namespace turnpoint {
namespace {

constexpr const char* kAllPositive = "all-positive";
constexpr const char* kHazard = "hazard";
constexpr const char* kSeqlen = "seqlen";
constexpr const char* kBocpd = "bocpd";
constexpr const char* kAgnostic = "seqlen+bocpd";
constexpr const char* kLogistic = "logistic";
constexpr const char* kRankNet = "ranknet";
constexpr const char* kLogisticPlus = "logistic+seqlen+bocpd";
constexpr const char* kRankNetPlus = "ranknet+seqlen+bocpd";

template <typename F>
auto stage(const std::string& name, F&& body) {
  try {
    return body();
  } catch (const NumericError& e) {
    throw NumericError("stage '" + name + "': " + e.what());
  } catch (const UsageError& e) {
    throw UsageError("stage '" + name + "': " + e.what());
  } catch (const DataError& e) {
    throw DataError("stage '" + name + "': " + e.what());
  }
}

std::vector<std::uint8_t> at_least(std::span<const double> scores, double threshold) {
  std::vector<std::uint8_t> out(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) out[i] = scores[i] >= threshold ? 1 : 0;
  return out;
}

std::vector<double> sum_scores(const std::vector<double>& a, const std::vector<double>& b) {
  const std::vector<double> members[] = {a, b};
  return combine_sum(members);
}

class Runner {
 public:
  Runner(const ExperimentConfig& config, const Corpus& corpus)
      : config_(config), corpus_(corpus) {
    train_ = stage("split", [&] { return split_view(corpus_, Split::kTrain); });
    validation_ = stage("split", [&] { return split_view(corpus_, Split::kValidation); });
    test_ = stage("split", [&] { return split_view(corpus_, Split::kTest); });
    if (test_.size() == 0) throw DataError("stage 'split': test split is empty");
  }

  ReportRow run(const std::string& name, ExperimentResult& result) {
    const Summary s = stage(name, [&] { return evaluate(name, result); });
    result.macro_excluded = s.macro_excluded;
    return {name, s.micro_auc, s.macro_auc, s.break_even};
  }

 private:
  Summary evaluate(const std::string& name, ExperimentResult& result) {
    if (name == kAllPositive) {
      std::vector<ScoredDialogue> scored;
      for (std::size_t i = 0; i < test_.size(); ++i) {
        scored.push_back({std::vector<double>(test_.labels[i].labels.size(), 1.0),
                          test_.labels[i].labels,
                          {}});
      }
      return summarize(scored);
    }
    if (name == kHazard) return evaluate_agnostic(test_, AgnosticMethod::kHazard, setup());
    if (name == kSeqlen) {
      return evaluate_agnostic(test_, AgnosticMethod::kPositionPrior, setup());
    }
    if (name == kBocpd) return evaluate_agnostic(test_, AgnosticMethod::kBocpd, setup());
    if (name == kAgnostic) {
      prepare_thresholds(result);
      return summarize_combined(test_, nullptr);
    }
    const bool plus = name == kLogisticPlus || name == kRankNetPlus;
    const Loss loss = (name == kLogistic || name == kLogisticPlus) ? Loss::kLogistic
                                                                   : Loss::kRankNet;
    const TrainResult& trained = train_model(loss, result);
    std::vector<CombinedDialogue> combined;
    for (std::size_t i = 0; i < test_.size(); ++i) {
      CombinedDialogue cd;
      cd.scores =
          score_dialogue(trained.model.scorer, featurize_dialogue(*test_.dialogues[i],
                                                                  trained.model.features));
      cd.gold = test_.labels[i].labels;
      combined.push_back(std::move(cd));
    }
    if (plus) {
      prepare_thresholds(result);
      for (std::size_t i = 0; i < test_.size(); ++i) {
        combined[i].fixed.push_back(agnostic_binary(*test_.dialogues[i]));
      }
    }
    return combined_summary(combined);
  }

  const AgnosticSetup& setup() {
    if (!setup_) {
      AgnosticSetup s;
      s.model = stage("fit", [&] {
        return fit_agnostic(train_.labels, config_.bocpd, config_.position_alpha,
                            config_.branch);
      });
      if (config_.lexicon) s.lexicon = Lexicon::load(*config_.lexicon);
      s.rule = config_.update_rule;
      setup_ = std::move(s);
    }
    return *setup_;
  }

  std::vector<double> seqlen(const Dialogue& d) {
    return agnostic_scores(d, AgnosticMethod::kPositionPrior, 0.0, setup());
  }
  std::vector<double> bocpd(const Dialogue& d) {
    return agnostic_scores(d, AgnosticMethod::kBocpd, 0.0, setup());
  }

  // Seqlen+bocpd over a split: under OR, seqlen is swept with bocpd fixed at
  // its validation break-even; under score-sum the summed score is swept.
  Summary summarize_combined(const SplitView& split, double* threshold_out) {
    std::vector<CombinedDialogue> combined;
    for (std::size_t i = 0; i < split.size(); ++i) {
      const Dialogue& d = *split.dialogues[i];
      CombinedDialogue cd;
      cd.gold = split.labels[i].labels;
      if (config_.agnostic_rule == CombineRule::kOr) {
        cd.scores = seqlen(d);
        cd.fixed.push_back(at_least(bocpd(d), bocpd_threshold_));
      } else {
        cd.scores = sum_scores(seqlen(d), bocpd(d));
      }
      combined.push_back(std::move(cd));
    }
    const Summary s = combined_summary(combined);
    if (threshold_out) *threshold_out = s.break_even_threshold;
    return s;
  }

  void prepare_thresholds(ExperimentResult& result) {
    if (thresholds_ready_) return;
    if (validation_.size() == 0) {
      throw UsageError("validation split is empty; break-even thresholds need one");
    }
    if (config_.agnostic_rule == CombineRule::kOr) {
      bocpd_threshold_ =
          evaluate_agnostic(validation_, AgnosticMethod::kBocpd, setup()).break_even_threshold;
      result.thresholds[kBocpd] = bocpd_threshold_;
    }
    summarize_combined(validation_, &combined_threshold_);
    result.thresholds[kAgnostic] = combined_threshold_;
    thresholds_ready_ = true;
  }

  std::vector<std::uint8_t> agnostic_binary(const Dialogue& d) {
    if (config_.agnostic_rule == CombineRule::kOr) {
      const std::vector<std::uint8_t> members[] = {at_least(seqlen(d), combined_threshold_),
                                                   at_least(bocpd(d), bocpd_threshold_)};
      return combine_or(members);
    }
    return at_least(sum_scores(seqlen(d), bocpd(d)), combined_threshold_);
  }

  const TrainResult& train_model(Loss loss, ExperimentResult& result) {
    const std::string key(to_string(loss));
    auto it = result.trained.find(key);
    if (it != result.trained.end()) return it->second;
    TrainConfig tc = config_.train;
    tc.loss = loss;
    auto train_set = make_labeled(train_.dialogues, train_.labels, config_.features);
    auto validation_set =
        make_labeled(validation_.dialogues, validation_.labels, config_.features);
    TrainResult r = stage("train " + key, [&] {
      return train(train_set, validation_set, config_.features, tc);
    });
    return result.trained.emplace(key, std::move(r)).first->second;
  }

  const ExperimentConfig& config_;
  const Corpus& corpus_;
  SplitView train_, validation_, test_;
  std::optional<AgnosticSetup> setup_;
  bool thresholds_ready_ = false;
  double bocpd_threshold_ = 0.0;
  double combined_threshold_ = 0.0;
};

UpdateRule parse_update_rule(const std::string& name) {
  if (name == "replace") return UpdateRule::kReplace;
  if (name == "union") return UpdateRule::kUnion;
  throw UsageError("unknown update_rule '" + name + "' (expected replace|union)");
}

}  // namespace

std::vector<std::vector<std::uint8_t>> SplitView::gold() const {
  std::vector<std::vector<std::uint8_t>> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(l.labels);
  return out;
}

SplitView split_view(const Corpus& corpus, Split split) {
  SplitView view;
  for (std::size_t i : corpus.indices(split)) {
    const Dialogue& d = corpus[i];
    view.dialogues.push_back(&d);
    if (split == Split::kTrain) {
      view.labels.push_back(weak_labels(d));
    } else {
      if (!d.annotated()) {
        throw DataError("dialogue '" + d.id + "' in the " + std::string(to_string(split)) +
                        " split has no gold annotation");
      }
      view.labels.push_back(gold_labels(d));
    }
  }
  return view;
}

std::vector<double> agnostic_scores(const Dialogue& dialogue, AgnosticMethod method,
                                    double threshold, const AgnosticSetup& setup) {
  if (method == AgnosticMethod::kBocpd) {
    const auto signal = track(dialogue, setup.lexicon, setup.rule);
    return predict_agnostic(signal, method, threshold, setup.model).scores;
  }
  const std::vector<double> placeholder(dialogue.utterances.size(), 0.0);
  return predict_agnostic(placeholder, method, threshold, setup.model).scores;
}

Summary evaluate_agnostic(const SplitView& split, AgnosticMethod method,
                          const AgnosticSetup& setup) {
  const auto gold = split.gold();
  if (method == AgnosticMethod::kHazard) {
    std::vector<double> thresholds = setup.model.hazard.values();
    std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
    const HazardTable& hazard = setup.model.hazard;
    const Binarizer binarize = [&](double threshold, std::size_t d,
                                   std::vector<std::uint8_t>& out) {
      const auto scores = hazard_scores(static_cast<int>(out.size()), hazard, threshold);
      for (std::size_t t = 0; t < out.size(); ++t) out[t] = scores[t] >= threshold ? 1 : 0;
      (void)d;
    };
    return summarize_predictions(thresholds, gold, binarize);
  }
  std::vector<ScoredDialogue> scored(split.size());
  const long n = static_cast<long>(split.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    scored[i].scores = agnostic_scores(*split.dialogues[i], method, 0.0, setup);
    scored[i].gold = gold[i];
  }
  return summarize(scored);
}

const std::vector<std::string>& known_models() {
  static const std::vector<std::string> names{kAllPositive, kHazard,   kSeqlen,
                                              kBocpd,       kAgnostic, kLogistic,
                                              kRankNet,     kLogisticPlus, kRankNetPlus};
  return names;
}

namespace {

void check_models(const std::vector<std::string>& models) {
  if (models.empty()) throw UsageError("experiment config: 'models' must list at least one model");
  std::set<std::string> seen;
  for (const auto& m : models) {
    const auto& known = known_models();
    if (std::find(known.begin(), known.end(), m) == known.end()) {
      throw UsageError("experiment config: unknown model '" + m + "'");
    }
    if (!seen.insert(m).second) {
      throw UsageError("experiment config: model '" + m + "' listed twice");
    }
  }
}

}  // namespace

ExperimentConfig ExperimentConfig::from_settings(const Settings& s,
                                                 const std::filesystem::path& base_dir) {
  s.reject_unknown({"corpus", "format", "tabular_config", "lexicon", "update_rule", "splits",
                    "split_seed", "features.dim", "features.lowercase", "features.positional",
                    "features.separator", "features.seed", "train.batch_size", "train.epochs",
                    "train.seed", "train.rho", "train.epsilon", "train.hidden", "train.dropout",
                    "bocpd.mu0", "bocpd.kappa0", "bocpd.alpha0", "bocpd.beta0", "bocpd.branch",
                    "position_alpha", "agnostic_rule", "models"},
                   "experiment config");
  ExperimentConfig c;
  const auto resolve = [&](const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  const auto non_negative = [](std::int64_t v, const char* key) {
    if (v < 0) throw UsageError(std::string("experiment config: ") + key + " must be >= 0");
    return static_cast<std::uint64_t>(v);
  };
  auto corpus = s.get_string("corpus");
  if (!corpus) throw UsageError("experiment config: 'corpus' is required");
  c.corpus = resolve(*corpus);
  if (auto v = s.get_string("format")) c.format = parse_corpus_format(*v);
  if (auto v = s.get_string("tabular_config")) c.tabular_config = resolve(*v);
  if (auto v = s.get_string("lexicon")) c.lexicon = resolve(*v);
  if (auto v = s.get_string("update_rule")) c.update_rule = parse_update_rule(*v);
  if (auto v = s.get_string("splits")) {
    if (*v != "recompute" && *v != "corpus") {
      throw UsageError("experiment config: splits must be recompute|corpus");
    }
    c.recompute_splits = *v == "recompute";
  }
  if (auto v = s.get_int("split_seed")) c.split_seed = non_negative(*v, "split_seed");

  if (auto v = s.get_int("features.dim")) {
    if (*v < 1 || *v > (std::int64_t{1} << 30)) {
      throw UsageError("experiment config: features.dim out of range");
    }
    c.features.dim = static_cast<std::uint32_t>(*v);
  }
  if (auto v = s.get_bool("features.lowercase")) c.features.lowercase = *v;
  if (auto v = s.get_bool("features.positional")) c.features.positional = *v;
  if (auto v = s.get_string("features.separator")) c.features.separator = *v;
  if (auto v = s.get_int("features.seed")) c.features.seed = non_negative(*v, "features.seed");

  if (auto v = s.get_int("train.batch_size")) c.train.batch_size = static_cast<int>(*v);
  if (auto v = s.get_int("train.epochs")) c.train.epochs = static_cast<int>(*v);
  if (auto v = s.get_int("train.seed")) c.train.seed = non_negative(*v, "train.seed");
  if (auto v = s.get_double("train.rho")) c.train.adadelta.rho = *v;
  if (auto v = s.get_double("train.epsilon")) c.train.adadelta.epsilon = *v;
  if (auto v = s.get_int("train.hidden")) c.train.hidden = static_cast<int>(*v);
  if (auto v = s.get_double("train.dropout")) c.train.dropout = *v;
  c.train.validate();

  if (auto v = s.get_double("bocpd.mu0")) c.bocpd.mu0 = *v;
  if (auto v = s.get_double("bocpd.kappa0")) c.bocpd.kappa0 = *v;
  if (auto v = s.get_double("bocpd.alpha0")) c.bocpd.alpha0 = *v;
  if (auto v = s.get_double("bocpd.beta0")) c.bocpd.beta0 = *v;
  NormalGammaModel check(c.bocpd);
  if (auto v = s.get_string("bocpd.branch")) {
    if (*v == "prior") {
      c.branch = ChangeBranch::kPriorPredictive;
    } else if (*v == "run") {
      c.branch = ChangeBranch::kRunPredictive;
    } else {
      throw UsageError("experiment config: bocpd.branch must be prior|run");
    }
  }
  if (auto v = s.get_double("position_alpha")) {
    if (!(*v >= 0.0)) throw UsageError("experiment config: position_alpha must be >= 0");
    c.position_alpha = *v;
  }
  if (auto v = s.get_string("agnostic_rule")) c.agnostic_rule = parse_combine_rule(*v);

  auto models = s.get_strings("models");
  if (!models || models->empty()) {
    throw UsageError("experiment config: 'models' must list at least one model");
  }
  check_models(*models);
  c.models = *models;
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  return from_settings(Settings::load(path), path.parent_path());
}

ExperimentResult run_experiment(const ExperimentConfig& config, const Corpus& corpus) {
  check_models(config.models);
  const Corpus prepared = config.recompute_splits
                              ? stage("split", [&] { return make_splits(corpus, config.split_seed); })
                              : corpus;
  Runner runner(config, prepared);
  ExperimentResult result;
  for (const auto& name : config.models) result.rows.push_back(runner.run(name, result));
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const Corpus corpus = stage("load corpus", [&] {
    TabularConfig tabular;
    if (config.tabular_config) tabular = load_tabular_config(*config.tabular_config);
    return load_corpus(config.corpus, config.format, tabular);
  });
  return run_experiment(config, corpus);
}

void write_report(std::ostream& out, std::span<const ReportRow> rows) {
  out << "model,micro_auc,macro_auc,break_even\n";
  char buf[96];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, ",%.4f,%.4f,%.4f\n", r.micro_auc, r.macro_auc,
                  r.break_even);
    out << r.model << buf;
  }
}

}  // namespace turnpoint
