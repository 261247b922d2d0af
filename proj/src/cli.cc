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

#include "turnpoint/cli.h"

#include <omp.h>

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>

#include "CLI11.hpp"
#include "turnpoint/corpus.h"
#include "turnpoint/cpd.h"
#include "turnpoint/csv.h"
#include "turnpoint/ensemble.h"
#include "turnpoint/error.h"
#include "turnpoint/eval.h"
#include "turnpoint/experiment.h"
#include "turnpoint/kernels/featurize.h"
#include "turnpoint/labels.h"
#include "turnpoint/log.h"
#include "turnpoint/manifest.h"
#include "turnpoint/ranker.h"
#include "turnpoint/scores.h"
#include "turnpoint/synth.h"
#include "turnpoint/wason.h"

namespace turnpoint {
namespace {

namespace fs = std::filesystem;

struct Globals {
  int threads = 0;
  bool quiet = false;
  std::string manifest;
};

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw DataError("failed writing '" + path + "'");
}

fs::path manifest_path(const Globals& g, const std::string& output) {
  if (!g.manifest.empty()) return g.manifest;
  const fs::path dir = fs::path(output).parent_path();
  return dir.empty() ? fs::path("manifest.jsonl") : dir / "manifest.jsonl";
}

UpdateRule parse_rule(const std::string& name) {
  if (name == "replace") return UpdateRule::kReplace;
  if (name == "union") return UpdateRule::kUnion;
  throw UsageError("unknown update rule '" + name + "' (expected replace|union)");
}

Split parse_split_name(const std::string& name) {
  auto s = parse_split(name);
  if (!s || *s == Split::kUnassigned) {
    throw UsageError("unknown split '" + name + "' (expected train|validation|test)");
  }
  return *s;
}

Corpus read_corpus(const std::string& path) {
  return load_corpus(path, CorpusFormat::kCanonicalJson);
}

nlohmann::ordered_json summary_json(const Summary& s) {
  nlohmann::ordered_json j;
  j["micro_auc"] = s.micro_auc;
  j["macro_auc"] = s.macro_auc;
  j["break_even"] = s.break_even;
  j["break_even_threshold"] = s.break_even_threshold;
  j["macro_dialogues"] = s.macro_dialogues;
  j["macro_excluded"] = s.macro_excluded;
  return j;
}

// --- ingest ---------------------------------------------------------------

struct IngestArgs {
  std::string input, format = "canonical-json", tabular_config, out;
};

void run_ingest(const IngestArgs& a, const std::string& config, const Globals& g,
                std::ostream& out) {
  TabularConfig tabular;
  if (!a.tabular_config.empty()) tabular = load_tabular_config(a.tabular_config);
  Warnings warnings;
  const Corpus corpus = load_corpus(a.input, parse_corpus_format(a.format), tabular, &warnings);
  for (const auto& w : warnings) log_warning(w);
  save_corpus(a.out, corpus);
  const CorpusStats s = corpus_stats(corpus);
  nlohmann::ordered_json stats;
  stats["dialogues"] = s.dialogues;
  stats["utterances"] = s.utterances;
  stats["avg_group_size"] = s.avg_group_size;
  stats["with_intermediate"] = s.with_intermediate;
  stats["intermediate_and_final"] = s.intermediate_and_final;
  stats["annotated"] = s.annotated;
  stats["annotated_changes"] = s.annotated_changes;
  out << stats.dump() << '\n';
  ManifestEntry e{"ingest", hash_text(config), hash_file(a.input), {}, {}, {a.input},
                  {a.out}, stats};
  append_manifest(manifest_path(g, a.out), e);
}

// --- split ----------------------------------------------------------------

struct SplitArgs {
  std::string corpus, out;
  std::uint64_t seed = 0;
};

void run_split(const SplitArgs& a, const std::string& config, const Globals& g,
               std::ostream& out) {
  const Corpus split = make_splits(read_corpus(a.corpus), a.seed);
  save_corpus(a.out, split);
  nlohmann::ordered_json counts;
  for (Split s : {Split::kTrain, Split::kValidation, Split::kTest, Split::kUnassigned}) {
    counts[std::string(to_string(s))] = split.indices(s).size();
  }
  out << counts.dump() << '\n';
  ManifestEntry e{"split", hash_text(config), hash_file(a.corpus), {{"split", a.seed}}, {},
                  {a.corpus}, {a.out}, counts};
  append_manifest(manifest_path(g, a.out), e);
}

// --- synth ----------------------------------------------------------------

struct SynthArgs {
  std::string config, out, truth_out;
  std::optional<std::uint64_t> seed;
};

void run_synth(const SynthArgs& a, const std::string& config, const Globals& g,
               std::ostream& out) {
  SynthConfig c;
  if (!a.config.empty()) c = SynthConfig::from_settings(Settings::load(a.config));
  if (a.seed) c.seed = *a.seed;
  const SynthCorpus synth = generate(c);
  save_corpus(a.out, synth.corpus);
  std::vector<std::string> outputs{a.out};
  if (!a.truth_out.empty()) {
    std::ofstream truth = open_out(a.truth_out);
    for (std::size_t i = 0; i < synth.corpus.size(); ++i) {
      nlohmann::ordered_json j;
      j["dialogue_id"] = synth.corpus[i].id;
      j["causes"] = synth.causes[i];
      truth << j.dump() << '\n';
    }
    finish(truth, a.truth_out);
    outputs.push_back(a.truth_out);
  }
  const CorpusStats s = corpus_stats(synth.corpus);
  nlohmann::ordered_json stats;
  stats["dialogues"] = s.dialogues;
  stats["utterances"] = s.utterances;
  stats["avg_group_size"] = s.avg_group_size;
  stats["annotated"] = s.annotated;
  stats["annotated_changes"] = s.annotated_changes;
  out << stats.dump() << '\n';
  ManifestEntry e{"synth", hash_text(config), hash_file(a.out), {{"synth", c.seed}}, {},
                  a.config.empty() ? std::vector<std::string>{}
                                   : std::vector<std::string>{a.config},
                  outputs, stats};
  append_manifest(manifest_path(g, a.out), e);
}

// --- label ----------------------------------------------------------------

struct LabelArgs {
  std::string corpus, out, mode = "auto";
};

void run_label(const LabelArgs& a, const std::string& config, const Globals& g,
               std::ostream& out) {
  if (a.mode != "auto" && a.mode != "weak" && a.mode != "gold") {
    throw UsageError("unknown label mode '" + a.mode + "' (expected auto|weak|gold)");
  }
  const Corpus corpus = read_corpus(a.corpus);
  std::vector<LabelSequence> labels;
  int positives = 0;
  for (const Dialogue& d : corpus.dialogues()) {
    if (a.mode == "gold" && !d.annotated()) continue;
    const bool gold = a.mode == "gold" || (a.mode == "auto" && d.annotated());
    labels.push_back(gold ? gold_labels(d) : weak_labels(d));
    positives += static_cast<int>(labels.back().positives().size());
  }
  std::ofstream file = open_out(a.out);
  write_labels(file, labels);
  finish(file, a.out);
  nlohmann::ordered_json m;
  m["dialogues"] = labels.size();
  m["positives"] = positives;
  out << m.dump() << '\n';
  ManifestEntry e{"label", hash_text(config), hash_file(a.corpus), {}, {}, {a.corpus},
                  {a.out}, m};
  append_manifest(manifest_path(g, a.out), e);
}

// --- track ----------------------------------------------------------------

struct TrackArgs {
  std::string corpus, out, lexicon, rule = "replace";
};

void run_track(const TrackArgs& a, const std::string& config, const Globals& g,
               std::ostream& out) {
  const Corpus corpus = read_corpus(a.corpus);
  const Lexicon lexicon = a.lexicon.empty() ? Lexicon{} : Lexicon::load(a.lexicon);
  const UpdateRule rule = parse_rule(a.rule);
  std::vector<std::vector<double>> signals(corpus.size());
  std::vector<std::string> failures(corpus.size());
  const long n = static_cast<long>(corpus.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      signals[i] = track(corpus[i], lexicon, rule);
    } catch (const std::exception& ex) {
      failures[i] = ex.what();
    }
  }
  for (const auto& f : failures) {
    if (!f.empty()) throw DataError(f);
  }
  std::ofstream file = open_out(a.out);
  file << "dialogue_id,utterance_index,performance\n";
  char buf[64];
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const std::string id = csv_escape(corpus[i].id);
    for (std::size_t t = 0; t < signals[i].size(); ++t) {
      std::snprintf(buf, sizeof buf, ",%zu,%.17g\n", t, signals[i][t]);
      file << id << buf;
    }
  }
  finish(file, a.out);
  nlohmann::ordered_json m;
  m["dialogues"] = corpus.size();
  out << m.dump() << '\n';
  std::vector<std::string> inputs{a.corpus};
  if (!a.lexicon.empty()) inputs.push_back(a.lexicon);
  ManifestEntry e{"track", hash_text(config), hash_file(a.corpus), {}, {}, inputs, {a.out}, m};
  append_manifest(manifest_path(g, a.out), e);
}

// --- train ----------------------------------------------------------------

struct TrainArgs {
  std::string corpus, model_out, log_out, features, loss = "ranknet";
  TrainConfig train;
  std::optional<std::uint32_t> dim;
};

void run_train(TrainArgs a, const std::string& config, const Globals& g, std::ostream& out) {
  a.train.loss = parse_loss(a.loss);
  FeatureConfig features;
  if (!a.features.empty()) features = FeatureConfig::load(a.features);
  if (a.dim) {
    if (*a.dim == 0) throw UsageError("--dim must be positive");
    features.dim = *a.dim;
  }
  const Corpus corpus = read_corpus(a.corpus);
  const SplitView train_split = split_view(corpus, Split::kTrain);
  const SplitView validation_split = split_view(corpus, Split::kValidation);
  const auto train_set = make_labeled(train_split.dialogues, train_split.labels, features);
  const auto validation_set =
      make_labeled(validation_split.dialogues, validation_split.labels, features);
  const TrainResult result = train(train_set, validation_set, features, a.train);
  save_model(a.model_out, result.model);
  std::vector<std::string> outputs{a.model_out};
  if (!a.log_out.empty()) {
    std::ofstream log = open_out(a.log_out);
    log << "epoch,train_loss,validation_auc,updates\n";
    char buf[96];
    for (const auto& e : result.log) {
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%d\n", e.epoch, e.train_loss,
                    e.validation_auc, e.updates);
      log << buf;
    }
    finish(log, a.log_out);
    outputs.push_back(a.log_out);
  }
  nlohmann::ordered_json m;
  m["best_epoch"] = result.best_epoch;
  m["validation_micro_auc"] = result.best_auc;
  out << m.dump() << '\n';
  ManifestEntry e{"train",
                  hash_text(config),
                  hash_file(a.corpus),
                  {{"train", a.train.seed}},
                  {{"model", hash_file(a.model_out)}, {"features", features.fingerprint()}},
                  {a.corpus},
                  outputs,
                  m};
  append_manifest(manifest_path(g, a.model_out), e);
}

// --- predict --------------------------------------------------------------

struct PredictArgs {
  std::string corpus, out, model_in, method, split = "test", lexicon, rule = "replace";
  std::optional<double> threshold;
  double position_alpha = 1.0;
};

std::vector<const Dialogue*> select(const Corpus& corpus, const std::string& split) {
  std::vector<const Dialogue*> out;
  if (split == "all") {
    for (const auto& d : corpus.dialogues()) out.push_back(&d);
    return out;
  }
  for (std::size_t i : corpus.indices(parse_split_name(split))) out.push_back(&corpus[i]);
  return out;
}

void run_predict(const PredictArgs& a, const std::string& config, const Globals& g,
                 std::ostream& out) {
  if (a.model_in.empty() == a.method.empty()) {
    throw UsageError("predict needs exactly one of --model-in and --method");
  }
  const Corpus corpus = read_corpus(a.corpus);
  const auto chosen = select(corpus, a.split);
  std::vector<DialogueScores> rows(chosen.size());
  std::map<std::string, std::string> fingerprints;
  double threshold = 0.0;
  nlohmann::ordered_json m;

  if (!a.model_in.empty()) {
    const TrainedModel model = load_model(a.model_in);
    fingerprints["model"] = hash_file(a.model_in);
    fingerprints["features"] = model.features.fingerprint();
    const auto score_all = [&](const std::vector<const Dialogue*>& ds) {
      const auto features = kernels::featurize_omp(ds, model.features);
      std::vector<std::vector<double>> scores;
      for (const auto& f : features) scores.push_back(score_dialogue(model.scorer, f));
      return scores;
    };
    if (a.threshold) {
      threshold = *a.threshold;
    } else {
      const SplitView validation = split_view(corpus, Split::kValidation);
      if (validation.size() == 0) {
        throw UsageError("no validation split to pick a threshold; pass --threshold");
      }
      const auto scores = score_all(validation.dialogues);
      std::vector<ScoredDialogue> scored;
      for (std::size_t i = 0; i < scores.size(); ++i) {
        scored.push_back({scores[i], validation.labels[i].labels, {}});
      }
      threshold = summarize(scored).break_even_threshold;
    }
    const auto scores = score_all(chosen);
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      rows[i].dialogue_id = chosen[i]->id;
      rows[i].scores = scores[i];
    }
    m["model"] = std::string(to_string(model.loss));
  } else {
    const AgnosticMethod method = parse_agnostic_method(a.method);
    AgnosticSetup setup;
    setup.model = fit_agnostic(split_view(corpus, Split::kTrain).labels, {}, a.position_alpha);
    if (!a.lexicon.empty()) setup.lexicon = Lexicon::load(a.lexicon);
    setup.rule = parse_rule(a.rule);
    if (a.threshold) {
      threshold = *a.threshold;
    } else {
      const SplitView validation = split_view(corpus, Split::kValidation);
      if (validation.size() == 0) {
        throw UsageError("no validation split to pick a threshold; pass --threshold");
      }
      threshold = evaluate_agnostic(validation, method, setup).break_even_threshold;
    }
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      rows[i].dialogue_id = chosen[i]->id;
      rows[i].scores = agnostic_scores(*chosen[i], method, threshold, setup);
    }
    m["model"] = std::string(to_string(method));
  }
  for (auto& r : rows) {
    r.binary.resize(r.scores.size());
    for (std::size_t t = 0; t < r.scores.size(); ++t) {
      r.binary[t] = r.scores[t] >= threshold ? 1 : 0;
    }
  }
  save_scores(a.out, rows);
  m["threshold"] = threshold;
  m["dialogues"] = rows.size();
  out << m.dump() << '\n';
  std::vector<std::string> inputs{a.corpus};
  if (!a.model_in.empty()) inputs.push_back(a.model_in);
  ManifestEntry e{"predict", hash_text(config), hash_file(a.corpus), {}, fingerprints,
                  inputs, {a.out}, m};
  append_manifest(manifest_path(g, a.out), e);
}

// --- evaluate -------------------------------------------------------------

struct EvaluateArgs {
  std::string scores, labels, report, name, rule = "or";
  std::vector<std::string> combine;
};

void run_evaluate(const EvaluateArgs& a, const std::string& config, const Globals& g,
                  std::ostream& out) {
  const CombineRule rule = parse_combine_rule(a.rule);
  const auto primary = load_scores(a.scores);
  std::map<std::string, LabelSequence> labels;
  for (auto& l : load_labels(a.labels)) labels.emplace(l.dialogue_id, std::move(l));
  std::vector<std::map<std::string, DialogueScores>> members;
  for (const auto& path : a.combine) {
    std::map<std::string, DialogueScores> by_id;
    for (auto& d : load_scores(path)) by_id.emplace(d.dialogue_id, std::move(d));
    members.push_back(std::move(by_id));
  }

  std::vector<CombinedDialogue> dialogues;
  for (const auto& d : primary) {
    const auto it = labels.find(d.dialogue_id);
    if (it == labels.end()) throw DataError("no labels for dialogue '" + d.dialogue_id + "'");
    if (it->second.labels.size() != d.scores.size()) {
      throw DataError("dialogue '" + d.dialogue_id + "': scores and labels differ in length");
    }
    CombinedDialogue cd;
    cd.scores = d.scores;
    cd.gold = it->second.labels;
    for (std::size_t k = 0; k < members.size(); ++k) {
      const auto mit = members[k].find(d.dialogue_id);
      if (mit == members[k].end() || mit->second.scores.size() != d.scores.size()) {
        throw DataError("dialogue '" + d.dialogue_id + "' missing or misaligned in '" +
                        a.combine[k] + "'");
      }
      if (rule == CombineRule::kOr) {
        cd.fixed.push_back(mit->second.binary);
      } else {
        for (std::size_t t = 0; t < cd.scores.size(); ++t) cd.scores[t] += mit->second.scores[t];
      }
    }
    dialogues.push_back(std::move(cd));
  }
  const Summary s = combined_summary(dialogues);
  std::string name = a.name;
  if (name.empty()) {
    name = fs::path(a.scores).stem().string();
    for (const auto& c : a.combine) name += "+" + fs::path(c).stem().string();
  }
  const ReportRow row{name, s.micro_auc, s.macro_auc, s.break_even};
  std::ofstream file = open_out(a.report);
  write_report(file, std::span<const ReportRow>(&row, 1));
  finish(file, a.report);
  const auto m = summary_json(s);
  out << m.dump() << '\n';
  std::vector<std::string> inputs{a.scores, a.labels};
  inputs.insert(inputs.end(), a.combine.begin(), a.combine.end());
  ManifestEntry e{"evaluate", hash_text(config), "", {}, {}, inputs, {a.report}, m};
  append_manifest(manifest_path(g, a.report), e);
}

// --- report ---------------------------------------------------------------

struct ReportArgs {
  std::string config, out;
};

void run_report(const ReportArgs& a, const std::string& options, const Globals& g,
                std::ostream& out) {
  const ExperimentConfig c = ExperimentConfig::load(a.config);
  const ExperimentResult r = run_experiment(c);
  std::ofstream file = open_out(a.out);
  write_report(file, r.rows);
  finish(file, a.out);
  nlohmann::ordered_json m = nlohmann::ordered_json::object();
  for (const auto& row : r.rows) {
    m[row.model] = {{"micro_auc", row.micro_auc},
                    {"macro_auc", row.macro_auc},
                    {"break_even", row.break_even}};
  }
  nlohmann::ordered_json thresholds = r.thresholds;
  nlohmann::ordered_json metrics;
  metrics["rows"] = m;
  metrics["agnostic_thresholds"] = thresholds;
  metrics["macro_excluded"] = r.macro_excluded;
  std::map<std::string, std::string> fingerprints;
  for (const auto& [loss, t] : r.trained) {
    fingerprints[loss] = hash_text(model_to_json(t.model));
    metrics["best_epoch_" + loss] = t.best_epoch;
  }
  out << metrics.dump() << '\n';
  ManifestEntry e{"report",
                  hash_file(a.config) + ":" + hash_text(options),
                  hash_file(c.corpus),
                  {{"split", c.split_seed}, {"train", c.train.seed}},
                  fingerprints,
                  {a.config, c.corpus.string()},
                  {a.out},
                  metrics};
  append_manifest(manifest_path(g, a.out), e);
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const UsageError*>(&e)) return 1;
  if (dynamic_cast<const DataError*>(&e)) return 2;
  if (dynamic_cast<const NumericError*>(&e)) return 3;
  return 2;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Detect the utterances that change minds in group deliberation"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--threads", g.threads, "Worker threads (0 = OpenMP default)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--quiet", g.quiet, "Suppress warnings");
  app.add_option("--manifest", g.manifest,
                 "Manifest to append to (default: manifest.jsonl next to the output)");

  std::function<void(const std::string&)> action;

  IngestArgs ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Validate a corpus and write canonical JSONL");
  c_ingest->add_option("--input", ingest.input, "Corpus file")->required();
  c_ingest->add_option("--format", ingest.format, "canonical-json|delidata-tabular");
  c_ingest->add_option("--tabular-config", ingest.tabular_config, "Column mapping (JSON)");
  c_ingest->add_option("--out", ingest.out, "Output corpus")->required();
  c_ingest->callback([&] {
    action = [&](const std::string& cfg) { run_ingest(ingest, cfg, g, out); };
  });

  SplitArgs split;
  auto* c_split = app.add_subcommand("split", "Assign train/validation/test splits");
  c_split->add_option("--corpus", split.corpus, "Canonical corpus")->required();
  c_split->add_option("--seed", split.seed, "Shuffle seed");
  c_split->add_option("--out", split.out, "Output corpus")->required();
  c_split->callback([&] {
    action = [&](const std::string& cfg) { run_split(split, cfg, g, out); };
  });

  SynthArgs synth;
  auto* c_synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  c_synth->add_option("--config", synth.config, "Generator settings (TOML or JSON)");
  c_synth->add_option("--seed", synth.seed, "Override the configured seed");
  c_synth->add_option("--out", synth.out, "Output corpus")->required();
  c_synth->add_option("--truth-out", synth.truth_out, "Planted cause indices (JSONL)");
  c_synth->callback([&] {
    action = [&](const std::string& cfg) { run_synth(synth, cfg, g, out); };
  });

  LabelArgs label;
  auto* c_label = app.add_subcommand("label", "Derive cause labels");
  c_label->add_option("--corpus", label.corpus, "Canonical corpus")->required();
  c_label->add_option("--mode", label.mode, "auto|weak|gold");
  c_label->add_option("--out", label.out, "Labels (JSONL)")->required();
  c_label->callback([&] {
    action = [&](const std::string& cfg) { run_label(label, cfg, g, out); };
  });

  TrackArgs trk;
  auto* c_track = app.add_subcommand("track", "Per-utterance group performance signal");
  c_track->add_option("--corpus", trk.corpus, "Canonical corpus")->required();
  c_track->add_option("--lexicon", trk.lexicon, "Card lexicon (JSON)");
  c_track->add_option("--rule", trk.rule, "replace|union");
  c_track->add_option("--out", trk.out, "Signal (CSV)")->required();
  c_track->callback([&] {
    action = [&](const std::string& cfg) { run_track(trk, cfg, g, out); };
  });

  TrainArgs tr;
  auto* c_train = app.add_subcommand("train", "Train a linguistic scorer");
  c_train->add_option("--corpus", tr.corpus, "Canonical corpus with splits")->required();
  c_train->add_option("--loss", tr.loss, "logistic|ranknet");
  c_train->add_option("--seed", tr.train.seed, "Base seed");
  c_train->add_option("--epochs", tr.train.epochs, "Epochs");
  c_train->add_option("--batch-size", tr.train.batch_size, "Examples or pairs per update");
  c_train->add_option("--rho", tr.train.adadelta.rho, "Adadelta decay");
  c_train->add_option("--epsilon", tr.train.adadelta.epsilon, "Adadelta epsilon");
  c_train->add_option("--hidden", tr.train.hidden, "Hidden units (0 = linear)");
  c_train->add_option("--dropout", tr.train.dropout, "Hidden-layer dropout");
  c_train->add_option("--features", tr.features, "Feature config (JSON)");
  c_train->add_option("--dim", tr.dim, "Hash buckets (overrides --features)");
  c_train->add_option("--model-out", tr.model_out, "Model file")->required();
  c_train->add_option("--log-out", tr.log_out, "Per-epoch log (CSV)");
  c_train->callback([&] {
    action = [&](const std::string& cfg) { run_train(tr, cfg, g, out); };
  });

  PredictArgs pr;
  auto* c_predict = app.add_subcommand("predict", "Score utterances");
  c_predict->add_option("--corpus", pr.corpus, "Canonical corpus with splits")->required();
  c_predict->add_option("--model-in", pr.model_in, "Trained model");
  c_predict->add_option("--method,--model", pr.method, "hazard|seqlen|bocpd");
  c_predict->add_option("--split", pr.split, "train|validation|test|all");
  c_predict->add_option("--threshold", pr.threshold,
                        "Binarization threshold (default: validation break-even)");
  c_predict->add_option("--lexicon", pr.lexicon, "Card lexicon (JSON)");
  c_predict->add_option("--rule", pr.rule, "replace|union");
  c_predict->add_option("--position-alpha", pr.position_alpha, "Seqlen smoothing");
  c_predict->add_option("--out,--scores-out", pr.out, "Scores (CSV)")->required();
  c_predict->callback([&] {
    action = [&](const std::string& cfg) { run_predict(pr, cfg, g, out); };
  });

  EvaluateArgs ev;
  auto* c_eval = app.add_subcommand("evaluate", "Cluster-matched PR evaluation");
  c_eval->add_option("--scores", ev.scores, "Scores (CSV)")->required();
  c_eval->add_option("--labels", ev.labels, "Labels (JSONL)")->required();
  c_eval->add_option("--combine", ev.combine, "Score files joined with --scores");
  c_eval->add_option("--rule", ev.rule, "or|score-sum");
  c_eval->add_option("--name", ev.name, "Model name in the report");
  c_eval->add_option("--report", ev.report, "Report (CSV)")->required();
  c_eval->callback([&] {
    action = [&](const std::string& cfg) { run_evaluate(ev, cfg, g, out); };
  });

  ReportArgs rep;
  auto* c_report = app.add_subcommand("report", "Run an experiment grid");
  c_report->add_option("--config", rep.config, "Experiment config (TOML or JSON)")->required();
  c_report->add_option("--out", rep.out, "Report (CSV)")->required();
  c_report->callback([&] {
    action = [&](const std::string& cfg) { run_report(rep, cfg, g, out); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    set_warnings_enabled(!g.quiet);
    if (g.threads > 0) omp_set_num_threads(g.threads);
    const CLI::App* sub = app.get_subcommands().front();
    action(sub->get_name() + "\n" + sub->config_to_str(true, false));
    return 0;
  } catch (const Error& e) {
    err << "turnpoint: error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "turnpoint: error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace turnpoint
