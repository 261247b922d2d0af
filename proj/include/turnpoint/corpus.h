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

#ifndef TURNPOINT_CORPUS_H_
#define TURNPOINT_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "turnpoint/card.h"

namespace turnpoint {

enum class Phase : std::uint8_t { kSolo, kIntermediate, kFinal };

std::string_view to_string(Phase phase);
std::optional<Phase> parse_phase(std::string_view name);

// Submission position of solo answers, given before the discussion starts.
inline constexpr int kBeforeFirstUtterance = -1;

// Whitespace tokenization. Corpus text is pre-tokenized, so placeholders such
// as <CARD:A> or <MENTION> survive as single tokens.
std::vector<std::string> tokenize(std::string_view text);

struct Utterance {
  int index = 0;
  std::string participant;
  std::vector<std::string> tokens;

  std::string text() const;
  bool operator==(const Utterance&) const = default;
};

struct Submission {
  std::string participant;
  Phase phase = Phase::kSolo;
  CardSet cards;
  // Index of the utterance after which the answer was submitted.
  int position = kBeforeFirstUtterance;

  bool operator==(const Submission&) const = default;
};

struct Dialogue {
  std::string id;
  CardInventory cards;
  std::vector<Utterance> utterances;
  std::vector<Submission> submissions;
  // Utterance indices annotated as expressing a change of mind. Present only
  // for annotated dialogues (possibly empty).
  std::optional<std::vector<int>> gold_change_of_mind;

  int size() const { return static_cast<int>(utterances.size()); }
  bool annotated() const { return gold_change_of_mind.has_value(); }
  bool has_intermediate() const;
  // Sorted union of speakers and submitters.
  std::vector<std::string> participants() const;

  bool operator==(const Dialogue&) const = default;
};

// Throws InvariantError naming the dialogue and the broken rule.
void validate(const Dialogue& dialogue);

enum class Split : std::uint8_t { kUnassigned, kTrain, kValidation, kTest };

std::string_view to_string(Split split);
std::optional<Split> parse_split(std::string_view name);

// Immutable collection of validated dialogues with a split per dialogue.
class Corpus {
 public:
  Corpus() = default;
  // Throws InvariantError on duplicate ids or an annotated dialogue in the
  // train split. An empty `splits` leaves every dialogue unassigned.
  explicit Corpus(std::vector<Dialogue> dialogues, std::vector<Split> splits = {});

  const std::vector<Dialogue>& dialogues() const { return dialogues_; }
  const std::vector<Split>& splits() const { return splits_; }
  std::size_t size() const { return dialogues_.size(); }
  const Dialogue& operator[](std::size_t i) const { return dialogues_[i]; }
  Split split(std::size_t i) const { return splits_[i]; }

  std::vector<std::size_t> indices(Split split) const;
  const Dialogue* find(std::string_view id) const;

  bool operator==(const Corpus&) const = default;

 private:
  std::vector<Dialogue> dialogues_;
  std::vector<Split> splits_;
};

enum class CorpusFormat { kCanonicalJson, kDeliDataTabular };

// Accepts "canonical-json" and "delidata-tabular"; throws UsageError otherwise.
CorpusFormat parse_corpus_format(std::string_view name);

// Column mapping for delimiter-separated corpus exports with one row per
// event (utterance, submission or card deal).
struct TabularConfig {
  char delimiter = ',';
  bool has_header = true;

  // Header names, or 0-based column numbers when has_header is false. An
  // empty annotation column disables gold annotations.
  std::string dialogue_column = "dialogue_id";
  std::string participant_column = "participant";
  std::string type_column = "type";
  std::string text_column = "text";
  std::string cards_column = "cards";
  std::string annotation_column = "annotation";

  std::vector<std::string> utterance_types{"utterance"};
  std::vector<std::string> inventory_types{"cards"};
  std::vector<std::string> solo_types{"solo"};
  std::vector<std::string> intermediate_types{"intermediate"};
  std::vector<std::string> final_types{"final"};
  // Submissions whose phase follows from order: a participant's last one is
  // final, earlier ones intermediate.
  std::vector<std::string> submit_types{"submit"};

  char card_separator = ',';
  // Annotation values that mark an utterance as a change of mind. Any
  // non-empty annotation makes the dialogue count as annotated.
  std::vector<std::string> change_of_mind_values{"change_of_mind"};
  // Literal substring rewrites applied to utterance text before tokenizing.
  std::vector<std::pair<std::string, std::string>> replacements;
  bool lowercase = false;
};

// Reads a JSON tabular config; unspecified keys keep their defaults.
TabularConfig load_tabular_config(const std::filesystem::path& path);

using Warnings = std::vector<std::string>;

// Warnings (unknown fields, ignored rows) are appended to `warnings`, or
// logged when it is null.
Corpus read_canonical(std::istream& in, const std::string& source,
                      Warnings* warnings = nullptr);
Corpus read_tabular(std::istream& in, const std::string& source,
                    const TabularConfig& config, Warnings* warnings = nullptr);
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format,
                   const TabularConfig& config = {}, Warnings* warnings = nullptr);

// One JSON object per line, fields in a fixed order.
void write_canonical(std::ostream& out, const Corpus& corpus);
void save_corpus(const std::filesystem::path& path, const Corpus& corpus);

struct CorpusStats {
  int dialogues = 0;
  int utterances = 0;
  double avg_group_size = 0.0;
  // Unannotated dialogues with at least one intermediate submission.
  int with_intermediate = 0;
  int intermediate_and_final = 0;
  int annotated = 0;
  int annotated_changes = 0;
};

CorpusStats corpus_stats(const Corpus& corpus);

// Unannotated dialogues with an intermediate submission go to train, the
// rest stay unassigned. Annotated dialogues are shuffled with `seed` and
// split 4:1 into test and validation. Throws DataError with fewer than two
// annotated dialogues.
Corpus make_splits(const Corpus& corpus, std::uint64_t seed);

}  // namespace turnpoint

#endif  // TURNPOINT_CORPUS_H_
