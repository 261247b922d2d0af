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

#ifndef TURNPOINT_LABELS_H_
#define TURNPOINT_LABELS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "turnpoint/corpus.h"

namespace turnpoint {

enum class Provenance : std::uint8_t { kGold, kWeak };

std::string_view to_string(Provenance provenance);
std::optional<Provenance> parse_provenance(std::string_view name);

// Per-utterance "causes a change of mind" labels for one dialogue.
struct LabelSequence {
  std::string dialogue_id;
  std::vector<std::uint8_t> labels;
  Provenance provenance = Provenance::kGold;

  // Change-of-mind events considered, events attributed to a cause, and
  // events skipped because no earlier utterance by someone else exists.
  int events = 0;
  int attributed = 0;
  int skipped = 0;

  int size() const { return static_cast<int>(labels.size()); }
  std::vector<int> positives() const;

  bool operator==(const LabelSequence&) const = default;
};

// Index of the last utterance at or before `at` spoken by someone other than
// `participant`, or -1.
int last_other_speaker(const Dialogue& dialogue, int at, std::string_view participant);

// Each annotated change of mind by participant p marks the nearest preceding
// utterance by a speaker other than p. Throws UsageError for an unannotated
// dialogue.
LabelSequence gold_labels(const Dialogue& dialogue);

// Each non-solo submission that differs from the participant's previously
// recorded answer marks the nearest utterance at or before the submission
// whose speaker is someone else.
LabelSequence weak_labels(const Dialogue& dialogue);

// Labels file: one JSON object per line with dialogue_id, provenance, labels,
// events, attributed, skipped.
void write_labels(std::ostream& out, const std::vector<LabelSequence>& labels);
std::vector<LabelSequence> read_labels(std::istream& in, const std::string& source);
std::vector<LabelSequence> load_labels(const std::filesystem::path& path);

}  // namespace turnpoint

#endif  // TURNPOINT_LABELS_H_
