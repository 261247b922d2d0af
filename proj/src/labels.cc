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

#include "turnpoint/labels.h"

#include <fstream>
#include <map>

#include "json.hpp"
#include "turnpoint/error.h"

namespace turnpoint {

std::string_view to_string(Provenance provenance) {
  return provenance == Provenance::kGold ? "gold" : "weak";
}

std::optional<Provenance> parse_provenance(std::string_view name) {
  if (name == "gold") return Provenance::kGold;
  if (name == "weak") return Provenance::kWeak;
  return std::nullopt;
}

std::vector<int> LabelSequence::positives() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    if (labels[i]) out.push_back(i);
  }
  return out;
}

int last_other_speaker(const Dialogue& dialogue, int at, std::string_view participant) {
  for (int j = std::min(at, dialogue.size() - 1); j >= 0; --j) {
    if (dialogue.utterances[j].participant != participant) return j;
  }
  return -1;
}

LabelSequence gold_labels(const Dialogue& dialogue) {
  if (!dialogue.annotated()) {
    throw UsageError("gold_labels: dialogue '" + dialogue.id + "' is not annotated");
  }
  LabelSequence seq{dialogue.id, std::vector<std::uint8_t>(dialogue.size(), 0),
                    Provenance::kGold};
  for (int change : *dialogue.gold_change_of_mind) {
    ++seq.events;
    const int cause =
        last_other_speaker(dialogue, change - 1, dialogue.utterances[change].participant);
    if (cause < 0) {
      ++seq.skipped;
      continue;
    }
    ++seq.attributed;
    seq.labels[cause] = 1;
  }
  return seq;
}

LabelSequence weak_labels(const Dialogue& dialogue) {
  LabelSequence seq{dialogue.id, std::vector<std::uint8_t>(dialogue.size(), 0),
                    Provenance::kWeak};
  std::map<std::string, CardSet> recorded;
  for (const Submission& s : dialogue.submissions) {
    auto it = recorded.find(s.participant);
    const bool changed = it == recorded.end() || it->second != s.cards;
    recorded[s.participant] = s.cards;
    if (s.phase == Phase::kSolo || !changed) continue;
    ++seq.events;
    const int cause = last_other_speaker(dialogue, s.position, s.participant);
    if (cause < 0) {
      ++seq.skipped;
      continue;
    }
    ++seq.attributed;
    seq.labels[cause] = 1;
  }
  return seq;
}

void write_labels(std::ostream& out, const std::vector<LabelSequence>& labels) {
  for (const auto& seq : labels) {
    nlohmann::ordered_json j;
    j["dialogue_id"] = seq.dialogue_id;
    j["provenance"] = std::string(to_string(seq.provenance));
    j["labels"] = seq.labels;
    j["events"] = seq.events;
    j["attributed"] = seq.attributed;
    j["skipped"] = seq.skipped;
    out << j.dump() << '\n';
  }
}

std::vector<LabelSequence> read_labels(std::istream& in, const std::string& source) {
  std::vector<LabelSequence> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      LabelSequence seq;
      seq.dialogue_id = j.at("dialogue_id").get<std::string>();
      auto provenance = parse_provenance(j.at("provenance").get<std::string>());
      if (!provenance) throw ParseError(source, line_no, "unknown provenance");
      seq.provenance = *provenance;
      for (const auto& v : j.at("labels")) {
        const int x = v.get<int>();
        if (x != 0 && x != 1) throw ParseError(source, line_no, "labels must be 0 or 1");
        seq.labels.push_back(static_cast<std::uint8_t>(x));
      }
      seq.events = j.value("events", 0);
      seq.attributed = j.value("attributed", 0);
      seq.skipped = j.value("skipped", 0);
      out.push_back(std::move(seq));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return out;
}

std::vector<LabelSequence> load_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open labels file '" + path.string() + "'");
  return read_labels(in, path.string());
}

}  // namespace turnpoint
