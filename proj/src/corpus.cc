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

#include "turnpoint/corpus.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "turnpoint/csv.h"
#include "turnpoint/error.h"
#include "turnpoint/log.h"
#include "turnpoint/rng.h"

namespace turnpoint {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void warn(Warnings* warnings, std::string message) {
  if (warnings) {
    warnings->push_back(std::move(message));
  } else {
    log_warning(message);
  }
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_labels(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(sep, start);
    if (end == std::string_view::npos) end = s.size();
    std::string label = trim(s.substr(start, end - start));
    if (!label.empty()) out.push_back(std::move(label));
    start = end + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical JSON lines.

class RecordReader {
 public:
  RecordReader(const std::string& source, int line, Warnings* warnings)
      : source_(source), line_(line), warnings_(warnings) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(source_, line_, what);
  }

  void check_fields(const json& obj, std::initializer_list<std::string_view> known,
                    const std::string& where) const {
    for (const auto& [key, value] : obj.items()) {
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        warn(warnings_, source_ + ":" + std::to_string(line_) + ": " + where +
                            ": ignoring unknown field '" + key + "'");
      }
    }
  }

  const json& require(const json& obj, const char* key) const {
    auto it = obj.find(key);
    if (it == obj.end()) fail(std::string("missing field '") + key + "'");
    return *it;
  }

  std::string string_field(const json& obj, const char* key) const {
    const json& v = require(obj, key);
    if (!v.is_string()) fail(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
  }

  int int_field(const json& obj, const char* key) const {
    const json& v = require(obj, key);
    if (!v.is_number_integer()) fail(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
  }

  std::vector<std::string> label_list(const json& v, const char* key) const {
    if (!v.is_array()) fail(std::string("field '") + key + "' must be an array");
    std::vector<std::string> out;
    for (const auto& item : v) {
      if (!item.is_string()) fail(std::string("field '") + key + "' must hold strings");
      out.push_back(item.get<std::string>());
    }
    return out;
  }

  Card card(const json& v) const {
    if (v.is_string()) {
      auto label = v.get<std::string>();
      auto role = infer_role(label);
      if (!role) fail("cannot infer the role of card '" + label + "'; use {\"label\", \"role\"}");
      return Card{label, *role};
    }
    if (!v.is_object()) fail("card must be a string or an object");
    check_fields(v, {"label", "role"}, "card");
    Card c{string_field(v, "label"), CardRole::kVowel};
    if (v.contains("role")) {
      auto role = parse_role(string_field(v, "role"));
      if (!role) fail("unknown card role '" + v["role"].get<std::string>() + "'");
      c.role = *role;
    } else {
      auto role = infer_role(c.label);
      if (!role) fail("cannot infer the role of card '" + c.label + "'");
      c.role = *role;
    }
    return c;
  }

 private:
  const std::string& source_;
  int line_;
  Warnings* warnings_;
};

std::pair<Dialogue, Split> parse_dialogue(const json& obj, const RecordReader& r,
                                          Warnings* /*warnings*/) {
  if (!obj.is_object()) r.fail("record must be a JSON object");
  r.check_fields(obj,
                 {"id", "cards", "utterances", "submissions", "gold_change_of_mind",
                  "split"},
                 "dialogue");
  Dialogue d;
  d.id = r.string_field(obj, "id");

  const json& cards = r.require(obj, "cards");
  if (!cards.is_array()) r.fail("field 'cards' must be an array");
  if (cards.size() != 4) {
    throw InvariantError(d.id, "must have exactly 4 cards, found " +
                                   std::to_string(cards.size()));
  }
  std::array<Card, 4> inventory;
  for (std::size_t i = 0; i < 4; ++i) inventory[i] = r.card(cards[i]);
  d.cards = CardInventory(std::move(inventory));
  if (auto problem = d.cards.problem()) throw InvariantError(d.id, *problem);

  const json& utts = r.require(obj, "utterances");
  if (!utts.is_array()) r.fail("field 'utterances' must be an array");
  for (std::size_t i = 0; i < utts.size(); ++i) {
    const json& u = utts[i];
    if (!u.is_object()) r.fail("utterance must be an object");
    r.check_fields(u, {"index", "participant", "text"}, "utterance");
    Utterance utt;
    utt.index = static_cast<int>(i);
    if (u.contains("index")) {
      utt.index = r.int_field(u, "index");
      if (utt.index != static_cast<int>(i)) {
        throw InvariantError(d.id, "utterance indices must be contiguous from 0; found " +
                                       std::to_string(utt.index) + " at position " +
                                       std::to_string(i));
      }
    }
    utt.participant = r.string_field(u, "participant");
    utt.tokens = tokenize(r.string_field(u, "text"));
    d.utterances.push_back(std::move(utt));
  }

  if (obj.contains("submissions")) {
    const json& subs = obj["submissions"];
    if (!subs.is_array()) r.fail("field 'submissions' must be an array");
    for (const json& s : subs) {
      if (!s.is_object()) r.fail("submission must be an object");
      r.check_fields(s, {"participant", "phase", "cards", "position"}, "submission");
      Submission sub;
      sub.participant = r.string_field(s, "participant");
      auto phase = parse_phase(r.string_field(s, "phase"));
      if (!phase) r.fail("unknown submission phase '" + s["phase"].get<std::string>() + "'");
      sub.phase = *phase;
      try {
        sub.cards = CardSet::from_labels(r.label_list(r.require(s, "cards"), "cards"), d.cards);
      } catch (const ParseError&) {
        throw;
      } catch (const DataError& e) {
        throw InvariantError(d.id, std::string("submission: ") + e.what());
      }
      sub.position = s.contains("position") ? r.int_field(s, "position")
                                            : kBeforeFirstUtterance;
      d.submissions.push_back(std::move(sub));
    }
  }

  if (obj.contains("gold_change_of_mind") && !obj["gold_change_of_mind"].is_null()) {
    const json& g = obj["gold_change_of_mind"];
    if (!g.is_array()) r.fail("field 'gold_change_of_mind' must be an array");
    std::vector<int> gold;
    for (const json& v : g) {
      if (!v.is_number_integer()) r.fail("gold_change_of_mind must hold integers");
      gold.push_back(v.get<int>());
    }
    d.gold_change_of_mind = std::move(gold);
  }

  Split split = Split::kUnassigned;
  if (obj.contains("split") && !obj["split"].is_null()) {
    auto s = parse_split(r.string_field(obj, "split"));
    if (!s) r.fail("unknown split '" + obj["split"].get<std::string>() + "'");
    split = *s;
  }
  return {std::move(d), split};
}

ordered_json to_json(const Dialogue& d, Split split) {
  ordered_json out;
  out["id"] = d.id;
  ordered_json cards = ordered_json::array();
  for (const Card& c : d.cards.cards()) {
    cards.push_back({{"label", c.label}, {"role", std::string(to_string(c.role))}});
  }
  out["cards"] = std::move(cards);
  ordered_json utts = ordered_json::array();
  for (const Utterance& u : d.utterances) {
    utts.push_back({{"participant", u.participant}, {"text", u.text()}});
  }
  out["utterances"] = std::move(utts);
  ordered_json subs = ordered_json::array();
  for (const Submission& s : d.submissions) {
    subs.push_back({{"participant", s.participant},
                    {"phase", std::string(to_string(s.phase))},
                    {"cards", s.cards.labels(d.cards)},
                    {"position", s.position}});
  }
  out["submissions"] = std::move(subs);
  if (d.gold_change_of_mind) out["gold_change_of_mind"] = *d.gold_change_of_mind;
  if (split != Split::kUnassigned) out["split"] = std::string(to_string(split));
  return out;
}

// ---------------------------------------------------------------------------
// Tabular adapter.

bool one_of(const std::string& value, const std::vector<std::string>& options) {
  return std::find(options.begin(), options.end(), value) != options.end();
}

struct PendingSubmission {
  std::string participant;
  enum Kind { kSolo, kIntermediate, kFinal, kSubmit } kind;
  std::vector<std::string> labels;
  int position;
  int line;
};

struct DialogueBuilder {
  Dialogue dialogue;
  bool has_inventory = false;
  bool annotated = false;
  std::vector<int> gold;
  std::vector<PendingSubmission> submissions;
};

std::size_t resolve_column(const std::string& name, const std::vector<std::string>& header,
                           bool has_header, const std::string& source) {
  if (!has_header) {
    try {
      return static_cast<std::size_t>(std::stoul(name));
    } catch (const std::exception&) {
      throw UsageError("tabular config: without a header, column '" + name +
                       "' must be a 0-based column number");
    }
  }
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw ParseError(source, 1, "missing column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::kSolo:
      return "solo";
    case Phase::kIntermediate:
      return "intermediate";
    case Phase::kFinal:
      return "final";
  }
  return "?";
}

std::optional<Phase> parse_phase(std::string_view name) {
  for (Phase p : {Phase::kSolo, Phase::kIntermediate, Phase::kFinal}) {
    if (name == to_string(p)) return p;
  }
  return std::nullopt;
}

std::string_view to_string(Split split) {
  switch (split) {
    case Split::kUnassigned:
      return "unassigned";
    case Split::kTrain:
      return "train";
    case Split::kValidation:
      return "validation";
    case Split::kTest:
      return "test";
  }
  return "?";
}

std::optional<Split> parse_split(std::string_view name) {
  for (Split s : {Split::kUnassigned, Split::kTrain, Split::kValidation, Split::kTest}) {
    if (name == to_string(s)) return s;
  }
  return std::nullopt;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) tokens.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return tokens;
}

std::string Utterance::text() const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

bool Dialogue::has_intermediate() const {
  return std::any_of(submissions.begin(), submissions.end(), [](const Submission& s) {
    return s.phase == Phase::kIntermediate;
  });
}

std::vector<std::string> Dialogue::participants() const {
  std::set<std::string> ids;
  for (const auto& u : utterances) ids.insert(u.participant);
  for (const auto& s : submissions) ids.insert(s.participant);
  return {ids.begin(), ids.end()};
}

void validate(const Dialogue& d) {
  if (d.id.empty()) throw InvariantError(d.id, "dialogue id must be non-empty");
  if (auto problem = d.cards.problem()) throw InvariantError(d.id, *problem);

  const int n = d.size();
  for (int i = 0; i < n; ++i) {
    const Utterance& u = d.utterances[i];
    if (u.index != i) {
      throw InvariantError(d.id, "utterance indices must be contiguous from 0; found " +
                                     std::to_string(u.index) + " at position " +
                                     std::to_string(i));
    }
    if (u.participant.empty()) {
      throw InvariantError(d.id, "utterance " + std::to_string(i) + " has no participant");
    }
  }

  std::map<std::string, int> last_position;
  std::map<std::string, std::pair<bool, bool>> has_solo_final;
  for (const Submission& s : d.submissions) {
    if (s.participant.empty()) throw InvariantError(d.id, "submission has no participant");
    if (s.position < kBeforeFirstUtterance || s.position >= n) {
      throw InvariantError(d.id, "submission by '" + s.participant + "' at position " +
                                     std::to_string(s.position) +
                                     " is outside the dialogue (" + std::to_string(n) +
                                     " utterances)");
    }
    if (s.phase == Phase::kSolo && s.position != kBeforeFirstUtterance) {
      throw InvariantError(d.id, "solo submission by '" + s.participant +
                                     "' must precede the discussion (position -1)");
    }
    auto [it, inserted] = last_position.emplace(s.participant, s.position);
    if (!inserted) {
      if (s.position < it->second) {
        throw InvariantError(d.id, "submission positions of '" + s.participant +
                                       "' must be non-decreasing");
      }
      it->second = s.position;
    }
    auto& flags = has_solo_final[s.participant];
    if (s.phase == Phase::kSolo) flags.first = true;
    if (s.phase == Phase::kFinal) flags.second = true;
  }
  for (const auto& p : d.participants()) {
    auto it = has_solo_final.find(p);
    if (it == has_solo_final.end() || !it->second.first) {
      throw InvariantError(d.id, "participant '" + p + "' has no solo submission");
    }
    if (!it->second.second) {
      throw InvariantError(d.id, "participant '" + p + "' has no final submission");
    }
  }

  if (d.gold_change_of_mind) {
    std::set<int> seen;
    for (int g : *d.gold_change_of_mind) {
      if (g < 0 || g >= n) {
        throw InvariantError(d.id, "gold change of mind " + std::to_string(g) +
                                       " is outside the dialogue");
      }
      if (!seen.insert(g).second) {
        throw InvariantError(d.id, "gold change of mind " + std::to_string(g) +
                                       " is listed twice");
      }
    }
  }
}

Corpus::Corpus(std::vector<Dialogue> dialogues, std::vector<Split> splits)
    : dialogues_(std::move(dialogues)), splits_(std::move(splits)) {
  if (splits_.empty()) splits_.assign(dialogues_.size(), Split::kUnassigned);
  if (splits_.size() != dialogues_.size()) {
    throw UsageError("corpus: split vector size does not match dialogue count");
  }
  std::set<std::string_view> ids;
  for (std::size_t i = 0; i < dialogues_.size(); ++i) {
    if (!ids.insert(dialogues_[i].id).second) {
      throw InvariantError(dialogues_[i].id, "duplicate dialogue id");
    }
    if (splits_[i] == Split::kTrain && dialogues_[i].annotated()) {
      throw InvariantError(dialogues_[i].id,
                           "annotated dialogues may not be in the train split");
    }
  }
}

std::vector<std::size_t> Corpus::indices(Split split) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < splits_.size(); ++i) {
    if (splits_[i] == split) out.push_back(i);
  }
  return out;
}

const Dialogue* Corpus::find(std::string_view id) const {
  for (const auto& d : dialogues_) {
    if (d.id == id) return &d;
  }
  return nullptr;
}

CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "canonical-json") return CorpusFormat::kCanonicalJson;
  if (name == "delidata-tabular") return CorpusFormat::kDeliDataTabular;
  throw UsageError("unknown corpus format '" + std::string(name) +
                   "' (expected canonical-json or delidata-tabular)");
}

Corpus read_canonical(std::istream& in, const std::string& source, Warnings* warnings) {
  std::vector<Dialogue> dialogues;
  std::vector<Split> splits;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(source, line_no, std::string("malformed JSON: ") + e.what());
    }
    RecordReader reader(source, line_no, warnings);
    auto [dialogue, split] = parse_dialogue(obj, reader, warnings);
    validate(dialogue);
    dialogues.push_back(std::move(dialogue));
    splits.push_back(split);
  }
  return Corpus(std::move(dialogues), std::move(splits));
}

Corpus read_tabular(std::istream& in, const std::string& source,
                    const TabularConfig& config, Warnings* warnings) {
  CsvReader reader(in, config.delimiter);
  std::vector<std::string> header;
  if (config.has_header) {
    auto h = reader.next();
    if (!h) throw ParseError(source, 1, "empty input: missing header");
    header = std::move(*h);
    for (auto& name : header) name = trim(name);
  }
  const auto col = [&](const std::string& name) {
    return resolve_column(name, header, config.has_header, source);
  };
  const std::size_t c_dialogue = col(config.dialogue_column);
  const std::size_t c_participant = col(config.participant_column);
  const std::size_t c_type = col(config.type_column);
  const std::size_t c_text = col(config.text_column);
  const std::size_t c_cards = col(config.cards_column);
  const bool with_annotation = !config.annotation_column.empty() &&
                               (!config.has_header ||
                                std::find(header.begin(), header.end(),
                                          config.annotation_column) != header.end());
  const std::size_t c_annotation = with_annotation ? col(config.annotation_column) : 0;

  std::vector<std::string> order;
  std::unordered_map<std::string, DialogueBuilder> builders;
  while (auto rec = reader.next()) {
    const int line = reader.record_line();
    const auto& fields = *rec;
    if (fields.size() == 1 && trim(fields[0]).empty()) continue;
    const auto field = [&](std::size_t c) -> const std::string& {
      if (c >= fields.size()) {
        throw ParseError(source, line, "record has " + std::to_string(fields.size()) +
                                           " fields, expected at least " +
                                           std::to_string(c + 1));
      }
      return fields[c];
    };
    const std::string id = trim(field(c_dialogue));
    if (id.empty()) throw ParseError(source, line, "empty dialogue id");
    auto [it, inserted] = builders.try_emplace(id);
    if (inserted) {
      order.push_back(id);
      it->second.dialogue.id = id;
    }
    DialogueBuilder& b = it->second;
    const std::string type = trim(field(c_type));
    const std::string participant = trim(field(c_participant));
    const int position = b.dialogue.size() - 1;

    if (one_of(type, config.utterance_types)) {
      std::string text = field(c_text);
      for (const auto& [from, to] : config.replacements) {
        if (from.empty()) continue;
        for (std::size_t pos = 0; (pos = text.find(from, pos)) != std::string::npos;
             pos += to.size()) {
          text.replace(pos, from.size(), to);
        }
      }
      if (config.lowercase) {
        for (char& c : text) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      }
      Utterance u{b.dialogue.size(), participant, tokenize(text)};
      if (with_annotation) {
        const std::string annotation = trim(field(c_annotation));
        if (!annotation.empty()) {
          b.annotated = true;
          if (one_of(annotation, config.change_of_mind_values)) b.gold.push_back(u.index);
        }
      }
      b.dialogue.utterances.push_back(std::move(u));
    } else if (one_of(type, config.inventory_types)) {
      auto labels = split_labels(field(c_cards), config.card_separator);
      if (labels.size() != 4) {
        throw ParseError(source, line, "card inventory must list 4 cards, found " +
                                           std::to_string(labels.size()));
      }
      std::array<Card, 4> cards;
      for (std::size_t i = 0; i < 4; ++i) {
        auto role = infer_role(labels[i]);
        if (!role) throw ParseError(source, line, "cannot infer the role of card '" + labels[i] + "'");
        cards[i] = Card{labels[i], *role};
      }
      b.dialogue.cards = CardInventory(std::move(cards));
      b.has_inventory = true;
    } else {
      PendingSubmission::Kind kind;
      if (one_of(type, config.solo_types)) {
        kind = PendingSubmission::kSolo;
      } else if (one_of(type, config.intermediate_types)) {
        kind = PendingSubmission::kIntermediate;
      } else if (one_of(type, config.final_types)) {
        kind = PendingSubmission::kFinal;
      } else if (one_of(type, config.submit_types)) {
        kind = PendingSubmission::kSubmit;
      } else {
        warn(warnings, source + ":" + std::to_string(line) + ": ignoring row of unknown type '" +
                           type + "'");
        continue;
      }
      b.submissions.push_back(PendingSubmission{
          participant, kind, split_labels(field(c_cards), config.card_separator),
          kind == PendingSubmission::kSolo ? kBeforeFirstUtterance : position, line});
    }
  }

  std::vector<Dialogue> dialogues;
  for (const auto& id : order) {
    DialogueBuilder& b = builders[id];
    if (!b.has_inventory) throw InvariantError(id, "no card inventory row");
    std::map<std::string, std::size_t> last_submit;
    for (std::size_t i = 0; i < b.submissions.size(); ++i) {
      if (b.submissions[i].kind == PendingSubmission::kSubmit) {
        last_submit[b.submissions[i].participant] = i;
      }
    }
    for (std::size_t i = 0; i < b.submissions.size(); ++i) {
      const PendingSubmission& p = b.submissions[i];
      Submission s;
      s.participant = p.participant;
      s.position = p.position;
      switch (p.kind) {
        case PendingSubmission::kSolo:
          s.phase = Phase::kSolo;
          break;
        case PendingSubmission::kIntermediate:
          s.phase = Phase::kIntermediate;
          break;
        case PendingSubmission::kFinal:
          s.phase = Phase::kFinal;
          break;
        case PendingSubmission::kSubmit:
          s.phase = last_submit[p.participant] == i ? Phase::kFinal : Phase::kIntermediate;
          break;
      }
      try {
        s.cards = CardSet::from_labels(p.labels, b.dialogue.cards);
      } catch (const DataError& e) {
        throw ParseError(source, p.line, e.what());
      }
      b.dialogue.submissions.push_back(std::move(s));
    }
    if (b.annotated) b.dialogue.gold_change_of_mind = b.gold;
    validate(b.dialogue);
    dialogues.push_back(std::move(b.dialogue));
  }
  return Corpus(std::move(dialogues));
}

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format,
                   const TabularConfig& config, Warnings* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus file '" + path.string() + "'");
  if (format == CorpusFormat::kCanonicalJson) return read_canonical(in, path.string(), warnings);
  return read_tabular(in, path.string(), config, warnings);
}

TabularConfig load_tabular_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open tabular config '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("tabular config '" + path.string() + "': " + e.what());
  }
  TabularConfig c;
  const auto one_char = [&](const char* key, char& out) {
    if (!j.contains(key)) return;
    auto s = j[key].get<std::string>();
    if (s == "\\t") s = "\t";
    if (s.size() != 1) throw UsageError(std::string("tabular config: '") + key + "' must be one character");
    out = s[0];
  };
  try {
    one_char("delimiter", c.delimiter);
    one_char("card_separator", c.card_separator);
    if (j.contains("has_header")) c.has_header = j["has_header"].get<bool>();
    if (j.contains("lowercase")) c.lowercase = j["lowercase"].get<bool>();
    if (j.contains("columns")) {
      const json& cols = j["columns"];
      const auto get = [&](const char* key, std::string& out) {
        if (cols.contains(key)) out = cols[key].get<std::string>();
      };
      get("dialogue", c.dialogue_column);
      get("participant", c.participant_column);
      get("type", c.type_column);
      get("text", c.text_column);
      get("cards", c.cards_column);
      get("annotation", c.annotation_column);
    }
    if (j.contains("types")) {
      const json& types = j["types"];
      const auto get = [&](const char* key, std::vector<std::string>& out) {
        if (types.contains(key)) out = types[key].get<std::vector<std::string>>();
      };
      get("utterance", c.utterance_types);
      get("inventory", c.inventory_types);
      get("solo", c.solo_types);
      get("intermediate", c.intermediate_types);
      get("final", c.final_types);
      get("submit", c.submit_types);
    }
    if (j.contains("change_of_mind_values")) {
      c.change_of_mind_values = j["change_of_mind_values"].get<std::vector<std::string>>();
    }
    if (j.contains("replacements")) {
      for (const auto& pair : j["replacements"]) {
        c.replacements.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
      }
    }
  } catch (const json::exception& e) {
    throw UsageError("tabular config '" + path.string() + "': " + e.what());
  }
  return c;
}

void write_canonical(std::ostream& out, const Corpus& corpus) {
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    out << to_json(corpus[i], corpus.split(i)).dump() << '\n';
  }
}

void save_corpus(const std::filesystem::path& path, const Corpus& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  write_canonical(out, corpus);
}

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats s;
  s.dialogues = static_cast<int>(corpus.size());
  long participants = 0;
  for (const Dialogue& d : corpus.dialogues()) {
    s.utterances += d.size();
    participants += static_cast<long>(d.participants().size());
    if (!d.annotated() && d.has_intermediate()) ++s.with_intermediate;
    for (const auto& sub : d.submissions) {
      if (sub.phase != Phase::kSolo) ++s.intermediate_and_final;
    }
    if (d.annotated()) {
      ++s.annotated;
      s.annotated_changes += static_cast<int>(d.gold_change_of_mind->size());
    }
  }
  if (s.dialogues > 0) s.avg_group_size = static_cast<double>(participants) / s.dialogues;
  return s;
}

Corpus make_splits(const Corpus& corpus, std::uint64_t seed) {
  std::vector<std::size_t> annotated;
  std::vector<Split> splits(corpus.size(), Split::kUnassigned);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Dialogue& d = corpus[i];
    if (d.annotated()) {
      annotated.push_back(i);
    } else if (d.has_intermediate()) {
      splits[i] = Split::kTrain;
    }
  }
  if (annotated.size() < 2) {
    throw DataError("make_splits: need at least 2 annotated dialogues to form test and "
                    "validation splits, found " + std::to_string(annotated.size()));
  }
  Rng rng(mix_seed({seed, 0x73706c6974ULL}));
  shuffle(std::span<std::size_t>(annotated), rng);
  const std::size_t n = annotated.size();
  const std::size_t n_validation = std::clamp<std::size_t>((n + 2) / 5, 1, n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    splits[annotated[k]] = k < n - n_validation ? Split::kTest : Split::kValidation;
  }
  return Corpus(corpus.dialogues(), std::move(splits));
}

}  // namespace turnpoint
