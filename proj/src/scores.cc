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

#include "turnpoint/scores.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "turnpoint/csv.h"
#include "turnpoint/error.h"

namespace turnpoint {

void write_scores(std::ostream& out, const std::vector<DialogueScores>& scores) {
  out << "dialogue_id,utterance_index,score,binary\n";
  char buf[64];
  for (const auto& d : scores) {
    const std::string id = csv_escape(d.dialogue_id);
    for (std::size_t t = 0; t < d.scores.size(); ++t) {
      std::snprintf(buf, sizeof buf, ",%zu,%.17g,%d\n", t, d.scores[t],
                    t < d.binary.size() ? static_cast<int>(d.binary[t]) : 0);
      out << id << buf;
    }
  }
}

void save_scores(const std::filesystem::path& path, const std::vector<DialogueScores>& scores) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write scores '" + path.string() + "'");
  write_scores(out, scores);
  if (!out) throw DataError("failed writing scores '" + path.string() + "'");
}

std::vector<DialogueScores> read_scores(std::istream& in, const std::string& source) {
  CsvReader reader(in, ',');
  auto header = reader.next();
  if (!header || *header != std::vector<std::string>{"dialogue_id", "utterance_index",
                                                      "score", "binary"}) {
    throw ParseError(source, 1, "expected header dialogue_id,utterance_index,score,binary");
  }
  std::vector<DialogueScores> out;
  std::set<std::string> finished;
  while (auto row = reader.next()) {
    const int line = reader.record_line();
    if (row->size() == 1 && (*row)[0].empty()) continue;
    if (row->size() != 4) throw ParseError(source, line, "expected 4 fields");
    const std::string& id = (*row)[0];
    if (out.empty() || out.back().dialogue_id != id) {
      if (!out.empty()) finished.insert(out.back().dialogue_id);
      if (finished.count(id)) {
        throw ParseError(source, line, "rows of dialogue '" + id + "' are not contiguous");
      }
      out.push_back({id, {}, {}});
    }
    DialogueScores& d = out.back();
    const std::string& idx = (*row)[1];
    std::size_t index = 0;
    auto r = std::from_chars(idx.data(), idx.data() + idx.size(), index);
    if (r.ec != std::errc() || r.ptr != idx.data() + idx.size() || index != d.scores.size()) {
      throw ParseError(source, line, "utterance_index must count up from 0");
    }
    const std::string& sc = (*row)[2];
    double score = 0.0;
    r = std::from_chars(sc.data(), sc.data() + sc.size(), score);
    if (r.ec != std::errc() || r.ptr != sc.data() + sc.size() || !std::isfinite(score)) {
      throw ParseError(source, line, "bad score '" + sc + "'");
    }
    const std::string& b = (*row)[3];
    if (b != "0" && b != "1") throw ParseError(source, line, "binary must be 0 or 1");
    d.scores.push_back(score);
    d.binary.push_back(b == "1" ? 1 : 0);
  }
  return out;
}

std::vector<DialogueScores> load_scores(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open scores '" + path.string() + "'");
  return read_scores(in, path.string());
}

}  // namespace turnpoint
