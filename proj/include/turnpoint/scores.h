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

#ifndef TURNPOINT_SCORES_H_
#define TURNPOINT_SCORES_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace turnpoint {

struct DialogueScores {
  std::string dialogue_id;
  std::vector<double> scores;
  std::vector<std::uint8_t> binary;

  bool operator==(const DialogueScores&) const = default;
};

// CSV with header dialogue_id,utterance_index,score,binary. Scores are
// written with 17 significant digits so they read back exactly.
void write_scores(std::ostream& out, const std::vector<DialogueScores>& scores);
void save_scores(const std::filesystem::path& path, const std::vector<DialogueScores>& scores);

// Rows of one dialogue must be contiguous with indices 0, 1, 2, ...
// Throws ParseError otherwise.
std::vector<DialogueScores> read_scores(std::istream& in, const std::string& source);
std::vector<DialogueScores> load_scores(const std::filesystem::path& path);

}  // namespace turnpoint

#endif  // TURNPOINT_SCORES_H_
