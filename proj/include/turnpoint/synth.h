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

#ifndef TURNPOINT_SYNTH_H_
#define TURNPOINT_SYNTH_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "turnpoint/config.h"
#include "turnpoint/corpus.h"

namespace turnpoint {

struct SynthConfig {
  int n_dialogues = 200;
  // Relative weights of group sizes 2, 3, 4 and 5.
  std::array<double, 4> group_size_weights{0.32, 0.34, 0.20, 0.14};
  int min_utterances = 16;
  int max_utterances = 40;
  int min_tokens = 3;
  int max_tokens = 12;
  int vocabulary_size = 400;
  double zipf_exponent = 1.0;
  std::string cue_token = "hmm";
  // Chance that an utterance carries the cue.
  double cue_rate = 0.08;
  // Chance that a cue is answered by another participant changing their
  // answer in the next utterance.
  double cue_probability = 1.0;
  // Chance that an ordinary utterance mentions some cards.
  double mention_rate = 0.3;
  double annotated_fraction = 0.25;
  std::uint64_t seed = 0;

  // Throws UsageError on a degenerate or out-of-range setting.
  void validate() const;
  static SynthConfig from_settings(const Settings& settings);
};

struct SynthCorpus {
  Corpus corpus;
  // Per dialogue, the indices of cue utterances that caused a change.
  std::vector<std::vector<int>> causes;
};

SynthCorpus generate(const SynthConfig& config);

}  // namespace turnpoint

#endif  // TURNPOINT_SYNTH_H_
