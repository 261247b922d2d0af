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

#include "turnpoint/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "turnpoint/error.h"
#include "turnpoint/rng.h"

namespace turnpoint {
namespace {

constexpr std::string_view kVowels[] = {"A", "E", "I", "O", "U"};
constexpr std::string_view kConsonants[] = {"B", "D", "G", "K", "M", "R", "T", "Z"};
constexpr std::string_view kEvens[] = {"2", "4", "6", "8"};
constexpr std::string_view kOdds[] = {"3", "5", "7", "9"};

template <std::size_t N>
std::string pick(Rng& rng, const std::string_view (&pool)[N]) {
  return std::string(pool[uniform_index(rng, N)]);
}

std::size_t draw_weighted(Rng& rng, std::span<const double> cdf) {
  const double u = uniform_unit(rng) * cdf.back();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

int uniform_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(hi - lo + 1)));
}

std::vector<std::string> filler(Rng& rng, const SynthConfig& c, std::span<const double> zipf) {
  const int n = uniform_int(rng, c.min_tokens, c.max_tokens);
  std::vector<std::string> tokens;
  tokens.reserve(static_cast<std::size_t>(n) + 4);
  char buf[16];
  for (int k = 0; k < n; ++k) {
    std::snprintf(buf, sizeof buf, "w%zu", draw_weighted(rng, zipf));
    tokens.emplace_back(buf);
  }
  return tokens;
}

void mention(std::vector<std::string>& tokens, CardSet cards, const CardInventory& inv,
             Rng& rng) {
  std::size_t at = uniform_index(rng, tokens.size() + 1);
  for (const auto& label : cards.labels(inv)) {
    tokens.insert(tokens.begin() + static_cast<long>(at++), "<CARD:" + label + ">");
  }
}

CardSet random_answer(Rng& rng) {
  return CardSet::from_mask(static_cast<std::uint8_t>(1 + uniform_index(rng, 15)));
}

CardSet different_answer(Rng& rng, CardSet current) {
  CardSet next = current;
  while (next == current) next = random_answer(rng);
  return next;
}

struct Generated {
  Dialogue dialogue;
  std::vector<int> causes;
};

Generated generate_one(const SynthConfig& c, int index, std::span<const double> zipf,
                       std::span<const double> group_cdf) {
  Rng rng(mix_seed({c.seed, static_cast<std::uint64_t>(index), 0x73796e7468}));
  Generated g;
  Dialogue& d = g.dialogue;
  char id[32];
  std::snprintf(id, sizeof id, "synth-%04d", index);
  d.id = id;

  std::array<Card, 4> cards{Card{pick(rng, kVowels), CardRole::kVowel},
                            Card{pick(rng, kConsonants), CardRole::kConsonant},
                            Card{pick(rng, kEvens), CardRole::kEven},
                            Card{pick(rng, kOdds), CardRole::kOdd}};
  shuffle(std::span<Card>(cards), rng);
  d.cards = CardInventory(cards);

  const int group = 2 + static_cast<int>(draw_weighted(rng, group_cdf));
  std::vector<std::string> people;
  std::vector<CardSet> answer;
  for (int p = 0; p < group; ++p) {
    people.push_back("P" + std::to_string(p + 1));
    answer.push_back(random_answer(rng));
    d.submissions.push_back({people.back(), Phase::kSolo, answer.back(), kBeforeFirstUtterance});
  }

  const int n = uniform_int(rng, c.min_utterances, c.max_utterances);
  std::vector<int> changes;
  int pending_from = -1;
  for (int t = 0; t < n; ++t) {
    Utterance u;
    u.index = t;
    std::vector<std::string> tokens = filler(rng, c, zipf);
    if (pending_from >= 0) {
      int speaker = static_cast<int>(uniform_index(rng, static_cast<std::size_t>(group - 1)));
      if (speaker >= pending_from) ++speaker;
      answer[speaker] = different_answer(rng, answer[speaker]);
      mention(tokens, answer[speaker], d.cards, rng);
      u.participant = people[speaker];
      d.submissions.push_back({people[speaker], Phase::kIntermediate, answer[speaker], t});
      changes.push_back(t);
      g.causes.push_back(t - 1);
      pending_from = -1;
    } else {
      const int speaker = static_cast<int>(uniform_index(rng, people.size()));
      u.participant = people[speaker];
      if (t + 1 < n && bernoulli(rng, c.cue_rate)) {
        tokens.insert(tokens.begin() + static_cast<long>(uniform_index(rng, tokens.size() + 1)),
                      c.cue_token);
        if (bernoulli(rng, c.cue_probability)) pending_from = speaker;
      } else if (bernoulli(rng, c.mention_rate)) {
        mention(tokens, random_answer(rng), d.cards, rng);
      }
    }
    u.tokens = std::move(tokens);
    d.utterances.push_back(std::move(u));
  }
  for (int p = 0; p < group; ++p) {
    d.submissions.push_back({people[p], Phase::kFinal, answer[p], n - 1});
  }
  if (bernoulli(rng, c.annotated_fraction)) d.gold_change_of_mind = changes;
  validate(d);
  return g;
}

}  // namespace

void SynthConfig::validate() const {
  if (n_dialogues < 1) throw UsageError("synth: n_dialogues must be >= 1");
  if (vocabulary_size < 1) throw UsageError("synth: vocabulary_size must be >= 1");
  double total = 0.0;
  for (double w : group_size_weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw UsageError("synth: group_size_weights must be non-negative");
    }
    total += w;
  }
  if (!(total > 0.0)) throw UsageError("synth: group_size_weights sum to zero");
  if (min_utterances < 2 || max_utterances < min_utterances) {
    throw UsageError("synth: need 2 <= min_utterances <= max_utterances");
  }
  if (min_tokens < 1 || max_tokens < min_tokens) {
    throw UsageError("synth: need 1 <= min_tokens <= max_tokens");
  }
  if (!(zipf_exponent >= 0.0)) throw UsageError("synth: zipf_exponent must be >= 0");
  if (cue_token.empty() || cue_token.find_first_of(" \t\r\n") != std::string::npos) {
    throw UsageError("synth: cue_token must be a single non-empty token");
  }
  if (cue_token.size() >= 2 && cue_token[0] == 'w' &&
      cue_token.find_first_not_of("0123456789", 1) == std::string::npos) {
    throw UsageError("synth: cue_token collides with the filler vocabulary");
  }
  for (double p : {cue_rate, cue_probability, mention_rate, annotated_fraction}) {
    if (!(p >= 0.0 && p <= 1.0)) throw UsageError("synth: probabilities must lie in [0, 1]");
  }
}

SynthConfig SynthConfig::from_settings(const Settings& s) {
  s.reject_unknown({"n_dialogues", "group_size_weights", "min_utterances", "max_utterances",
                    "min_tokens", "max_tokens", "vocabulary_size", "zipf_exponent",
                    "cue_token", "cue_rate", "cue_probability", "mention_rate",
                    "annotated_fraction", "seed"},
                   "synth config");
  SynthConfig c;
  const auto as_int = [&](std::string_view key, int& field) {
    if (auto v = s.get_int(key)) field = static_cast<int>(*v);
  };
  const auto as_double = [&](std::string_view key, double& field) {
    if (auto v = s.get_double(key)) field = *v;
  };
  as_int("n_dialogues", c.n_dialogues);
  as_int("min_utterances", c.min_utterances);
  as_int("max_utterances", c.max_utterances);
  as_int("min_tokens", c.min_tokens);
  as_int("max_tokens", c.max_tokens);
  as_int("vocabulary_size", c.vocabulary_size);
  as_double("zipf_exponent", c.zipf_exponent);
  as_double("cue_rate", c.cue_rate);
  as_double("cue_probability", c.cue_probability);
  as_double("mention_rate", c.mention_rate);
  as_double("annotated_fraction", c.annotated_fraction);
  if (auto v = s.get_string("cue_token")) c.cue_token = *v;
  if (auto v = s.get_int("seed")) {
    if (*v < 0) throw UsageError("synth: seed must be non-negative");
    c.seed = static_cast<std::uint64_t>(*v);
  }
  if (auto v = s.get_doubles("group_size_weights")) {
    if (v->size() != 4) throw UsageError("synth: group_size_weights needs 4 entries");
    std::copy(v->begin(), v->end(), c.group_size_weights.begin());
  }
  c.validate();
  return c;
}

SynthCorpus generate(const SynthConfig& config) {
  config.validate();
  std::vector<double> zipf(static_cast<std::size_t>(config.vocabulary_size));
  double acc = 0.0;
  for (std::size_t k = 0; k < zipf.size(); ++k) {
    acc += 1.0 / std::pow(static_cast<double>(k + 1), config.zipf_exponent);
    zipf[k] = acc;
  }
  std::vector<double> group_cdf(4);
  acc = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    acc += config.group_size_weights[k];
    group_cdf[k] = acc;
  }

  std::vector<Generated> out(static_cast<std::size_t>(config.n_dialogues));
  std::vector<std::string> failures(out.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < config.n_dialogues; ++i) {
    try {
      out[i] = generate_one(config, i, zipf, group_cdf);
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  }
  for (const auto& f : failures) {
    if (!f.empty()) throw DataError("synth: generated an invalid dialogue: " + f);
  }
  SynthCorpus result;
  std::vector<Dialogue> dialogues;
  for (auto& g : out) {
    dialogues.push_back(std::move(g.dialogue));
    result.causes.push_back(std::move(g.causes));
  }
  result.corpus = Corpus(std::move(dialogues));
  return result;
}

}  // namespace turnpoint
