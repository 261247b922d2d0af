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

#include "turnpoint/features.h"

#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.h"
#include "turnpoint/error.h"
#include "turnpoint/synth.h"

namespace turnpoint {
namespace {

using namespace testing;

// Sum of signs per bucket, built token by token.
std::map<std::uint32_t, double> expected_bag(const std::vector<std::string>& tokens,
                                             const FeatureConfig& c) {
  std::map<std::uint32_t, double> bag;
  for (const auto& t : tokens) {
    const auto h = hash_token(normalize_token(t, c.lowercase), c);
    bag[h.bucket] += h.sign;
  }
  std::erase_if(bag, [](const auto& kv) { return kv.second == 0.0; });
  return bag;
}

std::map<std::uint32_t, double> as_map(const FeatureVector& v) {
  std::map<std::uint32_t, double> m;
  for (std::size_t k = 0; k < v.nnz(); ++k) m[v.indices[k]] = v.values[k];
  return m;
}

TEST(Features, FirstUtteranceAlone) {
  const Dialogue d = dialogue("f", {{"P1", "Hello there"}, {"P2", "hi"}});
  const FeatureConfig c;
  EXPECT_EQ(as_map(build_example(d, 0, c)), expected_bag({"hello", "there"}, c));
  EXPECT_EQ(as_map(build_example(d, 1, c)),
            expected_bag({"hello", "there", "<SEP>", "hi"}, c));
}

TEST(Features, SameTextSameVector) {
  const Dialogue a = dialogue("a", {{"P1", "x"}, {"P1", "i like it"}, {"P2", "why ?"}});
  const Dialogue b = dialogue("b", {{"P9", "i like it"}, {"P8", "why ?"}});
  const FeatureConfig c;
  EXPECT_EQ(build_example(a, 2, c), build_example(b, 1, c));
}

TEST(Features, AppendixPair) {
  const Dialogue d = dialogue(
      "app", {{"P1", "<MENTION> any ideas ?"},
              {"P2", "but then again most people get this wrong then it cant be as easy as we "
                     "think surely"}});
  const FeatureConfig c;
  const FeatureVector v = build_example(d, 1, c);
  for (const char* word : {"people", "wrong", "easy", "<MENTION>"}) {
    EXPECT_NE(v.value_at(hash_token(word, c).bucket), 0.0) << word;
  }
}

TEST(Features, PlaceholdersKeepCase) {
  EXPECT_EQ(normalize_token("<CARD:A>", true), "<CARD:A>");
  EXPECT_EQ(normalize_token("Easy", true), "easy");
  EXPECT_EQ(normalize_token("Easy", false), "Easy");
}

TEST(Features, PositionalBlock) {
  const Dialogue d = dialogue("p", {{"P1", "a"}, {"P2", "b"}, {"P1", "c"}});
  FeatureConfig c;
  c.dim = 64;
  c.positional = true;
  EXPECT_EQ(c.total_dim(), 66u);
  const FeatureVector v = build_example(d, 2, c, 0);
  EXPECT_DOUBLE_EQ(v.value_at(64), 1.0);
  EXPECT_DOUBLE_EQ(v.value_at(65), 2.0 / 3.0);
}

TEST(Features, OutOfRange) {
  const Dialogue d = dialogue("o", {{"P1", "a"}});
  EXPECT_THROW(build_example(d, 1, FeatureConfig{}), UsageError);
  EXPECT_THROW(build_example(d, -1, FeatureConfig{}), UsageError);
}

TEST(FeatureConfig, JsonAndFingerprint) {
  FeatureConfig c;
  c.dim = 1024;
  c.seed = 4;
  const FeatureConfig back = FeatureConfig::from_json(c.to_json());
  EXPECT_EQ(back.to_json(), c.to_json());
  EXPECT_EQ(back.fingerprint(), c.fingerprint());
  EXPECT_EQ(c.fingerprint().size(), 16u);
  FeatureConfig other = c;
  other.seed = 5;
  EXPECT_NE(other.fingerprint(), c.fingerprint());
  EXPECT_THROW(FeatureConfig::from_json(R"({"dim": 0})"), UsageError);
  EXPECT_THROW(FeatureConfig::from_json(R"({"dim": "big"})"), UsageError);
}

TEST(FeatureConfig, HashIsPinned) {
  // Saved models depend on these staying put.
  const FeatureConfig c;
  EXPECT_EQ(hash_token("easy", c).bucket, 35771u);
  EXPECT_EQ(hash_token("easy", c).sign, -1.0);
  EXPECT_EQ(hash_token("<SEP>", c).bucket, 255119u);
}

TEST(FeaturesProperty, SparseSortedAndBounded) {
  SynthConfig sc;
  sc.n_dialogues = 30;
  const Corpus corpus = generate(sc).corpus;
  FeatureConfig c;
  c.dim = 256;
  c.positional = true;
  for (const auto& d : corpus.dialogues()) {
    const auto fv = featurize_dialogue(d, c);
    for (int t = 0; t < d.size(); ++t) {
      const auto& v = fv[t];
      std::size_t tokens = d.utterances[t].tokens.size();
      if (t > 0) tokens += d.utterances[t - 1].tokens.size() + 1;
      EXPECT_LE(v.nnz(), tokens + kPositionalSize);
      EXPECT_TRUE(std::is_sorted(v.indices.begin(), v.indices.end()));
      EXPECT_EQ(std::adjacent_find(v.indices.begin(), v.indices.end()), v.indices.end());
      for (std::size_t k = 0; k < v.nnz(); ++k) {
        EXPECT_LT(v.indices[k], c.total_dim());
        EXPECT_NE(v.values[k], 0.0);
        EXPECT_TRUE(std::isfinite(v.values[k]));
      }
    }
  }
}

}  // namespace
}  // namespace turnpoint
