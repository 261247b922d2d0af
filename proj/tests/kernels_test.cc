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

// Each OpenMP kernel against its serial reference.

#include <gtest/gtest.h>
#include <omp.h>

#include "turnpoint/eval.h"
#include "turnpoint/kernels/adadelta.h"
#include "turnpoint/kernels/featurize.h"
#include "turnpoint/kernels/sweep.h"
#include "turnpoint/rng.h"
#include "turnpoint/synth.h"

namespace turnpoint {
namespace {

class Threads : public ::testing::TestWithParam<int> {
 protected:
  void SetUp() override {
    saved_ = omp_get_max_threads();
    omp_set_num_threads(GetParam());
  }
  void TearDown() override { omp_set_num_threads(saved_); }
  int saved_ = 1;
};

TEST_P(Threads, SweepMatchesSerial) {
  Rng rng(31);
  std::vector<std::vector<double>> scores(50);
  std::vector<std::vector<std::uint8_t>> forced(50);
  std::vector<std::vector<ClusterSpan>> gold(50);
  std::vector<kernels::SweepDialogue> dialogues;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const int n = 5 + static_cast<int>(uniform_index(rng, 40));
    std::vector<std::uint8_t> g(n);
    for (int t = 0; t < n; ++t) {
      scores[i].push_back(std::round(uniform_unit(rng) * 100) / 100);
      g[t] = bernoulli(rng, 0.15);
    }
    if (i % 3 == 0) {
      forced[i].resize(n);
      for (auto& f : forced[i]) f = bernoulli(rng, 0.05);
    }
    gold[i] = clusterize(g);
    dialogues.push_back({scores[i], forced[i], gold[i]});
  }
  const auto thresholds = descending_thresholds(scores);
  const auto serial = kernels::sweep_serial(thresholds, dialogues);
  const auto omp = kernels::sweep_omp(thresholds, dialogues);
  ASSERT_EQ(serial.size(), thresholds.size());
  EXPECT_EQ(serial, omp);
}

TEST_P(Threads, AdadeltaBitIdentical) {
  Rng rng(32);
  const std::size_t n = 10007;
  std::vector<double> grad(n), p1(n), g1(n), d1(n);
  for (std::size_t i = 0; i < n; ++i) {
    p1[i] = standard_normal(rng);
    g1[i] = uniform_unit(rng);
    d1[i] = uniform_unit(rng) * 1e-3;
  }
  auto p2 = p1, g2 = g1, d2 = d1;
  for (int step = 0; step < 5; ++step) {
    for (auto& g : grad) g = standard_normal(rng);
    kernels::adadelta_serial(p1, grad, g1, d1, 0.95, 1e-6);
    kernels::adadelta_omp(p2, grad, g2, d2, 0.95, 1e-6);
  }
  EXPECT_EQ(p1, p2);
  EXPECT_EQ(g1, g2);
  EXPECT_EQ(d1, d2);
}

TEST_P(Threads, FeaturizeMatchesSerial) {
  SynthConfig sc;
  sc.n_dialogues = 25;
  const Corpus corpus = generate(sc).corpus;
  std::vector<const Dialogue*> ptrs;
  for (const auto& d : corpus.dialogues()) ptrs.push_back(&d);
  FeatureConfig fc;
  fc.dim = 1 << 10;
  const auto serial = kernels::featurize_serial(ptrs, fc);
  EXPECT_EQ(serial, kernels::featurize_omp(ptrs, fc));
  ASSERT_EQ(serial.size(), ptrs.size());
  EXPECT_EQ(serial[3], featurize_dialogue(*ptrs[3], fc));
}

INSTANTIATE_TEST_SUITE_P(Kernels, Threads, ::testing::Values(1, 2, 4));

}  // namespace
}  // namespace turnpoint
