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

#include <benchmark/benchmark.h>

#include <vector>

#include "turnpoint/eval.h"
#include "turnpoint/kernels/adadelta.h"
#include "turnpoint/kernels/featurize.h"
#include "turnpoint/kernels/sweep.h"
#include "turnpoint/rng.h"
#include "turnpoint/synth.h"

namespace {

using namespace turnpoint;

struct SweepFixture {
  std::vector<std::vector<double>> scores;
  std::vector<std::vector<std::uint8_t>> gold;
  std::vector<std::vector<ClusterSpan>> spans;
  std::vector<kernels::SweepDialogue> dialogues;
  std::vector<double> thresholds;

  explicit SweepFixture(int n) {
    Rng rng(7);
    for (int d = 0; d < n; ++d) {
      const int len = 20 + static_cast<int>(uniform_index(rng, 20));
      std::vector<double> s(len);
      std::vector<std::uint8_t> g(len);
      for (int t = 0; t < len; ++t) {
        s[t] = uniform_unit(rng);
        g[t] = bernoulli(rng, 0.08) ? 1 : 0;
      }
      scores.push_back(std::move(s));
      gold.push_back(std::move(g));
    }
    for (const auto& g : gold) spans.push_back(clusterize(g));
    for (int d = 0; d < n; ++d) dialogues.push_back({scores[d], {}, spans[d]});
    thresholds = descending_thresholds(scores);
  }
};

void BM_SweepSerial(benchmark::State& state) {
  SweepFixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::sweep_serial(f.thresholds, f.dialogues));
}

void BM_SweepOmp(benchmark::State& state) {
  SweepFixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::sweep_omp(f.thresholds, f.dialogues));
}

void adadelta_bench(benchmark::State& state, bool parallel) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<double> params(n, 0.0), grad(n), sq_grad(n, 0.0), sq_delta(n, 0.0);
  Rng rng(3);
  for (double& g : grad) g = standard_normal(rng);
  for (auto _ : state) {
    if (parallel) {
      kernels::adadelta_omp(params, grad, sq_grad, sq_delta, 0.95, 1e-6);
    } else {
      kernels::adadelta_serial(params, grad, sq_grad, sq_delta, 0.95, 1e-6);
    }
    benchmark::ClobberMemory();
  }
}

void BM_AdadeltaSerial(benchmark::State& state) { adadelta_bench(state, false); }
void BM_AdadeltaOmp(benchmark::State& state) { adadelta_bench(state, true); }

void featurize_bench(benchmark::State& state, bool parallel) {
  SynthConfig c;
  c.n_dialogues = static_cast<int>(state.range(0));
  const SynthCorpus synth = generate(c);
  std::vector<const Dialogue*> ds;
  for (const auto& d : synth.corpus.dialogues()) ds.push_back(&d);
  const FeatureConfig fc;
  for (auto _ : state) {
    benchmark::DoNotOptimize(parallel ? kernels::featurize_omp(ds, fc)
                                      : kernels::featurize_serial(ds, fc));
  }
}

void BM_FeaturizeSerial(benchmark::State& state) { featurize_bench(state, false); }
void BM_FeaturizeOmp(benchmark::State& state) { featurize_bench(state, true); }

BENCHMARK(BM_SweepSerial)->Arg(100)->Arg(500);
BENCHMARK(BM_SweepOmp)->Arg(100)->Arg(500);
BENCHMARK(BM_AdadeltaSerial)->Arg(1 << 18);
BENCHMARK(BM_AdadeltaOmp)->Arg(1 << 18);
BENCHMARK(BM_FeaturizeSerial)->Arg(200);
BENCHMARK(BM_FeaturizeOmp)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
