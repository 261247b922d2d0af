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

#include "turnpoint/eval.h"

#include <gtest/gtest.h>

#include <cmath>

#include "turnpoint/error.h"
#include "turnpoint/rng.h"

namespace turnpoint {
namespace {

using Bits = std::vector<std::uint8_t>;

Bits bits(std::initializer_list<int> v) { return Bits(v.begin(), v.end()); }

Bits at(int n, std::initializer_list<int> ones) {
  Bits b(n, 0);
  for (int t : ones) b[t] = 1;
  return b;
}

// Independent matcher: try every predicted cluster for every gold cluster in
// order, scanning raw positions.
MatchResult oracle(const Bits& gold, const Bits& pred) {
  const int n = static_cast<int>(gold.size());
  auto runs = [n](const Bits& b) {
    std::vector<std::pair<int, int>> r;
    for (int t = 0; t < n; ++t) {
      if (!b[t]) continue;
      if (t > 0 && b[t - 1]) {
        r.back().second = t;
      } else {
        r.push_back({t, t});
      }
    }
    return r;
  };
  const auto g = runs(gold), p = runs(pred);
  std::vector<bool> used(p.size());
  MatchResult m;
  for (auto [s, e] : g) {
    int hit = -1;
    for (std::size_t j = 0; j < p.size() && hit < 0; ++j) {
      if (!used[j] && p[j].first <= e && p[j].second >= s - 1) hit = static_cast<int>(j);
    }
    if (hit >= 0) {
      used[hit] = true;
      ++m.tp;
    } else {
      m.fn += e - s + 1;
    }
  }
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (!used[j]) m.fp += p[j].second - p[j].first + 1;
  }
  return m;
}

TEST(Clusterize, Examples) {
  EXPECT_EQ(clusterize(bits({0, 1, 1, 0, 1})),
            (std::vector<ClusterSpan>{{1, 2}, {4, 4}}));
  EXPECT_TRUE(clusterize(Bits(6, 0)).empty());
  EXPECT_EQ(clusterize(Bits(5, 1)), (std::vector<ClusterSpan>{{0, 4}}));
}

TEST(Match, Scenarios) {
  EXPECT_EQ(match_labels(at(10, {5}), at(10, {5})), (MatchResult{1, 0, 0}));
  EXPECT_EQ(match_labels(at(10, {5, 6}), at(10, {5, 6})), (MatchResult{1, 0, 0}));
  EXPECT_EQ(match_labels(at(10, {5}), at(10, {4})), (MatchResult{1, 0, 0}));
  EXPECT_EQ(match_labels(at(10, {5}), at(10, {6})), (MatchResult{0, 1, 1}));
  EXPECT_EQ(match_labels(at(10, {5}), at(10, {3})), (MatchResult{0, 1, 1}));
}

TEST(Match, ClustersConsumedWhole) {
  EXPECT_EQ(match_labels(at(10, {2, 5}), at(10, {1, 2, 3, 4, 5})), (MatchResult{1, 0, 1}));
  EXPECT_EQ(match_labels(at(10, {3, 4, 5}), at(10, {})), (MatchResult{0, 0, 3}));
  EXPECT_EQ(match_labels(at(10, {}), at(10, {7, 8})), (MatchResult{0, 2, 0}));
}

TEST(Match, RejectsBadSpans) {
  const std::vector<ClusterSpan> ok{{1, 1}};
  const std::vector<ClusterSpan> overlapping{{1, 3}, {3, 4}};
  const std::vector<ClusterSpan> unsorted{{5, 5}, {1, 1}};
  EXPECT_THROW(match(overlapping, ok), UsageError);
  EXPECT_THROW(match(ok, unsorted), UsageError);
  EXPECT_THROW(match_labels(Bits(3, 0), Bits(4, 0)), UsageError);
}

TEST(MatchProperty, AgreesWithOracleAndBounds) {
  Rng rng(1);
  for (int trial = 0; trial < 20000; ++trial) {
    const int n = 1 + static_cast<int>(uniform_index(rng, 20));
    Bits g(n), p(n);
    for (int t = 0; t < n; ++t) {
      g[t] = bernoulli(rng, 0.3);
      p[t] = bernoulli(rng, 0.3);
    }
    const MatchResult m = match_labels(g, p);
    ASSERT_EQ(m, oracle(g, p));
    const int gc = static_cast<int>(clusterize(g).size());
    const int pc = static_cast<int>(clusterize(p).size());
    EXPECT_LE(m.tp, std::min(gc, pc));
    EXPECT_LE(m.fn, std::count(g.begin(), g.end(), 1));
    EXPECT_LE(m.fp, std::count(p.begin(), p.end(), 1));
  }
}

// Isolated gold singletons, each with at most one predicted singleton
// near it. Offsets are chosen so the shifted prediction stays near its own
// gold: 0..2 when shifting earlier, -1..1 when shifting later.
TEST(MatchProperty, ShiftDirectionOnIsolatedGold) {
  Rng rng(2);
  for (int trial = 0; trial < 5000; ++trial) {
    const int n = 40;
    for (int direction : {-1, 1}) {
      Bits g(n, 0), p(n, 0), shifted(n, 0);
      for (int t = 3; t < n - 3; t += 6 + static_cast<int>(uniform_index(rng, 3))) {
        g[t] = 1;
        if (!bernoulli(rng, 0.7)) continue;
        const int offset = static_cast<int>(uniform_index(rng, 3)) - (direction > 0 ? 1 : 0);
        p[t + offset] = 1;
        shifted[t + offset + direction] = 1;
      }
      const int tp = match_labels(g, p).tp;
      if (direction < 0) {
        EXPECT_GE(match_labels(g, shifted).tp, tp);
      } else {
        EXPECT_LE(match_labels(g, shifted).tp, tp);
      }
    }
  }
}

TEST(PrAuc, InterpolatedEnvelope) {
  std::vector<PRPoint> pts(3);
  pts[0].recall = 0.5, pts[0].precision = 0.5;
  pts[1].recall = 0.5, pts[1].precision = 1.0;
  pts[2].recall = 1.0, pts[2].precision = 0.5;
  // Envelope: 1.0 up to recall 0.5, then 0.5 (only the last point lies past it).
  EXPECT_DOUBLE_EQ(pr_auc(pts), 0.5 * 1.0 + 0.5 * 0.5);
  pts[1].precision = 0.25;
  EXPECT_DOUBLE_EQ(pr_auc(pts), 0.5 * 0.5 + 0.5 * 0.5);
}

TEST(PrCurve, PerfectScorer) {
  std::vector<ScoredDialogue> d{{{0, 1, 0, 0}, at(4, {1}), {}},
                                {{1, 0, 0, 1, 1}, at(5, {0, 3, 4}), {}}};
  for (Scope s : {Scope::kMicro, Scope::kMacro}) {
    const PRCurve c = pr_curve(d, s);
    EXPECT_DOUBLE_EQ(c.auc, 1.0);
    EXPECT_DOUBLE_EQ(c.break_even, 1.0);
  }
}

TEST(PrCurve, AllPositiveHasFullRecall) {
  // One gold cluster per dialogue; an all-ones prediction is a single cluster.
  std::vector<ScoredDialogue> d{{std::vector<double>(8, 0.5), at(8, {2, 3}), {}},
                                {std::vector<double>(5, 0.5), at(5, {4}), {}}};
  const PRCurve c = pr_curve(d, Scope::kMicro);
  ASSERT_EQ(c.points.size(), 1u);
  EXPECT_DOUBLE_EQ(c.points[0].recall, 1.0);
  EXPECT_DOUBLE_EQ(c.points[0].threshold, 0.5);
  // With two gold clusters the single predicted cluster matches only one.
  std::vector<ScoredDialogue> two{{std::vector<double>(8, 0.5), at(8, {2, 6}), {}}};
  EXPECT_EQ(pr_curve(two, Scope::kMicro).points[0].counts, (MatchResult{1, 0, 1}));
}

TEST(PrCurve, HandBuiltFixture) {
  // Three distinct scores; counts worked out by hand with the oracle rule.
  std::vector<ScoredDialogue> d{
      {{0.9, 0.1, 0.5, 0.1, 0.2}, at(5, {1, 3}), {}},
      {{0.2, 0.5, 0.9, 0.1}, at(4, {2}), {}},
  };
  const PRCurve c = pr_curve(d, Scope::kMicro, Execution::kSerial);
  ASSERT_EQ(c.points.size(), 4u);
  // 0.9: d1 pred {0}: gold {1} matches (0 in [0,1]) -> tp1; gold {3} fn1.
  //      d2 pred {2}: tp1. Total tp2 fp0 fn1.
  EXPECT_EQ(c.points[0].counts, (MatchResult{2, 0, 1}));
  // 0.5: d1 pred {0},{2}: gold1 takes {0}; gold3 takes {2}. d2 pred {1,2}: tp1.
  EXPECT_EQ(c.points[1].counts, (MatchResult{3, 0, 0}));
  // 0.2: d1 pred {0},{2},{4}: tp2 fp1. d2 pred {0,1,2}: tp1.
  EXPECT_EQ(c.points[2].counts, (MatchResult{3, 1, 0}));
  for (const auto& p : c.points) {
    ASSERT_EQ(p.counts.tp + p.counts.fn > 0, true);
    Bits g1 = d[0].gold, g2 = d[1].gold, p1(5), p2(4);
    for (int t = 0; t < 5; ++t) p1[t] = d[0].scores[t] >= p.threshold;
    for (int t = 0; t < 4; ++t) p2[t] = d[1].scores[t] >= p.threshold;
    MatchResult m = oracle(g1, p1);
    m += oracle(g2, p2);
    EXPECT_EQ(p.counts, m);
    EXPECT_DOUBLE_EQ(p.precision, static_cast<double>(m.tp) / (m.tp + m.fp));
    EXPECT_DOUBLE_EQ(p.recall, static_cast<double>(m.tp) / (m.tp + m.fn));
  }
  EXPECT_DOUBLE_EQ(c.break_even, 1.0);
  EXPECT_DOUBLE_EQ(c.break_even_threshold, 0.5);
}

TEST(PrCurve, MacroSkipsDialoguesWithoutGold) {
  std::vector<ScoredDialogue> d{{{0.9, 0.1}, at(2, {0}), {}},
                                {{0.3, 0.8}, at(2, {}), {}},
                                {{0.2, 0.7, 0.1}, at(3, {0}), {}}};
  const PRCurve micro = pr_curve(d, Scope::kMicro);
  const PRCurve macro = pr_curve(d, Scope::kMacro);
  const std::vector<ScoredDialogue> first{d[0]}, third{d[2]};
  EXPECT_DOUBLE_EQ(macro.auc,
                   (pr_curve(first, Scope::kMicro).auc + pr_curve(third, Scope::kMicro).auc) / 2);
  const Summary s = summarize(d);
  EXPECT_EQ(s.macro_dialogues, 2);
  EXPECT_EQ(s.macro_excluded, 1);
  EXPECT_DOUBLE_EQ(s.micro_auc, micro.auc);
}

TEST(PrCurve, Errors) {
  std::vector<ScoredDialogue> none{{{0.1, 0.2}, at(2, {}), {}}};
  EXPECT_THROW(pr_curve(none, Scope::kMicro), DataError);
  std::vector<ScoredDialogue> nan{{{0.1, std::nan("")}, at(2, {1}), {}}};
  EXPECT_THROW(pr_curve(nan, Scope::kMicro), NumericError);
}

TEST(PrCurveProperty, SerialEqualsParallel) {
  Rng rng(9);
  std::vector<ScoredDialogue> d(40);
  for (auto& x : d) {
    const int n = 5 + static_cast<int>(uniform_index(rng, 30));
    for (int t = 0; t < n; ++t) {
      x.scores.push_back(std::round(uniform_unit(rng) * 50) / 50);
      x.gold.push_back(bernoulli(rng, 0.1));
    }
  }
  d[0].gold[0] = 1;
  for (Scope s : {Scope::kMicro, Scope::kMacro}) {
    const PRCurve a = pr_curve(d, s, Execution::kSerial);
    const PRCurve b = pr_curve(d, s, Execution::kParallel);
    EXPECT_EQ(a.auc, b.auc);
    EXPECT_EQ(a.break_even, b.break_even);
    ASSERT_EQ(a.points.size(), b.points.size());
    for (std::size_t k = 0; k < a.points.size(); ++k) {
      EXPECT_EQ(a.points[k].counts, b.points[k].counts);
    }
  }
}

TEST(SweepPredictions, ArbitraryRule) {
  const std::vector<Bits> gold{at(4, {2})};
  const std::vector<double> thresholds{2.0, 1.0};
  const auto counts = sweep_predictions(
      thresholds, gold, [](double thr, std::size_t, Bits& out) {
        std::fill(out.begin(), out.end(), 0);
        out[thr > 1.5 ? 0 : 1] = 1;
      });
  EXPECT_EQ(counts[0], (MatchResult{0, 1, 1}));
  EXPECT_EQ(counts[1], (MatchResult{1, 0, 0}));
}

}  // namespace
}  // namespace turnpoint
