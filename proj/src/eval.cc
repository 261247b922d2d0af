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

#include <algorithm>
#include <cmath>
#include <string>

#include "turnpoint/error.h"
#include "turnpoint/kernels/sweep.h"

namespace turnpoint {
namespace {

void check_spans(std::span<const ClusterSpan> spans, const char* which) {
  for (std::size_t i = 0; i < spans.size(); ++i) {
    if (spans[i].start > spans[i].end || spans[i].start < 0) {
      throw UsageError(std::string("match: malformed ") + which + " span");
    }
    if (i > 0 && spans[i].start <= spans[i - 1].end) {
      throw UsageError(std::string("match: overlapping or unsorted ") + which + " spans");
    }
  }
}

std::vector<std::vector<ClusterSpan>> gold_clusters(std::span<const ScoredDialogue> dialogues) {
  std::vector<std::vector<ClusterSpan>> out;
  out.reserve(dialogues.size());
  for (const auto& d : dialogues) {
    if (d.scores.size() != d.gold.size() ||
        (!d.forced.empty() && d.forced.size() != d.gold.size())) {
      throw DataError("pr_curve: scores, gold and forced predictions must align");
    }
    for (double s : d.scores) {
      if (!std::isfinite(s)) throw NumericError("pr_curve: non-finite score");
    }
    out.push_back(clusterize(d.gold));
  }
  return out;
}

std::vector<MatchResult> run_sweep(std::span<const double> thresholds,
                                   std::span<const kernels::SweepDialogue> dialogues,
                                   Execution execution) {
  return execution == Execution::kParallel ? kernels::sweep_omp(thresholds, dialogues)
                                           : kernels::sweep_serial(thresholds, dialogues);
}

bool has_positive(std::span<const std::uint8_t> labels) {
  return std::any_of(labels.begin(), labels.end(), [](std::uint8_t v) { return v != 0; });
}

struct MacroResult {
  double auc = 0.0;
  double break_even = 0.0;
  int included = 0;
  int excluded = 0;
};

template <typename CurveFn>
MacroResult macro_average(std::size_t n, const std::vector<bool>& include, CurveFn curve_of,
                          Execution execution) {
  std::vector<PRCurve> curves(n);
  const long count = static_cast<long>(n);
  if (execution == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
      if (include[i]) curves[i] = curve_of(static_cast<std::size_t>(i));
    }
  } else {
    for (long i = 0; i < count; ++i) {
      if (include[i]) curves[i] = curve_of(static_cast<std::size_t>(i));
    }
  }
  MacroResult r;
  for (std::size_t i = 0; i < n; ++i) {
    if (!include[i]) {
      ++r.excluded;
      continue;
    }
    ++r.included;
    r.auc += curves[i].auc;
    r.break_even += curves[i].break_even;
  }
  if (r.included > 0) {
    r.auc /= r.included;
    r.break_even /= r.included;
  }
  return r;
}

}  // namespace

std::vector<ClusterSpan> clusterize(std::span<const std::uint8_t> labels) {
  std::vector<ClusterSpan> spans;
  const int n = static_cast<int>(labels.size());
  for (int t = 0; t < n;) {
    if (!labels[t]) {
      ++t;
      continue;
    }
    const int start = t;
    while (t < n && labels[t]) ++t;
    spans.push_back({start, t - 1});
  }
  return spans;
}

MatchResult match(std::span<const ClusterSpan> gold, std::span<const ClusterSpan> pred) {
  check_spans(gold, "gold");
  check_spans(pred, "predicted");
  MatchResult r;
  std::vector<bool> used(pred.size(), false);
  std::size_t first = 0;
  for (const ClusterSpan& g : gold) {
    const int lo = g.start - 1;
    while (first < pred.size() && pred[first].end < lo) ++first;
    bool matched = false;
    for (std::size_t j = first; j < pred.size() && pred[j].start <= g.end; ++j) {
      if (!used[j]) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (matched) {
      ++r.tp;
    } else {
      r.fn += g.size();
    }
  }
  for (std::size_t j = 0; j < pred.size(); ++j) {
    if (!used[j]) r.fp += pred[j].size();
  }
  return r;
}

MatchResult match_labels(std::span<const std::uint8_t> gold,
                         std::span<const std::uint8_t> pred) {
  if (gold.size() != pred.size()) {
    throw UsageError("match: gold and predicted sequences differ in length");
  }
  const auto g = clusterize(gold);
  const auto p = clusterize(pred);
  return match(g, p);
}

double pr_auc(std::span<const PRPoint> points) {
  if (points.empty()) return 0.0;
  std::vector<std::pair<double, double>> rp;
  rp.reserve(points.size());
  for (const auto& p : points) rp.emplace_back(p.recall, p.precision);
  std::sort(rp.begin(), rp.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first < b.first : a.second > b.second;
  });
  for (std::size_t i = rp.size() - 1; i > 0; --i) {
    rp[i - 1].second = std::max(rp[i - 1].second, rp[i].second);
  }
  double area = 0.0;
  double prev_r = 0.0, prev_p = rp.front().second;
  for (const auto& [r, p] : rp) {
    area += (r - prev_r) * (p + prev_p) / 2.0;
    prev_r = r;
    prev_p = p;
  }
  return area;
}

PRCurve curve_from_counts(std::span<const double> thresholds,
                          std::span<const MatchResult> counts) {
  PRCurve curve;
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    const MatchResult& c = counts[i];
    if (c.tp + c.fn == 0) throw DataError("pr_curve: no gold positives");
    if (c.tp + c.fp == 0) continue;
    curve.points.push_back({thresholds[i], static_cast<double>(c.tp) / (c.tp + c.fp),
                            static_cast<double>(c.tp) / (c.tp + c.fn), c});
  }
  curve.auc = pr_auc(curve.points);
  double best = 2.0;
  for (const auto& p : curve.points) {
    const double gap = std::abs(p.precision - p.recall);
    if (gap < best) {
      best = gap;
      curve.break_even = (p.precision + p.recall) / 2.0;
      curve.break_even_threshold = p.threshold;
    }
  }
  return curve;
}

std::vector<double> descending_thresholds(std::span<const std::vector<double>> scores) {
  std::vector<double> all;
  for (const auto& s : scores) all.insert(all.end(), s.begin(), s.end());
  std::sort(all.begin(), all.end(), std::greater<>());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

std::vector<MatchResult> sweep_predictions(std::span<const double> thresholds,
                                           std::span<const std::vector<std::uint8_t>> gold,
                                           const Binarizer& binarize, Execution execution) {
  std::vector<std::vector<ClusterSpan>> gold_spans;
  gold_spans.reserve(gold.size());
  for (const auto& g : gold) gold_spans.push_back(clusterize(g));

  std::vector<MatchResult> out(thresholds.size());
  const auto counts_at = [&](double threshold, std::vector<std::uint8_t>& buffer) {
    MatchResult total;
    for (std::size_t d = 0; d < gold.size(); ++d) {
      buffer.assign(gold[d].size(), 0);
      binarize(threshold, d, buffer);
      total += match(gold_spans[d], clusterize(buffer));
    }
    return total;
  };
  const long n = static_cast<long>(thresholds.size());
  if (execution == Execution::kParallel) {
#pragma omp parallel
    {
      std::vector<std::uint8_t> buffer;
#pragma omp for schedule(dynamic, 8)
      for (long i = 0; i < n; ++i) out[i] = counts_at(thresholds[i], buffer);
    }
  } else {
    std::vector<std::uint8_t> buffer;
    for (long i = 0; i < n; ++i) out[i] = counts_at(thresholds[i], buffer);
  }
  return out;
}

PRCurve pr_curve(std::span<const ScoredDialogue> dialogues, Scope scope,
                 Execution execution) {
  const auto gold = gold_clusters(dialogues);
  const bool any_gold = std::any_of(gold.begin(), gold.end(),
                                    [](const auto& spans) { return !spans.empty(); });
  if (!any_gold) throw DataError("pr_curve: no gold positives in any dialogue");

  const auto sweep_input = [&](std::size_t i) {
    return kernels::SweepDialogue{dialogues[i].scores, dialogues[i].forced, gold[i]};
  };

  if (scope == Scope::kMicro) {
    std::vector<std::vector<double>> all_scores;
    std::vector<kernels::SweepDialogue> input;
    for (std::size_t i = 0; i < dialogues.size(); ++i) {
      all_scores.push_back(dialogues[i].scores);
      input.push_back(sweep_input(i));
    }
    const auto thresholds = descending_thresholds(all_scores);
    const auto counts = run_sweep(thresholds, input, execution);
    return curve_from_counts(thresholds, counts);
  }

  std::vector<bool> include(dialogues.size());
  for (std::size_t i = 0; i < dialogues.size(); ++i) include[i] = !gold[i].empty();
  const auto per_dialogue = [&](std::size_t i) {
    const std::vector<std::vector<double>> own{dialogues[i].scores};
    const auto thresholds = descending_thresholds(own);
    const kernels::SweepDialogue one[] = {sweep_input(i)};
    return curve_from_counts(thresholds, kernels::sweep_serial(thresholds, one));
  };
  const MacroResult m = macro_average(dialogues.size(), include, per_dialogue, execution);
  PRCurve curve;
  curve.auc = m.auc;
  curve.break_even = m.break_even;
  return curve;
}

Summary summarize(std::span<const ScoredDialogue> dialogues, Execution execution) {
  const PRCurve micro = pr_curve(dialogues, Scope::kMicro, execution);
  const PRCurve macro = pr_curve(dialogues, Scope::kMacro, execution);
  Summary s;
  s.micro_auc = micro.auc;
  s.break_even = micro.break_even;
  s.break_even_threshold = micro.break_even_threshold;
  s.macro_auc = macro.auc;
  for (const auto& d : dialogues) {
    if (has_positive(d.gold)) {
      ++s.macro_dialogues;
    } else {
      ++s.macro_excluded;
    }
  }
  return s;
}

Summary summarize_predictions(std::span<const double> thresholds,
                              std::span<const std::vector<std::uint8_t>> gold,
                              const Binarizer& binarize, Execution execution) {
  const PRCurve micro =
      curve_from_counts(thresholds, sweep_predictions(thresholds, gold, binarize, execution));
  std::vector<bool> include(gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) include[i] = has_positive(gold[i]);
  const auto per_dialogue = [&](std::size_t i) {
    const std::vector<std::uint8_t> one_gold[] = {gold[i]};
    const Binarizer one = [&](double threshold, std::size_t, std::vector<std::uint8_t>& out) {
      binarize(threshold, i, out);
    };
    return curve_from_counts(thresholds,
                             sweep_predictions(thresholds, one_gold, one, Execution::kSerial));
  };
  const MacroResult m = macro_average(gold.size(), include, per_dialogue, execution);
  Summary s;
  s.micro_auc = micro.auc;
  s.break_even = micro.break_even;
  s.break_even_threshold = micro.break_even_threshold;
  s.macro_auc = m.auc;
  s.macro_dialogues = m.included;
  s.macro_excluded = m.excluded;
  return s;
}

}  // namespace turnpoint
