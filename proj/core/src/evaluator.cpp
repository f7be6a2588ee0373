/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "gpsel/evaluator.hpp"

#include <algorithm>

#include "gpsel/rng.hpp"

namespace gpsel::eval {

Selection select_strategy(const etrm::EtrmModel& model,
                          const feat::DataFeatureVector& df,
                          const feat::AlgorithmFeatureVector& af,
                          const std::vector<StrategySpec>& strategies) {
  if (strategies.empty()) throw config_error("no strategies to select from");
  Selection sel;
  sel.predicted.reserve(strategies.size());
  double best = 0.0;
  bool first = true;
  for (const StrategySpec& s : strategies) {
    const feat::EncodedInput x = feat::encode(df, af, s.psid, model.scaler);
    const double yhat = etrm::predict(model, x.x);
    sel.predicted.push_back(yhat);
    if (first || yhat < best || (yhat == best && s.psid < sel.psid)) {
      best = yhat;
      sel.psid = s.psid;
      first = false;
    }
  }
  return sel;
}

ScoreRow compute_scores(const std::vector<StrategyTime>& times, int selected_psid) {
  if (times.empty()) throw data_error("no strategy times");
  ScoreRow row;
  row.selected_psid = selected_psid;
  double total = 0.0;
  double t_sel = -1.0;
  row.t_best = times[0].time;
  row.t_worst = times[0].time;
  for (const StrategyTime& t : times) {
    if (t.time <= 0.0) {
      throw data_error("nonpositive execution time for psid " +
                       std::to_string(t.psid));
    }
    total += t.time;
    row.t_best = std::min(row.t_best, t.time);
    row.t_worst = std::max(row.t_worst, t.time);
    if (t.psid == selected_psid) t_sel = t.time;
  }
  if (t_sel < 0.0) {
    throw data_error("selected psid " + std::to_string(selected_psid) +
                     " is not among the measured strategies");
  }
  row.t_avg = total / double(times.size());
  row.t_sel = t_sel;
  row.score_best = row.t_best / t_sel;
  row.score_worst = row.t_worst / t_sel;
  row.score_avg = row.t_avg / t_sel;
  int faster = 0;
  for (const StrategyTime& t : times) {
    if (t.time < t_sel) ++faster;
  }
  row.rank = 1 + faster;  // ties share the better rank
  return row;
}

std::vector<double> rank_cumulative(const std::vector<ScoreRow>& rows,
                                    int num_strategies) {
  if (rows.empty()) throw data_error("no score rows to rank");
  std::vector<double> curve(num_strategies, 0.0);
  for (const ScoreRow& row : rows) {
    const int r = std::clamp(row.rank, 1, num_strategies);
    curve[r - 1] += 1.0;
  }
  double acc = 0.0;
  for (double& c : curve) {
    acc += c;
    c = acc / double(rows.size());
  }
  return curve;
}

double bc_ratio(double benefit, double feature_time, double analysis_time,
                double predict_time) {
  if (feature_time < 0.0 || analysis_time < 0.0 || predict_time < 0.0) {
    throw data_error("selection cost components must be non-negative");
  }
  const double cost = feature_time + analysis_time + predict_time;
  if (cost <= 0.0) throw data_error("selection cost must be positive");
  return benefit / cost;
}

char test_set_tag(bool graph_seen, bool algorithm_seen) {
  if (!graph_seen && !algorithm_seen) return 'A';
  if (!graph_seen) return 'B';
  if (!algorithm_seen) return 'C';
  return 'D';
}

ScoreSummary summarize(const std::vector<ScoreRow>& rows) {
  ScoreSummary s;
  for (const ScoreRow& r : rows) {
    s.mean_score_best += r.score_best;
    s.mean_score_worst += r.score_worst;
    s.mean_score_avg += r.score_avg;
    s.tasks++;
  }
  if (s.tasks) {
    s.mean_score_best /= double(s.tasks);
    s.mean_score_worst /= double(s.tasks);
    s.mean_score_avg /= double(s.tasks);
  }
  return s;
}

ScoreSummary summarize(const std::vector<ScoreRow>& rows, char test_set) {
  std::vector<ScoreRow> filtered;
  for (const ScoreRow& r : rows) {
    if (r.test_set == test_set) filtered.push_back(r);
  }
  return summarize(filtered);
}

double random_selection_score_best(
    const std::vector<std::vector<StrategyTime>>& task_times, std::size_t draws,
    std::uint64_t seed) {
  if (task_times.empty()) throw data_error("no tasks for the random baseline");
  const CounterRng rng{seed};
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t d = 0; d < draws; ++d) {
    for (std::size_t t = 0; t < task_times.size(); ++t) {
      const auto& times = task_times[t];
      const std::size_t pick = rng.below(d, t, times.size());
      double best = times[0].time;
      for (const StrategyTime& st : times) best = std::min(best, st.time);
      total += best / times[pick].time;
      ++count;
    }
  }
  return total / double(count);
}

double random_selection_mean_rank(
    const std::vector<std::vector<StrategyTime>>& task_times, std::size_t draws,
    std::uint64_t seed) {
  if (task_times.empty()) throw data_error("no tasks for the random baseline");
  const CounterRng rng{seed};
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t d = 0; d < draws; ++d) {
    for (std::size_t t = 0; t < task_times.size(); ++t) {
      const auto& times = task_times[t];
      const std::size_t pick = rng.below(d ^ 0x9E37, t, times.size());
      int faster = 0;
      for (const StrategyTime& st : times) {
        if (st.time < times[pick].time) ++faster;
      }
      total += double(1 + faster);
      ++count;
    }
  }
  return total / double(count);
}

}  // namespace gpsel::eval
