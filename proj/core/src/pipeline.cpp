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

#include "gpsel/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gpsel/dsl.hpp"
#include "gpsel/logio.hpp"

namespace gpsel::pipeline {

namespace {

using nlohmann::json;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

struct LoadedCorpus {
  std::vector<Graph> graphs;
  std::map<std::string, std::size_t> by_name;
  std::map<std::string, feat::DataFeatureVector> dfs;
  std::map<std::string, std::map<std::string, feat::AlgorithmFeatureVector>> afs;
};

LoadedCorpus load_corpus(const Manifest& m, std::map<std::string, double>& feat_secs,
                         std::map<std::string, double>& analysis_secs) {
  LoadedCorpus c;
  for (const Manifest::GraphRef& ref : m.graphs) {
    Graph g = load_edge_list(ref.path, ref.directed);
    g.set_name(ref.name);
    c.by_name[ref.name] = c.graphs.size();
    c.graphs.push_back(std::move(g));
  }
  for (const Graph& g : c.graphs) {
    const auto t0 = std::chrono::steady_clock::now();
    c.dfs[g.name()] = feat::extract_data_features(g);
    feat_secs[g.name()] = seconds_since(t0);
  }
  for (const std::string& name : m.algorithms) {
    const algo::AlgorithmEntry& entry = algo::algorithm_by_name(name);
    const std::string path = m.algos_dir + "/" +
                             std::filesystem::path(entry.pseudocode).filename().string();
    const auto t0 = std::chrono::steady_clock::now();
    const dsl::OpCountIR ir = dsl::count_file(path);
    for (const Graph& g : c.graphs) {
      c.afs[g.name()][name] = dsl::evaluate(ir, c.dfs[g.name()]);
    }
    analysis_secs[name] = seconds_since(t0);
  }
  return c;
}

std::vector<StrategySpec> strategy_list(const Manifest& m) {
  std::vector<int> psids = m.strategies;
  if (psids.empty()) psids = default_strategy_inventory();
  std::vector<StrategySpec> specs;
  for (int p : psids) specs.push_back(strategy_from_psid(p, m.seed));
  return specs;
}

std::vector<aug::TaskRecord> run_corpus_loaded(const Manifest& m,
                                               LoadedCorpus& corpus,
                                               const std::string& plans_dir) {
  const std::vector<StrategySpec> specs = strategy_list(m);
  PartitionOptions popts;
  popts.include_oblivious = true;  // explicit manifests may list psid 6

  std::vector<aug::TaskRecord> records;
  for (const Graph& g : corpus.graphs) {
    for (const StrategySpec& spec : specs) {
      const PartitionPlan plan = partition(g, spec, m.num_workers, popts);
      if (!plans_dir.empty()) {
        std::ofstream out(plans_dir + "/" + g.name() + "_psid" +
                          std::to_string(spec.psid) + ".plan");
        write_plan(plan, g, out);
      }
      for (const std::string& name : m.algorithms) {
        auto [result, log] = algo::run_algorithm(name, g, plan, m.params, m.cost,
                                                 m.engine);
        aug::TaskRecord r;
        r.graph = g.name();
        r.algorithm = name;
        r.psid = spec.psid;
        r.num_workers = m.num_workers;
        r.exec_time = log.execution_time;
        r.message_count = log.message_count;
        r.superstep_count = log.superstep_count;
        r.df = corpus.dfs[g.name()];
        r.af = corpus.afs[g.name()][name];
        records.push_back(std::move(r));
      }
    }
  }
  return records;
}

}  // namespace

std::vector<aug::TaskRecord> run_corpus(const Manifest& m,
                                        const std::string& plans_dir) {
  std::map<std::string, double> feat_secs, analysis_secs;
  LoadedCorpus corpus = load_corpus(m, feat_secs, analysis_secs);
  return run_corpus_loaded(m, corpus, plans_dir);
}

PipelineResult run_pipeline(const Manifest& m) {
  namespace fs = std::filesystem;
  PipelineResult result;
  fs::create_directories(m.output_dir);
  fs::create_directories(m.output_dir + "/plans");

  // 1-2. Load graphs, extract features, analyze pseudo-code.
  LoadedCorpus corpus =
      load_corpus(m, result.feature_seconds, result.analysis_seconds);
  const std::vector<StrategySpec> specs = strategy_list(m);

  // 3. Execute every task; one log row per (graph, algorithm, strategy).
  result.real_logs = run_corpus_loaded(m, corpus, m.output_dir + "/plans");
  result.logs_path = m.output_dir + "/logs.csv";
  io::write_log_table(result.real_logs, m.seed, result.logs_path);

  // 4. Augment the training subset.
  std::vector<std::string> train_algos = m.train_algorithms;
  if (train_algos.empty()) train_algos = m.algorithms;
  std::sort(train_algos.begin(), train_algos.end());
  std::set<std::string> train_graphs(m.train_graphs.begin(), m.train_graphs.end());
  if (train_graphs.empty()) {
    for (const Graph& g : corpus.graphs) train_graphs.insert(g.name());
  }
  std::vector<aug::TaskRecord> train_base;
  for (const aug::TaskRecord& r : result.real_logs) {
    if (train_graphs.count(r.graph) &&
        std::binary_search(train_algos.begin(), train_algos.end(), r.algorithm)) {
      train_base.push_back(r);
    }
  }
  aug::AugmentSpec aspec{train_algos, m.r_min, m.r_max};
  std::vector<aug::TaskRecord> synthetic = aug::augment(train_base, aspec);
  result.synthetic_count = synthetic.size();
  result.synthetic_path = m.output_dir + "/synthetic.csv";
  io::write_log_table(synthetic, m.seed, result.synthetic_path);

  // 5. Fit the scaler on the synthetic corpus and train the regressor.
  std::vector<std::vector<double>> raw;
  std::vector<double> targets;
  raw.reserve(synthetic.size());
  for (const aug::TaskRecord& r : synthetic) {
    raw.push_back(feat::encode_raw(r.df, r.af, r.psid));
    targets.push_back(r.exec_time);
  }
  const feat::ScalerParams scaler = feat::fit_scaler(raw);
  std::vector<std::vector<double>> x;
  x.reserve(raw.size());
  for (const auto& row : raw) x.push_back(feat::apply_scaler(scaler, row));

  etrm::TrainConfig tc = m.train;
  tc.seed = m.seed;
  result.model = etrm::train(x, targets, tc, feat::encoded_feature_names(), scaler);
  result.model_path = m.output_dir + "/model.json";
  etrm::save_model(result.model, result.model_path);

  // 6-7. Select a strategy per task and score it against the measured times.
  std::map<std::pair<std::string, std::string>, std::vector<eval::StrategyTime>>
      task_times;
  for (const aug::TaskRecord& r : result.real_logs) {
    task_times[{r.graph, r.algorithm}].push_back({r.psid, r.exec_time});
  }

  std::ofstream selections(m.output_dir + "/selections.csv");
  selections << "# gpsel-selections 1\n# seed " << m.seed << "\n";
  selections << "graph,algorithm,selected_psid";
  for (const StrategySpec& s : specs) selections << ",yhat_" << s.psid;
  selections << "\n";

  std::vector<std::vector<eval::StrategyTime>> all_times;
  const auto predict_t0 = std::chrono::steady_clock::now();
  std::size_t predictions = 0;
  for (const auto& [key, times] : task_times) {
    const auto& [graph, algorithm] = key;
    eval::Selection sel = eval::select_strategy(
        result.model, corpus.dfs[graph], corpus.afs[graph][algorithm], specs);
    ++predictions;
    eval::ScoreRow row = eval::compute_scores(times, sel.psid);
    row.graph = graph;
    row.algorithm = algorithm;
    row.test_set = eval::test_set_tag(
        train_graphs.count(graph) > 0,
        std::binary_search(train_algos.begin(), train_algos.end(), algorithm));
    result.scores.push_back(row);
    all_times.push_back(times);

    selections << graph << "," << algorithm << "," << sel.psid;
    for (double yhat : sel.predicted) selections << "," << io::format_double(yhat);
    selections << "\n";
  }
  selections.close();
  result.selections_path = m.output_dir + "/selections.csv";
  result.predict_seconds_per_task =
      predictions ? seconds_since(predict_t0) / double(predictions) : 0.0;

  result.rank_curve = eval::rank_cumulative(result.scores, int(specs.size()));
  result.random_baseline_score_best =
      eval::random_selection_score_best(all_times, 1000, m.seed);

  // Scores table (cost units only, deterministic).
  result.scores_path = m.output_dir + "/scores.csv";
  {
    std::ofstream out(result.scores_path);
    out << "# gpsel-scores 1\n# seed " << m.seed << "\n";
    out << "graph,algorithm,test_set,selected_psid,rank,t_best,t_worst,t_avg,"
           "t_sel,score_best,score_worst,score_avg\n";
    for (const eval::ScoreRow& r : result.scores) {
      out << r.graph << "," << r.algorithm << "," << r.test_set << ","
          << r.selected_psid << "," << r.rank << "," << io::format_double(r.t_best)
          << "," << io::format_double(r.t_worst) << ","
          << io::format_double(r.t_avg) << "," << io::format_double(r.t_sel) << ","
          << io::format_double(r.score_best) << ","
          << io::format_double(r.score_worst) << ","
          << io::format_double(r.score_avg) << "\n";
    }
  }

  // Benefit/cost report: benefit in cost units, costs in measured seconds.
  result.bc_path = m.output_dir + "/bc.csv";
  {
    std::ofstream out(result.bc_path);
    out << "# gpsel-bc 1 (benefit: engine cost units; costs: wall seconds)\n";
    out << "graph,algorithm,benefit_cost_units,feature_seconds,analysis_seconds,"
           "predict_seconds,bc_ratio\n";
    for (const eval::ScoreRow& r : result.scores) {
      const double benefit = r.t_worst - r.t_sel;
      const double fsec = result.feature_seconds[r.graph];
      const double asec = result.analysis_seconds[r.algorithm];
      const double psec = result.predict_seconds_per_task;
      const double ratio = eval::bc_ratio(benefit, fsec, asec, psec);
      out << r.graph << "," << r.algorithm << "," << io::format_double(benefit)
          << "," << io::format_double(fsec) << "," << io::format_double(asec)
          << "," << io::format_double(psec) << "," << io::format_double(ratio)
          << "\n";
    }
  }

  return result;
}

// ---------------------------------------------------------------------------
// Manifest persistence

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw not_found_error("cannot open manifest: " + path);
  json j;
  in >> j;
  Manifest m;
  for (const json& g : j.value("graphs", json::array())) {
    m.graphs.push_back({g.at("name"), g.at("path"), g.at("directed")});
  }
  m.algorithms = j.value("algorithms", std::vector<std::string>{});
  m.train_algorithms = j.value("train_algorithms", std::vector<std::string>{});
  m.train_graphs = j.value("train_graphs", std::vector<std::string>{});
  m.strategies = j.value("strategies", std::vector<int>{});
  m.num_workers = j.value("num_workers", 4u);
  m.cost.c_compute = j.value("c_compute", 1.0);
  m.cost.c_msg = j.value("c_msg", 10.0);
  m.cost.c_sync = j.value("c_sync", 50.0);
  m.engine.max_supersteps = j.value("max_supersteps", 100000u);
  m.engine.parallel = j.value("parallel", false);
  m.params.pr_iterations = j.value("pr_iterations", 10);
  m.params.pr_damping = j.value("pr_damping", 0.85);
  m.params.rw_steps = j.value("rw_steps", 10);
  m.seed = j.value("seed", 0ull);
  m.params.rw_seed = m.seed;
  m.r_min = j.value("r_min", 2);
  m.r_max = j.value("r_max", 5);
  if (j.contains("train")) {
    const json& t = j["train"];
    m.train.colsample_bytree = t.value("colsample_bytree", m.train.colsample_bytree);
    m.train.gamma = t.value("gamma", m.train.gamma);
    m.train.learning_rate = t.value("learning_rate", m.train.learning_rate);
    m.train.max_depth = t.value("max_depth", m.train.max_depth);
    m.train.min_child_weight = t.value("min_child_weight", m.train.min_child_weight);
    m.train.n_estimators = t.value("n_estimators", m.train.n_estimators);
    m.train.reg_alpha = t.value("reg_alpha", m.train.reg_alpha);
    m.train.reg_lambda = t.value("reg_lambda", m.train.reg_lambda);
    m.train.subsample = t.value("subsample", m.train.subsample);
  }
  m.algos_dir = j.value("algos_dir", std::string("algos"));
  m.output_dir = j.value("output_dir", std::string("out"));

  for (const Manifest::GraphRef& ref : m.graphs) {
    if (!std::filesystem::exists(ref.path)) {
      throw not_found_error("manifest references a missing graph file: " + ref.path);
    }
  }
  return m;
}

void save_manifest(const Manifest& m, const std::string& path) {
  json j;
  j["graphs"] = json::array();
  for (const Manifest::GraphRef& g : m.graphs) {
    j["graphs"].push_back({{"name", g.name}, {"path", g.path}, {"directed", g.directed}});
  }
  j["algorithms"] = m.algorithms;
  j["train_algorithms"] = m.train_algorithms;
  j["train_graphs"] = m.train_graphs;
  j["strategies"] = m.strategies;
  j["num_workers"] = m.num_workers;
  j["c_compute"] = m.cost.c_compute;
  j["c_msg"] = m.cost.c_msg;
  j["c_sync"] = m.cost.c_sync;
  j["max_supersteps"] = m.engine.max_supersteps;
  j["parallel"] = m.engine.parallel;
  j["pr_iterations"] = m.params.pr_iterations;
  j["pr_damping"] = m.params.pr_damping;
  j["rw_steps"] = m.params.rw_steps;
  j["seed"] = m.seed;
  j["r_min"] = m.r_min;
  j["r_max"] = m.r_max;
  j["train"] = {{"colsample_bytree", m.train.colsample_bytree},
                {"gamma", m.train.gamma},
                {"learning_rate", m.train.learning_rate},
                {"max_depth", m.train.max_depth},
                {"min_child_weight", m.train.min_child_weight},
                {"n_estimators", m.train.n_estimators},
                {"reg_alpha", m.train.reg_alpha},
                {"reg_lambda", m.train.reg_lambda},
                {"subsample", m.train.subsample}};
  j["algos_dir"] = m.algos_dir;
  j["output_dir"] = m.output_dir;
  std::ofstream out(path);
  if (!out) throw data_error("cannot write manifest: " + path);
  out << j.dump(1) << "\n";
}

}  // namespace gpsel::pipeline
