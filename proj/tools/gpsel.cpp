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

// Command line for the partitioning-strategy selection toolkit. Subcommands
// follow the pipeline: ingest, features, analyze, partition, run, augment,
// train, select, evaluate, report.

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gpsel/algorithms.hpp"
#include "gpsel/augment.hpp"
#include "gpsel/dsl.hpp"
#include "gpsel/etrm.hpp"
#include "gpsel/evaluator.hpp"
#include "gpsel/gen.hpp"
#include "gpsel/logio.hpp"
#include "gpsel/pipeline.hpp"

using namespace gpsel;

namespace {

std::string default_output_dir() {
  const char* env = std::getenv("GPSEL_OUT");
  return env ? env : "out";
}

struct GraphArgs {
  std::string path;
  bool directed = false;
  bool undirected = false;
  bool dedup = false;
  bool remap = false;

  void attach(CLI::App* cmd, bool required = true) {
    auto* opt = cmd->add_option("--graph", path, "edge list file");
    if (required) opt->required();
    auto* dir = cmd->add_flag("--directed", directed, "treat edges as directed");
    cmd->add_flag("--undirected", undirected, "treat edges as undirected")
        ->excludes(dir);
    cmd->add_flag("--dedup", dedup, "drop parallel duplicate edges");
    cmd->add_flag("--remap", remap, "compact vertex ids to 0..|V|-1");
  }

  Graph load() const {
    if (directed == undirected) {
      throw config_error("pass exactly one of --directed / --undirected");
    }
    Graph g = load_edge_list(path, directed, {.dedup = dedup, .remap_ids = remap});
    g.set_name(std::filesystem::path(path).stem().string());
    return g;
  }
};

void print_data_features(const feat::DataFeatureVector& df, const std::string& fmt,
                         std::uint64_t seed) {
  if (fmt == "rows") {
    auto row = [](const std::string& k, const std::string& v) {
      std::cout << k << "," << v << "\n";
    };
    row("num_vertex", std::to_string(df.num_vertex));
    row("num_edge", std::to_string(df.num_edge));
    for (auto [tag, m] : {std::pair{"in", &df.in}, std::pair{"out", &df.out}}) {
      row(std::string(tag) + "_mean", io::format_double(m->mean));
      row(std::string(tag) + "_std", io::format_double(m->stddev));
      row(std::string(tag) + "_skew_abs", io::format_double(m->skew_abs));
      row(std::string(tag) + "_skew_sign", std::to_string(m->skew_sign));
      row(std::string(tag) + "_kurt_abs", io::format_double(m->kurt_abs));
      row(std::string(tag) + "_kurt_sign", std::to_string(m->kurt_sign));
    }
    row("directed", df.directed ? "1" : "0");
    row("seed", std::to_string(seed));
    return;
  }
  std::cout << "data features (seed " << seed << "):\n";
  std::cout << "  vertices " << df.num_vertex << ", edges " << df.num_edge << ", "
            << (df.directed ? "directed" : "undirected") << "\n";
  auto block = [](const char* tag, const feat::DegreeMoments& m) {
    std::cout << "  " << tag << ": mean " << io::format_double(m.mean) << ", std "
              << io::format_double(m.stddev) << ", |skew| "
              << io::format_double(m.skew_abs) << " (sign " << m.skew_sign
              << "), |kurt| " << io::format_double(m.kurt_abs) << " (sign "
              << m.kurt_sign << ")\n";
  };
  block("in-degree", df.in);
  block("out-degree", df.out);
}

StrategySpec resolve_strategy(const std::string& name_or_psid, std::uint64_t seed,
                              double lambda, std::size_t threshold) {
  const bool numeric =
      !name_or_psid.empty() &&
      std::all_of(name_or_psid.begin(), name_or_psid.end(),
                  [](unsigned char c) { return std::isdigit(c); });
  StrategySpec spec = numeric ? strategy_from_psid(std::stoi(name_or_psid), seed)
                              : strategy_from_name(name_or_psid, seed);
  if (lambda > 0 && spec.kind == StrategyKind::hdrf) spec.lambda = lambda;
  if (threshold > 0) spec.degree_threshold = threshold;
  return spec;
}

std::vector<aug::TaskRecord> read_logs_if_any(const std::string& path) {
  if (!std::filesystem::exists(path)) return {};
  return io::read_log_table_file(path);
}

std::string bundled_code_path(const std::string& algorithm) {
  const algo::AlgorithmEntry& entry = algo::algorithm_by_name(algorithm);
  if (std::filesystem::exists(entry.pseudocode)) return entry.pseudocode;
  throw not_found_error("cannot find bundled pseudo-code " + entry.pseudocode +
                        "; pass --code explicitly");
}

int run_cli(int argc, char** argv) {
  CLI::App app{"graph partitioning strategy selection toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global --seed / --output-dir may follow the subcommand

  std::uint64_t seed = 0;
  std::string output_dir = default_output_dir();
  app.add_option("--seed", seed, "seed recorded in all outputs")
      ->capture_default_str();
  app.add_option("--output-dir", output_dir,
                 "default output directory (env GPSEL_OUT)")
      ->capture_default_str();

  // ---- ingest ----
  auto* ingest = app.add_subcommand("ingest", "canonicalize an edge list");
  GraphArgs ingest_graph;
  ingest_graph.attach(ingest);
  std::string ingest_out;
  ingest->add_option("--out", ingest_out, "canonical edge list to write")
      ->required();
  ingest->callback([&] {
    Graph g = ingest_graph.load();
    gen::write_edge_list(g, ingest_out);
    std::cout << "ingested " << g.name() << ": " << g.num_vertices()
              << " vertices, " << g.num_edges() << " edges, "
              << (g.directed() ? "directed" : "undirected") << " -> "
              << ingest_out << "\n";
  });

  // ---- features ----
  auto* features = app.add_subcommand("features", "print a graph's data features");
  GraphArgs features_graph;
  features_graph.attach(features);
  std::string features_fmt = "text";
  features->add_option("--format", features_fmt, "text|rows")
      ->check(CLI::IsMember({"text", "rows"}));
  features->callback([&] {
    print_data_features(feat::extract_data_features(features_graph.load()),
                        features_fmt, seed);
  });

  // ---- analyze ----
  auto* analyze = app.add_subcommand(
      "analyze", "parse pseudo-code and print symbolic and evaluated counts");
  std::string analyze_code;
  analyze->add_option("--code", analyze_code, ".gpc pseudo-code file")->required();
  GraphArgs analyze_graph;
  analyze_graph.attach(analyze, /*required=*/false);
  analyze->callback([&] {
    const dsl::OpCountIR ir = dsl::count_file(analyze_code);
    std::cout << ir.to_string();
    if (!analyze_graph.path.empty()) {
      const feat::DataFeatureVector df =
          feat::extract_data_features(analyze_graph.load());
      const feat::AlgorithmFeatureVector af = dsl::evaluate(ir, df);
      std::cout << "Eval = {\n";
      for (int i = 0; i < feat::kAlgorithmFeatureCount; ++i) {
        if (af[i] == 0.0) continue;
        std::cout << "    '" << feat::algorithm_feature_names()[i]
                  << "': " << io::format_double(af[i]) << ",\n";
      }
      std::cout << "}\n";
    }
  });

  // ---- partition ----
  auto* part = app.add_subcommand("partition", "partition a graph and report quality");
  GraphArgs part_graph;
  part_graph.attach(part);
  std::string part_strategy;
  std::uint32_t part_workers = 4;
  double part_lambda = 0.0;
  std::size_t part_threshold = 0;
  bool include_oblivious = false;
  std::string part_out;
  part->add_option("--strategy", part_strategy, "psid 0..11 or name")->required();
  part->add_option("--workers", part_workers, "logical worker count")
      ->capture_default_str();
  part->add_option("--lambda", part_lambda, "HDRF balance weight override");
  part->add_option("--threshold", part_threshold, "Hybrid degree threshold");
  part->add_flag("--include-oblivious", include_oblivious,
                 "allow the excluded Oblivious strategy");
  part->add_option("--out", part_out, "plan file to write");
  part->callback([&] {
    Graph g = part_graph.load();
    const StrategySpec spec =
        resolve_strategy(part_strategy, seed, part_lambda, part_threshold);
    PartitionOptions opts;
    opts.include_oblivious = include_oblivious;
    const PartitionPlan plan = partition(g, spec, part_workers, opts);
    std::cout << "strategy " << spec.name << " (psid " << spec.psid << ") on "
              << g.name() << " across " << part_workers << " workers\n";
    std::cout << "  replication_factor "
              << io::format_double(replication_factor(plan)) << "\n";
    std::cout << "  load_balance " << io::format_double(load_balance(plan))
              << "\n";
    if (!part_out.empty()) {
      std::ofstream out(part_out);
      if (!out) throw data_error("cannot write plan: " + part_out);
      write_plan(plan, g, out);
      std::cout << "  plan -> " << part_out << "\n";
    }
  });

  // ---- run ----
  auto* run = app.add_subcommand("run", "execute one task and append its log row");
  GraphArgs run_graph;
  run_graph.attach(run);
  std::string run_algorithm, run_strategy, run_log, run_code;
  std::uint32_t run_workers = 4;
  gas::CostModel cost;
  algo::AlgorithmParams params;
  bool run_parallel = false;
  run->add_option("--algorithm", run_algorithm,
                  "AID AOD PR GC APCN TC CC RW")->required();
  run->add_option("--strategy", run_strategy, "psid 0..11 or name")->required();
  run->add_option("--workers", run_workers)->capture_default_str();
  run->add_option("--c-compute", cost.c_compute)->capture_default_str();
  run->add_option("--c-msg", cost.c_msg)->capture_default_str();
  run->add_option("--c-sync", cost.c_sync)->capture_default_str();
  run->add_option("--pr-iterations", params.pr_iterations)->capture_default_str();
  run->add_option("--pr-damping", params.pr_damping)->capture_default_str();
  run->add_option("--rw-steps", params.rw_steps)->capture_default_str();
  run->add_option("--code", run_code,
                  "pseudo-code for the algorithm-feature block (defaults to "
                  "the bundled file)");
  run->add_option("--log", run_log, "log table to append to");
  run->add_flag("--threads", run_parallel, "thread the gather phase");
  run->callback([&] {
    Graph g = run_graph.load();
    params.rw_seed = seed;
    const StrategySpec spec = resolve_strategy(run_strategy, seed, 0.0, 0);
    PartitionOptions popts;
    popts.include_oblivious = true;  // explicit request on the command line
    const PartitionPlan plan = partition(g, spec, run_workers, popts);
    gas::EngineOptions eopts;
    eopts.parallel = run_parallel;
    auto [result, log] =
        algo::run_algorithm(run_algorithm, g, plan, params, cost, eopts);

    aug::TaskRecord record;
    record.graph = g.name();
    record.algorithm = run_algorithm;
    record.psid = spec.psid;
    record.num_workers = run_workers;
    record.exec_time = log.execution_time;
    record.message_count = log.message_count;
    record.superstep_count = log.superstep_count;
    record.df = feat::extract_data_features(g);
    const std::string code_path =
        run_code.empty() ? bundled_code_path(run_algorithm) : run_code;
    record.af = dsl::analyze_file(code_path, record.df);

    std::cout << "task " << g.name() << "/" << run_algorithm << "/psid"
              << spec.psid << ": exec_time "
              << io::format_double(log.execution_time) << " cost units, "
              << log.message_count << " messages, " << log.superstep_count
              << " supersteps (seed " << seed << ")\n";
    if (!run_log.empty()) {
      auto records = read_logs_if_any(run_log);
      records.push_back(record);
      io::write_log_table(records, seed, run_log);
      std::cout << "  appended -> " << run_log << "\n";
    }
  });

  // ---- augment ----
  auto* augment = app.add_subcommand(
      "augment", "build the synthetic corpus from real execution logs");
  std::string augment_logs, augment_out, augment_manifest;
  std::vector<std::string> augment_algos;
  int r_min = 2, r_max = 5;
  augment->add_option("--logs", augment_logs, "real log table")->required();
  augment->add_option("--algorithms", augment_algos,
                      "constituent algorithm names")
      ->required()
      ->delimiter(',');
  augment->add_option("--rmin", r_min)->capture_default_str();
  augment->add_option("--rmax", r_max)->capture_default_str();
  augment->add_option("--out", augment_out, "synthetic log table")->required();
  augment->add_option("--multiset-manifest", augment_manifest,
                      "file listing every emitted multiset");
  augment->callback([&] {
    const auto logs = io::read_log_table_file(augment_logs);
    std::vector<aug::TaskRecord> base;
    for (const auto& r : logs) {
      for (const auto& a : augment_algos) {
        if (r.algorithm == a) base.push_back(r);
      }
    }
    const auto synth = aug::augment(base, {augment_algos, r_min, r_max});
    io::write_log_table(synth, seed, augment_out);
    std::cout << "augmented " << base.size() << " real logs into "
              << synth.size() << " synthetic records -> " << augment_out << "\n";
    if (!augment_manifest.empty()) {
      std::ofstream mf(augment_manifest);
      std::string last;
      for (const auto& r : synth) {
        if (r.algorithm != last) {
          mf << r.algorithm << "\n";
          last = r.algorithm;
        }
      }
    }
  });

  // ---- train ----
  auto* train = app.add_subcommand("train", "fit the regressor on a log table");
  std::string train_data, train_out;
  etrm::TrainConfig tc;
  train->add_option("--data", train_data, "training log table")->required();
  train->add_option("--out", train_out, "model file")->required();
  train->add_option("--n-estimators", tc.n_estimators)->capture_default_str();
  train->add_option("--max-depth", tc.max_depth)->capture_default_str();
  train->add_option("--learning-rate", tc.learning_rate)->capture_default_str();
  train->add_option("--subsample", tc.subsample)->capture_default_str();
  train->add_option("--colsample-bytree", tc.colsample_bytree)
      ->capture_default_str();
  train->add_option("--gamma", tc.gamma)->capture_default_str();
  train->add_option("--min-child-weight", tc.min_child_weight)
      ->capture_default_str();
  train->add_option("--reg-alpha", tc.reg_alpha)->capture_default_str();
  train->add_option("--reg-lambda", tc.reg_lambda)->capture_default_str();
  train->callback([&] {
    const auto records = io::read_log_table_file(train_data);
    if (records.empty()) throw data_error("training table is empty");
    std::vector<std::vector<double>> raw;
    std::vector<double> y;
    for (const auto& r : records) {
      raw.push_back(feat::encode_raw(r.df, r.af, r.psid));
      y.push_back(r.exec_time);
    }
    const feat::ScalerParams scaler = feat::fit_scaler(raw);
    std::vector<std::vector<double>> x;
    for (const auto& row : raw) x.push_back(feat::apply_scaler(scaler, row));
    tc.seed = seed;
    const etrm::EtrmModel model =
        etrm::train(x, y, tc, feat::encoded_feature_names(), scaler);
    etrm::save_model(model, train_out);
    std::cout << "trained on " << records.size() << " records, final mse "
              << io::format_double(model.train_loss.back()) << " -> "
              << train_out << "\n";
  });

  // ---- select ----
  auto* select = app.add_subcommand(
      "select", "predict per-strategy times and pick the fastest");
  std::string select_model, select_code;
  GraphArgs select_graph;
  select_graph.attach(select);
  std::vector<int> select_psids;
  select->add_option("--model", select_model, "model file")->required();
  select->add_option("--code", select_code, ".gpc pseudo-code file")->required();
  select->add_option("--strategies", select_psids,
                     "psids to consider (default inventory if omitted)")
      ->delimiter(',');
  select->callback([&] {
    const etrm::EtrmModel model = etrm::load_model(select_model);
    const Graph g = select_graph.load();
    const feat::DataFeatureVector df = feat::extract_data_features(g);
    const feat::AlgorithmFeatureVector af = dsl::analyze_file(select_code, df);
    std::vector<int> psids =
        select_psids.empty() ? default_strategy_inventory() : select_psids;
    std::vector<StrategySpec> specs;
    for (int p : psids) specs.push_back(strategy_from_psid(p, seed));
    const eval::Selection sel = eval::select_strategy(model, df, af, specs);
    std::cout << "selected psid " << sel.psid << " ("
              << strategy_from_psid(sel.psid).name << ") for " << g.name()
              << " (seed " << seed << ")\n";
    for (std::size_t i = 0; i < specs.size(); ++i) {
      std::cout << "  psid " << specs[i].psid << " " << specs[i].name
                << ": predicted " << io::format_double(sel.predicted[i]) << "\n";
    }
  });

  // ---- evaluate ----
  auto* evaluate = app.add_subcommand(
      "evaluate", "run the full pipeline described by a manifest");
  std::string eval_manifest;
  evaluate->add_option("--manifest", eval_manifest, "manifest JSON")->required();
  evaluate->callback([&] {
    pipeline::Manifest m = pipeline::load_manifest(eval_manifest);
    if (app.count("--seed")) m.seed = seed;
    if (app.count("--output-dir")) m.output_dir = output_dir;
    const pipeline::PipelineResult r = pipeline::run_pipeline(m);
    const eval::ScoreSummary all = eval::summarize(r.scores);
    std::cout << "pipeline complete: " << r.real_logs.size() << " tasks, "
              << r.synthetic_count << " synthetic records (seed " << m.seed
              << ")\n";
    std::cout << "  mean score_best " << io::format_double(all.mean_score_best)
              << ", score_worst " << io::format_double(all.mean_score_worst)
              << ", score_avg " << io::format_double(all.mean_score_avg) << "\n";
    std::cout << "  random baseline score_best "
              << io::format_double(r.random_baseline_score_best) << "\n";
    std::cout << "  rank curve:";
    for (double c : r.rank_curve) std::cout << " " << io::format_double(c);
    std::cout << "\n  artifacts under " << m.output_dir << "\n";
  });

  // ---- report ----
  auto* report = app.add_subcommand("report", "summarize scores or a model");
  std::string report_scores, report_model, report_fmt = "text";
  report->add_option("--scores", report_scores, "scores table from evaluate");
  report->add_option("--model", report_model, "model file (feature importance)");
  report->add_option("--format", report_fmt, "text|rows")
      ->check(CLI::IsMember({"text", "rows"}));
  report->callback([&] {
    if (report_scores.empty() && report_model.empty()) {
      throw config_error("report needs --scores and/or --model");
    }
    if (!report_scores.empty()) {
      std::ifstream in(report_scores);
      if (!in) throw not_found_error("cannot open scores: " + report_scores);
      std::string line;
      std::vector<eval::ScoreRow> rows;
      while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("graph,", 0) == 0) {
          continue;
        }
        std::istringstream ls(line);
        std::string field;
        eval::ScoreRow row;
        std::getline(ls, row.graph, ',');
        std::getline(ls, row.algorithm, ',');
        std::getline(ls, field, ',');
        row.test_set = field.empty() ? 'D' : field[0];
        std::getline(ls, field, ',');
        row.selected_psid = std::stoi(field);
        std::getline(ls, field, ',');
        row.rank = std::stoi(field);
        std::getline(ls, field, ',');
        row.t_best = std::stod(field);
        std::getline(ls, field, ',');
        row.t_worst = std::stod(field);
        std::getline(ls, field, ',');
        row.t_avg = std::stod(field);
        std::getline(ls, field, ',');
        row.t_sel = std::stod(field);
        std::getline(ls, field, ',');
        row.score_best = std::stod(field);
        std::getline(ls, field, ',');
        row.score_worst = std::stod(field);
        std::getline(ls, field, ',');
        row.score_avg = std::stod(field);
        rows.push_back(row);
      }
      if (rows.empty()) throw data_error("no score rows in " + report_scores);
      if (report_fmt == "rows") {
        std::cout << "set,tasks,score_best,score_worst,score_avg\n";
      }
      for (char set : {'*', 'A', 'B', 'C', 'D'}) {
        const eval::ScoreSummary s =
            set == '*' ? eval::summarize(rows) : eval::summarize(rows, set);
        if (s.tasks == 0) continue;
        if (report_fmt == "rows") {
          std::cout << set << "," << s.tasks << ","
                    << io::format_double(s.mean_score_best) << ","
                    << io::format_double(s.mean_score_worst) << ","
                    << io::format_double(s.mean_score_avg) << "\n";
        } else {
          std::cout << "set " << set << ": " << s.tasks << " tasks, score_best "
                    << io::format_double(s.mean_score_best) << ", score_worst "
                    << io::format_double(s.mean_score_worst) << ", score_avg "
                    << io::format_double(s.mean_score_avg) << "\n";
        }
      }
      const auto curve = eval::rank_cumulative(rows, 11);
      std::cout << (report_fmt == "rows" ? "rank_curve" : "rank curve:");
      for (double c : curve) std::cout << (report_fmt == "rows" ? "," : " ")
                                       << io::format_double(c);
      std::cout << "\n";
    }
    if (!report_model.empty()) {
      const etrm::EtrmModel model = etrm::load_model(report_model);
      const auto importance = etrm::feature_importance(model);
      if (report_fmt == "rows") {
        std::cout << "feature,gain_importance,split_importance\n";
      } else {
        std::cout << "feature importance (gain, splits):\n";
      }
      for (const auto& e : importance) {
        if (report_fmt == "rows") {
          std::cout << e.feature << "," << io::format_double(e.gain_importance)
                    << "," << e.split_importance << "\n";
        } else {
          std::cout << "  " << e.feature << ": "
                    << io::format_double(e.gain_importance) << ", "
                    << e.split_importance << "\n";
        }
      }
    }
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const gpsel::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
