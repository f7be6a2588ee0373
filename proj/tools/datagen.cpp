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

// Emits the bundled synthetic datasets plus a ready-to-run pipeline manifest.

#include <iostream>

#include <CLI11.hpp>

#include "gpsel/gen.hpp"
#include "gpsel/pipeline.hpp"

using namespace gpsel;

int main(int argc, char** argv) {
  CLI::App app{"generate the bundled datasets and a sample manifest"};
  std::string dir = "data";
  std::string manifest_path;
  std::string algos_dir = "algos";
  app.add_option("--dir", dir, "directory for the edge lists")
      ->capture_default_str();
  app.add_option("--manifest", manifest_path,
                 "also write a desk-scale pipeline manifest here");
  app.add_option("--algos-dir", algos_dir, "pseudo-code directory the manifest points at")
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    const auto paths = gen::write_bundled_datasets(dir);
    for (const auto& p : paths) std::cout << p << "\n";

    if (!manifest_path.empty()) {
      pipeline::Manifest m;
      for (const gen::DatasetSpec& spec : gen::bundled_datasets()) {
        if (spec.name == "facebook" || spec.name == "wiki") continue;
        m.graphs.push_back(
            {spec.name, dir + "/" + spec.name + ".txt", spec.directed});
      }
      m.algorithms = {"AID", "AOD", "PR", "GC", "APCN", "TC", "CC", "RW"};
      m.train_algorithms = {"AID", "AOD", "PR", "GC", "APCN", "TC"};
      m.train_graphs = {"social-a", "web-a", "road-a", "social-b", "web-b",
                        "mesh-a"};
      m.strategies = default_strategy_inventory();
      m.num_workers = 4;
      m.seed = 12345;
      m.r_min = 2;
      m.r_max = 5;
      m.train.n_estimators = 150;
      m.train.max_depth = 7;
      m.train.learning_rate = 0.08;
      m.algos_dir = algos_dir;
      m.output_dir = "out";
      pipeline::save_manifest(m, manifest_path);
      std::cout << manifest_path << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
