#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gpsel/gen.hpp"
#include "gpsel/graph.hpp"

namespace helpers {

inline gpsel::Graph from_edges(std::vector<gpsel::Edge> edges, bool directed,
                               std::string name = "test") {
  return gpsel::Graph(std::move(edges), directed, std::move(name));
}

inline gpsel::Graph path3() {
  return from_edges({{0, 1}, {1, 2}}, true, "path3");
}

inline gpsel::Graph triangle(bool directed = false) {
  return from_edges({{0, 1}, {0, 2}, {1, 2}}, directed, "triangle");
}

inline gpsel::Graph k4() {
  return from_edges({{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, false, "k4");
}

inline gpsel::Graph star(std::size_t leaves, bool inward) {
  std::vector<gpsel::Edge> edges;
  for (std::size_t k = 1; k <= leaves; ++k) {
    if (inward) {
      edges.push_back({k, 0});
    } else {
      edges.push_back({0, k});
    }
  }
  return from_edges(std::move(edges), true, "star");
}

inline gpsel::Graph directed_cycle(std::size_t n) {
  std::vector<gpsel::Edge> edges;
  for (std::size_t v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n});
  return from_edges(std::move(edges), true, "cycle");
}

inline gpsel::Graph random_graph(std::size_t n, std::size_t m, bool directed,
                                 std::uint64_t seed) {
  return gpsel::gen::uniform_random(n, m, directed, seed, "rand");
}

inline gpsel::Graph random_power_law(std::size_t n, std::size_t m, bool directed,
                                     std::uint64_t seed) {
  return gpsel::gen::power_law(n, m, directed, seed, "pl");
}

/// Temp directory wiped on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    dir_ = std::filesystem::temp_directory_path() /
           ("gpsel_test_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string dir() const { return dir_.string(); }

 private:
  std::filesystem::path dir_;
};

inline std::string write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
  return path;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Repo root (where algos/ lives), provided by the build system.
#ifndef GPSEL_SOURCE_DIR
#define GPSEL_SOURCE_DIR "."
#endif
inline std::string source_dir() { return GPSEL_SOURCE_DIR; }

}  // namespace helpers
