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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gpsel {

/// Vertex ids are kept exactly as they appear in the input file.
using VertexId = std::uint64_t;
/// Position of an edge in the canonical (src, dst)-sorted edge list.
using EdgeIndex = std::uint64_t;
/// Logical worker id inside a partition plan.
using WorkerId = std::uint32_t;

/// Base class for all toolkit errors.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input text (edge lists, pseudo-code, tables).
class parse_error : public error {
 public:
  parse_error(const std::string& what, std::size_t line, std::size_t column = 0)
      : error(what + " at line " + std::to_string(line) +
              (column ? ", column " + std::to_string(column) : std::string())),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Invalid configuration (bad worker counts, unknown strategies, ...).
class config_error : public error {
 public:
  using error::error;
};

/// Lookup of an entity that does not exist (vertex, file, column).
class not_found_error : public error {
 public:
  using error::error;
};

/// Inconsistent or unusable data (NaN features, nonpositive times, gaps).
class data_error : public error {
 public:
  using error::error;
};

/// A vertex program exceeded the superstep cap.
class nonconvergence_error : public error {
 public:
  using error::error;
};

}  // namespace gpsel
