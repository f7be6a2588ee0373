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

#include <iosfwd>
#include <string>
#include <vector>

#include "gpsel/augment.hpp"

namespace gpsel::io {

/// Stable shortest-17-significant-digit formatting; round-trips doubles and
/// keeps serialized artifacts byte-identical across runs.
std::string format_double(double v);

/// Task log table: versioned comma-separated rows, one per task, carrying the
/// execution measurements plus the full data- and algorithm-feature blocks.
/// Header lines start with '#' (format version and seed).
void write_log_table(const std::vector<aug::TaskRecord>& records,
                     std::uint64_t seed, std::ostream& out);
void write_log_table(const std::vector<aug::TaskRecord>& records,
                     std::uint64_t seed, const std::string& path);

std::vector<aug::TaskRecord> read_log_table(std::istream& in);
std::vector<aug::TaskRecord> read_log_table_file(const std::string& path);

/// Column names, in row order.
const std::vector<std::string>& log_columns();

}  // namespace gpsel::io
