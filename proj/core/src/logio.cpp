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

#include "gpsel/logio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gpsel::io {

std::string format_double(double v) {
  char buf[64];
  // Integral values print without an exponent.
  if (v == std::floor(v) && std::fabs(v) < 1e15) {
    std::snprintf(buf, sizeof(buf), "%.0f", v);
    return buf;
  }
  // Otherwise the shortest representation that round-trips.
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    double parsed = 0.0;
    std::sscanf(buf, "%lf", &parsed);
    if (parsed == v) return buf;
  }
  return buf;
}

const std::vector<std::string>& log_columns() {
  static const std::vector<std::string> cols = [] {
    std::vector<std::string> c = {"graph",        "algorithm",
                                  "psid",         "num_workers",
                                  "exec_time",    "message_count",
                                  "superstep_count"};
    const std::vector<std::string> df = {
        "df_num_vertex",    "df_num_edge",      "df_in_mean",
        "df_in_std",        "df_in_skew_abs",   "df_in_skew_sign",
        "df_in_kurt_abs",   "df_in_kurt_sign",  "df_out_mean",
        "df_out_std",       "df_out_skew_abs",  "df_out_skew_sign",
        "df_out_kurt_abs",  "df_out_kurt_sign", "df_directed"};
    c.insert(c.end(), df.begin(), df.end());
    for (const std::string& a : feat::algorithm_feature_names()) {
      c.push_back("af_" + a);
    }
    return c;
  }();
  return cols;
}

void write_log_table(const std::vector<aug::TaskRecord>& records,
                     std::uint64_t seed, std::ostream& out) {
  out << "# gpsel-log 1\n";
  out << "# seed " << seed << "\n";
  const auto& cols = log_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    out << (i ? "," : "") << cols[i];
  }
  out << "\n";
  for (const aug::TaskRecord& r : records) {
    out << r.graph << "," << r.algorithm << "," << r.psid << "," << r.num_workers
        << "," << format_double(r.exec_time) << "," << r.message_count << ","
        << r.superstep_count;
    const feat::DataFeatureVector& d = r.df;
    out << "," << d.num_vertex << "," << d.num_edge;
    for (const feat::DegreeMoments* m : {&d.in, &d.out}) {
      out << "," << format_double(m->mean) << "," << format_double(m->stddev)
          << "," << format_double(m->skew_abs) << "," << m->skew_sign << ","
          << format_double(m->kurt_abs) << "," << m->kurt_sign;
    }
    out << "," << (d.directed ? 1 : 0);
    for (int i = 0; i < feat::kAlgorithmFeatureCount; ++i) {
      out << "," << format_double(r.af[i]);
    }
    out << "\n";
  }
}

void write_log_table(const std::vector<aug::TaskRecord>& records,
                     std::uint64_t seed, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot write log table: " + path);
  write_log_table(records, seed, out);
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::vector<aug::TaskRecord> read_log_table(std::istream& in) {
  std::vector<aug::TaskRecord> records;
  std::string line;
  std::size_t lineno = 0;
  bool saw_header = false;
  bool saw_version = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# gpsel-log 1", 0) == 0) saw_version = true;
      continue;
    }
    if (!saw_header) {
      if (!saw_version) {
        throw parse_error("missing 'gpsel-log 1' version header", lineno);
      }
      const auto cols = split_csv(line);
      if (cols != log_columns()) {
        throw parse_error("log table columns do not match schema v1", lineno);
      }
      saw_header = true;
      continue;
    }
    const auto f = split_csv(line);
    if (f.size() != log_columns().size()) {
      throw parse_error("wrong field count in log row", lineno);
    }
    aug::TaskRecord r;
    std::size_t i = 0;
    auto next = [&]() -> const std::string& { return f[i++]; };
    r.graph = next();
    r.algorithm = next();
    r.psid = std::stoi(next());
    r.num_workers = std::uint32_t(std::stoul(next()));
    r.exec_time = std::stod(next());
    r.message_count = std::stoull(next());
    r.superstep_count = std::uint32_t(std::stoul(next()));
    r.df.num_vertex = std::stoull(next());
    r.df.num_edge = std::stoull(next());
    for (feat::DegreeMoments* m : {&r.df.in, &r.df.out}) {
      m->mean = std::stod(next());
      m->stddev = std::stod(next());
      m->skew_abs = std::stod(next());
      m->skew_sign = std::stoi(next());
      m->kurt_abs = std::stod(next());
      m->kurt_sign = std::stoi(next());
    }
    r.df.directed = next() == "1";
    for (int k = 0; k < feat::kAlgorithmFeatureCount; ++k) {
      r.af[k] = std::stod(next());
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<aug::TaskRecord> read_log_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw not_found_error("cannot open log table: " + path);
  return read_log_table(in);
}

}  // namespace gpsel::io
