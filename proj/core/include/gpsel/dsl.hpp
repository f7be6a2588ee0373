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

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gpsel/common.hpp"
#include "gpsel/features.hpp"

namespace gpsel::dsl {

// The pseudo-code language for graph algorithms: declarations, assignments,
// arithmetic, counted and iterator `for` loops over graph collections, `if`
// with comparison conditions, and Global.apply. The grammar is written out
// in docs/gpc-grammar.md.

enum class Symbol : int {
  all_vertices = 0,   // AllOfPartSetV: |V|
  all_edges = 1,      // AllOfPartSetE: directed |E|, 2|E| when undirected
  in_neighbors = 2,   // InVertexSetToPartOfAllV: mean in-degree
  out_neighbors = 3,  // OutVertexSetFromPartOfAllV: mean out-degree
  both_neighbors = 4  // BothVertexSetOfPartOfAllV: mean total degree
};
inline constexpr int kNumSymbols = 5;
const char* symbol_name(Symbol s);

/// Multivariate polynomial over the five analysis symbols with real
/// coefficients. Monomial exponents are tiny in practice (loop nesting).
class SymbolicCount {
 public:
  using Exponents = std::array<std::uint8_t, kNumSymbols>;

  SymbolicCount() = default;
  static SymbolicCount constant(double c);
  static SymbolicCount symbol(Symbol s);

  SymbolicCount& operator+=(const SymbolicCount& other);
  friend SymbolicCount operator*(const SymbolicCount& a, const SymbolicCount& b);
  friend SymbolicCount operator*(const SymbolicCount& a, double c);

  bool is_zero() const { return terms_.empty(); }
  double evaluate(const std::array<double, kNumSymbols>& bindings) const;
  std::string to_string() const;

  const std::map<Exponents, double>& terms() const { return terms_; }

 private:
  std::map<Exponents, double> terms_;
};

// ---------------------------------------------------------------------------
// AST

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

enum class BinOp { add, sub, mul, div };
enum class RelOp { eq, ne, lt, le, gt, ge };
enum class Iterable {
  all_vertex_list,
  all_edge_list,
  get_in_vertex_to,
  get_out_vertex_from,
  get_both_vertex_of
};
enum class DegreeAccessor { in_degree, out_degree, both_degree };

struct Expr {
  enum class Kind { number, var, prop, num_vertex, num_edge, degree, binary } kind;
  double number = 0.0;
  std::string var;            // var / prop / degree base identifier
  DegreeAccessor degree = DegreeAccessor::in_degree;
  BinOp op = BinOp::add;
  ExprPtr lhs, rhs;
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct ForSpec {
  enum class Kind { iterator, count_literal, count_var } kind;
  std::string var;        // loop variable (iterator) or bound variable name
  Iterable iterable = Iterable::all_vertex_list;
  std::string arg;        // GET_* argument identifier
  long count = 0;         // literal bound
};

struct Condition {
  ExprPtr lhs;
  RelOp op;
  ExprPtr rhs;
};

struct Stmt {
  enum class Kind { decl, assign, for_loop, if_stmt, apply } kind;
  // decl
  std::string decl_type;  // int | float
  // decl/assign target: identifier, optionally with .value
  std::string target;
  bool target_is_prop = false;
  ExprPtr expr;           // decl initializer / assign rhs (may be null for decl)
  // for
  ForSpec for_spec{};
  std::vector<StmtPtr> body;
  // if
  Condition cond{};
  std::vector<StmtPtr> else_body;
  // apply
  std::string apply_arg;
  std::string apply_tag;
};

struct PseudoProgram {
  std::vector<StmtPtr> statements;
};

/// Parses source text; reports syntax errors with line and column.
PseudoProgram parse(const std::string& source);

/// Canonical pretty-printing; parse(print(p)) prints identically.
std::string to_string(const PseudoProgram& program);

// ---------------------------------------------------------------------------
// Counting and evaluation

/// Operation counts keyed by the analyzer's lower-case operation names:
/// the algorithm-feature inventory plus the degree-accessor aliases
/// in_edge_num / out_edge_num / both_edge_num.
struct OpCountIR {
  std::map<std::string, SymbolicCount> counts;

  std::string to_string() const;  // key-value listing, keys sorted
};

/// Statically counts every operation, multiplying by the enclosing loop
/// bounds. Literal bounds (including bounds naming a variable declared with
/// a literal initializer and never reassigned) fold to constants; iterator
/// bounds become symbols. `if` bodies count once per reach. Unknown
/// identifiers and unfoldable bounds raise data_error naming the variable.
OpCountIR count_ops(const PseudoProgram& program);

/// Symbol bindings derived from a graph's data features.
std::array<double, kNumSymbols> symbol_bindings(const feat::DataFeatureVector& df);

/// Evaluates the IR under the bindings and collapses the degree-accessor
/// aliases onto the fixed algorithm-feature inventory.
feat::AlgorithmFeatureVector evaluate(const OpCountIR& ir,
                                      const feat::DataFeatureVector& df);

/// parse + count_ops + evaluate for a file on disk.
feat::AlgorithmFeatureVector analyze_file(const std::string& path,
                                          const feat::DataFeatureVector& df);
OpCountIR count_file(const std::string& path);

}  // namespace gpsel::dsl
