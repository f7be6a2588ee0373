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

#include "gpsel/dsl.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace gpsel::dsl {

const char* symbol_name(Symbol s) {
  switch (s) {
    case Symbol::all_vertices: return "AllOfPartSetV";
    case Symbol::all_edges: return "AllOfPartSetE";
    case Symbol::in_neighbors: return "InVertexSetToPartOfAllV";
    case Symbol::out_neighbors: return "OutVertexSetFromPartOfAllV";
    case Symbol::both_neighbors: return "BothVertexSetOfPartOfAllV";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// SymbolicCount

SymbolicCount SymbolicCount::constant(double c) {
  SymbolicCount s;
  if (c != 0.0) s.terms_[{}] = c;
  return s;
}

SymbolicCount SymbolicCount::symbol(Symbol sym) {
  SymbolicCount s;
  Exponents e{};
  e[static_cast<int>(sym)] = 1;
  s.terms_[e] = 1.0;
  return s;
}

SymbolicCount& SymbolicCount::operator+=(const SymbolicCount& other) {
  for (const auto& [e, c] : other.terms_) {
    const double v = (terms_[e] += c);
    if (v == 0.0) terms_.erase(e);
  }
  return *this;
}

SymbolicCount operator*(const SymbolicCount& a, const SymbolicCount& b) {
  SymbolicCount r;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      SymbolicCount::Exponents e;
      for (int i = 0; i < kNumSymbols; ++i) {
        e[i] = static_cast<std::uint8_t>(ea[i] + eb[i]);
      }
      const double v = (r.terms_[e] += ca * cb);
      if (v == 0.0) r.terms_.erase(e);
    }
  }
  return r;
}

SymbolicCount operator*(const SymbolicCount& a, double c) {
  return a * SymbolicCount::constant(c);
}

double SymbolicCount::evaluate(const std::array<double, kNumSymbols>& bindings) const {
  double total = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c;
    for (int i = 0; i < kNumSymbols; ++i) {
      for (int k = 0; k < e[i]; ++k) term *= bindings[i];
    }
    total += term;
  }
  return total;
}

std::string SymbolicCount::to_string() const {
  if (terms_.empty()) return "0.0";
  std::ostringstream out;
  bool first = true;
  // Print higher-order terms first, constants last.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) out << " + ";
    first = false;
    bool any_symbol = false;
    for (int i = 0; i < kNumSymbols; ++i) {
      for (int k = 0; k < e[i]; ++k) {
        if (any_symbol) out << "*";
        out << symbol_name(static_cast<Symbol>(i));
        any_symbol = true;
      }
    }
    std::ostringstream num;
    num << c;
    std::string cs = num.str();
    if (cs.find('.') == std::string::npos && cs.find('e') == std::string::npos &&
        cs.find("inf") == std::string::npos) {
      cs += ".0";
    }
    if (any_symbol) {
      if (c != 1.0) out << "*" << cs;
    } else {
      out << cs;
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
  end, ident, number, string,
  lparen, rparen, lbrace, rbrace, semi, dot, comma,
  assign, plus, minus, star, slash,
  eq, ne, lt, le, gt, ge
};

struct Token {
  Tok kind = Tok::end;
  std::string text;
  double number = 0.0;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }
  Token next() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_ws_and_comments();
    current_ = Token{};
    current_.line = line_;
    current_.column = col_;
    if (pos_ >= src_.size()) {
      current_.kind = Tok::end;
      return;
    }
    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        bump();
      }
      current_.kind = Tok::ident;
      current_.text = src_.substr(start, pos_ - start);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
      if (pos_ < src_.size() && src_[pos_] == '.') {
        bump();
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
      }
      current_.kind = Tok::number;
      current_.text = src_.substr(start, pos_ - start);
      current_.number = std::stod(current_.text);
      return;
    }
    if (c == '"') {
      bump();
      std::size_t start = pos_;
      while (pos_ < src_.size() && src_[pos_] != '"') bump();
      if (pos_ >= src_.size()) {
        throw parse_error("unterminated string literal", current_.line, current_.column);
      }
      current_.kind = Tok::string;
      current_.text = src_.substr(start, pos_ - start);
      bump();  // closing quote
      return;
    }
    auto two = [&](char second, Tok ifTwo, Tok ifOne) {
      bump();
      if (pos_ < src_.size() && src_[pos_] == second) {
        bump();
        current_.kind = ifTwo;
      } else {
        current_.kind = ifOne;
      }
    };
    switch (c) {
      case '(': bump(); current_.kind = Tok::lparen; return;
      case ')': bump(); current_.kind = Tok::rparen; return;
      case '{': bump(); current_.kind = Tok::lbrace; return;
      case '}': bump(); current_.kind = Tok::rbrace; return;
      case ';': bump(); current_.kind = Tok::semi; return;
      case '.': bump(); current_.kind = Tok::dot; return;
      case ',': bump(); current_.kind = Tok::comma; return;
      case '+': bump(); current_.kind = Tok::plus; return;
      case '-': bump(); current_.kind = Tok::minus; return;
      case '*': bump(); current_.kind = Tok::star; return;
      case '/': bump(); current_.kind = Tok::slash; return;
      case '=': two('=', Tok::eq, Tok::assign); return;
      case '!':
        bump();
        if (pos_ < src_.size() && src_[pos_] == '=') {
          bump();
          current_.kind = Tok::ne;
          return;
        }
        throw parse_error("stray '!'", current_.line, current_.column);
      case '<': two('=', Tok::le, Tok::lt); return;
      case '>': two('=', Tok::ge, Tok::gt); return;
      default:
        throw parse_error(std::string("unexpected character '") + c + "'", line_, col_);
    }
  }

  void skip_ws_and_comments() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  Token current_;
};

// ---------------------------------------------------------------------------
// Parser

bool is_iterable_name(const std::string& s) {
  return s == "ALL_VERTEX_LIST" || s == "ALL_EDGE_LIST" ||
         s == "GET_IN_VERTEX_TO" || s == "GET_OUT_VERTEX_FROM" ||
         s == "GET_BOTH_VERTEX_OF";
}

Iterable iterable_from_name(const std::string& s, std::size_t line, std::size_t col) {
  if (s == "ALL_VERTEX_LIST") return Iterable::all_vertex_list;
  if (s == "ALL_EDGE_LIST") return Iterable::all_edge_list;
  if (s == "GET_IN_VERTEX_TO") return Iterable::get_in_vertex_to;
  if (s == "GET_OUT_VERTEX_FROM") return Iterable::get_out_vertex_from;
  if (s == "GET_BOTH_VERTEX_OF") return Iterable::get_both_vertex_of;
  throw parse_error("'" + s + "' is not iterable", line, col);
}

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) {}

  PseudoProgram parse_program() {
    PseudoProgram p;
    while (lex_.peek().kind != Tok::end) {
      p.statements.push_back(parse_statement());
    }
    return p;
  }

 private:
  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw parse_error(msg, t.line, t.column);
  }

  Token expect(Tok kind, const std::string& what) {
    Token t = lex_.next();
    if (t.kind != kind) fail(t, "expected " + what);
    return t;
  }

  StmtPtr parse_statement() {
    const Token& t = lex_.peek();
    if (t.kind != Tok::ident) fail(t, "expected a statement");
    if (t.text == "int" || t.text == "float") return parse_decl();
    if (t.text == "for") return parse_for();
    if (t.text == "if") return parse_if();
    if (t.text == "Global") return parse_apply();
    return parse_assign();
  }

  StmtPtr parse_decl() {
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::decl;
    s->decl_type = lex_.next().text;
    s->target = expect(Tok::ident, "an identifier").text;
    if (lex_.peek().kind == Tok::assign) {
      lex_.next();
      s->expr = parse_expr();
    }
    expect(Tok::semi, "';'");
    return s;
  }

  StmtPtr parse_assign() {
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::assign;
    s->target = expect(Tok::ident, "an identifier").text;
    if (lex_.peek().kind == Tok::dot) {
      lex_.next();
      Token prop = expect(Tok::ident, "a property name");
      if (prop.text != "value") fail(prop, "only the 'value' property can be assigned");
      s->target_is_prop = true;
    }
    expect(Tok::assign, "'='");
    s->expr = parse_expr();
    expect(Tok::semi, "';'");
    return s;
  }

  StmtPtr parse_for() {
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::for_loop;
    lex_.next();  // for
    expect(Tok::lparen, "'('");
    Token t = lex_.next();
    if (t.kind == Tok::number) {
      if (t.text.find('.') != std::string::npos) {
        fail(t, "loop counts must be bare integers");
      }
      s->for_spec.kind = ForSpec::Kind::count_literal;
      s->for_spec.count = static_cast<long>(t.number);
    } else if (t.kind == Tok::ident && t.text == "list") {
      s->for_spec.kind = ForSpec::Kind::iterator;
      s->for_spec.var = expect(Tok::ident, "a loop variable").text;
      Token in = expect(Tok::ident, "'in'");
      if (in.text != "in") fail(in, "expected 'in'");
      Token iter = expect(Tok::ident, "an iterable");
      if (!is_iterable_name(iter.text)) {
        fail(iter, "loop target '" + iter.text + "' is not iterable");
      }
      s->for_spec.iterable = iterable_from_name(iter.text, iter.line, iter.column);
      if (s->for_spec.iterable != Iterable::all_vertex_list &&
          s->for_spec.iterable != Iterable::all_edge_list) {
        expect(Tok::lparen, "'('");
        s->for_spec.arg = expect(Tok::ident, "an identifier").text;
        expect(Tok::rparen, "')'");
      }
    } else if (t.kind == Tok::ident) {
      s->for_spec.kind = ForSpec::Kind::count_var;
      s->for_spec.var = t.text;
    } else {
      fail(t, "expected a loop count or iterator");
    }
    expect(Tok::rparen, "')'");
    parse_block(s->body);
    return s;
  }

  StmtPtr parse_if() {
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::if_stmt;
    lex_.next();  // if
    expect(Tok::lparen, "'('");
    s->cond.lhs = parse_expr();
    Token op = lex_.next();
    switch (op.kind) {
      case Tok::eq: s->cond.op = RelOp::eq; break;
      case Tok::ne: s->cond.op = RelOp::ne; break;
      case Tok::lt: s->cond.op = RelOp::lt; break;
      case Tok::le: s->cond.op = RelOp::le; break;
      case Tok::gt: s->cond.op = RelOp::gt; break;
      case Tok::ge: s->cond.op = RelOp::ge; break;
      default: fail(op, "expected a comparison operator");
    }
    s->cond.rhs = parse_expr();
    expect(Tok::rparen, "')'");
    parse_block(s->body);
    if (lex_.peek().kind == Tok::ident && lex_.peek().text == "else") {
      lex_.next();
      parse_block(s->else_body);
    }
    return s;
  }

  StmtPtr parse_apply() {
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::apply;
    lex_.next();  // Global
    expect(Tok::dot, "'.'");
    Token fn = expect(Tok::ident, "'apply'");
    if (fn.text != "apply") fail(fn, "unknown Global function '" + fn.text + "'");
    expect(Tok::lparen, "'('");
    s->apply_arg = expect(Tok::ident, "an identifier").text;
    if (lex_.peek().kind == Tok::comma) {
      lex_.next();
      s->apply_tag = expect(Tok::string, "a type string").text;
    }
    expect(Tok::rparen, "')'");
    expect(Tok::semi, "';'");
    return s;
  }

  void parse_block(std::vector<StmtPtr>& into) {
    expect(Tok::lbrace, "'{'");
    while (lex_.peek().kind != Tok::rbrace) {
      if (lex_.peek().kind == Tok::end) {
        fail(lex_.peek(), "unbalanced braces: missing '}'");
      }
      into.push_back(parse_statement());
    }
    lex_.next();  // '}'
  }

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    while (lex_.peek().kind == Tok::plus || lex_.peek().kind == Tok::minus) {
      const bool add = lex_.next().kind == Tok::plus;
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::binary;
      node->op = add ? BinOp::add : BinOp::sub;
      node->lhs = std::move(lhs);
      node->rhs = parse_term();
      lhs = std::move(node);
    }
    return lhs;
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_primary();
    while (lex_.peek().kind == Tok::star || lex_.peek().kind == Tok::slash) {
      const bool mul = lex_.next().kind == Tok::star;
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::binary;
      node->op = mul ? BinOp::mul : BinOp::div;
      node->lhs = std::move(lhs);
      node->rhs = parse_primary();
      lhs = std::move(node);
    }
    return lhs;
  }

  ExprPtr parse_primary() {
    Token t = lex_.next();
    auto node = std::make_unique<Expr>();
    if (t.kind == Tok::number) {
      node->kind = Expr::Kind::number;
      node->number = t.number;
      return node;
    }
    if (t.kind == Tok::lparen) {
      ExprPtr inner = parse_expr();
      expect(Tok::rparen, "')'");
      return inner;
    }
    if (t.kind != Tok::ident) fail(t, "expected an expression");
    if (t.text == "NUM_VERTEX") {
      node->kind = Expr::Kind::num_vertex;
      return node;
    }
    if (t.text == "NUM_EDGE") {
      node->kind = Expr::Kind::num_edge;
      return node;
    }
    node->var = t.text;
    if (lex_.peek().kind == Tok::dot) {
      lex_.next();
      Token prop = expect(Tok::ident, "a property name");
      if (prop.text == "value") {
        node->kind = Expr::Kind::prop;
      } else if (prop.text == "NUM_IN_DEGREE") {
        node->kind = Expr::Kind::degree;
        node->degree = DegreeAccessor::in_degree;
      } else if (prop.text == "NUM_OUT_DEGREE") {
        node->kind = Expr::Kind::degree;
        node->degree = DegreeAccessor::out_degree;
      } else if (prop.text == "NUM_BOTH_DEGREE") {
        node->kind = Expr::Kind::degree;
        node->degree = DegreeAccessor::both_degree;
      } else {
        fail(prop, "unknown property '" + prop.text + "'");
      }
      return node;
    }
    node->kind = Expr::Kind::var;
    return node;
  }

  Lexer lex_;
};

// ---------------------------------------------------------------------------
// Printing

void print_expr(const Expr& e, std::ostream& out) {
  switch (e.kind) {
    case Expr::Kind::number: {
      std::ostringstream n;
      n << e.number;
      out << n.str();
      return;
    }
    case Expr::Kind::var: out << e.var; return;
    case Expr::Kind::prop: out << e.var << ".value"; return;
    case Expr::Kind::num_vertex: out << "NUM_VERTEX"; return;
    case Expr::Kind::num_edge: out << "NUM_EDGE"; return;
    case Expr::Kind::degree:
      out << e.var << ".";
      switch (e.degree) {
        case DegreeAccessor::in_degree: out << "NUM_IN_DEGREE"; break;
        case DegreeAccessor::out_degree: out << "NUM_OUT_DEGREE"; break;
        case DegreeAccessor::both_degree: out << "NUM_BOTH_DEGREE"; break;
      }
      return;
    case Expr::Kind::binary:
      out << "(";
      print_expr(*e.lhs, out);
      switch (e.op) {
        case BinOp::add: out << " + "; break;
        case BinOp::sub: out << " - "; break;
        case BinOp::mul: out << " * "; break;
        case BinOp::div: out << " / "; break;
      }
      print_expr(*e.rhs, out);
      out << ")";
      return;
  }
}

const char* iterable_name(Iterable it) {
  switch (it) {
    case Iterable::all_vertex_list: return "ALL_VERTEX_LIST";
    case Iterable::all_edge_list: return "ALL_EDGE_LIST";
    case Iterable::get_in_vertex_to: return "GET_IN_VERTEX_TO";
    case Iterable::get_out_vertex_from: return "GET_OUT_VERTEX_FROM";
    case Iterable::get_both_vertex_of: return "GET_BOTH_VERTEX_OF";
  }
  return "?";
}

void print_stmt(const Stmt& s, std::ostream& out, int indent) {
  const std::string pad(indent * 4, ' ');
  switch (s.kind) {
    case Stmt::Kind::decl:
      out << pad << s.decl_type << " " << s.target;
      if (s.expr) {
        out << " = ";
        print_expr(*s.expr, out);
      }
      out << ";\n";
      return;
    case Stmt::Kind::assign:
      out << pad << s.target << (s.target_is_prop ? ".value" : "") << " = ";
      print_expr(*s.expr, out);
      out << ";\n";
      return;
    case Stmt::Kind::for_loop:
      out << pad << "for(";
      switch (s.for_spec.kind) {
        case ForSpec::Kind::count_literal: out << s.for_spec.count; break;
        case ForSpec::Kind::count_var: out << s.for_spec.var; break;
        case ForSpec::Kind::iterator:
          out << "list " << s.for_spec.var << " in "
              << iterable_name(s.for_spec.iterable);
          if (!s.for_spec.arg.empty()) out << "(" << s.for_spec.arg << ")";
          break;
      }
      out << "){\n";
      for (const StmtPtr& b : s.body) print_stmt(*b, out, indent + 1);
      out << pad << "}\n";
      return;
    case Stmt::Kind::if_stmt: {
      out << pad << "if(";
      print_expr(*s.cond.lhs, out);
      switch (s.cond.op) {
        case RelOp::eq: out << " == "; break;
        case RelOp::ne: out << " != "; break;
        case RelOp::lt: out << " < "; break;
        case RelOp::le: out << " <= "; break;
        case RelOp::gt: out << " > "; break;
        case RelOp::ge: out << " >= "; break;
      }
      print_expr(*s.cond.rhs, out);
      out << "){\n";
      for (const StmtPtr& b : s.body) print_stmt(*b, out, indent + 1);
      out << pad << "}";
      if (!s.else_body.empty()) {
        out << "else{\n";
        for (const StmtPtr& b : s.else_body) print_stmt(*b, out, indent + 1);
        out << pad << "}";
      }
      out << "\n";
      return;
    }
    case Stmt::Kind::apply:
      out << pad << "Global.apply(" << s.apply_arg;
      if (!s.apply_tag.empty()) out << ", \"" << s.apply_tag << "\"";
      out << ");\n";
      return;
  }
}

}  // namespace

PseudoProgram parse(const std::string& source) {
  Parser p(source);
  return p.parse_program();
}

std::string to_string(const PseudoProgram& program) {
  std::ostringstream out;
  for (const StmtPtr& s : program.statements) print_stmt(*s, out, 0);
  return out.str();
}

// ---------------------------------------------------------------------------
// Counting

namespace {

enum class VarCategory { other, vertex, edge };

struct CountContext {
  OpCountIR ir;
  std::map<std::string, VarCategory> categories;
  std::map<std::string, double> literals;   // declared-literal constants
  std::map<std::string, int> assign_counts; // assignments beyond the declaration

  void add(const std::string& key, const SymbolicCount& m) { ir.counts[key] += m; }
};

void scan_assignments(const std::vector<StmtPtr>& stmts,
                      std::map<std::string, int>& counts) {
  for (const StmtPtr& s : stmts) {
    switch (s->kind) {
      case Stmt::Kind::assign:
        if (!s->target_is_prop) counts[s->target]++;
        break;
      case Stmt::Kind::for_loop:
        scan_assignments(s->body, counts);
        break;
      case Stmt::Kind::if_stmt:
        scan_assignments(s->body, counts);
        scan_assignments(s->else_body, counts);
        break;
      default:
        break;
    }
  }
}

std::string read_key(VarCategory cat) {
  switch (cat) {
    case VarCategory::vertex: return "vertex_value_read";
    case VarCategory::edge: return "edge_value_read";
    case VarCategory::other: return "others_value_read";
  }
  return "others_value_read";
}

std::string write_key(VarCategory cat) {
  switch (cat) {
    case VarCategory::vertex: return "vertex_value_write";
    case VarCategory::edge: return "edge_value_write";
    case VarCategory::other: return "others_value_write";
  }
  return "others_value_write";
}

VarCategory category_of(const CountContext& ctx, const std::string& name) {
  auto it = ctx.categories.find(name);
  if (it == ctx.categories.end()) {
    throw data_error("identifier '" + name + "' is used before declaration");
  }
  return it->second;
}

void count_expr(CountContext& ctx, const Expr& e, const SymbolicCount& mult) {
  switch (e.kind) {
    case Expr::Kind::number:
      return;
    case Expr::Kind::var: {
      const VarCategory cat = category_of(ctx, e.var);
      // Reading an iterator-bound variable is a handle use, not a value read.
      if (cat == VarCategory::other) ctx.add("others_value_read", mult);
      return;
    }
    case Expr::Kind::prop:
      ctx.add(read_key(category_of(ctx, e.var)), mult);
      return;
    case Expr::Kind::num_vertex:
      ctx.add("num_vertex", mult);
      return;
    case Expr::Kind::num_edge:
      ctx.add("num_edge", mult);
      return;
    case Expr::Kind::degree:
      category_of(ctx, e.var);  // must be declared
      switch (e.degree) {
        case DegreeAccessor::in_degree: ctx.add("in_edge_num", mult); break;
        case DegreeAccessor::out_degree: ctx.add("out_edge_num", mult); break;
        case DegreeAccessor::both_degree: ctx.add("both_edge_num", mult); break;
      }
      return;
    case Expr::Kind::binary: {
      switch (e.op) {
        case BinOp::add: ctx.add("add", mult); break;
        case BinOp::sub: ctx.add("subtract", mult); break;
        case BinOp::mul: ctx.add("multiply", mult); break;
        case BinOp::div: ctx.add("divide", mult); break;
      }
      count_expr(ctx, *e.lhs, mult);
      count_expr(ctx, *e.rhs, mult);
      return;
    }
  }
}

void count_stmts(CountContext& ctx, const std::vector<StmtPtr>& stmts,
                 const SymbolicCount& mult);

void count_stmt(CountContext& ctx, const Stmt& s, const SymbolicCount& mult) {
  switch (s.kind) {
    case Stmt::Kind::decl: {
      ctx.categories[s.target] = VarCategory::other;
      if (s.expr) {
        count_expr(ctx, *s.expr, mult);
        ctx.add("others_value_write", mult);
        if (s.expr->kind == Expr::Kind::number &&
            ctx.assign_counts[s.target] == 0) {
          ctx.literals[s.target] = s.expr->number;
        }
      }
      return;
    }
    case Stmt::Kind::assign: {
      count_expr(ctx, *s.expr, mult);
      const VarCategory cat = category_of(ctx, s.target);
      ctx.add(s.target_is_prop ? write_key(cat) : write_key(VarCategory::other),
              mult);
      return;
    }
    case Stmt::Kind::for_loop: {
      SymbolicCount inner;
      std::optional<std::pair<std::string, VarCategory>> shadow;
      switch (s.for_spec.kind) {
        case ForSpec::Kind::count_literal:
          inner = mult * double(s.for_spec.count);
          break;
        case ForSpec::Kind::count_var: {
          category_of(ctx, s.for_spec.var);
          ctx.add("others_value_read", mult);  // the bound is read on entry
          auto lit = ctx.literals.find(s.for_spec.var);
          if (lit == ctx.literals.end()) {
            throw data_error("loop bound '" + s.for_spec.var +
                             "' cannot be folded to a constant");
          }
          inner = mult * lit->second;
          break;
        }
        case ForSpec::Kind::iterator: {
          Symbol sym = Symbol::all_vertices;
          std::string key = "all_vertex_list";
          VarCategory cat = VarCategory::vertex;
          switch (s.for_spec.iterable) {
            case Iterable::all_vertex_list:
              sym = Symbol::all_vertices; key = "all_vertex_list"; break;
            case Iterable::all_edge_list:
              sym = Symbol::all_edges; key = "all_edge_list"; cat = VarCategory::edge;
              break;
            case Iterable::get_in_vertex_to:
              sym = Symbol::in_neighbors; key = "get_in_vertex_to"; break;
            case Iterable::get_out_vertex_from:
              sym = Symbol::out_neighbors; key = "get_out_vertex_from"; break;
            case Iterable::get_both_vertex_of:
              sym = Symbol::both_neighbors; key = "get_both_vertex_of"; break;
          }
          if (!s.for_spec.arg.empty()) category_of(ctx, s.for_spec.arg);
          ctx.add(key, mult);
          inner = mult * SymbolicCount::symbol(sym);
          auto prev = ctx.categories.find(s.for_spec.var);
          shadow = {s.for_spec.var, prev == ctx.categories.end()
                                        ? VarCategory::other
                                        : prev->second};
          const bool had = prev != ctx.categories.end();
          ctx.categories[s.for_spec.var] = cat;
          count_stmts(ctx, s.body, inner);
          if (had) {
            ctx.categories[s.for_spec.var] = shadow->second;
          } else {
            ctx.categories.erase(s.for_spec.var);
          }
          return;
        }
      }
      count_stmts(ctx, s.body, inner);
      return;
    }
    case Stmt::Kind::if_stmt:
      // Upper bound: condition evaluated and both branches counted once per
      // reach. Comparisons themselves are not in the operation inventory.
      count_expr(ctx, *s.cond.lhs, mult);
      count_expr(ctx, *s.cond.rhs, mult);
      count_stmts(ctx, s.body, mult);
      count_stmts(ctx, s.else_body, mult);
      return;
    case Stmt::Kind::apply:
      category_of(ctx, s.apply_arg);
      ctx.add("apply", mult);
      return;
  }
}

void count_stmts(CountContext& ctx, const std::vector<StmtPtr>& stmts,
                 const SymbolicCount& mult) {
  for (const StmtPtr& s : stmts) count_stmt(ctx, *s, mult);
}

}  // namespace

OpCountIR count_ops(const PseudoProgram& program) {
  CountContext ctx;
  scan_assignments(program.statements, ctx.assign_counts);
  count_stmts(ctx, program.statements, SymbolicCount::constant(1.0));
  return std::move(ctx.ir);
}

std::string OpCountIR::to_string() const {
  std::ostringstream out;
  out << "IR = {\n";
  for (const auto& [key, count] : counts) {
    out << "    '" << key << "': " << count.to_string() << ",\n";
  }
  out << "}\n";
  return out.str();
}

std::array<double, kNumSymbols> symbol_bindings(const feat::DataFeatureVector& df) {
  std::array<double, kNumSymbols> b{};
  const double v = double(df.num_vertex);
  const double e = double(df.num_edge);
  b[int(Symbol::all_vertices)] = v;
  b[int(Symbol::all_edges)] = df.directed ? e : 2.0 * e;
  b[int(Symbol::in_neighbors)] = df.in.mean;
  b[int(Symbol::out_neighbors)] = df.out.mean;
  b[int(Symbol::both_neighbors)] = df.directed ? df.in.mean + df.out.mean : df.in.mean;
  return b;
}

feat::AlgorithmFeatureVector evaluate(const OpCountIR& ir,
                                      const feat::DataFeatureVector& df) {
  const auto bindings = symbol_bindings(df);
  feat::AlgorithmFeatureVector af;
  for (const auto& [key, count] : ir.counts) {
    std::string feature = key;
    if (key == "in_edge_num") feature = "num_in_degree";
    else if (key == "out_edge_num") feature = "num_out_degree";
    else if (key == "both_edge_num") feature = "num_both_degree";
    const int idx = feat::algorithm_feature_index(feature);
    if (idx < 0) {
      throw data_error("operation key '" + key + "' has no feature slot");
    }
    const double value = count.evaluate(bindings);
    if (!std::isfinite(value) || value < 0.0) {
      throw data_error("evaluated count for '" + key + "' is not finite/non-negative");
    }
    af[idx] += value;
  }
  return af;
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw not_found_error("cannot open pseudo-code file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

feat::AlgorithmFeatureVector analyze_file(const std::string& path,
                                          const feat::DataFeatureVector& df) {
  return evaluate(count_ops(parse(slurp(path))), df);
}

OpCountIR count_file(const std::string& path) {
  return count_ops(parse(slurp(path)));
}

}  // namespace gpsel::dsl
