// Copyright 2026 The crossqasm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "crossqasm/qasm.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "crossqasm/gates.hpp"

namespace crossqasm {

ParseError::ParseError(SourcePos pos, std::string message)
    : std::runtime_error(std::to_string(pos.line) + ":" +
                         std::to_string(pos.column) + ": " + message),
      pos_(pos),
      message_(std::move(message)) {}

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  return std::string(buf, end);
}

// ---------------------------------------------------------------------------
// ParamExpr

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::int64_t kMaxDenominator = 16;
constexpr std::int64_t kMaxNumerator = 1024;

double rational_value(std::int64_t num, std::int64_t den) {
  return static_cast<double>(num) * kPi / static_cast<double>(den);
}

}  // namespace

std::optional<ParamExpr> ParamExpr::as_rational(double value) {
  if (!std::isfinite(value)) return std::nullopt;
  for (std::int64_t den = 1; den <= kMaxDenominator; ++den) {
    const double approx = value * static_cast<double>(den) / kPi;
    if (std::abs(approx) > static_cast<double>(kMaxNumerator)) return std::nullopt;
    const auto num = static_cast<std::int64_t>(std::llround(approx));
    if (std::gcd(num, den) != 1 && num != 0) continue;
    if (num == 0 && den != 1) continue;
    if (rational_value(num, den) == value) {
      ParamExpr p;
      p.form_ = Form::RationalPi;
      p.value_ = value;
      p.num_ = num;
      p.den_ = den;
      return p;
    }
  }
  return std::nullopt;
}

ParamExpr ParamExpr::from_value(double value) {
  if (auto r = as_rational(value)) return *r;
  if (std::isfinite(value) && value != 0.0) {
    // Search a few ulps around value/pi for a multiplier whose product with
    // pi reproduces the value exactly; prefer the shortest printed text.
    const double guess = value / kPi;
    std::optional<double> best;
    std::size_t best_len = 0;
    double up = guess, down = guess;
    for (int step = 0; step <= 4; ++step) {
      for (double m : {up, down}) {
        if (m * kPi != value) continue;
        const std::size_t len = format_double(m).size();
        if (!best || len < best_len) {
          best = m;
          best_len = len;
        }
      }
      up = std::nextafter(up, INFINITY);
      down = std::nextafter(down, -INFINITY);
    }
    if (best) {
      ParamExpr p;
      p.form_ = Form::DecimalPi;
      p.value_ = value;
      p.multiplier_ = *best;
      return p;
    }
  }
  return decimal(value);
}

ParamExpr ParamExpr::pi_multiple(double multiplier) {
  const double value = multiplier * kPi;
  if (auto r = as_rational(value)) return *r;
  ParamExpr p;
  p.form_ = Form::DecimalPi;
  p.value_ = value;
  p.multiplier_ = multiplier;
  return p;
}

ParamExpr ParamExpr::decimal(double value) {
  if (auto r = as_rational(value)) return *r;
  ParamExpr p;
  p.form_ = Form::Decimal;
  p.value_ = value;
  return p;
}

std::string ParamExpr::to_string() const {
  switch (form_) {
    case Form::RationalPi: {
      if (num_ == 0) return "0";
      std::string s;
      if (num_ == -1) {
        s = "-pi";
      } else if (num_ == 1) {
        s = "pi";
      } else {
        s = std::to_string(num_) + "*pi";
      }
      if (den_ != 1) s += "/" + std::to_string(den_);
      return s;
    }
    case Form::DecimalPi:
      return format_double(multiplier_) + "*pi";
    case Form::Decimal:
      return format_double(value_);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Expr

Expr Expr::num(double v) {
  Expr e;
  e.op = Op::Number;
  e.number = v;
  return e;
}

Expr Expr::pi() {
  Expr e;
  e.op = Op::Pi;
  return e;
}

Expr Expr::param(std::string n) {
  Expr e;
  e.op = Op::Param;
  e.name = std::move(n);
  return e;
}

Expr Expr::unary(Op op, Expr a) {
  Expr e;
  e.op = op;
  e.args.push_back(std::move(a));
  return e;
}

Expr Expr::binary(Op op, Expr a, Expr b) {
  Expr e;
  e.op = op;
  e.args.push_back(std::move(a));
  e.args.push_back(std::move(b));
  return e;
}

double Expr::eval(const std::map<std::string, double, std::less<>>& bindings) const {
  switch (op) {
    case Op::Number: return number;
    case Op::Pi: return kPi;
    case Op::Param: {
      auto it = bindings.find(name);
      if (it == bindings.end()) throw std::out_of_range("unbound parameter '" + name + "'");
      return it->second;
    }
    case Op::Neg: return -args[0].eval(bindings);
    case Op::Add: return args[0].eval(bindings) + args[1].eval(bindings);
    case Op::Sub: return args[0].eval(bindings) - args[1].eval(bindings);
    case Op::Mul: return args[0].eval(bindings) * args[1].eval(bindings);
    case Op::Div: return args[0].eval(bindings) / args[1].eval(bindings);
  }
  return 0.0;
}

namespace {

int precedence(Expr::Op op) {
  switch (op) {
    case Expr::Op::Add:
    case Expr::Op::Sub: return 1;
    case Expr::Op::Mul:
    case Expr::Op::Div: return 2;
    case Expr::Op::Neg: return 3;
    default: return 4;
  }
}

// Parenthesizes so that re-parsing (left-associative binaries, unary minus
// binding tightest) rebuilds the identical tree.
void print_expr(const Expr& e, std::string& out) {
  auto child = [&out](const Expr& c, bool wrap) {
    if (wrap) out += '(';
    print_expr(c, out);
    if (wrap) out += ')';
  };
  switch (e.op) {
    case Expr::Op::Number: out += format_double(e.number); return;
    case Expr::Op::Pi: out += "pi"; return;
    case Expr::Op::Param: out += e.name; return;
    case Expr::Op::Neg:
      out += '-';
      child(e.args[0], precedence(e.args[0].op) < 3);
      return;
    default: {
      const int p = precedence(e.op);
      child(e.args[0], precedence(e.args[0].op) < p);
      switch (e.op) {
        case Expr::Op::Add: out += '+'; break;
        case Expr::Op::Sub: out += '-'; break;
        case Expr::Op::Mul: out += '*'; break;
        default: out += '/'; break;
      }
      child(e.args[1], precedence(e.args[1].op) <= p);
      return;
    }
  }
}

}  // namespace

std::string Expr::to_string() const {
  std::string out;
  print_expr(*this, out);
  return out;
}

// ---------------------------------------------------------------------------
// Program helpers

const GateDef* QasmProgram::find_gate_def(std::string_view name) const {
  for (const auto& d : gate_defs) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

bool QasmProgram::has_builtins() const {
  return std::find(includes.begin(), includes.end(), "qelib1.inc") != includes.end();
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { Ident, Number, String, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double number = 0.0;
  bool integral = false;
  SourcePos pos{};
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.pos = {line_, col_};
      if (i_ >= src_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      const char c = src_[i_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        const std::size_t start = i_;
        while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) ||
                                    src_[i_] == '_')) {
          advance();
        }
        t.kind = Tok::Ident;
        t.text = std::string(src_.substr(start, i_ - start));
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '.' && i_ + 1 < src_.size() &&
                  std::isdigit(static_cast<unsigned char>(src_[i_ + 1])))) {
        lex_number(t);
      } else if (c == '"') {
        advance();
        const std::size_t start = i_;
        while (i_ < src_.size() && src_[i_] != '"' && src_[i_] != '\n') advance();
        if (i_ >= src_.size() || src_[i_] != '"') {
          throw ParseError(t.pos, "unterminated string literal");
        }
        t.kind = Tok::String;
        t.text = std::string(src_.substr(start, i_ - start));
        advance();
      } else if (c == '-' && i_ + 1 < src_.size() && src_[i_ + 1] == '>') {
        t.kind = Tok::Symbol;
        t.text = "->";
        advance();
        advance();
      } else if (std::string_view(";,()[]{}+-*/^").find(c) != std::string_view::npos) {
        t.kind = Tok::Symbol;
        t.text = std::string(1, c);
        advance();
      } else {
        throw ParseError(t.pos, std::string("unexpected character '") + c + "'");
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void advance() {
    if (src_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip_space() {
    while (i_ < src_.size()) {
      const char c = src_[i_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && i_ + 1 < src_.size() && src_[i_ + 1] == '/') {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  void lex_number(Token& t) {
    const std::size_t start = i_;
    bool integral = true;
    auto digits = [&] {
      while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) advance();
    };
    digits();
    if (i_ < src_.size() && src_[i_] == '.') {
      integral = false;
      advance();
      digits();
    }
    if (i_ < src_.size() && (src_[i_] == 'e' || src_[i_] == 'E')) {
      std::size_t j = i_ + 1;
      if (j < src_.size() && (src_[j] == '+' || src_[j] == '-')) ++j;
      if (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) {
        integral = false;
        while (i_ < j) advance();
        digits();
      }
    }
    t.kind = Tok::Number;
    t.text = std::string(src_.substr(start, i_ - start));
    t.integral = integral;
    const char* b = t.text.data();
    auto [p, ec] = std::from_chars(b, b + t.text.size(), t.number);
    if (ec != std::errc{}) throw ParseError(t.pos, "invalid number '" + t.text + "'");
  }

  std::string_view src_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  QasmProgram run() {
    QasmProgram prog;
    prog.includes.clear();
    expect_ident("OPENQASM");
    const Token& v = peek();
    if (v.kind != Tok::Number) fail(v, "expected version number");
    if (v.text != "2.0" && v.text != "2") {
      throw ParseError(v.pos, "unsupported OPENQASM version '" + v.text + "'");
    }
    ++pos_;
    expect_symbol(";");

    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (t.kind != Tok::Ident) fail(t, "expected statement");
      if (t.text == "include") {
        parse_include(prog);
      } else if (t.text == "gate") {
        parse_gate_def(prog);
      } else if (t.text == "qreg" || t.text == "creg") {
        parse_register(prog);
      } else if (t.text == "measure" || t.text == "reset" || t.text == "if" ||
                 t.text == "opaque" || t.text == "OPENQASM") {
        throw ParseError(t.pos, "'" + t.text + "' is not supported");
      } else {
        parse_statement(prog);
      }
    }
    return prog;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }

  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  [[noreturn]] static void fail(const Token& t, const std::string& what) {
    if (t.kind == Tok::End) throw ParseError(t.pos, what + ", found end of input");
    throw ParseError(t.pos, what + ", found '" + t.text + "'");
  }

  bool at_symbol(std::string_view s) const {
    return peek().kind == Tok::Symbol && peek().text == s;
  }

  void expect_symbol(std::string_view s) {
    if (!at_symbol(s)) fail(peek(), "expected '" + std::string(s) + "'");
    ++pos_;
  }

  void expect_ident(std::string_view s) {
    if (peek().kind != Tok::Ident || peek().text != s) {
      fail(peek(), "expected '" + std::string(s) + "'");
    }
    ++pos_;
  }

  const Token& identifier(const char* what) {
    if (peek().kind != Tok::Ident) fail(peek(), std::string("expected ") + what);
    return next();
  }

  std::size_t integer(const char* what) {
    const Token& t = peek();
    if (t.kind != Tok::Number || !t.integral) fail(t, std::string("expected ") + what);
    ++pos_;
    return static_cast<std::size_t>(t.number);
  }

  bool name_taken(const QasmProgram& prog, std::string_view name) const {
    auto same = [&](const Register& r) { return r.name == name; };
    return std::any_of(prog.qregs.begin(), prog.qregs.end(), same) ||
           std::any_of(prog.cregs.begin(), prog.cregs.end(), same) ||
           prog.find_gate_def(name) != nullptr ||
           (prog.has_builtins() && lookup_gate(name).has_value());
  }

  void parse_include(QasmProgram& prog) {
    next();
    const Token& s = peek();
    if (s.kind != Tok::String) fail(s, "expected include file name");
    ++pos_;
    if (s.text != "qelib1.inc") throw ParseError(s.pos, "cannot include '" + s.text + "'");
    expect_symbol(";");
    if (!prog.has_builtins()) prog.includes.push_back(s.text);
  }

  void parse_register(QasmProgram& prog) {
    const bool quantum = next().text == "qreg";
    const Token& name = identifier("register name");
    if (name_taken(prog, name.text)) {
      throw ParseError(name.pos, "'" + name.text + "' is already defined");
    }
    expect_symbol("[");
    const Token& size_tok = peek();
    const std::size_t size = integer("register size");
    expect_symbol("]");
    expect_symbol(";");
    if (quantum && size == 0) {
      throw ParseError(size_tok.pos, "quantum register '" + name.text + "' must be non-empty");
    }
    (quantum ? prog.qregs : prog.cregs).push_back({name.text, size});
  }

  std::vector<std::string> id_list(const char* what) {
    std::vector<std::string> out;
    out.push_back(identifier(what).text);
    while (at_symbol(",")) {
      ++pos_;
      out.push_back(identifier(what).text);
    }
    return out;
  }

  void parse_gate_def(QasmProgram& prog) {
    next();
    const Token& name = identifier("gate name");
    if (name_taken(prog, name.text)) {
      throw ParseError(name.pos, "'" + name.text + "' is already defined");
    }
    GateDef def;
    def.name = name.text;
    if (at_symbol("(")) {
      ++pos_;
      if (!at_symbol(")")) def.params = id_list("parameter name");
      expect_symbol(")");
    }
    const Token& args_tok = peek();
    def.args = id_list("gate argument");
    check_unique(def.params, args_tok);
    check_unique(def.args, args_tok);
    expect_symbol("{");
    while (!at_symbol("}")) {
      const Token& g = peek();
      if (g.kind == Tok::End) fail(g, "expected '}'");
      def.body.push_back(parse_body_statement(prog, def));
    }
    ++pos_;
    prog.gate_defs.push_back(std::move(def));
  }

  static void check_unique(const std::vector<std::string>& names, const Token& at) {
    std::set<std::string> seen;
    for (const auto& n : names) {
      if (!seen.insert(n).second) throw ParseError(at.pos, "duplicate name '" + n + "'");
    }
  }

  BodyStatement parse_body_statement(const QasmProgram& prog, const GateDef& def) {
    const Token& g = identifier("gate name");
    BodyStatement st;
    st.gate_name = g.text;
    const auto kind = prog.has_builtins() ? lookup_gate(g.text) : std::nullopt;
    if (!kind) {
      if (prog.find_gate_def(g.text)) {
        throw ParseError(g.pos, "'" + g.text + "' cannot be used inside a gate definition");
      }
      throw ParseError(g.pos, "'" + g.text + "' is not defined in this scope");
    }
    if (at_symbol("(")) {
      ++pos_;
      if (!at_symbol(")")) {
        st.params.push_back(expression(&def));
        while (at_symbol(",")) {
          ++pos_;
          st.params.push_back(expression(&def));
        }
      }
      expect_symbol(")");
    }
    const Token& first = peek();
    st.args = id_list("gate argument");
    for (const auto& a : st.args) {
      if (std::find(def.args.begin(), def.args.end(), a) == def.args.end()) {
        throw ParseError(first.pos, "'" + a + "' is not defined in this scope");
      }
    }
    check_signature(g, *kind, st.params.size(), st.args.size());
    std::set<std::string> seen(st.args.begin(), st.args.end());
    if (seen.size() != st.args.size()) throw ParseError(first.pos, "duplicate qubit argument");
    expect_symbol(";");
    return st;
  }

  static void check_signature(const Token& g, GateKind kind, std::size_t nparams,
                              std::size_t nqubits) {
    const auto& info = gate_info(kind);
    if (nparams != info.num_params) {
      throw ParseError(g.pos, "'" + g.text + "' takes " + std::to_string(info.num_params) +
                                  " parameter" + (info.num_params == 1 ? "" : "s") +
                                  ", but received " + std::to_string(nparams));
    }
    if (info.num_qubits != 0 && nqubits != info.num_qubits) {
      throw ParseError(g.pos, "'" + g.text + "' takes " + std::to_string(info.num_qubits) +
                                  " qubit argument" + (info.num_qubits == 1 ? "" : "s") +
                                  ", but received " + std::to_string(nqubits));
    }
  }

  void parse_statement(QasmProgram& prog) {
    const Token& g = next();
    QasmStatement st;
    st.gate_name = g.text;
    st.pos = g.pos;

    std::size_t expected_params = 0;
    std::size_t expected_qubits = 0;
    const auto kind = prog.has_builtins() ? lookup_gate(g.text) : std::nullopt;
    if (kind) {
      expected_params = gate_info(*kind).num_params;
      expected_qubits = gate_info(*kind).num_qubits;
    } else if (const GateDef* def = prog.find_gate_def(g.text)) {
      expected_params = def->params.size();
      expected_qubits = def->args.size();
    } else {
      throw ParseError(g.pos, "'" + g.text + "' is not defined in this scope");
    }

    if (at_symbol("(")) {
      const Token& open = next();
      if (!at_symbol(")")) {
        st.params.push_back(constant_param(open));
        while (at_symbol(",")) {
          ++pos_;
          st.params.push_back(constant_param(open));
        }
      }
      expect_symbol(")");
    }

    const bool barrier = kind == GateKind::Barrier;
    const Token& first = peek();
    parse_operand(prog, st, barrier);
    while (at_symbol(",")) {
      ++pos_;
      parse_operand(prog, st, barrier);
    }

    if (st.params.size() != expected_params) {
      throw ParseError(g.pos, "'" + g.text + "' takes " + std::to_string(expected_params) +
                                  " parameter" + (expected_params == 1 ? "" : "s") +
                                  ", but received " + std::to_string(st.params.size()));
    }
    if (!barrier && st.qubit_operands.size() != expected_qubits) {
      throw ParseError(g.pos, "'" + g.text + "' takes " + std::to_string(expected_qubits) +
                                  " qubit argument" + (expected_qubits == 1 ? "" : "s") +
                                  ", but received " +
                                  std::to_string(st.qubit_operands.size()));
    }
    for (std::size_t i = 0; i < st.qubit_operands.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (st.qubit_operands[i] == st.qubit_operands[j]) {
          const auto& o = st.qubit_operands[i];
          throw ParseError(first.pos, "duplicate qubit argument '" + o.reg + "[" +
                                          std::to_string(o.index) + "]'");
        }
      }
    }
    expect_symbol(";");
    prog.statements.push_back(std::move(st));
  }

  void parse_operand(const QasmProgram& prog, QasmStatement& st, bool allow_whole) {
    const Token& r = identifier("qubit argument");
    const Register* reg = nullptr;
    for (const auto& q : prog.qregs) {
      if (q.name == r.text) reg = &q;
    }
    if (!reg) {
      const bool classical = std::any_of(prog.cregs.begin(), prog.cregs.end(),
                                         [&](const Register& c) { return c.name == r.text; });
      if (classical) throw ParseError(r.pos, "'" + r.text + "' is not a quantum register");
      throw ParseError(r.pos, "'" + r.text + "' is not defined in this scope");
    }
    if (!at_symbol("[")) {
      if (!allow_whole) fail(peek(), "expected '['");
      for (std::size_t i = 0; i < reg->size; ++i) st.qubit_operands.push_back({reg->name, i});
      return;
    }
    ++pos_;
    const Token& idx_tok = peek();
    const std::size_t idx = integer("qubit index");
    expect_symbol("]");
    if (idx >= reg->size) {
      throw ParseError(idx_tok.pos, "index " + std::to_string(idx) +
                                        " out of range for register '" + reg->name +
                                        "' of size " + std::to_string(reg->size));
    }
    st.qubit_operands.push_back({reg->name, idx});
  }

  ParamExpr constant_param(const Token& at) {
    const Token& start = peek();
    Expr e = expression(nullptr);
    const double v = e.eval();
    if (!std::isfinite(v)) throw ParseError(start.pos, "parameter evaluates to a non-finite value");
    (void)at;
    // `<m>*pi` and `-<m>*pi` keep the literal multiplier; plain literals stay
    // decimal. Anything else is normalized.
    if (e.op == Expr::Op::Mul && e.args[1].op == Expr::Op::Pi) {
      const Expr& lhs = e.args[0];
      if (lhs.op == Expr::Op::Number) return ParamExpr::pi_multiple(lhs.number);
      if (lhs.op == Expr::Op::Neg && lhs.args[0].op == Expr::Op::Number) {
        return ParamExpr::pi_multiple(-lhs.args[0].number);
      }
    }
    if (e.op == Expr::Op::Number ||
        (e.op == Expr::Op::Neg && e.args[0].op == Expr::Op::Number)) {
      return ParamExpr::decimal(v);
    }
    return ParamExpr::from_value(v);
  }

  Expr expression(const GateDef* scope) {
    Expr lhs = term(scope);
    while (at_symbol("+") || at_symbol("-")) {
      const auto op = next().text == "+" ? Expr::Op::Add : Expr::Op::Sub;
      lhs = Expr::binary(op, std::move(lhs), term(scope));
    }
    return lhs;
  }

  Expr term(const GateDef* scope) {
    Expr lhs = unary(scope);
    while (at_symbol("*") || at_symbol("/")) {
      const auto op = next().text == "*" ? Expr::Op::Mul : Expr::Op::Div;
      lhs = Expr::binary(op, std::move(lhs), unary(scope));
    }
    return lhs;
  }

  Expr unary(const GateDef* scope) {
    if (at_symbol("-")) {
      ++pos_;
      return Expr::unary(Expr::Op::Neg, unary(scope));
    }
    if (at_symbol("+")) {
      ++pos_;
      return unary(scope);
    }
    return primary(scope);
  }

  Expr primary(const GateDef* scope) {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      ++pos_;
      return Expr::num(t.number);
    }
    if (t.kind == Tok::Ident) {
      ++pos_;
      if (t.text == "pi") return Expr::pi();
      if (scope && std::find(scope->params.begin(), scope->params.end(), t.text) !=
                       scope->params.end()) {
        return Expr::param(t.text);
      }
      throw ParseError(t.pos, "'" + t.text + "' is not defined in this scope");
    }
    if (at_symbol("(")) {
      ++pos_;
      Expr e = expression(scope);
      expect_symbol(")");
      return e;
    }
    fail(t, "expected expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

QasmProgram parse(std::string_view source) {
  return Parser(Lexer(source).run()).run();
}

// ---------------------------------------------------------------------------
// Printer

namespace {

void print_params(const std::vector<ParamExpr>& params, std::string& out) {
  if (params.empty()) return;
  out += '(';
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ',';
    out += params[i].to_string();
  }
  out += ')';
}

}  // namespace

std::string print_statement(const QasmStatement& st) {
  std::string out = st.gate_name;
  print_params(st.params, out);
  out += ' ';
  for (std::size_t i = 0; i < st.qubit_operands.size(); ++i) {
    if (i) out += ',';
    out += st.qubit_operands[i].reg;
    out += '[';
    out += std::to_string(st.qubit_operands[i].index);
    out += ']';
  }
  out += ';';
  return out;
}

std::string print(const QasmProgram& program) {
  std::string out = "OPENQASM " + program.version + ";\n";
  for (const auto& inc : program.includes) out += "include \"" + inc + "\";\n";
  for (const auto& def : program.gate_defs) {
    out += "gate " + def.name;
    if (!def.params.empty()) {
      out += '(';
      for (std::size_t i = 0; i < def.params.size(); ++i) {
        if (i) out += ',';
        out += def.params[i];
      }
      out += ')';
    }
    out += ' ';
    for (std::size_t i = 0; i < def.args.size(); ++i) {
      if (i) out += ',';
      out += def.args[i];
    }
    out += " {\n";
    for (const auto& b : def.body) {
      out += "  " + b.gate_name;
      if (!b.params.empty()) {
        out += '(';
        for (std::size_t i = 0; i < b.params.size(); ++i) {
          if (i) out += ',';
          out += b.params[i].to_string();
        }
        out += ')';
      }
      out += ' ';
      for (std::size_t i = 0; i < b.args.size(); ++i) {
        if (i) out += ',';
        out += b.args[i];
      }
      out += ";\n";
    }
    out += "}\n";
  }
  for (const auto& r : program.qregs) out += "qreg " + r.name + "[" + std::to_string(r.size) + "];\n";
  for (const auto& r : program.cregs) out += "creg " + r.name + "[" + std::to_string(r.size) + "];\n";
  for (const auto& st : program.statements) {
    out += print_statement(st);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

bool expr_uses_only(const Expr& e, const std::vector<std::string>& params) {
  if (e.op == Expr::Op::Param) {
    return std::find(params.begin(), params.end(), e.name) != params.end();
  }
  return std::all_of(e.args.begin(), e.args.end(),
                     [&](const Expr& a) { return expr_uses_only(a, params); });
}

}  // namespace

std::vector<Violation> validate(const QasmProgram& program) {
  std::vector<Violation> out;
  auto program_rule = [&](std::string rule) { out.push_back({std::nullopt, std::move(rule)}); };

  std::set<std::string> names;
  for (const auto* regs : {&program.qregs, &program.cregs}) {
    for (const auto& r : *regs) {
      if (!names.insert(r.name).second) program_rule("duplicate register name");
    }
  }
  for (const auto& r : program.qregs) {
    if (r.size == 0) program_rule("empty quantum register");
  }

  const bool builtins = program.has_builtins();
  std::set<std::string> def_names;
  for (const auto& def : program.gate_defs) {
    if (builtins && lookup_gate(def.name)) program_rule("gate definition shadows builtin");
    if (!def_names.insert(def.name).second) program_rule("duplicate gate definition");
    for (const auto& b : def.body) {
      const auto kind = builtins ? lookup_gate(b.gate_name) : std::nullopt;
      if (!kind) {
        program_rule("non-builtin gate in definition");
        continue;
      }
      const auto& info = gate_info(*kind);
      if (info.num_params != b.params.size()) program_rule("parameter count mismatch in definition");
      if (info.num_qubits != 0 && info.num_qubits != b.args.size()) {
        program_rule("arity mismatch in definition");
      }
      for (const auto& a : b.args) {
        if (std::find(def.args.begin(), def.args.end(), a) == def.args.end()) {
          program_rule("undeclared gate argument");
        }
      }
      for (const auto& p : b.params) {
        if (!expr_uses_only(p, def.params)) program_rule("undeclared gate parameter");
      }
    }
  }

  for (std::size_t i = 0; i < program.statements.size(); ++i) {
    const auto& st = program.statements[i];
    auto rule = [&](std::string r) { out.push_back({i, std::move(r)}); };
    std::size_t nparams = 0;
    std::size_t nqubits = 0;
    bool barrier = false;
    if (auto kind = builtins ? lookup_gate(st.gate_name) : std::nullopt) {
      nparams = gate_info(*kind).num_params;
      nqubits = gate_info(*kind).num_qubits;
      barrier = *kind == GateKind::Barrier;
    } else if (const GateDef* def = program.find_gate_def(st.gate_name)) {
      nparams = def->params.size();
      nqubits = def->args.size();
    } else {
      rule("unknown gate");
      continue;
    }
    if (st.params.size() != nparams) rule("parameter count mismatch");
    if (barrier ? st.qubit_operands.empty() : st.qubit_operands.size() != nqubits) {
      rule("arity mismatch");
    }
    for (const auto& p : st.params) {
      if (!std::isfinite(p.value())) rule("non-finite parameter");
    }
    for (std::size_t a = 0; a < st.qubit_operands.size(); ++a) {
      const auto& o = st.qubit_operands[a];
      auto reg = std::find_if(program.qregs.begin(), program.qregs.end(),
                              [&](const Register& r) { return r.name == o.reg; });
      if (reg == program.qregs.end()) {
        rule("undeclared register");
      } else if (o.index >= reg->size) {
        rule("index out of range");
      }
      for (std::size_t b = 0; b < a; ++b) {
        if (st.qubit_operands[b] == o) {
          rule("repeated qubit operand");
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace crossqasm
