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

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace crossqasm {

struct SourcePos {
  std::size_t line = 0;
  std::size_t column = 0;
  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

/// Raised by `parse`. `message()` is the bare, position-free text (stable
/// across edits of unrelated lines); `what()` prefixes `line:column: `.
class ParseError : public std::runtime_error {
 public:
  ParseError(SourcePos pos, std::string message);

  const std::string& message() const noexcept { return message_; }
  SourcePos position() const noexcept { return pos_; }

 private:
  SourcePos pos_;
  std::string message_;
};

/// A constant gate parameter: its double value and the form it prints in.
///
/// Printing always re-parses to the identical double. Values equal to
/// (num*pi)/den with den <= 16 print as `pi/2`, `-3*pi/4`, ...; values that
/// are an exact double product m*pi print as `<m>*pi`; anything else prints
/// as a plain shortest-round-trip decimal.
class ParamExpr {
 public:
  enum class Form { RationalPi, Decimal, DecimalPi };

  ParamExpr() = default;

  /// Canonical form for an arbitrary value.
  static ParamExpr from_value(double value);
  /// m*pi; rational form when m*pi is one.
  static ParamExpr pi_multiple(double multiplier);
  /// Plain decimal literal; rational form when the value is one.
  static ParamExpr decimal(double value);

  double value() const noexcept { return value_; }
  Form form() const noexcept { return form_; }
  std::int64_t numerator() const noexcept { return num_; }
  std::int64_t denominator() const noexcept { return den_; }
  double multiplier() const noexcept { return multiplier_; }

  std::string to_string() const;

  friend bool operator==(const ParamExpr&, const ParamExpr&) = default;

 private:
  static std::optional<ParamExpr> as_rational(double value);

  Form form_ = Form::RationalPi;
  double value_ = 0.0;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  double multiplier_ = 0.0;
};

/// Arithmetic over numbers, `pi` and gate-definition parameter names.
struct Expr {
  enum class Op { Number, Pi, Param, Neg, Add, Sub, Mul, Div };

  Op op = Op::Number;
  double number = 0.0;
  std::string name;
  std::vector<Expr> args;

  static Expr num(double v);
  static Expr pi();
  static Expr param(std::string n);
  static Expr unary(Op op, Expr a);
  static Expr binary(Op op, Expr a, Expr b);

  /// Throws std::out_of_range for an unbound parameter name.
  double eval(const std::map<std::string, double, std::less<>>& bindings = {}) const;
  std::string to_string() const;

  friend bool operator==(const Expr&, const Expr&) = default;
};

struct Operand {
  std::string reg;
  std::size_t index = 0;
  friend bool operator==(const Operand&, const Operand&) = default;
};

/// A top-level gate application or barrier.
struct QasmStatement {
  std::string gate_name;
  std::vector<ParamExpr> params;
  std::vector<Operand> qubit_operands;
  SourcePos pos{};

  /// Structural equality ignores source positions.
  friend bool operator==(const QasmStatement& a, const QasmStatement& b) {
    return a.gate_name == b.gate_name && a.params == b.params &&
           a.qubit_operands == b.qubit_operands;
  }
};

struct BodyStatement {
  std::string gate_name;
  std::vector<Expr> params;
  std::vector<std::string> args;
  friend bool operator==(const BodyStatement&, const BodyStatement&) = default;
};

struct GateDef {
  std::string name;
  std::vector<std::string> params;
  std::vector<std::string> args;
  std::vector<BodyStatement> body;
  friend bool operator==(const GateDef&, const GateDef&) = default;
};

struct Register {
  std::string name;
  std::size_t size = 0;
  friend bool operator==(const Register&, const Register&) = default;
};

struct QasmProgram {
  std::string version = "2.0";
  std::vector<std::string> includes{"qelib1.inc"};
  std::vector<GateDef> gate_defs;
  std::vector<Register> qregs;
  std::vector<Register> cregs;
  std::vector<QasmStatement> statements;

  const GateDef* find_gate_def(std::string_view name) const;
  bool has_builtins() const;

  friend bool operator==(const QasmProgram&, const QasmProgram&) = default;
};

QasmProgram parse(std::string_view source);
std::string print(const QasmProgram& program);

/// One printed line per statement, without trailing newline.
std::string print_statement(const QasmStatement& statement);

struct Violation {
  /// Statement index, or nullopt for program-level rules.
  std::optional<std::size_t> statement;
  std::string rule;
  friend bool operator==(const Violation&, const Violation&) = default;
};

std::vector<Violation> validate(const QasmProgram& program);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace crossqasm
