#pragma once

// AST of imperative scene programs.
//
// Nodes live in arenas owned by an immutable, shared Ast. Every numeric
// literal and every facing expression is a parameter: the node stores a
// ParamId and the value lives in Program::params, so an edit copies the
// parameter table and shares the tree.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "scenelayout/geometry.hpp"

namespace scenelayout::lang {

struct SourceSpan {
    int line = 0;    // 1-based
    int column = 0;  // 1-based
    std::size_t begin = 0;
    std::size_t end = 0;
};

enum class Attr { Min, Max, Center, Size };
enum class Axis { X = 0, Y = 1, Z = 2 };

using ExprId = std::uint32_t;
using StmtId = std::uint32_t;
using ParamId = std::uint32_t;

struct NumberLit {
    ParamId param;
};
struct VarRef {
    std::string name;
};
struct AttrRef {
    std::string target;  // object, loop element or `scene`
    Attr attr;
    Axis axis;
};
struct Negate {
    ExprId operand;
};
struct BinaryOp {
    char op;  // + - * /
    ExprId lhs;
    ExprId rhs;
};

struct ExprNode {
    std::variant<NumberLit, VarRef, AttrRef, Negate, BinaryOp> node;
    SourceSpan span;
};

// name = expr
struct Binding {
    std::string name;
    ExprId value;
};
// name = group("pattern")
struct GroupBinding {
    std::string name;
    std::string pattern;
};
// target.attr.axis = expr
struct AttrAssign {
    std::string target;
    Attr attr;
    Axis axis;
    ExprId value;
};
// target.facing = <orientation expression>
struct FacingAssign {
    std::string target;
    ParamId param;
};
// for index, element in enumerate(group): body
struct ForLoop {
    std::string index;
    std::string element;
    std::string group;
    std::vector<StmtId> body;
};

struct StmtNode {
    std::variant<Binding, GroupBinding, AttrAssign, FacingAssign, ForLoop> node;
    SourceSpan span;
};

struct Ast {
    std::vector<ExprNode> exprs;
    std::vector<StmtNode> stmts;
    std::vector<StmtId> top;
};

enum class ParamKind { FloatLiteral, OrientationExpr };

// A facing expression: a cardinal constant, or a target object optionally
// rotated clockwise by quarter turns.
struct OrientationValue {
    std::optional<Orientation> cardinal;
    std::string target;
    int quarter_turns = 0;  // 0..3, only meaningful with a target

    friend bool operator==(const OrientationValue&, const OrientationValue&) = default;
};

struct ParamRef {
    ParamId id = 0;
    ParamKind kind = ParamKind::FloatLiteral;
    SourceSpan span;
    double number = 0.0;
    OrientationValue orientation;
};

class Program {
public:
    Program();
    Program(std::shared_ptr<const Ast> ast, std::vector<ParamRef> params);

    const Ast& ast() const { return *ast_; }
    const std::vector<ParamRef>& params() const { return params_; }
    std::vector<ParamRef>& mutable_params() { return params_; }

    const ExprNode& expr(ExprId id) const { return ast_->exprs[id]; }
    const StmtNode& stmt(StmtId id) const { return ast_->stmts[id]; }
    bool empty() const { return ast_->top.empty(); }

private:
    std::shared_ptr<const Ast> ast_;
    std::vector<ParamRef> params_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

class UnknownIdentifier : public std::runtime_error {
public:
    UnknownIdentifier(const std::string& name, const SourceSpan& span);
    const std::string& name() const { return name_; }
    const SourceSpan& span() const { return span_; }

private:
    std::string name_;
    SourceSpan span_;
};

std::string_view to_string(Attr a);
std::string_view to_string(Axis a);

}  // namespace scenelayout::lang
