#include "scenelayout/lang/parser.hpp"

#include <cctype>
#include <charconv>
#include <string>
#include <vector>

namespace scenelayout::lang {

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

UnknownIdentifier::UnknownIdentifier(const std::string& name, const SourceSpan& span)
    : std::runtime_error(std::to_string(span.line) + ":" + std::to_string(span.column) + ": unknown identifier '" +
                         name + "'"),
      name_(name),
      span_(span) {}

Program::Program() : ast_(std::make_shared<Ast>()) {}

Program::Program(std::shared_ptr<const Ast> ast, std::vector<ParamRef> params)
    : ast_(std::move(ast)), params_(std::move(params)) {}

std::string_view to_string(Attr a) {
    switch (a) {
        case Attr::Min: return "min";
        case Attr::Max: return "max";
        case Attr::Center: return "center";
        case Attr::Size: return "size";
    }
    return "min";
}

std::string_view to_string(Axis a) {
    switch (a) {
        case Axis::X: return "x";
        case Axis::Y: return "y";
        case Axis::Z: return "z";
    }
    return "x";
}

namespace {

enum class Tok { Ident, Number, String, Op, Newline, Indent, Dedent, End };

struct Token {
    Tok kind;
    std::string text;
    double number = 0.0;
    SourceSpan span;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        indents_.push_back(0);
        bool at_line_start = true;
        while (pos_ < src_.size()) {
            if (at_line_start && depth_ == 0) {
                if (handle_indentation()) {
                    at_line_start = false;
                } else {
                    continue;  // blank or comment-only line consumed
                }
            }
            const char c = src_[pos_];
            if (c == '\n') {
                if (depth_ > 0) {
                    advance();
                    continue;
                }
                newline_token();
                advance();
                at_line_start = true;
                continue;
            }
            if (c == ' ' || c == '\r') {
                advance();
                continue;
            }
            if (c == '\t') fail("tab characters are not allowed");
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
                continue;
            }
            if (c == '\\') {
                advance();
                while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\r')) advance();
                if (pos_ >= src_.size() || src_[pos_] != '\n') fail("backslash must end the line");
                advance();
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                lex_ident();
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c)) ||
                (c == '.' && pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
                lex_number();
                continue;
            }
            if (c == '"' || c == '\'') {
                lex_string(c);
                continue;
            }
            if (std::string_view("=+-*/(),:.;").find(c) != std::string_view::npos) {
                if (c == '(') ++depth_;
                if (c == ')' && depth_ > 0) --depth_;
                Token t{Tok::Op, std::string(1, c), 0.0, span_here(1)};
                advance();
                out_.push_back(std::move(t));
                continue;
            }
            fail(std::string("unexpected character '") + c + "'");
        }
        newline_token();
        while (indents_.size() > 1) {
            indents_.pop_back();
            out_.push_back(Token{Tok::Dedent, "", 0.0, span_here(0)});
        }
        out_.push_back(Token{Tok::End, "", 0.0, span_here(0)});
        return std::move(out_);
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

    SourceSpan span_here(std::size_t len) const { return {line_, col_, pos_, pos_ + len}; }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void newline_token() {
        if (!out_.empty() && out_.back().kind != Tok::Newline && out_.back().kind != Tok::Indent &&
            out_.back().kind != Tok::Dedent) {
            out_.push_back(Token{Tok::Newline, "", 0.0, span_here(0)});
        }
    }

    // Returns false when the line is blank or a comment and was consumed.
    bool handle_indentation() {
        std::size_t width = 0;
        while (pos_ < src_.size() && src_[pos_] == ' ') {
            ++width;
            advance();
        }
        if (pos_ < src_.size() && src_[pos_] == '\t') fail("tab characters are not allowed");
        if (pos_ >= src_.size()) return false;
        const char c = src_[pos_];
        if (c == '\n' || c == '\r' || c == '#') {
            while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            if (pos_ < src_.size()) advance();
            return false;
        }
        if (width > indents_.back()) {
            indents_.push_back(width);
            out_.push_back(Token{Tok::Indent, "", 0.0, span_here(0)});
        } else {
            while (width < indents_.back()) {
                indents_.pop_back();
                out_.push_back(Token{Tok::Dedent, "", 0.0, span_here(0)});
            }
            if (width != indents_.back()) fail("inconsistent indentation");
        }
        return true;
    }

    void lex_ident() {
        const std::size_t start = pos_;
        const int line = line_, col = col_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            advance();
        }
        out_.push_back(Token{Tok::Ident, std::string(src_.substr(start, pos_ - start)), 0.0, {line, col, start, pos_}});
    }

    void lex_number() {
        const std::size_t start = pos_;
        const int line = line_, col = col_;
        auto digits = [&] {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        };
        digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            advance();
            digits();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
            if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
                while (pos_ < look) advance();
                digits();
            }
        }
        const std::string_view text = src_.substr(start, pos_ - start);
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size()) throw ParseError("malformed number", line, col);
        out_.push_back(Token{Tok::Number, std::string(text), value, {line, col, start, pos_}});
    }

    void lex_string(char quote) {
        const int line = line_, col = col_;
        const std::size_t start = pos_;
        advance();
        std::string text;
        while (pos_ < src_.size() && src_[pos_] != quote) {
            if (src_[pos_] == '\n') throw ParseError("unterminated string", line, col);
            text.push_back(src_[pos_]);
            advance();
        }
        if (pos_ >= src_.size()) throw ParseError("unterminated string", line, col);
        advance();
        out_.push_back(Token{Tok::String, std::move(text), 0.0, {line, col, start, pos_}});
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    int depth_ = 0;
    std::vector<std::size_t> indents_;
    std::vector<Token> out_;
};

std::optional<Orientation> cardinal_keyword(std::string_view s) {
    if (s == "NORTH") return Orientation::North;
    if (s == "EAST") return Orientation::East;
    if (s == "SOUTH") return Orientation::South;
    if (s == "WEST") return Orientation::West;
    return std::nullopt;
}

std::optional<Attr> attr_keyword(std::string_view s) {
    if (s == "min") return Attr::Min;
    if (s == "max") return Attr::Max;
    if (s == "center") return Attr::Center;
    if (s == "size") return Attr::Size;
    return std::nullopt;
}

std::optional<Axis> axis_keyword(std::string_view s) {
    if (s == "x") return Axis::X;
    if (s == "y") return Axis::Y;
    if (s == "z") return Axis::Z;
    return std::nullopt;
}

bool reserved(std::string_view s) {
    return s == "for" || s == "in" || s == "group" || s == "enumerate" || s == "enum" || s == "rotate" ||
           cardinal_keyword(s).has_value();
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)), ast_(std::make_shared<Ast>()) {}

    Program run() {
        while (peek().kind != Tok::End) {
            if (peek().kind == Tok::Newline) {
                ++pos_;
                continue;
            }
            if (peek().kind == Tok::Indent) fail(peek(), "unexpected indentation");
            statement(ast_->top);
        }
        return Program(std::move(ast_), std::move(params_));
    }

private:
    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    const Token& next() { return toks_[pos_++]; }

    [[noreturn]] static void fail(const Token& t, const std::string& msg) {
        throw ParseError(msg, t.span.line, t.span.column);
    }

    bool is_op(char c, std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == Tok::Op && t.text.size() == 1 && t.text[0] == c;
    }

    const Token& expect_op(char c) {
        if (!is_op(c)) fail(peek(), std::string("expected '") + c + "'");
        return next();
    }

    const Token& expect_ident(const char* what) {
        if (peek().kind != Tok::Ident) fail(peek(), std::string("expected ") + what);
        return next();
    }

    void expect_keyword(std::string_view kw) {
        if (peek().kind != Tok::Ident || peek().text != kw) fail(peek(), "expected '" + std::string(kw) + "'");
        ++pos_;
    }

    void expect_line_end() {
        if (peek().kind == Tok::Newline) {
            ++pos_;
            return;
        }
        if (peek().kind == Tok::End || peek().kind == Tok::Dedent) return;
        fail(peek(), "expected end of line");
    }

    StmtId add_stmt(StmtNode node) {
        ast_->stmts.push_back(std::move(node));
        return static_cast<StmtId>(ast_->stmts.size() - 1);
    }

    ExprId add_expr(ExprNode node) {
        ast_->exprs.push_back(std::move(node));
        return static_cast<ExprId>(ast_->exprs.size() - 1);
    }

    ParamId add_param(ParamKind kind, const SourceSpan& span) {
        ParamRef p;
        p.id = static_cast<ParamId>(params_.size());
        p.kind = kind;
        p.span = span;
        params_.push_back(p);
        return p.id;
    }

    void statement(std::vector<StmtId>& into) {
        if (peek().kind == Tok::Ident && peek().text == "for") {
            into.push_back(for_loop());
            return;
        }
        simple_line(into);
    }

    void simple_line(std::vector<StmtId>& into) {
        into.push_back(simple());
        while (is_op(';')) {
            ++pos_;
            if (peek().kind == Tok::Newline || peek().kind == Tok::End || peek().kind == Tok::Dedent) break;
            into.push_back(simple());
        }
        expect_line_end();
    }

    StmtId for_loop() {
        const Token& kw = next();
        ForLoop loop;
        loop.index = identifier_name(expect_ident("loop index name"));
        expect_op(',');
        loop.element = identifier_name(expect_ident("loop element name"));
        expect_keyword("in");
        if (peek().kind != Tok::Ident || (peek().text != "enumerate" && peek().text != "enum")) {
            fail(peek(), "expected 'enumerate'");
        }
        ++pos_;
        expect_op('(');
        loop.group = expect_ident("group name").text;
        expect_op(')');
        expect_op(':');
        if (peek().kind == Tok::Newline) {
            ++pos_;
            if (peek().kind != Tok::Indent) fail(peek(), "expected an indented loop body");
            ++pos_;
            while (peek().kind != Tok::Dedent && peek().kind != Tok::End) {
                if (peek().kind == Tok::Newline) {
                    ++pos_;
                    continue;
                }
                statement(loop.body);
            }
            if (peek().kind == Tok::Dedent) ++pos_;
        } else {
            simple_line(loop.body);
        }
        if (loop.body.empty()) fail(kw, "empty loop body");
        return add_stmt(StmtNode{std::move(loop), kw.span});
    }

    std::string identifier_name(const Token& t) {
        if (reserved(t.text) || t.text == "scene") fail(t, "'" + t.text + "' is reserved");
        return t.text;
    }

    StmtId simple() {
        const Token& head = expect_ident("a statement");
        if (reserved(head.text)) fail(head, "unexpected '" + head.text + "'");
        if (is_op('=')) {
            ++pos_;
            if (head.text == "scene") fail(head, "'scene' cannot be rebound");
            if (peek().kind == Tok::Ident && peek().text == "group" && is_op('(', 1)) {
                pos_ += 2;
                if (peek().kind != Tok::String) fail(peek(), "group() expects a quoted name pattern");
                std::string pattern = next().text;
                expect_op(')');
                return add_stmt(StmtNode{GroupBinding{head.text, std::move(pattern)}, head.span});
            }
            const ExprId value = expr();
            return add_stmt(StmtNode{Binding{head.text, value}, head.span});
        }
        expect_op('.');
        const Token& attr_tok = expect_ident("an attribute");
        if (attr_tok.text == "facing") {
            expect_op('=');
            return add_stmt(StmtNode{FacingAssign{head.text, facing_expr()}, head.span});
        }
        const auto attr = attr_keyword(attr_tok.text);
        if (!attr) fail(attr_tok, "unknown attribute '" + attr_tok.text + "'");
        if (*attr == Attr::Size) fail(attr_tok, "'size' is read-only");
        expect_op('.');
        const Token& axis_tok = expect_ident("an axis");
        const auto axis = axis_keyword(axis_tok.text);
        if (!axis) fail(axis_tok, "invalid axis '" + axis_tok.text + "'");
        expect_op('=');
        const ExprId value = expr();
        return add_stmt(StmtNode{AttrAssign{head.text, *attr, *axis, value}, head.span});
    }

    ParamId facing_expr() {
        const Token& t = expect_ident("a facing direction or object");
        if (const auto c = cardinal_keyword(t.text)) {
            const ParamId id = add_param(ParamKind::OrientationExpr, t.span);
            params_[id].orientation.cardinal = *c;
            return id;
        }
        if (t.text == "rotate") {
            expect_op('(');
            const Token& target = expect_ident("an object");
            if (reserved(target.text)) fail(target, "rotate() expects an object");
            expect_op(',');
            if (peek().kind != Tok::Number) fail(peek(), "rotate() expects 90, 180 or 270");
            const Token& deg = next();
            int turns = 0;
            if (deg.number == 90.0) turns = 1;
            else if (deg.number == 180.0) turns = 2;
            else if (deg.number == 270.0) turns = 3;
            else fail(deg, "rotate() expects 90, 180 or 270");
            const Token& close = expect_op(')');
            SourceSpan span = t.span;
            span.end = close.span.end;
            const ParamId id = add_param(ParamKind::OrientationExpr, span);
            params_[id].orientation.target = target.text;
            params_[id].orientation.quarter_turns = turns;
            return id;
        }
        if (reserved(t.text) || t.text == "scene") fail(t, "cannot face '" + t.text + "'");
        const ParamId id = add_param(ParamKind::OrientationExpr, t.span);
        params_[id].orientation.target = t.text;
        return id;
    }

    ExprId expr() {
        ExprId lhs = term();
        while (is_op('+') || is_op('-')) {
            const Token& op = next();
            const ExprId rhs = term();
            lhs = add_expr(ExprNode{BinaryOp{op.text[0], lhs, rhs}, joined(lhs, rhs)});
        }
        return lhs;
    }

    ExprId term() {
        ExprId lhs = unary();
        while (is_op('*') || is_op('/')) {
            const Token& op = next();
            const ExprId rhs = unary();
            if (op.text[0] == '/') {
                if (const auto* lit = std::get_if<NumberLit>(&ast_->exprs[rhs].node);
                    lit != nullptr && params_[lit->param].number == 0.0) {
                    fail(op, "division by zero");
                }
            }
            lhs = add_expr(ExprNode{BinaryOp{op.text[0], lhs, rhs}, joined(lhs, rhs)});
        }
        return lhs;
    }

    ExprId unary() {
        if (is_op('-')) {
            const Token& minus = next();
            const ExprId operand = unary();
            ExprNode& node = ast_->exprs[operand];
            if (const auto* lit = std::get_if<NumberLit>(&node.node)) {
                ParamRef& p = params_[lit->param];
                p.number = -p.number;
                p.span.begin = minus.span.begin;
                p.span.line = minus.span.line;
                p.span.column = minus.span.column;
                node.span.begin = minus.span.begin;
                node.span.line = minus.span.line;
                node.span.column = minus.span.column;
                return operand;
            }
            SourceSpan span = minus.span;
            span.end = node.span.end;
            return add_expr(ExprNode{Negate{operand}, span});
        }
        return atom();
    }

    ExprId atom() {
        const Token& t = peek();
        if (t.kind == Tok::Number) {
            ++pos_;
            const ParamId id = add_param(ParamKind::FloatLiteral, t.span);
            params_[id].number = t.number;
            return add_expr(ExprNode{NumberLit{id}, t.span});
        }
        if (is_op('(')) {
            ++pos_;
            const ExprId inner = expr();
            expect_op(')');
            return inner;
        }
        if (t.kind == Tok::Ident) {
            ++pos_;
            if (reserved(t.text)) fail(t, "unexpected '" + t.text + "' in expression");
            if (!is_op('.')) return add_expr(ExprNode{VarRef{t.text}, t.span});
            ++pos_;
            const Token& attr_tok = expect_ident("an attribute");
            const auto attr = attr_keyword(attr_tok.text);
            if (!attr) fail(attr_tok, "unknown attribute '" + attr_tok.text + "'");
            expect_op('.');
            const Token& axis_tok = expect_ident("an axis");
            const auto axis = axis_keyword(axis_tok.text);
            if (!axis) fail(axis_tok, "invalid axis '" + axis_tok.text + "'");
            SourceSpan span = t.span;
            span.end = axis_tok.span.end;
            return add_expr(ExprNode{AttrRef{t.text, *attr, *axis}, span});
        }
        fail(t, "expected an expression");
    }

    SourceSpan joined(ExprId a, ExprId b) const {
        SourceSpan s = ast_->exprs[a].span;
        s.end = ast_->exprs[b].span.end;
        return s;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::shared_ptr<Ast> ast_;
    std::vector<ParamRef> params_;
};

}  // namespace

Program parse(std::string_view source) {
    Lexer lexer(source);
    Parser parser(lexer.run());
    return parser.run();
}

}  // namespace scenelayout::lang
