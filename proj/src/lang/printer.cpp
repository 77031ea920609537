#include "scenelayout/lang/printer.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

namespace scenelayout::lang {

std::string format_number(double value) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    std::string s(buf.data(), ptr);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

namespace {

std::string_view cardinal_name(Orientation o) {
    switch (o) {
        case Orientation::North: return "NORTH";
        case Orientation::East: return "EAST";
        case Orientation::South: return "SOUTH";
        case Orientation::West: return "WEST";
    }
    return "NORTH";
}

}  // namespace

std::string format_orientation(const OrientationValue& v) {
    if (v.cardinal) return std::string(cardinal_name(*v.cardinal));
    const int turns = ((v.quarter_turns % 4) + 4) % 4;
    if (turns == 0) return v.target;
    return "rotate(" + v.target + ", " + std::to_string(turns * 90) + ")";
}

namespace {

int precedence(const Program& p, ExprId id) {
    const auto& node = p.expr(id).node;
    if (const auto* b = std::get_if<BinaryOp>(&node)) return (b->op == '+' || b->op == '-') ? 1 : 2;
    if (std::holds_alternative<Negate>(node)) return 3;
    if (const auto* n = std::get_if<NumberLit>(&node)) {
        // A negative literal prints with a leading minus, which binds like
        // unary negation.
        return std::signbit(p.params()[n->param].number) ? 3 : 4;
    }
    return 4;
}

class Printer {
public:
    explicit Printer(const Program& p) : p_(p) {}

    std::string run() {
        for (StmtId id : p_.ast().top) stmt(id, 0);
        return out_.str();
    }

private:
    void stmt(StmtId id, int depth) {
        const std::string indent(static_cast<std::size_t>(depth) * 4, ' ');
        const auto& node = p_.stmt(id).node;
        out_ << indent;
        if (const auto* s = std::get_if<Binding>(&node)) {
            out_ << s->name << " = " << expr(s->value) << '\n';
        } else if (const auto* g = std::get_if<GroupBinding>(&node)) {
            out_ << g->name << " = group(\"" << g->pattern << "\")\n";
        } else if (const auto* a = std::get_if<AttrAssign>(&node)) {
            out_ << a->target << '.' << to_string(a->attr) << '.' << to_string(a->axis) << " = " << expr(a->value)
                 << '\n';
        } else if (const auto* f = std::get_if<FacingAssign>(&node)) {
            out_ << f->target << ".facing = " << format_orientation(p_.params()[f->param].orientation) << '\n';
        } else if (const auto* l = std::get_if<ForLoop>(&node)) {
            out_ << "for " << l->index << ", " << l->element << " in enumerate(" << l->group << "):\n";
            for (StmtId b : l->body) stmt(b, depth + 1);
        }
    }

    std::string operand(ExprId id, bool parens) { return parens ? "(" + expr(id) + ")" : expr(id); }

    std::string expr(ExprId id) {
        const auto& node = p_.expr(id).node;
        if (const auto* n = std::get_if<NumberLit>(&node)) return format_number(p_.params()[n->param].number);
        if (const auto* v = std::get_if<VarRef>(&node)) return v->name;
        if (const auto* a = std::get_if<AttrRef>(&node)) {
            return a->target + "." + std::string(to_string(a->attr)) + "." + std::string(to_string(a->axis));
        }
        if (const auto* n = std::get_if<Negate>(&node)) {
            return "-" + operand(n->operand, precedence(p_, n->operand) < 3);
        }
        const auto& b = std::get<BinaryOp>(node);
        const int prec = (b.op == '+' || b.op == '-') ? 1 : 2;
        const std::string lhs = operand(b.lhs, precedence(p_, b.lhs) < prec);
        const std::string rhs = operand(b.rhs, precedence(p_, b.rhs) <= prec);
        return lhs + " " + b.op + " " + rhs;
    }

    const Program& p_;
    std::ostringstream out_;
};

class Differ {
public:
    Differ(const Program& a, const Program& b, CompareMode mode) : a_(a), b_(b), mode_(mode) {}

    std::optional<std::string> run() {
        return stmt_list(a_.ast().top, b_.ast().top, "program");
    }

private:
    std::optional<std::string> stmt_list(const std::vector<StmtId>& xs, const std::vector<StmtId>& ys,
                                         const std::string& where) {
        if (xs.size() != ys.size()) {
            return where + ": statement count " + std::to_string(xs.size()) + " vs " + std::to_string(ys.size());
        }
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (auto d = stmt(xs[i], ys[i], where + "[" + std::to_string(i) + "]")) return d;
        }
        return std::nullopt;
    }

    std::optional<std::string> param(ParamId x, ParamId y, const std::string& where) {
        const ParamRef& px = a_.params()[x];
        const ParamRef& py = b_.params()[y];
        if (px.kind != py.kind) return where + ": parameter kind differs";
        if (mode_ == CompareMode::IgnoreParameterValues) return std::nullopt;
        if (px.kind == ParamKind::FloatLiteral) {
            if (px.number != py.number) {
                return where + ": literal " + format_number(px.number) + " vs " + format_number(py.number);
            }
        } else if (!(px.orientation == py.orientation)) {
            return where + ": facing " + format_orientation(px.orientation) + " vs " +
                   format_orientation(py.orientation);
        }
        return std::nullopt;
    }

    std::optional<std::string> stmt(StmtId x, StmtId y, const std::string& where) {
        const auto& nx = a_.stmt(x).node;
        const auto& ny = b_.stmt(y).node;
        if (nx.index() != ny.index()) return where + ": statement kind differs";
        if (const auto* s = std::get_if<Binding>(&nx)) {
            const auto& t = std::get<Binding>(ny);
            if (s->name != t.name) return where + ": binding name differs";
            return expr(s->value, t.value, where);
        }
        if (const auto* g = std::get_if<GroupBinding>(&nx)) {
            const auto& h = std::get<GroupBinding>(ny);
            if (g->name != h.name || g->pattern != h.pattern) return where + ": group binding differs";
            return std::nullopt;
        }
        if (const auto* s = std::get_if<AttrAssign>(&nx)) {
            const auto& t = std::get<AttrAssign>(ny);
            if (s->target != t.target || s->attr != t.attr || s->axis != t.axis) return where + ": assignment target differs";
            return expr(s->value, t.value, where);
        }
        if (const auto* s = std::get_if<FacingAssign>(&nx)) {
            const auto& t = std::get<FacingAssign>(ny);
            if (s->target != t.target) return where + ": facing target differs";
            return param(s->param, t.param, where);
        }
        const auto& l = std::get<ForLoop>(nx);
        const auto& m = std::get<ForLoop>(ny);
        if (l.index != m.index || l.element != m.element || l.group != m.group) return where + ": loop header differs";
        return stmt_list(l.body, m.body, where + ".body");
    }

    std::optional<std::string> expr(ExprId x, ExprId y, const std::string& where) {
        const auto& nx = a_.expr(x).node;
        const auto& ny = b_.expr(y).node;
        if (nx.index() != ny.index()) return where + ": expression kind differs";
        if (const auto* n = std::get_if<NumberLit>(&nx)) return param(n->param, std::get<NumberLit>(ny).param, where);
        if (const auto* v = std::get_if<VarRef>(&nx)) {
            if (v->name != std::get<VarRef>(ny).name) return where + ": variable differs";
            return std::nullopt;
        }
        if (const auto* a = std::get_if<AttrRef>(&nx)) {
            const auto& b = std::get<AttrRef>(ny);
            if (a->target != b.target || a->attr != b.attr || a->axis != b.axis) return where + ": attribute read differs";
            return std::nullopt;
        }
        if (const auto* n = std::get_if<Negate>(&nx)) return expr(n->operand, std::get<Negate>(ny).operand, where);
        const auto& b = std::get<BinaryOp>(nx);
        const auto& c = std::get<BinaryOp>(ny);
        if (b.op != c.op) return where + ": operator differs";
        if (auto d = expr(b.lhs, c.lhs, where)) return d;
        return expr(b.rhs, c.rhs, where);
    }

    const Program& a_;
    const Program& b_;
    CompareMode mode_;
};

}  // namespace

std::string pretty_print(const Program& program) { return Printer(program).run(); }

std::optional<std::string> structural_diff(const Program& a, const Program& b, CompareMode mode) {
    if (a.params().size() != b.params().size()) return std::string("parameter count differs");
    return Differ(a, b, mode).run();
}

}  // namespace scenelayout::lang
