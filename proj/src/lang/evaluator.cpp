#include "scenelayout/lang/evaluator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_map>
#include <variant>

namespace scenelayout::lang {

EvalError::EvalError(EvalErrorKind kind, const std::string& message, const SourceSpan& span)
    : std::runtime_error(std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message),
      kind_(kind),
      span_(span) {}

std::string_view to_string(EvalErrorKind kind) {
    switch (kind) {
        case EvalErrorKind::UnplacedRead: return "UnplacedRead";
        case EvalErrorKind::UnknownObject: return "UnknownObject";
        case EvalErrorKind::NonFiniteValue: return "NonFiniteValue";
    }
    return "EvalError";
}

namespace {

bool glob_match(std::string_view pattern, std::string_view text) {
    std::size_t p = 0, t = 0, star = std::string_view::npos, mark = 0;
    while (t < text.size()) {
        if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
            ++p;
            ++t;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = t;
        } else if (star != std::string_view::npos) {
            p = star + 1;
            t = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

// ---------------------------------------------------------------- static check

enum class NameKind { Number, Group, Object };

class BindingChecker {
public:
    BindingChecker(const Program& p, const SceneTemplate& t) : p_(p), t_(t) {}

    void run() {
        Scope scope;
        for (StmtId id : p_.ast().top) stmt(id, scope);
    }

private:
    using Scope = std::unordered_map<std::string, NameKind>;

    std::optional<NameKind> lookup(const Scope& scope, const std::string& name) const {
        if (auto it = scope.find(name); it != scope.end()) return it->second;
        if (t_.find(name)) return NameKind::Object;
        return std::nullopt;
    }

    void require_object(const Scope& scope, const std::string& name, const SourceSpan& span, bool allow_scene) const {
        if (allow_scene && name == "scene") return;
        if (lookup(scope, name) != NameKind::Object) throw UnknownIdentifier(name, span);
    }

    void stmt(StmtId id, Scope& scope) {
        const auto& s = p_.stmt(id);
        if (const auto* b = std::get_if<Binding>(&s.node)) {
            expr(b->value, scope);
            scope[b->name] = NameKind::Number;
        } else if (const auto* g = std::get_if<GroupBinding>(&s.node)) {
            scope[g->name] = NameKind::Group;
        } else if (const auto* a = std::get_if<AttrAssign>(&s.node)) {
            expr(a->value, scope);
            require_object(scope, a->target, s.span, false);
        } else if (const auto* f = std::get_if<FacingAssign>(&s.node)) {
            require_object(scope, f->target, s.span, false);
            const ParamRef& param = p_.params()[f->param];
            if (!param.orientation.cardinal) require_object(scope, param.orientation.target, param.span, false);
        } else if (const auto* l = std::get_if<ForLoop>(&s.node)) {
            if (lookup(scope, l->group) != NameKind::Group) throw UnknownIdentifier(l->group, s.span);
            Scope inner = scope;
            inner[l->index] = NameKind::Number;
            inner[l->element] = NameKind::Object;
            for (StmtId b : l->body) stmt(b, inner);
        }
    }

    void expr(ExprId id, const Scope& scope) {
        const auto& e = p_.expr(id);
        if (const auto* v = std::get_if<VarRef>(&e.node)) {
            if (lookup(scope, v->name) != NameKind::Number) throw UnknownIdentifier(v->name, e.span);
        } else if (const auto* a = std::get_if<AttrRef>(&e.node)) {
            require_object(scope, a->target, e.span, true);
        } else if (const auto* n = std::get_if<Negate>(&e.node)) {
            expr(n->operand, scope);
        } else if (const auto* b = std::get_if<BinaryOp>(&e.node)) {
            expr(b->lhs, scope);
            expr(b->rhs, scope);
        }
    }

    const Program& p_;
    const SceneTemplate& t_;
};

// ---------------------------------------------------------------- execution

struct ObjectRef {
    std::size_t index;
};
using Group = std::vector<std::size_t>;
using Value = std::variant<double, Group, ObjectRef>;

struct Pin {
    Attr attr;
    double value;
};

struct ObjectState {
    std::array<std::optional<Pin>, 3> pins;
    std::optional<Orientation> orientation;
};

double pinned_min(const Pin& pin, double extent) {
    switch (pin.attr) {
        case Attr::Min: return pin.value;
        case Attr::Max: return pin.value - extent;
        case Attr::Center: return pin.value - 0.5 * extent;
        case Attr::Size: break;
    }
    return pin.value;
}

double attr_from_min(Attr attr, double min, double extent) {
    switch (attr) {
        case Attr::Min: return min;
        case Attr::Max: return min + extent;
        case Attr::Center: return min + 0.5 * extent;
        case Attr::Size: return extent;
    }
    return min;
}

class Interpreter {
public:
    Interpreter(const Program& p, const SceneTemplate& t) : p_(p), t_(t), state_(t.objects.size()) {}

    Layout run() {
        for (StmtId id : p_.ast().top) stmt(id);
        return resolve();
    }

private:
    Vec3 dims_of(std::size_t i) const {
        return oriented_dims(t_.objects[i].dims, state_[i].orientation.value_or(Orientation::North));
    }

    std::size_t object_of(const std::string& name, const SourceSpan& span) const {
        if (auto it = env_.find(name); it != env_.end()) {
            if (const auto* o = std::get_if<ObjectRef>(&it->second)) return o->index;
            throw EvalError(EvalErrorKind::UnknownObject, "'" + name + "' is not an object", span);
        }
        if (auto i = t_.find(name)) return *i;
        throw EvalError(EvalErrorKind::UnknownObject, "unknown object '" + name + "'", span);
    }

    double read_attr(const std::string& target, Attr attr, Axis axis, const SourceSpan& span) const {
        const auto a = static_cast<std::size_t>(axis);
        if (target == "scene" && env_.find(target) == env_.end()) {
            return attr_from_min(attr, t_.bounds.min[a], t_.bounds.max[a] - t_.bounds.min[a]);
        }
        const std::size_t i = object_of(target, span);
        const double extent = dims_of(i)[a];
        if (attr == Attr::Size) return extent;
        const auto& pin = state_[i].pins[a];
        if (!pin) {
            throw EvalError(EvalErrorKind::UnplacedRead,
                            "'" + t_.objects[i].name + "." + std::string(to_string(attr)) + "." +
                                std::string(to_string(axis)) + "' read before it was placed",
                            span);
        }
        if (pin->attr == attr) return pin->value;
        return attr_from_min(attr, pinned_min(*pin, extent), extent);
    }

    double eval(ExprId id) const {
        const auto& e = p_.expr(id);
        if (const auto* n = std::get_if<NumberLit>(&e.node)) return p_.params()[n->param].number;
        if (const auto* v = std::get_if<VarRef>(&e.node)) {
            auto it = env_.find(v->name);
            if (it == env_.end() || !std::holds_alternative<double>(it->second)) {
                throw EvalError(EvalErrorKind::UnknownObject, "'" + v->name + "' is not a number", e.span);
            }
            return std::get<double>(it->second);
        }
        if (const auto* a = std::get_if<AttrRef>(&e.node)) return read_attr(a->target, a->attr, a->axis, e.span);
        if (const auto* n = std::get_if<Negate>(&e.node)) return -eval(n->operand);
        const auto& b = std::get<BinaryOp>(e.node);
        const double lhs = eval(b.lhs);
        const double rhs = eval(b.rhs);
        switch (b.op) {
            case '+': return lhs + rhs;
            case '-': return lhs - rhs;
            case '*': return lhs * rhs;
            default: return lhs / rhs;
        }
    }

    double finite(double v, const SourceSpan& span) const {
        if (!std::isfinite(v)) throw EvalError(EvalErrorKind::NonFiniteValue, "non-finite value", span);
        return v;
    }

    // Horizontal center for facing resolution; an axis nothing has pinned
    // yet counts as the scene center, where its default would put it.
    Vec3 center_xy(std::size_t i, const SourceSpan& span) const {
        const std::string& name = t_.objects[i].name;
        Vec3 c = t_.bounds.center();
        c.z = 0.0;
        if (state_[i].pins[0]) c.x = read_attr(name, Attr::Center, Axis::X, span);
        if (state_[i].pins[1]) c.y = read_attr(name, Attr::Center, Axis::Y, span);
        return c;
    }

    Orientation resolve_facing(std::size_t self, const OrientationValue& v, const SourceSpan& span) const {
        if (v.cardinal) return *v.cardinal;
        const std::size_t target = object_of(v.target, span);
        const Vec3 d = center_xy(target, span) - center_xy(self, span);
        Orientation best = Orientation::North;
        double best_dot = d.y;
        const std::array<std::pair<Orientation, double>, 3> rest{
            {{Orientation::East, d.x}, {Orientation::South, -d.y}, {Orientation::West, -d.x}}};
        for (const auto& [o, dot] : rest) {
            if (dot > best_dot) {
                best = o;
                best_dot = dot;
            }
        }
        return rotate_clockwise(best, v.quarter_turns);
    }

    void stmt(StmtId id) {
        const auto& s = p_.stmt(id);
        if (const auto* b = std::get_if<Binding>(&s.node)) {
            env_[b->name] = finite(eval(b->value), s.span);
        } else if (const auto* g = std::get_if<GroupBinding>(&s.node)) {
            Group members;
            for (std::size_t i = 0; i < t_.objects.size(); ++i) {
                if (glob_match(g->pattern, t_.objects[i].name)) members.push_back(i);
            }
            env_[g->name] = std::move(members);
        } else if (const auto* a = std::get_if<AttrAssign>(&s.node)) {
            const double v = finite(eval(a->value), s.span);
            if (a->target == "scene") throw EvalError(EvalErrorKind::UnknownObject, "'scene' is read-only", s.span);
            const std::size_t i = object_of(a->target, s.span);
            state_[i].pins[static_cast<std::size_t>(a->axis)] = Pin{a->attr, v};
        } else if (const auto* f = std::get_if<FacingAssign>(&s.node)) {
            const std::size_t i = object_of(f->target, s.span);
            state_[i].orientation = resolve_facing(i, p_.params()[f->param].orientation, s.span);
        } else if (const auto* l = std::get_if<ForLoop>(&s.node)) {
            auto it = env_.find(l->group);
            if (it == env_.end() || !std::holds_alternative<Group>(it->second)) {
                throw EvalError(EvalErrorKind::UnknownObject, "'" + l->group + "' is not a group", s.span);
            }
            const Group members = std::get<Group>(it->second);
            const auto saved = env_;
            for (std::size_t k = 0; k < members.size(); ++k) {
                env_[l->index] = static_cast<double>(k);
                env_[l->element] = ObjectRef{members[k]};
                for (StmtId b : l->body) stmt(b);
            }
            env_ = saved;
        }
    }

    Layout resolve() const {
        const std::size_t n = t_.objects.size();
        Layout layout{t_.prompt, t_.bounds, {}};
        layout.placements.reserve(n);
        const Vec3 mid = t_.bounds.center();
        std::vector<bool> z_done(n, false);
        // Surfaces a defaulted standing object may rest on: explicit z pins
        // and standing objects resolved before it.
        std::vector<bool> support(n, false);

        for (std::size_t i = 0; i < n; ++i) {
            const ObjectSpec& spec = t_.objects[i];
            const Orientation o = state_[i].orientation.value_or(Orientation::North);
            const Vec3 d = oriented_dims(spec.dims, o);
            Vec3 pos;
            for (std::size_t a = 0; a < 2; ++a) {
                if (const auto& pin = state_[i].pins[a]) {
                    pos[a] = pinned_min(*pin, d[a]);
                } else if (spec.support == SupportType::WallMounted && a == facing_axis(o)) {
                    pos[a] = facing_sign(o) > 0 ? t_.bounds.min[a] : t_.bounds.max[a] - d[a];
                } else {
                    pos[a] = mid[a] - 0.5 * d[a];
                }
            }
            if (const auto& pin = state_[i].pins[2]) {
                pos.z = pinned_min(*pin, d.z);
                z_done[i] = true;
                support[i] = true;
            } else if (spec.support != SupportType::Standing) {
                pos.z = mid.z - 0.5 * d.z;
                z_done[i] = true;
            }
            layout.placements.push_back(PlacedObject{spec, pos, o});
        }

        for (std::size_t i = 0; i < n; ++i) {
            if (z_done[i]) continue;
            const Cuboid self = world_cuboid(layout.placements[i]);
            double top = t_.bounds.min.z;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || !support[j]) continue;
                const Cuboid other = world_cuboid(layout.placements[j]);
                constexpr double slack = 1e-9;
                const bool beneath = other.min.x <= self.min.x + slack && other.max.x >= self.max.x - slack &&
                                     other.min.y <= self.min.y + slack && other.max.y >= self.max.y - slack;
                if (beneath) top = std::max(top, other.max.z);
            }
            layout.placements[i].position.z = top;
            z_done[i] = true;
            support[i] = true;
        }

        for (const auto& p : layout.placements) {
            if (!p.position.finite()) {
                throw EvalError(EvalErrorKind::NonFiniteValue, "non-finite position for '" + p.spec.name + "'", {});
            }
        }
        return layout;
    }

    const Program& p_;
    const SceneTemplate& t_;
    std::vector<ObjectState> state_;
    std::unordered_map<std::string, Value> env_;
};

}  // namespace

void check_bindings(const Program& program, const SceneTemplate& scene) { BindingChecker(program, scene).run(); }

Layout evaluate(const Program& program, const SceneTemplate& scene) {
    check_bindings(program, scene);
    return Interpreter(program, scene).run();
}

}  // namespace scenelayout::lang
