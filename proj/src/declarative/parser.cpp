#include "scenelayout/declarative/parser.hpp"

#include <cctype>
#include <charconv>
#include <sstream>
#include <variant>

#include "scenelayout/lang/printer.hpp"

namespace scenelayout::decl {

ParseError::ParseError(const std::string& message, int line)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

UnknownObject::UnknownObject(const std::string& name, int line)
    : ParseError("unknown object '" + name + "'", line), name_(name) {}

namespace {

struct Arg {
    std::string text;                // scalar token
    std::vector<std::string> items;  // list elements
    bool is_list = false;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_top(std::string_view s, int line) {
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '[') ++depth;
        if (s[i] == ']' && --depth < 0) throw ParseError("unbalanced ']'", line);
        if (s[i] == ',' && depth == 0) {
            out.emplace_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    if (depth != 0) throw ParseError("unbalanced '['", line);
    std::string_view last = trim(s.substr(start));
    if (!last.empty() || !out.empty()) out.emplace_back(last);
    for (const auto& a : out) {
        if (a.empty()) throw ParseError("empty argument", line);
    }
    return out;
}

Arg parse_arg(const std::string& text, int line) {
    Arg a;
    if (text.front() == '[') {
        if (text.back() != ']') throw ParseError("malformed list '" + text + "'", line);
        a.is_list = true;
        a.items = split_top(std::string_view(text).substr(1, text.size() - 2), line);
    } else {
        a.text = text;
    }
    return a;
}

class LineParser {
public:
    LineParser(const SceneTemplate& scene, int line) : scene_(scene), line_(line) {}

    std::size_t object(const Arg& a) const {
        if (a.is_list) throw ParseError("expected an object, got a list", line_);
        for (std::size_t i = 0; i < scene_.objects.size(); ++i) {
            if (scene_.objects[i].name == a.text) return i;
        }
        throw UnknownObject(a.text, line_);
    }

    std::vector<std::size_t> objects(const Arg& a) const {
        if (!a.is_list) throw ParseError("expected a list of objects", line_);
        if (a.items.empty()) throw ParseError("object list must not be empty", line_);
        std::vector<std::size_t> out;
        for (const auto& s : a.items) out.push_back(object(Arg{s, {}, false}));
        return out;
    }

    double number(const Arg& a) const {
        if (a.is_list) throw ParseError("expected a number, got a list", line_);
        double v = 0.0;
        const char* b = a.text.data();
        const char* e = b + a.text.size();
        if (*b == '+') ++b;
        auto [ptr, ec] = std::from_chars(b, e, v);
        if (ec != std::errc() || ptr != e || !std::isfinite(v)) {
            throw ParseError("expected a number, got '" + a.text + "'", line_);
        }
        return v;
    }

    int integer(const Arg& a, int lo, int hi, const char* what) const {
        if (a.is_list) throw ParseError(std::string("expected ") + what, line_);
        int v = 0;
        auto [ptr, ec] = std::from_chars(a.text.data(), a.text.data() + a.text.size(), v);
        if (ec != std::errc() || ptr != a.text.data() + a.text.size() || v < lo || v > hi) {
            throw ParseError(std::string("expected ") + what + ", got '" + a.text + "'", line_);
        }
        return v;
    }

    Orientation direction(const Arg& a) const {
        if (!a.is_list) {
            if (auto o = parse_orientation(a.text)) return *o;
        }
        return static_cast<Orientation>(integer(a, 0, 3, "a direction"));
    }

    int axis(const Arg& a) const {
        if (!a.is_list && a.text.size() == 1) {
            const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(a.text[0])));
            if (c >= 'x' && c <= 'z') return c - 'x';
        }
        return integer(a, 0, 2, "an axis");
    }

    void arity(const std::string& name, const std::vector<Arg>& args, std::size_t lo, std::size_t hi) const {
        if (args.size() < lo || args.size() > hi) {
            std::string want = lo == hi ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi);
            throw ArityError(name + " takes " + want + " arguments, got " + std::to_string(args.size()), line_);
        }
    }

private:
    const SceneTemplate& scene_;
    int line_;
};

std::string dir_name(Orientation o) {
    std::string s(to_string(o));
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

bool looks_like_distance(const Arg& a) {
    return !a.is_list && a.text.find_first_of(".eE") != std::string::npos &&
           !parse_orientation(a.text).has_value();
}

}  // namespace

ConstraintSet parse_relations(std::string_view source, const SceneTemplate& scene) {
    ConstraintSet cs;
    cs.scene = scene;
    std::istringstream in{std::string(source)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view text = raw;
        if (auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
        text = trim(text);
        if (text.empty()) continue;

        const auto open = text.find('(');
        if (open == std::string_view::npos || text.back() != ')') {
            throw ParseError("expected a call of the form name(args)", line);
        }
        const std::string name(trim(text.substr(0, open)));
        std::vector<Arg> args;
        for (const auto& s : split_top(text.substr(open + 1, text.size() - open - 2), line)) {
            args.push_back(parse_arg(s, line));
        }

        LineParser p(scene, line);
        if (name == "pin") {
            p.arity(name, args, 4, 5);
            PinnedPlacement pin{p.object(args[0]), {p.number(args[1]), p.number(args[2]), p.number(args[3])},
                                args.size() == 5 ? p.direction(args[4]) : Orientation::North};
            cs.pinned.push_back(pin);
            continue;
        }

        Relation r;
        r.line = line;
        if (name == "on") {
            p.arity(name, args, 2, 2);
            r.kind = RelationKind::On;
            r.objects = {p.object(args[0]), p.object(args[1])};
        } else if (name == "next_to_wall") {
            p.arity(name, args, 3, 3);
            r.kind = RelationKind::NextToWall;
            r.objects = {p.object(args[0])};
            r.wall = p.integer(args[1], 0, 3, "a wall index");
            r.distance = p.number(args[2]);
        } else if (name == "mounted_on_wall") {
            p.arity(name, args, 3, 4);
            r.kind = RelationKind::MountedOnWall;
            r.objects = {p.object(args[0])};
            r.wall = p.integer(args[1], 0, 3, "a wall index");
            r.height = p.number(args[2]);
            if (args.size() == 4) r.objects.push_back(p.object(args[3]));
        } else if (name == "mounted_on_ceiling") {
            p.arity(name, args, 2, 2);
            r.kind = RelationKind::MountedOnCeiling;
            r.objects = {p.object(args[0]), p.object(args[1])};
        } else if (name == "adjacent") {
            p.arity(name, args, 4, 4);
            r.objects = {p.object(args[0]), p.object(args[1])};
            r.dir1 = p.direction(args[2]);
            if (looks_like_distance(args[3])) {
                r.kind = RelationKind::AdjacentDirDist;
                r.distance = p.number(args[3]);
            } else {
                r.kind = RelationKind::AdjacentTwoDirs;
                r.dir2 = p.direction(args[3]);
                if (facing_axis(r.dir1) == facing_axis(r.dir2)) {
                    throw ParseError("adjacent directions must lie on different axes", line);
                }
            }
        } else if (name == "aligned") {
            p.arity(name, args, 2, 2);
            r.kind = RelationKind::Aligned;
            r.objects = p.objects(args[0]);
            r.axis = p.axis(args[1]);
        } else if (name == "facing") {
            p.arity(name, args, 2, 2);
            r.kind = RelationKind::Facing;
            r.objects = {p.object(args[0]), p.object(args[1])};
        } else if (name == "surround") {
            p.arity(name, args, 2, 2);
            r.kind = RelationKind::Surround;
            r.objects = p.objects(args[0]);
            r.objects.push_back(p.object(args[1]));
        } else {
            throw ParseError("unknown relation '" + name + "'", line);
        }
        for (std::size_t i = 0; i < r.objects.size(); ++i) {
            for (std::size_t j = i + 1; j < r.objects.size(); ++j) {
                if (r.objects[i] == r.objects[j]) {
                    throw ParseError("object '" + scene.objects[r.objects[i]].name + "' repeated in " + name, line);
                }
            }
        }
        cs.relations.push_back(std::move(r));
    }
    return cs;
}

std::string format_relations(const ConstraintSet& cs) {
    auto obj = [&](std::size_t i) { return cs.scene.objects[i].name; };
    auto num = [](double v) { return lang::format_number(v); };
    auto list = [&](auto first, auto last) {
        std::string s = "[";
        for (auto it = first; it != last; ++it) {
            if (it != first) s += ", ";
            s += obj(*it);
        }
        return s + "]";
    };
    std::string out;
    for (const auto& r : cs.relations) {
        const auto& o = r.objects;
        std::string line;
        switch (r.kind) {
            case RelationKind::On: line = "on(" + obj(o[0]) + ", " + obj(o[1]) + ")"; break;
            case RelationKind::NextToWall:
                line = "next_to_wall(" + obj(o[0]) + ", " + std::to_string(r.wall) + ", " + num(r.distance) + ")";
                break;
            case RelationKind::MountedOnWall:
                line = "mounted_on_wall(" + obj(o[0]) + ", " + std::to_string(r.wall) + ", " + num(r.height);
                if (o.size() > 1) line += ", " + obj(o[1]);
                line += ")";
                break;
            case RelationKind::MountedOnCeiling:
                line = "mounted_on_ceiling(" + obj(o[0]) + ", " + obj(o[1]) + ")";
                break;
            case RelationKind::AdjacentDirDist:
                line = "adjacent(" + obj(o[0]) + ", " + obj(o[1]) + ", " + dir_name(r.dir1) + ", " +
                       num(r.distance) + ")";
                break;
            case RelationKind::AdjacentTwoDirs:
                line = "adjacent(" + obj(o[0]) + ", " + obj(o[1]) + ", " + dir_name(r.dir1) + ", " +
                       dir_name(r.dir2) + ")";
                break;
            case RelationKind::Aligned:
                line = "aligned(" + list(o.begin(), o.end()) + ", " + std::string(1, static_cast<char>('x' + r.axis)) + ")";
                break;
            case RelationKind::Facing: line = "facing(" + obj(o[0]) + ", " + obj(o[1]) + ")"; break;
            case RelationKind::Surround:
                line = "surround(" + list(o.begin(), o.end() - 1) + ", " + obj(o.back()) + ")";
                break;
        }
        out += line + "\n";
    }
    for (const auto& p : cs.pinned) {
        out += "pin(" + obj(p.object) + ", " + num(p.position.x) + ", " + num(p.position.y) + ", " +
               num(p.position.z) + ", " + dir_name(p.orientation) + ")\n";
    }
    return out;
}

}  // namespace scenelayout::decl
