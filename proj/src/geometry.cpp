#include "scenelayout/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

namespace scenelayout {

bool Vec3::finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

Orientation rotate_clockwise(Orientation o, int quarter_turns) {
    const int k = ((static_cast<int>(o) + quarter_turns) % 4 + 4) % 4;
    return static_cast<Orientation>(k);
}

Orientation reverse(Orientation o) { return rotate_clockwise(o, 2); }

Vec3 facing_vector(Orientation o) {
    switch (o) {
        case Orientation::North: return {0.0, 1.0, 0.0};
        case Orientation::East: return {1.0, 0.0, 0.0};
        case Orientation::South: return {0.0, -1.0, 0.0};
        case Orientation::West: return {-1.0, 0.0, 0.0};
    }
    return {};
}

std::size_t facing_axis(Orientation o) {
    return (o == Orientation::North || o == Orientation::South) ? 1 : 0;
}

int facing_sign(Orientation o) { return (o == Orientation::North || o == Orientation::East) ? 1 : -1; }

std::string_view to_string(SupportType s) {
    switch (s) {
        case SupportType::Standing: return "standing";
        case SupportType::WallMounted: return "wall_mounted";
        case SupportType::Floating: return "floating";
    }
    return "standing";
}

std::string_view to_string(Orientation o) {
    switch (o) {
        case Orientation::North: return "north";
        case Orientation::East: return "east";
        case Orientation::South: return "south";
        case Orientation::West: return "west";
    }
    return "north";
}

namespace {

std::string lowered(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

std::optional<SupportType> parse_support(std::string_view text) {
    const std::string t = lowered(text);
    if (t == "standing") return SupportType::Standing;
    if (t == "wall_mounted" || t == "wall-mounted" || t == "mounted") return SupportType::WallMounted;
    if (t == "floating") return SupportType::Floating;
    return std::nullopt;
}

std::optional<Orientation> parse_orientation(std::string_view text) {
    const std::string t = lowered(text);
    if (t == "north") return Orientation::North;
    if (t == "east") return Orientation::East;
    if (t == "south") return Orientation::South;
    if (t == "west") return Orientation::West;
    return std::nullopt;
}

std::optional<std::size_t> SceneTemplate::find(std::string_view name) const {
    for (std::size_t i = 0; i < objects.size(); ++i) {
        if (objects[i].name == name) return i;
    }
    return std::nullopt;
}

void SceneTemplate::validate() const {
    if (!bounds.min.finite() || !bounds.max.finite()) throw GeometryError("scene bounds must be finite");
    for (std::size_t a = 0; a < 3; ++a) {
        if (bounds.min[a] > bounds.max[a]) throw GeometryError("scene bounds have min > max");
    }
    std::set<std::string_view> seen;
    for (const auto& o : objects) {
        if (o.name.empty()) throw GeometryError("object with empty name");
        if (!seen.insert(o.name).second) throw GeometryError("duplicate object name '" + o.name + "'");
        if (!o.dims.finite() || o.dims.x <= 0.0 || o.dims.y <= 0.0 || o.dims.z <= 0.0) {
            throw GeometryError("object '" + o.name + "' must have strictly positive dims");
        }
    }
}

std::optional<std::size_t> Layout::find(std::string_view name) const {
    for (std::size_t i = 0; i < placements.size(); ++i) {
        if (placements[i].spec.name == name) return i;
    }
    return std::nullopt;
}

SceneTemplate Layout::scene_template() const {
    SceneTemplate t{prompt, bounds, {}};
    t.objects.reserve(placements.size());
    for (const auto& p : placements) t.objects.push_back(p.spec);
    return t;
}

Vec3 oriented_dims(const Vec3& dims, Orientation o) {
    if (o == Orientation::East || o == Orientation::West) return {dims.y, dims.x, dims.z};
    return dims;
}

Cuboid world_cuboid(const PlacedObject& p) {
    return {p.position, p.position + oriented_dims(p.spec.dims, p.orientation)};
}

std::optional<Cuboid> intersection(const Cuboid& a, const Cuboid& b) {
    Cuboid out;
    for (std::size_t axis = 0; axis < 3; ++axis) {
        out.min[axis] = std::max(a.min[axis], b.min[axis]);
        out.max[axis] = std::min(a.max[axis], b.max[axis]);
        if (out.min[axis] > out.max[axis]) return std::nullopt;
    }
    return out;
}

double protrusion(const Cuboid& obj, const Cuboid& bounds) {
    double total = 0.0;
    for (std::size_t axis = 0; axis < 3; ++axis) {
        total += std::max(0.0, bounds.min[axis] - obj.min[axis]);
        total += std::max(0.0, obj.max[axis] - bounds.max[axis]);
    }
    return total;
}

Cuboid expanded_collision_cuboid(const PlacedObject& p, double margin) {
    if (!p.spec.is_opening) throw GeometryError("'" + p.spec.name + "' is not an opening");
    if (!(margin >= 0.0)) throw GeometryError("opening margin must be non-negative");
    Cuboid c = world_cuboid(p);
    const std::size_t axis = facing_axis(p.orientation);
    if (facing_sign(p.orientation) > 0) {
        c.max[axis] += margin;
    } else {
        c.min[axis] -= margin;
    }
    return c;
}

Cuboid collision_cuboid(const PlacedObject& p, double opening_margin) {
    return p.spec.is_opening ? expanded_collision_cuboid(p, opening_margin) : world_cuboid(p);
}

}  // namespace scenelayout
