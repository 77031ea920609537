#pragma once

// Axis-aligned scene geometry and the layout data model.
//
// Frame: x east, y north, z up; lengths in meters. A placed object's
// position is the min corner of its world-space cuboid.

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scenelayout {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr double operator[](std::size_t axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
    constexpr double& operator[](std::size_t axis) { return axis == 0 ? x : (axis == 1 ? y : z); }

    friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr Vec3 operator*(Vec3 a, double s) { return {a.x * s, a.y * s, a.z * s}; }
    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;

    bool finite() const;
    double norm() const;
};

struct Cuboid {
    Vec3 min;
    Vec3 max;

    constexpr Vec3 extent() const { return max - min; }
    constexpr Vec3 center() const { return {0.5 * (min.x + max.x), 0.5 * (min.y + max.y), 0.5 * (min.z + max.z)}; }
    constexpr double volume() const {
        const Vec3 e = extent();
        return e.x * e.y * e.z;
    }
    constexpr bool contains(const Cuboid& other) const {
        return other.min.x >= min.x && other.min.y >= min.y && other.min.z >= min.z && other.max.x <= max.x &&
               other.max.y <= max.y && other.max.z <= max.z;
    }
    Cuboid translated(Vec3 offset) const { return {min + offset, max + offset}; }

    friend constexpr bool operator==(const Cuboid&, const Cuboid&) = default;
};

enum class SupportType { Standing, WallMounted, Floating };

// Cardinal facing. Enumerator order is the clockwise (viewed from above)
// rotation order used by quarter-turn edits.
enum class Orientation { North = 0, East = 1, South = 2, West = 3 };

Orientation rotate_clockwise(Orientation o, int quarter_turns);
Orientation reverse(Orientation o);
// Unit vector in the xy plane the object's front points along.
Vec3 facing_vector(Orientation o);
// Horizontal axis (0 = x, 1 = y) the facing vector lies on.
std::size_t facing_axis(Orientation o);
// +1 when the facing vector points along the positive axis.
int facing_sign(Orientation o);

std::string_view to_string(SupportType s);
std::string_view to_string(Orientation o);
std::optional<SupportType> parse_support(std::string_view text);
// Accepts either case ("north", "NORTH").
std::optional<Orientation> parse_orientation(std::string_view text);

struct ObjectSpec {
    std::string name;
    Vec3 dims;  // object-local width (x), depth (y), height (z)
    SupportType support = SupportType::Standing;
    bool is_opening = false;

    friend bool operator==(const ObjectSpec&, const ObjectSpec&) = default;
};

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SceneTemplate {
    std::string prompt;
    Cuboid bounds;
    std::vector<ObjectSpec> objects;

    // Index of the named object, or nullopt.
    std::optional<std::size_t> find(std::string_view name) const;
    // Throws GeometryError when an invariant does not hold.
    void validate() const;

    friend bool operator==(const SceneTemplate&, const SceneTemplate&) = default;
};

struct PlacedObject {
    ObjectSpec spec;
    Vec3 position;  // world min corner
    Orientation orientation = Orientation::North;

    friend bool operator==(const PlacedObject&, const PlacedObject&) = default;
};

struct Layout {
    std::string prompt;
    Cuboid bounds;
    std::vector<PlacedObject> placements;  // template order

    std::optional<std::size_t> find(std::string_view name) const;
    SceneTemplate scene_template() const;

    friend bool operator==(const Layout&, const Layout&) = default;
};

// World-frame dims after orientation: East/West swap the horizontal dims.
Vec3 oriented_dims(const Vec3& dims, Orientation o);

Cuboid world_cuboid(const PlacedObject& p);

// Per-axis interval intersection; nullopt when any axis interval is empty.
// Touching faces (zero-width interval) count as non-empty.
std::optional<Cuboid> intersection(const Cuboid& a, const Cuboid& b);

// Sum over axes of the overhang of `obj` past `bounds` on either side.
double protrusion(const Cuboid& obj, const Cuboid& bounds);

inline constexpr double kDefaultOpeningMargin = 0.5;

// World cuboid grown by `margin` on the face the opening points toward.
// Throws GeometryError for non-openings or a negative margin.
Cuboid expanded_collision_cuboid(const PlacedObject& p, double margin = kDefaultOpeningMargin);

// The cuboid used for collision tests: expanded for openings.
Cuboid collision_cuboid(const PlacedObject& p, double opening_margin = kDefaultOpeningMargin);

}  // namespace scenelayout
