#pragma once

// Declarative relation set and the differentiable penalty of each relation.
//
// Walls are numbered 0..3 = x-min, y-max, x-max, y-min. Directions use the
// cardinal order NORTH, EAST, SOUTH, WEST (0..3). Axes are 0..2 = x, y, z.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scenelayout/declarative/jet.hpp"
#include "scenelayout/geometry.hpp"

namespace scenelayout::decl {

enum class RelationKind {
    On,                // on(a, b)
    NextToWall,        // next_to_wall(a, wall, distance)
    MountedOnWall,     // mounted_on_wall(a, wall, h[, b])
    MountedOnCeiling,  // mounted_on_ceiling(a, b)
    AdjacentDirDist,   // adjacent(a, b, dir, distance)
    AdjacentTwoDirs,   // adjacent(a, b, dir_1, dir_2)
    Aligned,           // aligned([a, ...], axis)
    Facing,            // facing(a, b)
    Surround,          // surround([chair, ...], table)
};

std::string_view to_string(RelationKind kind);

struct Relation {
    RelationKind kind = RelationKind::On;
    // Template indices. Surround stores the chairs followed by the table;
    // MountedOnWall stores the optional anchor second.
    std::vector<std::size_t> objects;
    int wall = 0;
    Orientation dir1 = Orientation::North;
    Orientation dir2 = Orientation::North;
    int axis = 0;
    double distance = 0.0;  // next_to_wall / adjacent gap
    double height = 0.0;    // mounted_on_wall bottom height
    int line = 0;
};

// An object fixed in place; the solver does not move or rotate it.
struct PinnedPlacement {
    std::size_t object;
    Vec3 position;
    Orientation orientation = Orientation::North;
};

struct ConstraintSet {
    SceneTemplate scene;
    std::vector<Relation> relations;
    std::vector<PinnedPlacement> pinned;
};

// Position-parametrized view of one object: min corner (scalar type T)
// and the world extent implied by its current orientation.
template <class T>
struct BoxVar {
    T min[3];
    Vec3 extent;
    Orientation facing = Orientation::North;

    T max(std::size_t a) const { return min[a] + T(extent[a]); }
    T center(std::size_t a) const { return min[a] + T(0.5 * extent[a]); }
};

// Penalty of one relation; >= 0 and 0 exactly when satisfied. `boxes` is
// indexed by template object index.
double relation_loss(const Relation& r, const std::vector<BoxVar<double>>& boxes, const Cuboid& bounds);
Jet relation_loss(const Relation& r, const std::vector<BoxVar<Jet>>& boxes, const Cuboid& bounds);

// Convenience overload on a concrete layout.
double relation_loss(const Relation& r, const Layout& layout);

// Geometric satisfaction check, written independently of the penalties.
bool satisfied(const Relation& r, const Layout& layout, double tolerance);

// Hard-error terms of the layout loss (out-of-bounds, overlap, standing,
// mounted) in position-differentiable form.
double hard_loss(const std::vector<BoxVar<double>>& boxes, const SceneTemplate& scene);
Jet hard_loss(const std::vector<BoxVar<Jet>>& boxes, const SceneTemplate& scene);

std::vector<BoxVar<double>> boxes_of(const Layout& layout);

// Gradient of relation_loss with respect to every object's min corner,
// laid out as [x0, y0, z0, x1, ...].
std::vector<double> relation_gradient(const Relation& r, const Layout& layout);

}  // namespace scenelayout::decl
