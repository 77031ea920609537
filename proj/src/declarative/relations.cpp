#include "scenelayout/declarative/relations.hpp"

#include <cmath>
#include <numbers>

namespace scenelayout::decl {

std::string_view to_string(RelationKind kind) {
    switch (kind) {
        case RelationKind::On: return "on";
        case RelationKind::NextToWall: return "next_to_wall";
        case RelationKind::MountedOnWall: return "mounted_on_wall";
        case RelationKind::MountedOnCeiling: return "mounted_on_ceiling";
        case RelationKind::AdjacentDirDist: return "adjacent_dir_dist";
        case RelationKind::AdjacentTwoDirs: return "adjacent_two_dirs";
        case RelationKind::Aligned: return "aligned";
        case RelationKind::Facing: return "facing";
        case RelationKind::Surround: return "surround";
    }
    return "relation";
}

namespace {

using std::abs;
using std::sqrt;
using std::atan2;

template <class T>
T wall_gap(const BoxVar<T>& a, int wall, const Cuboid& b) {
    switch (wall) {
        case 0: return a.min[0] - T(b.min.x);
        case 1: return T(b.max.y) - a.max(1);
        case 2: return T(b.max.x) - a.max(0);
        default: return a.min[1] - T(b.min.y);
    }
}

// Horizontal axis running along a wall.
std::size_t wall_tangent_axis(int wall) { return (wall == 0 || wall == 2) ? 1 : 0; }

// Free space between b's face on side `dir` and a.
template <class T>
T side_gap(const BoxVar<T>& a, const BoxVar<T>& b, Orientation dir) {
    switch (dir) {
        case Orientation::North: return a.min[1] - b.max(1);
        case Orientation::East: return a.min[0] - b.max(0);
        case Orientation::South: return b.min[1] - a.max(1);
        case Orientation::West: return b.min[0] - a.max(0);
    }
    return T(0.0);
}

// Offset between a's and b's faces on side `dir`.
template <class T>
T face_offset(const BoxVar<T>& a, const BoxVar<T>& b, Orientation dir) {
    switch (dir) {
        case Orientation::North: return a.max(1) - b.max(1);
        case Orientation::East: return a.max(0) - b.max(0);
        case Orientation::South: return a.min[1] - b.min[1];
        case Orientation::West: return a.min[0] - b.min[0];
    }
    return T(0.0);
}

template <class T>
T facing_penalty(const BoxVar<T>& a, const BoxVar<T>& b) {
    const Vec3 f = facing_vector(a.facing);
    const T vx = b.center(0) - a.center(0);
    const T vy = b.center(1) - a.center(1);
    const T dot = T(f.x) * vx + T(f.y) * vy;
    const T cross = T(f.x) * vy - T(f.y) * vx;
    const T angle = atan2(abs(cross), dot);
    return relu(angle - T(std::numbers::pi / 4.0));
}

// Signed horizontal separation of two boxes (negative when the footprints
// overlap).
template <class T>
T separation(const BoxVar<T>& a, const BoxVar<T>& b) {
    const T gx = max_of(a.min[0] - b.max(0), b.min[0] - a.max(0));
    const T gy = max_of(a.min[1] - b.max(1), b.min[1] - a.max(1));
    return max_of(gx, gy);
}

template <class T>
T loss_impl(const Relation& r, const std::vector<BoxVar<T>>& boxes, const Cuboid& bounds) {
    const auto& o = r.objects;
    switch (r.kind) {
        case RelationKind::On: {
            const auto& a = boxes[o[0]];
            const auto& b = boxes[o[1]];
            T loss = abs(a.min[2] - b.max(2));
            for (std::size_t ax = 0; ax < 2; ++ax) {
                loss += relu(b.min[ax] - a.min[ax]);
                loss += relu(a.max(ax) - b.max(ax));
            }
            return loss;
        }
        case RelationKind::NextToWall:
            return abs(wall_gap(boxes[o[0]], r.wall, bounds) - T(r.distance));
        case RelationKind::MountedOnWall: {
            const auto& a = boxes[o[0]];
            T loss = abs(wall_gap(a, r.wall, bounds)) + abs(a.min[2] - T(r.height));
            if (o.size() > 1) {
                const std::size_t t = wall_tangent_axis(r.wall);
                loss += abs(a.center(t) - boxes[o[1]].center(t));
            }
            return loss;
        }
        case RelationKind::MountedOnCeiling: {
            const auto& a = boxes[o[0]];
            const auto& b = boxes[o[1]];
            return abs(T(bounds.max.z) - a.max(2)) + abs(a.center(0) - b.center(0)) + abs(a.center(1) - b.center(1));
        }
        case RelationKind::AdjacentDirDist: {
            const auto& a = boxes[o[0]];
            const auto& b = boxes[o[1]];
            const std::size_t perp = facing_axis(r.dir1) == 0 ? 1 : 0;
            return abs(side_gap(a, b, r.dir1) - T(r.distance)) +
                   relu(abs(a.center(perp) - b.center(perp)) - T(0.5 * b.extent[perp]));
        }
        case RelationKind::AdjacentTwoDirs: {
            const auto& a = boxes[o[0]];
            const auto& b = boxes[o[1]];
            return abs(side_gap(a, b, r.dir1)) + abs(face_offset(a, b, r.dir2));
        }
        case RelationKind::Aligned: {
            const auto ax = static_cast<std::size_t>(r.axis);
            T mean(0.0);
            for (std::size_t i : o) mean += boxes[i].center(ax);
            mean = mean / T(static_cast<double>(o.size()));
            T var(0.0);
            for (std::size_t i : o) {
                const T d = boxes[i].center(ax) - mean;
                var += d * d;
            }
            return var / T(static_cast<double>(o.size()));
        }
        case RelationKind::Facing:
            return facing_penalty(boxes[o[0]], boxes[o[1]]);
        case RelationKind::Surround: {
            const auto& table = boxes[o.back()];
            T loss(0.0);
            for (std::size_t k = 0; k + 1 < o.size(); ++k) {
                loss += facing_penalty(boxes[o[k]], table);
                loss += abs(separation(boxes[o[k]], table));
            }
            return loss;
        }
    }
    return T(0.0);
}

template <class T>
T hard_impl(const std::vector<BoxVar<T>>& boxes, const SceneTemplate& scene) {
    const Cuboid& bounds = scene.bounds;
    const std::size_t n = boxes.size();
    T total(0.0);
    for (const auto& b : boxes) {
        for (std::size_t a = 0; a < 3; ++a) {
            total += relu(T(bounds.min[a]) - b.min[a]);
            total += relu(b.max(a) - T(bounds.max[a]));
        }
    }
    // Collision boxes: openings extend on their facing side.
    std::vector<std::array<double, 3>> grow_lo(n, {0, 0, 0}), grow_hi(n, {0, 0, 0});
    for (std::size_t i = 0; i < n; ++i) {
        if (!scene.objects[i].is_opening) continue;
        const std::size_t ax = facing_axis(boxes[i].facing);
        (facing_sign(boxes[i].facing) > 0 ? grow_hi : grow_lo)[i][ax] = kDefaultOpeningMargin;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            T ext[3];
            bool hit = true;
            for (std::size_t a = 0; a < 3; ++a) {
                const T hi = min_of(boxes[i].max(a) + T(grow_hi[i][a]), boxes[j].max(a) + T(grow_hi[j][a]));
                const T lo = max_of(boxes[i].min[a] - T(grow_lo[i][a]), boxes[j].min[a] - T(grow_lo[j][a]));
                ext[a] = hi - lo;
                hit = hit && value(ext[a]) > 1e-9;
            }
            if (hit) total += (ext[0] + ext[1] + ext[2]) / T(3.0);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto support = scene.objects[i].support;
        const auto& b = boxes[i];
        if (support == SupportType::Standing) {
            T surface(bounds.min.z);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                const auto& o = boxes[j];
                if (value(o.max(2)) > value(b.min[2]) + 0.01) continue;
                const bool fx = std::min(value(b.max(0)), value(o.max(0))) - std::max(value(b.min[0]), value(o.min[0])) > 1e-9;
                const bool fy = std::min(value(b.max(1)), value(o.max(1))) - std::max(value(b.min[1]), value(o.min[1])) > 1e-9;
                if (fx && fy && value(o.max(2)) > value(surface)) surface = o.max(2);
            }
            total += abs(b.min[2] - surface);
        } else if (support == SupportType::WallMounted) {
            const std::size_t ax = facing_axis(b.facing);
            const T back = facing_sign(b.facing) > 0 ? b.min[ax] : b.max(ax);
            total += min_of(abs(back - T(bounds.min[ax])), abs(back - T(bounds.max[ax])));
        }
    }
    return total;
}

}  // namespace

double relation_loss(const Relation& r, const std::vector<BoxVar<double>>& boxes, const Cuboid& bounds) {
    return loss_impl(r, boxes, bounds);
}

Jet relation_loss(const Relation& r, const std::vector<BoxVar<Jet>>& boxes, const Cuboid& bounds) {
    return loss_impl(r, boxes, bounds);
}

double hard_loss(const std::vector<BoxVar<double>>& boxes, const SceneTemplate& scene) { return hard_impl(boxes, scene); }

Jet hard_loss(const std::vector<BoxVar<Jet>>& boxes, const SceneTemplate& scene) { return hard_impl(boxes, scene); }

std::vector<BoxVar<double>> boxes_of(const Layout& layout) {
    std::vector<BoxVar<double>> out;
    out.reserve(layout.placements.size());
    for (const auto& p : layout.placements) {
        BoxVar<double> b;
        b.min[0] = p.position.x;
        b.min[1] = p.position.y;
        b.min[2] = p.position.z;
        b.extent = oriented_dims(p.spec.dims, p.orientation);
        b.facing = p.orientation;
        out.push_back(b);
    }
    return out;
}

double relation_loss(const Relation& r, const Layout& layout) {
    return relation_loss(r, boxes_of(layout), layout.bounds);
}

std::vector<double> relation_gradient(const Relation& r, const Layout& layout) {
    const std::size_t n = layout.placements.size();
    std::vector<BoxVar<Jet>> boxes(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = layout.placements[i];
        for (std::size_t a = 0; a < 3; ++a) boxes[i].min[a] = Jet(p.position[a], 3 * n, 3 * i + a);
        boxes[i].extent = oriented_dims(p.spec.dims, p.orientation);
        boxes[i].facing = p.orientation;
    }
    Jet loss = relation_loss(r, boxes, layout.bounds);
    loss.g.resize(3 * n, 0.0);
    return loss.g;
}

// ------------------------------------------------------------- predicates

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// Distance from a wall plane to the nearest face of c, measured into the room.
double distance_from_wall(const Cuboid& c, int wall, const Cuboid& room) {
    switch (wall) {
        case 0: return c.min.x - room.min.x;
        case 1: return room.max.y - c.max.y;
        case 2: return room.max.x - c.max.x;
        default: return c.min.y - room.min.y;
    }
}

bool faces_toward(const PlacedObject& a, const Cuboid& target, double tol) {
    const Vec3 from = world_cuboid(a).center();
    const Vec3 to = target.center();
    const double dx = to.x - from.x, dy = to.y - from.y;
    const double len = std::hypot(dx, dy);
    if (len == 0.0) return true;
    const Vec3 f = facing_vector(a.orientation);
    const double cos_angle = std::clamp((f.x * dx + f.y * dy) / len, -1.0, 1.0);
    return std::acos(cos_angle) <= std::numbers::pi / 4.0 + tol;
}

// True when a sits on side `dir` of b with the given clearance.
double clearance_on_side(const Cuboid& a, const Cuboid& b, Orientation dir) {
    switch (dir) {
        case Orientation::North: return a.min.y - b.max.y;
        case Orientation::South: return b.min.y - a.max.y;
        case Orientation::East: return a.min.x - b.max.x;
        case Orientation::West: return b.min.x - a.max.x;
    }
    return 0.0;
}

double face_coordinate(const Cuboid& c, Orientation dir) {
    switch (dir) {
        case Orientation::North: return c.max.y;
        case Orientation::South: return c.min.y;
        case Orientation::East: return c.max.x;
        case Orientation::West: return c.min.x;
    }
    return 0.0;
}

}  // namespace

bool satisfied(const Relation& r, const Layout& layout, double tol) {
    auto box = [&](std::size_t k) { return world_cuboid(layout.placements[r.objects[k]]); };
    const Cuboid& room = layout.bounds;
    switch (r.kind) {
        case RelationKind::On: {
            const Cuboid a = box(0), b = box(1);
            return near(a.min.z, b.max.z, tol) && a.min.x >= b.min.x - tol && a.max.x <= b.max.x + tol &&
                   a.min.y >= b.min.y - tol && a.max.y <= b.max.y + tol;
        }
        case RelationKind::NextToWall: return near(distance_from_wall(box(0), r.wall, room), r.distance, tol);
        case RelationKind::MountedOnWall: {
            const Cuboid a = box(0);
            bool ok = near(distance_from_wall(a, r.wall, room), 0.0, tol) && near(a.min.z, r.height, tol);
            if (r.objects.size() > 1) {
                const std::size_t t = (r.wall == 0 || r.wall == 2) ? 1 : 0;
                ok = ok && near(a.center()[t], box(1).center()[t], tol);
            }
            return ok;
        }
        case RelationKind::MountedOnCeiling: {
            const Cuboid a = box(0), b = box(1);
            return near(a.max.z, room.max.z, tol) && near(a.center().x, b.center().x, tol) &&
                   near(a.center().y, b.center().y, tol);
        }
        case RelationKind::AdjacentDirDist: {
            const Cuboid a = box(0), b = box(1);
            const std::size_t perp = (r.dir1 == Orientation::North || r.dir1 == Orientation::South) ? 0 : 1;
            const bool beside = a.center()[perp] >= b.min[perp] - tol && a.center()[perp] <= b.max[perp] + tol;
            return near(clearance_on_side(a, b, r.dir1), r.distance, tol) && beside;
        }
        case RelationKind::AdjacentTwoDirs: {
            const Cuboid a = box(0), b = box(1);
            return near(clearance_on_side(a, b, r.dir1), 0.0, tol) &&
                   near(face_coordinate(a, r.dir2), face_coordinate(b, r.dir2), tol);
        }
        case RelationKind::Aligned: {
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (std::size_t k = 0; k < r.objects.size(); ++k) {
                const double c = box(k).center()[static_cast<std::size_t>(r.axis)];
                lo = std::min(lo, c);
                hi = std::max(hi, c);
            }
            return hi - lo <= tol;
        }
        case RelationKind::Facing: return faces_toward(layout.placements[r.objects[0]], box(1), tol);
        case RelationKind::Surround: {
            const Cuboid table = box(r.objects.size() - 1);
            for (std::size_t k = 0; k + 1 < r.objects.size(); ++k) {
                const Cuboid c = box(k);
                if (!faces_toward(layout.placements[r.objects[k]], table, tol)) return false;
                // Touching the table footprint from outside: separated on one
                // horizontal axis by at most tol and not interpenetrating.
                const double gap_x = std::max(c.min.x - table.max.x, table.min.x - c.max.x);
                const double gap_y = std::max(c.min.y - table.max.y, table.min.y - c.max.y);
                if (!near(std::max(gap_x, gap_y), 0.0, tol)) return false;
            }
            return true;
        }
    }
    return false;
}

}  // namespace scenelayout::decl
