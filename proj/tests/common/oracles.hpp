#pragma once

// Reference computations shared by the unit and acceptance tests. Nothing
// here calls the library's loss or gradient code.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "scenelayout/declarative/relations.hpp"
#include "scenelayout/geometry.hpp"

namespace oracle {

using namespace scenelayout;

// Cell centers of a grid with spacing h and origin `phase` lying inside
// [lo, hi). Cuboids are separable, so the voxels of an intersection are
// the product of per-axis cell sets and each extent is h * count.
inline long cells_in(double lo, double hi, double h, double phase) {
    if (!(hi > lo)) return 0;
    const long first = static_cast<long>(std::ceil((lo - phase) / h - 0.5));
    const long last = static_cast<long>(std::ceil((hi - phase) / h - 0.5)) - 1;
    return std::max(0L, last - first + 1);
}

struct VoxelGrid {
    double h = 0.01;
    Vec3 phase;
};

inline double voxel_extent(double lo, double hi, const VoxelGrid& g, std::size_t axis) {
    return g.h * static_cast<double>(cells_in(lo, hi, g.h, g.phase[axis]));
}

// Mean voxelized extent of every overlapping pair.
inline double voxel_overlap(const std::vector<Cuboid>& boxes, const VoxelGrid& g) {
    double total = 0.0;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        for (std::size_t j = i + 1; j < boxes.size(); ++j) {
            double sum = 0.0;
            bool empty = false;
            for (std::size_t a = 0; a < 3; ++a) {
                const double e = voxel_extent(std::max(boxes[i].min[a], boxes[j].min[a]),
                                              std::min(boxes[i].max[a], boxes[j].max[a]), g, a);
                empty = empty || e == 0.0;
                sum += e;
            }
            if (!empty) total += sum / 3.0;
        }
    }
    return total;
}

// Voxelized distance each face sits past the matching room wall.
inline double voxel_oob(const std::vector<Cuboid>& boxes, const Cuboid& room, const VoxelGrid& g) {
    double total = 0.0;
    for (const auto& b : boxes) {
        for (std::size_t a = 0; a < 3; ++a) {
            total += voxel_extent(b.min[a], room.min[a], g, a);
            total += voxel_extent(room.max[a], b.max[a], g, a);
        }
    }
    return total;
}

// Central-difference gradient of f at x.
inline std::vector<double> central_difference(const std::function<double(const std::vector<double>&)>& f,
                                              std::vector<double> x, double h) {
    std::vector<double> g(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double keep = x[k];
        x[k] = keep + h;
        const double up = f(x);
        x[k] = keep - h;
        const double down = f(x);
        x[k] = keep;
        g[k] = (up - down) / (2.0 * h);
    }
    return g;
}

// True when the one-sided slopes agree on every coordinate, i.e. no kink
// of an abs/relu/max lies within h of x.
inline bool smooth_at(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x, double h) {
    const double f0 = f(x);
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double keep = x[k];
        x[k] = keep + h;
        const double right = (f(x) - f0) / h;
        x[k] = keep - h;
        const double left = (f0 - f(x)) / h;
        x[k] = keep;
        if (std::abs(right - left) > 1e-4 * std::max(1.0, std::abs(right))) return false;
    }
    return true;
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Layout of `n` objects with random sizes, positions and facings, plus a
// flat coordinate vector view of the min corners.
inline Layout random_layout(std::mt19937_64& rng, std::size_t n, const Cuboid& room) {
    std::uniform_real_distribution<double> dim(0.3, 1.5), u(0.0, 1.0);
    std::uniform_int_distribution<int> orient(0, 3);
    Layout l;
    l.bounds = room;
    for (std::size_t i = 0; i < n; ++i) {
        ObjectSpec s;
        s.name = "o" + std::to_string(i);
        s.dims = {dim(rng), dim(rng), dim(rng)};
        PlacedObject p{s, {}, static_cast<Orientation>(orient(rng))};
        for (std::size_t a = 0; a < 3; ++a) p.position[a] = room.min[a] + u(rng) * (room.max[a] - room.min[a]) * 0.8;
        l.placements.push_back(p);
    }
    return l;
}

inline std::vector<double> coordinates(const Layout& l) {
    std::vector<double> x;
    for (const auto& p : l.placements) {
        for (std::size_t a = 0; a < 3; ++a) x.push_back(p.position[a]);
    }
    return x;
}

inline Layout with_coordinates(Layout l, const std::vector<double>& x) {
    for (std::size_t i = 0; i < l.placements.size(); ++i) {
        for (std::size_t a = 0; a < 3; ++a) l.placements[i].position[a] = x[3 * i + a];
    }
    return l;
}

// A relation of the given kind over objects 0..3 with random parameters.
inline decl::Relation random_relation(std::mt19937_64& rng, decl::RelationKind kind) {
    using decl::RelationKind;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> four(0, 3), three(0, 2);
    decl::Relation r;
    r.kind = kind;
    r.objects = {0, 1};
    switch (kind) {
        case RelationKind::NextToWall:
            r.objects = {0};
            r.wall = four(rng);
            r.distance = u(rng);
            break;
        case RelationKind::MountedOnWall:
            r.wall = four(rng);
            r.height = 0.5 + u(rng);
            if (u(rng) < 0.5) r.objects = {0};
            break;
        case RelationKind::AdjacentDirDist:
            r.dir1 = static_cast<Orientation>(four(rng));
            r.distance = u(rng);
            break;
        case RelationKind::AdjacentTwoDirs:
            r.dir1 = static_cast<Orientation>(four(rng));
            r.dir2 = rotate_clockwise(r.dir1, u(rng) < 0.5 ? 1 : 3);
            break;
        case RelationKind::Aligned:
            r.objects = {0, 1, 2};
            r.axis = three(rng);
            break;
        case RelationKind::Surround: r.objects = {0, 1, 2, 3}; break;
        default: break;
    }
    return r;
}

inline constexpr decl::RelationKind kAllKinds[] = {
    decl::RelationKind::On,          decl::RelationKind::NextToWall,      decl::RelationKind::MountedOnWall,
    decl::RelationKind::MountedOnCeiling, decl::RelationKind::AdjacentDirDist, decl::RelationKind::AdjacentTwoDirs,
    decl::RelationKind::Aligned,     decl::RelationKind::Facing,          decl::RelationKind::Surround,
};

struct GradientCheck {
    int points = 0;
    int attempts = 0;
    double worst = 0.0;  // max |analytic - numeric| / max(|numeric|, 1)
};

// Compares relation_gradient with central differences at `points` random
// points where the loss is smooth.
inline GradientCheck check_gradients(decl::RelationKind kind, int points, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const Cuboid room{{0, 0, 0}, {5, 5, 3}};
    GradientCheck out;
    while (out.points < points && out.attempts < 200 * points) {
        ++out.attempts;
        const Layout base = random_layout(rng, 4, room);
        const decl::Relation r = random_relation(rng, kind);
        auto f = [&](const std::vector<double>& x) { return decl::relation_loss(r, with_coordinates(base, x)); };
        const std::vector<double> x = coordinates(base);
        if (!smooth_at(f, x, 1e-5)) continue;
        const std::vector<double> numeric = central_difference(f, x, 1e-6);
        const std::vector<double> analytic = decl::relation_gradient(r, base);
        double diff = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) diff = std::max(diff, std::abs(analytic[k] - numeric[k]));
        out.worst = std::max(out.worst, diff / std::max(max_abs(numeric), 1.0));
        ++out.points;
    }
    return out;
}

}  // namespace oracle
