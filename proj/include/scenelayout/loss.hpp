#pragma once

// Hard-error loss of a layout: out-of-bounds, overlap, standing support and
// wall mounting. Every term is a length in meters and is zero on a
// physically valid layout.

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "scenelayout/geometry.hpp"

namespace scenelayout {

struct LossWeights {
    double oob = 1.0;
    double overlap = 1.0;
    double standing = 1.0;
    double mounted = 1.0;

    // Throws std::invalid_argument on negative or non-finite weights.
    void validate() const;
};

struct LossOptions {
    LossWeights weights;
    double opening_margin = kDefaultOpeningMargin;
    // Intersections thinner than this on any axis are contact, not overlap.
    double contact_eps = 1e-9;
    // A surface counts as support when its top is at most this far above
    // the object's bottom face.
    double support_band = 0.01;
};

struct LossReport {
    double oob = 0.0;
    double overlap = 0.0;
    double standing = 0.0;
    double mounted = 0.0;
    double total = 0.0;

    friend bool operator==(const LossReport&, const LossReport&) = default;
};

struct PairOverlap {
    std::size_t first;
    std::size_t second;
    double mean_extent;
};

// Per-object and per-pair contributions (template order).
struct LossBreakdown {
    std::vector<double> protrusion;
    std::vector<PairOverlap> overlaps;  // non-zero pairs only, (i, j) lexicographic
    std::vector<double> standing_gap;   // 0 for non-standing objects
    std::vector<double> mounted_gap;    // 0 for non-mounted objects
};

double oob_loss(const Layout& layout);
double overlap_loss(const Layout& layout, const LossOptions& options = {});
double standing_loss(const Layout& layout, const LossOptions& options = {});
double mounted_loss(const Layout& layout);

LossReport total_loss(const Layout& layout, const LossWeights& weights = {});
LossReport total_loss(const Layout& layout, const LossOptions& options);

LossBreakdown loss_breakdown(const Layout& layout, const LossOptions& options = {});

// Height of the surface that supports a standing object: the highest top
// face among objects whose footprint overlaps it and whose top lies at or
// below bottom + band; the floor otherwise.
double support_height(const Layout& layout, std::size_t index, const LossOptions& options = {});

// Distance from the back face of a wall-mounted object to the nearest
// parallel scene wall.
double mounted_gap(const PlacedObject& p, const Cuboid& bounds);

nlohmann::json to_json(const LossReport& report);

}  // namespace scenelayout
