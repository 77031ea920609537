#include "scenelayout/loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scenelayout/simd/kernels.hpp"

namespace scenelayout {

void LossWeights::validate() const {
    for (double w : {oob, overlap, standing, mounted}) {
        if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("loss weights must be finite and non-negative");
    }
}

namespace {

simd::BoxArrays world_boxes(const Layout& layout) {
    simd::BoxArrays boxes;
    for (const auto& p : layout.placements) boxes.push_back(world_cuboid(p));
    return boxes;
}

simd::BoxArrays collision_boxes(const Layout& layout, double margin) {
    simd::BoxArrays boxes;
    for (const auto& p : layout.placements) boxes.push_back(collision_cuboid(p, margin));
    return boxes;
}

double ordered_sum(std::span<const double> values) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
}

bool footprints_overlap(const Cuboid& a, const Cuboid& b, double eps) {
    return std::min(a.max.x, b.max.x) - std::max(a.min.x, b.min.x) > eps &&
           std::min(a.max.y, b.max.y) - std::max(a.min.y, b.min.y) > eps;
}

}  // namespace

double oob_loss(const Layout& layout) {
    const auto boxes = world_boxes(layout);
    std::vector<double> per(boxes.size());
    simd::kernels().protrusion(boxes, layout.bounds, per);
    return ordered_sum(per);
}

double overlap_loss(const Layout& layout, const LossOptions& options) {
    const auto boxes = collision_boxes(layout, options.opening_margin);
    const auto& k = simd::kernels();
    const std::size_t n = boxes.size();
    std::vector<double> row(n);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::span<double> out(row.data(), n - i - 1);
        k.overlap_row(boxes, i, options.contact_eps, out);
        for (double v : out) acc += v;
    }
    return acc;
}

double support_height(const Layout& layout, std::size_t index, const LossOptions& options) {
    const Cuboid self = world_cuboid(layout.placements[index]);
    const double bottom = self.min.z;
    double best = layout.bounds.min.z;
    for (std::size_t j = 0; j < layout.placements.size(); ++j) {
        if (j == index) continue;
        const Cuboid other = world_cuboid(layout.placements[j]);
        if (other.max.z > bottom + options.support_band) continue;
        if (!footprints_overlap(self, other, options.contact_eps)) continue;
        best = std::max(best, other.max.z);
    }
    return best;
}

double standing_loss(const Layout& layout, const LossOptions& options) {
    double acc = 0.0;
    for (std::size_t i = 0; i < layout.placements.size(); ++i) {
        if (layout.placements[i].spec.support != SupportType::Standing) continue;
        acc += std::abs(world_cuboid(layout.placements[i]).min.z - support_height(layout, i, options));
    }
    return acc;
}

double mounted_gap(const PlacedObject& p, const Cuboid& bounds) {
    const Cuboid c = world_cuboid(p);
    const std::size_t axis = facing_axis(p.orientation);
    const double back = facing_sign(p.orientation) > 0 ? c.min[axis] : c.max[axis];
    return std::min(std::abs(back - bounds.min[axis]), std::abs(back - bounds.max[axis]));
}

double mounted_loss(const Layout& layout) {
    double acc = 0.0;
    for (const auto& p : layout.placements) {
        if (p.spec.support == SupportType::WallMounted) acc += mounted_gap(p, layout.bounds);
    }
    return acc;
}

LossReport total_loss(const Layout& layout, const LossOptions& options) {
    options.weights.validate();
    LossReport r;
    r.oob = oob_loss(layout);
    r.overlap = overlap_loss(layout, options);
    r.standing = standing_loss(layout, options);
    r.mounted = mounted_loss(layout);
    const auto& w = options.weights;
    r.total = w.oob * r.oob + w.overlap * r.overlap + w.standing * r.standing + w.mounted * r.mounted;
    return r;
}

LossReport total_loss(const Layout& layout, const LossWeights& weights) {
    LossOptions options;
    options.weights = weights;
    return total_loss(layout, options);
}

LossBreakdown loss_breakdown(const Layout& layout, const LossOptions& options) {
    const std::size_t n = layout.placements.size();
    LossBreakdown b;
    const auto& k = simd::kernels();

    const auto boxes = world_boxes(layout);
    b.protrusion.resize(n);
    k.protrusion(boxes, layout.bounds, b.protrusion);

    const auto coll = collision_boxes(layout, options.opening_margin);
    std::vector<double> row(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::span<double> out(row.data(), n - i - 1);
        k.overlap_row(coll, i, options.contact_eps, out);
        for (std::size_t m = 0; m < out.size(); ++m) {
            if (out[m] > 0.0) b.overlaps.push_back({i, i + 1 + m, out[m]});
        }
    }

    b.standing_gap.assign(n, 0.0);
    b.mounted_gap.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = layout.placements[i];
        if (p.spec.support == SupportType::Standing) {
            b.standing_gap[i] = std::abs(world_cuboid(p).min.z - support_height(layout, i, options));
        } else if (p.spec.support == SupportType::WallMounted) {
            b.mounted_gap[i] = mounted_gap(p, layout.bounds);
        }
    }
    return b;
}

nlohmann::json to_json(const LossReport& r) {
    return nlohmann::json{{"oob", r.oob}, {"overlap", r.overlap}, {"standing", r.standing}, {"mounted", r.mounted},
                          {"total", r.total}};
}

}  // namespace scenelayout
