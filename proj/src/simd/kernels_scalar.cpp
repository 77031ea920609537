#include <algorithm>
#include <cmath>

#include "scenelayout/simd/kernels.hpp"

namespace scenelayout::simd {

namespace {

void overlap_row(const BoxArrays& b, std::size_t i, double contact_eps, std::span<double> out) {
    const std::size_t n = b.size();
    for (std::size_t j = i + 1; j < n; ++j) {
        const double ex = std::min(b.max_x[i], b.max_x[j]) - std::max(b.min_x[i], b.min_x[j]);
        const double ey = std::min(b.max_y[i], b.max_y[j]) - std::max(b.min_y[i], b.min_y[j]);
        const double ez = std::min(b.max_z[i], b.max_z[j]) - std::max(b.min_z[i], b.min_z[j]);
        const bool hit = ex > contact_eps && ey > contact_eps && ez > contact_eps;
        out[j - i - 1] = hit ? (ex + ey + ez) / 3.0 : 0.0;
    }
}

void protrusion(const BoxArrays& b, const Cuboid& bounds, std::span<double> out) {
    for (std::size_t k = 0; k < b.size(); ++k) {
        double acc = 0.0;
        acc += std::max(0.0, bounds.min.x - b.min_x[k]);
        acc += std::max(0.0, b.max_x[k] - bounds.max.x);
        acc += std::max(0.0, bounds.min.y - b.min_y[k]);
        acc += std::max(0.0, b.max_y[k] - bounds.max.y);
        acc += std::max(0.0, bounds.min.z - b.min_z[k]);
        acc += std::max(0.0, b.max_z[k] - bounds.max.z);
        out[k] = acc;
    }
}

void transport(const BoxArrays& a, const BoxArrays& b, std::span<double> out) {
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double vol = (a.max_x[k] - a.min_x[k]) * (a.max_y[k] - a.min_y[k]) * (a.max_z[k] - a.min_z[k]);
        const double dx = 0.5 * (a.min_x[k] + a.max_x[k]) - 0.5 * (b.min_x[k] + b.max_x[k]);
        const double dy = 0.5 * (a.min_y[k] + a.max_y[k]) - 0.5 * (b.min_y[k] + b.max_y[k]);
        const double dz = 0.5 * (a.min_z[k] + a.max_z[k]) - 0.5 * (b.min_z[k] + b.max_z[k]);
        out[k] = vol * std::sqrt(dx * dx + dy * dy + dz * dz);
    }
}

const KernelTable kTable{Isa::Scalar, &overlap_row, &protrusion, &transport};

}  // namespace

const KernelTable& detail::scalar_table() { return kTable; }

}  // namespace scenelayout::simd
