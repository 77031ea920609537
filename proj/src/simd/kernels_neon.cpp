// NEON variants (AArch64), two doubles per vector.

#include "scenelayout/simd/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

namespace scenelayout::simd {

namespace {

inline float64x2_t load(const std::vector<double>& v, std::size_t k) { return vld1q_f64(v.data() + k); }

void overlap_row(const BoxArrays& b, std::size_t i, double contact_eps, std::span<double> out) {
    const std::size_t n = b.size();
    const float64x2_t aminx = vdupq_n_f64(b.min_x[i]), amaxx = vdupq_n_f64(b.max_x[i]);
    const float64x2_t aminy = vdupq_n_f64(b.min_y[i]), amaxy = vdupq_n_f64(b.max_y[i]);
    const float64x2_t aminz = vdupq_n_f64(b.min_z[i]), amaxz = vdupq_n_f64(b.max_z[i]);
    const float64x2_t eps = vdupq_n_f64(contact_eps);
    const float64x2_t three = vdupq_n_f64(3.0);

    std::size_t j = i + 1;
    for (; j + 2 <= n; j += 2) {
        const float64x2_t ex = vsubq_f64(vminq_f64(amaxx, load(b.max_x, j)), vmaxq_f64(aminx, load(b.min_x, j)));
        const float64x2_t ey = vsubq_f64(vminq_f64(amaxy, load(b.max_y, j)), vmaxq_f64(aminy, load(b.min_y, j)));
        const float64x2_t ez = vsubq_f64(vminq_f64(amaxz, load(b.max_z, j)), vmaxq_f64(aminz, load(b.min_z, j)));
        const uint64x2_t hit = vandq_u64(vandq_u64(vcgtq_f64(ex, eps), vcgtq_f64(ey, eps)), vcgtq_f64(ez, eps));
        const float64x2_t mean = vdivq_f64(vaddq_f64(vaddq_f64(ex, ey), ez), three);
        vst1q_f64(out.data() + (j - i - 1), vreinterpretq_f64_u64(vandq_u64(hit, vreinterpretq_u64_f64(mean))));
    }
    for (; j < n; ++j) {
        const double ex = std::min(b.max_x[i], b.max_x[j]) - std::max(b.min_x[i], b.min_x[j]);
        const double ey = std::min(b.max_y[i], b.max_y[j]) - std::max(b.min_y[i], b.min_y[j]);
        const double ez = std::min(b.max_z[i], b.max_z[j]) - std::max(b.min_z[i], b.min_z[j]);
        const bool hit = ex > contact_eps && ey > contact_eps && ez > contact_eps;
        out[j - i - 1] = hit ? (ex + ey + ez) / 3.0 : 0.0;
    }
}

void protrusion(const BoxArrays& b, const Cuboid& bounds, std::span<double> out) {
    const std::size_t n = b.size();
    const float64x2_t zero = vdupq_n_f64(0.0);
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        float64x2_t acc = zero;
        acc = vaddq_f64(acc, vmaxq_f64(zero, vsubq_f64(vdupq_n_f64(bounds.min.x), load(b.min_x, k))));
        acc = vaddq_f64(acc, vmaxq_f64(zero, vsubq_f64(load(b.max_x, k), vdupq_n_f64(bounds.max.x))));
        acc = vaddq_f64(acc, vmaxq_f64(zero, vsubq_f64(vdupq_n_f64(bounds.min.y), load(b.min_y, k))));
        acc = vaddq_f64(acc, vmaxq_f64(zero, vsubq_f64(load(b.max_y, k), vdupq_n_f64(bounds.max.y))));
        acc = vaddq_f64(acc, vmaxq_f64(zero, vsubq_f64(vdupq_n_f64(bounds.min.z), load(b.min_z, k))));
        acc = vaddq_f64(acc, vmaxq_f64(zero, vsubq_f64(load(b.max_z, k), vdupq_n_f64(bounds.max.z))));
        vst1q_f64(out.data() + k, acc);
    }
    for (; k < n; ++k) {
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
    const std::size_t n = a.size();
    const float64x2_t half = vdupq_n_f64(0.5);
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const float64x2_t aminx = load(a.min_x, k), amaxx = load(a.max_x, k);
        const float64x2_t aminy = load(a.min_y, k), amaxy = load(a.max_y, k);
        const float64x2_t aminz = load(a.min_z, k), amaxz = load(a.max_z, k);
        const float64x2_t vol =
            vmulq_f64(vmulq_f64(vsubq_f64(amaxx, aminx), vsubq_f64(amaxy, aminy)), vsubq_f64(amaxz, aminz));
        const float64x2_t dx = vsubq_f64(vmulq_f64(half, vaddq_f64(aminx, amaxx)),
                                         vmulq_f64(half, vaddq_f64(load(b.min_x, k), load(b.max_x, k))));
        const float64x2_t dy = vsubq_f64(vmulq_f64(half, vaddq_f64(aminy, amaxy)),
                                         vmulq_f64(half, vaddq_f64(load(b.min_y, k), load(b.max_y, k))));
        const float64x2_t dz = vsubq_f64(vmulq_f64(half, vaddq_f64(aminz, amaxz)),
                                         vmulq_f64(half, vaddq_f64(load(b.min_z, k), load(b.max_z, k))));
        const float64x2_t sq = vaddq_f64(vaddq_f64(vmulq_f64(dx, dx), vmulq_f64(dy, dy)), vmulq_f64(dz, dz));
        vst1q_f64(out.data() + k, vmulq_f64(vol, vsqrtq_f64(sq)));
    }
    for (; k < n; ++k) {
        const double vol = (a.max_x[k] - a.min_x[k]) * (a.max_y[k] - a.min_y[k]) * (a.max_z[k] - a.min_z[k]);
        const double dx = 0.5 * (a.min_x[k] + a.max_x[k]) - 0.5 * (b.min_x[k] + b.max_x[k]);
        const double dy = 0.5 * (a.min_y[k] + a.max_y[k]) - 0.5 * (b.min_y[k] + b.max_y[k]);
        const double dz = 0.5 * (a.min_z[k] + a.max_z[k]) - 0.5 * (b.min_z[k] + b.max_z[k]);
        out[k] = vol * std::sqrt(dx * dx + dy * dy + dz * dz);
    }
}

const KernelTable kTable{Isa::Neon, &overlap_row, &protrusion, &transport};

}  // namespace

const KernelTable* detail::neon_table() { return &kTable; }

}  // namespace scenelayout::simd

#else

namespace scenelayout::simd {
const KernelTable* detail::neon_table() { return nullptr; }
}  // namespace scenelayout::simd

#endif
