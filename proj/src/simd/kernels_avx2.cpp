// AVX2 variants, four doubles per lane group. Compiled with -mavx2 only
// (no -mfma) so the arithmetic matches the scalar reference bit for bit.

#include "scenelayout/simd/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace scenelayout::simd {

namespace {

inline __m256d load(const std::vector<double>& v, std::size_t k) { return _mm256_loadu_pd(v.data() + k); }

void overlap_row(const BoxArrays& b, std::size_t i, double contact_eps, std::span<double> out) {
    const std::size_t n = b.size();
    const __m256d aminx = _mm256_set1_pd(b.min_x[i]), amaxx = _mm256_set1_pd(b.max_x[i]);
    const __m256d aminy = _mm256_set1_pd(b.min_y[i]), amaxy = _mm256_set1_pd(b.max_y[i]);
    const __m256d aminz = _mm256_set1_pd(b.min_z[i]), amaxz = _mm256_set1_pd(b.max_z[i]);
    const __m256d eps = _mm256_set1_pd(contact_eps);
    const __m256d three = _mm256_set1_pd(3.0);

    std::size_t j = i + 1;
    for (; j + 4 <= n; j += 4) {
        const __m256d ex = _mm256_sub_pd(_mm256_min_pd(amaxx, load(b.max_x, j)), _mm256_max_pd(aminx, load(b.min_x, j)));
        const __m256d ey = _mm256_sub_pd(_mm256_min_pd(amaxy, load(b.max_y, j)), _mm256_max_pd(aminy, load(b.min_y, j)));
        const __m256d ez = _mm256_sub_pd(_mm256_min_pd(amaxz, load(b.max_z, j)), _mm256_max_pd(aminz, load(b.min_z, j)));
        const __m256d hit = _mm256_and_pd(_mm256_and_pd(_mm256_cmp_pd(ex, eps, _CMP_GT_OQ), _mm256_cmp_pd(ey, eps, _CMP_GT_OQ)),
                                          _mm256_cmp_pd(ez, eps, _CMP_GT_OQ));
        const __m256d mean = _mm256_div_pd(_mm256_add_pd(_mm256_add_pd(ex, ey), ez), three);
        _mm256_storeu_pd(out.data() + (j - i - 1), _mm256_and_pd(hit, mean));
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
    const __m256d zero = _mm256_setzero_pd();
    const __m256d lox = _mm256_set1_pd(bounds.min.x), hix = _mm256_set1_pd(bounds.max.x);
    const __m256d loy = _mm256_set1_pd(bounds.min.y), hiy = _mm256_set1_pd(bounds.max.y);
    const __m256d loz = _mm256_set1_pd(bounds.min.z), hiz = _mm256_set1_pd(bounds.max.z);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        __m256d acc = zero;
        acc = _mm256_add_pd(acc, _mm256_max_pd(zero, _mm256_sub_pd(lox, load(b.min_x, k))));
        acc = _mm256_add_pd(acc, _mm256_max_pd(zero, _mm256_sub_pd(load(b.max_x, k), hix)));
        acc = _mm256_add_pd(acc, _mm256_max_pd(zero, _mm256_sub_pd(loy, load(b.min_y, k))));
        acc = _mm256_add_pd(acc, _mm256_max_pd(zero, _mm256_sub_pd(load(b.max_y, k), hiy)));
        acc = _mm256_add_pd(acc, _mm256_max_pd(zero, _mm256_sub_pd(loz, load(b.min_z, k))));
        acc = _mm256_add_pd(acc, _mm256_max_pd(zero, _mm256_sub_pd(load(b.max_z, k), hiz)));
        _mm256_storeu_pd(out.data() + k, acc);
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
    const __m256d half = _mm256_set1_pd(0.5);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d aminx = load(a.min_x, k), amaxx = load(a.max_x, k);
        const __m256d aminy = load(a.min_y, k), amaxy = load(a.max_y, k);
        const __m256d aminz = load(a.min_z, k), amaxz = load(a.max_z, k);
        const __m256d vol = _mm256_mul_pd(_mm256_mul_pd(_mm256_sub_pd(amaxx, aminx), _mm256_sub_pd(amaxy, aminy)),
                                          _mm256_sub_pd(amaxz, aminz));
        const __m256d dx = _mm256_sub_pd(_mm256_mul_pd(half, _mm256_add_pd(aminx, amaxx)),
                                         _mm256_mul_pd(half, _mm256_add_pd(load(b.min_x, k), load(b.max_x, k))));
        const __m256d dy = _mm256_sub_pd(_mm256_mul_pd(half, _mm256_add_pd(aminy, amaxy)),
                                         _mm256_mul_pd(half, _mm256_add_pd(load(b.min_y, k), load(b.max_y, k))));
        const __m256d dz = _mm256_sub_pd(_mm256_mul_pd(half, _mm256_add_pd(aminz, amaxz)),
                                         _mm256_mul_pd(half, _mm256_add_pd(load(b.min_z, k), load(b.max_z, k))));
        const __m256d sq = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)), _mm256_mul_pd(dz, dz));
        _mm256_storeu_pd(out.data() + k, _mm256_mul_pd(vol, _mm256_sqrt_pd(sq)));
    }
    for (; k < n; ++k) {
        const double vol = (a.max_x[k] - a.min_x[k]) * (a.max_y[k] - a.min_y[k]) * (a.max_z[k] - a.min_z[k]);
        const double dx = 0.5 * (a.min_x[k] + a.max_x[k]) - 0.5 * (b.min_x[k] + b.max_x[k]);
        const double dy = 0.5 * (a.min_y[k] + a.max_y[k]) - 0.5 * (b.min_y[k] + b.max_y[k]);
        const double dz = 0.5 * (a.min_z[k] + a.max_z[k]) - 0.5 * (b.min_z[k] + b.max_z[k]);
        out[k] = vol * std::sqrt(dx * dx + dy * dy + dz * dz);
    }
}

const KernelTable kTable{Isa::Avx2, &overlap_row, &protrusion, &transport};

}  // namespace

const KernelTable* detail::avx2_table() { return &kTable; }

}  // namespace scenelayout::simd

#else

namespace scenelayout::simd {
const KernelTable* detail::avx2_table() { return nullptr; }
}  // namespace scenelayout::simd

#endif
