#include <cstdlib>
#include <stdexcept>
#include <string>

#include "scenelayout/simd/kernels.hpp"

namespace scenelayout::simd {

BoxArrays::BoxArrays(std::span<const Cuboid> boxes) {
    for (auto v : {&min_x, &min_y, &min_z, &max_x, &max_y, &max_z}) v->reserve(boxes.size());
    for (const auto& c : boxes) push_back(c);
}

void BoxArrays::push_back(const Cuboid& c) {
    min_x.push_back(c.min.x);
    min_y.push_back(c.min.y);
    min_z.push_back(c.min.z);
    max_x.push_back(c.max.x);
    max_y.push_back(c.max.y);
    max_z.push_back(c.max.z);
}

void BoxArrays::set(std::size_t i, const Cuboid& c) {
    min_x[i] = c.min.x;
    min_y[i] = c.min.y;
    min_z[i] = c.min.z;
    max_x[i] = c.max.x;
    max_y[i] = c.max.y;
    max_z[i] = c.max.z;
}

Cuboid BoxArrays::get(std::size_t i) const {
    return {{min_x[i], min_y[i], min_z[i]}, {max_x[i], max_y[i], max_z[i]}};
}

std::string_view to_string(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
    }
    return "scalar";
}

bool isa_available(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return true;
        case Isa::Avx2:
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
            return detail::avx2_table() != nullptr && __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Isa::Neon: return detail::neon_table() != nullptr;
    }
    return false;
}

const KernelTable& kernels(Isa isa) {
    if (!isa_available(isa)) throw std::invalid_argument("ISA '" + std::string(to_string(isa)) + "' not available");
    switch (isa) {
        case Isa::Avx2: return *detail::avx2_table();
        case Isa::Neon: return *detail::neon_table();
        case Isa::Scalar: break;
    }
    return detail::scalar_table();
}

namespace {

const KernelTable& select() {
    if (const char* forced = std::getenv("SCENELAYOUT_ISA")) {
        const std::string f(forced);
        if (f == "scalar") return kernels(Isa::Scalar);
        if (f == "avx2" && isa_available(Isa::Avx2)) return kernels(Isa::Avx2);
        if (f == "neon" && isa_available(Isa::Neon)) return kernels(Isa::Neon);
    }
    if (isa_available(Isa::Avx2)) return kernels(Isa::Avx2);
    if (isa_available(Isa::Neon)) return kernels(Isa::Neon);
    return kernels(Isa::Scalar);
}

}  // namespace

const KernelTable& kernels() {
    static const KernelTable& table = select();
    return table;
}

}  // namespace scenelayout::simd
