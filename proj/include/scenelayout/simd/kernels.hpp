#pragma once

// Data-parallel inner loops of the layout losses.
//
// Every kernel writes one value per lane into `out` and never reduces:
// callers sum the outputs in index order, so all ISA variants produce
// bit-identical totals. Variants must keep the scalar operation order
// (no FMA contraction, division by 3 rather than multiplication by 1/3).

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "scenelayout/geometry.hpp"

namespace scenelayout::simd {

// Structure-of-arrays view of a set of cuboids.
struct BoxArrays {
    std::vector<double> min_x, min_y, min_z;
    std::vector<double> max_x, max_y, max_z;

    BoxArrays() = default;
    explicit BoxArrays(std::span<const Cuboid> boxes);

    std::size_t size() const { return min_x.size(); }
    void push_back(const Cuboid& c);
    void set(std::size_t i, const Cuboid& c);
    Cuboid get(std::size_t i) const;
};

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

struct KernelTable {
    Isa isa;
    // out[k] = mean extent of box[i] ∩ box[i + 1 + k] when every extent
    // exceeds contact_eps, else 0; out.size() == n - i - 1.
    void (*overlap_row)(const BoxArrays& boxes, std::size_t i, double contact_eps, std::span<double> out);
    // out[k] = per-axis overhang sum of box[k] past bounds.
    void (*protrusion)(const BoxArrays& boxes, const Cuboid& bounds, std::span<double> out);
    // out[k] = volume(a[k]) * |center(a[k]) - center(b[k])|.
    void (*transport)(const BoxArrays& a, const BoxArrays& b, std::span<double> out);
};

bool isa_available(Isa isa);

// Throws std::invalid_argument when the ISA is not usable on this machine.
const KernelTable& kernels(Isa isa);

// Best available variant. SCENELAYOUT_ISA=scalar|avx2|neon overrides.
const KernelTable& kernels();

namespace detail {
const KernelTable& scalar_table();
const KernelTable* avx2_table();  // nullptr when not compiled in
const KernelTable* neon_table();
}  // namespace detail

}  // namespace scenelayout::simd
