#pragma once

// Orthographic top-down SVG of a layout. World (x, y) maps to image
// (margin + (x - min.x) * scale, margin + (max.y - y) * scale), so north is
// up. Objects are drawn in template order as filled rectangles with a name
// label and a facing arrow from the footprint center.

#include <cstdint>
#include <string>
#include <string_view>

#include "scenelayout/eval/error_report.hpp"
#include "scenelayout/geometry.hpp"

namespace scenelayout::eval {

struct RenderOptions {
    double scale = 50.0;   // pixels per meter
    double margin = 20.0;  // pixels around the scene boundary
    // Outline objects involved in violations (see ErrorReportOptions).
    bool highlight_violations = false;
    ErrorReportOptions errors;
};

struct ImagePoint {
    double x;
    double y;
};

ImagePoint to_image(const Cuboid& bounds, double x, double y, const RenderOptions& options = {});

// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

// Fill color derived from the object name, e.g. "hsl(212,55%,68%)".
std::string object_color(std::string_view name);

std::string render_topdown(const Layout& layout, const RenderOptions& options = {});

}  // namespace scenelayout::eval
