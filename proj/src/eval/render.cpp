#include "scenelayout/eval/render.hpp"

#include <algorithm>
#include <cstdio>

namespace scenelayout::eval {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s(buf);
    if (s == "-0.00") s = "0.00";
    return s;
}

std::string escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

ImagePoint to_image(const Cuboid& bounds, double x, double y, const RenderOptions& o) {
    return {o.margin + (x - bounds.min.x) * o.scale, o.margin + (bounds.max.y - y) * o.scale};
}

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string object_color(std::string_view name) {
    const std::uint64_t h = fnv1a(name);
    const int hue = static_cast<int>(h % 360);
    const int light = 60 + static_cast<int>((h >> 16) % 16);
    return "hsl(" + std::to_string(hue) + ",55%," + std::to_string(light) + "%)";
}

std::string render_topdown(const Layout& layout, const RenderOptions& o) {
    const Cuboid& b = layout.bounds;
    const double width = (b.max.x - b.min.x) * o.scale + 2.0 * o.margin;
    const double height = (b.max.y - b.min.y) * o.scale + 2.0 * o.margin;
    std::vector<bool> flagged(layout.placements.size(), false);
    if (o.highlight_violations) flagged = violating_objects(layout, o.errors);

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" + fmt(height) +
           "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) + "\">\n";
    svg += "<defs><marker id=\"head\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" refY=\"3\" "
           "orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" fill=\"#333\"/></marker></defs>\n";
    svg += "<rect class=\"bounds\" x=\"" + fmt(o.margin) + "\" y=\"" + fmt(o.margin) + "\" width=\"" +
           fmt(width - 2.0 * o.margin) + "\" height=\"" + fmt(height - 2.0 * o.margin) +
           "\" fill=\"#fafafa\" stroke=\"#000\" stroke-width=\"2\"/>\n";

    for (std::size_t i = 0; i < layout.placements.size(); ++i) {
        const auto& p = layout.placements[i];
        const Cuboid c = world_cuboid(p);
        const ImagePoint top_left = to_image(b, c.min.x, c.max.y, o);
        const double w = (c.max.x - c.min.x) * o.scale;
        const double h = (c.max.y - c.min.y) * o.scale;
        const std::string name = escape(p.spec.name);
        svg += "<g data-name=\"" + name + "\">\n";
        svg += std::string("<rect class=\"") + (flagged[i] ? "object violation" : "object") + "\" x=\"" +
               fmt(top_left.x) + "\" y=\"" + fmt(top_left.y) + "\" width=\"" + fmt(w) + "\" height=\"" + fmt(h) +
               "\" fill=\"" + object_color(p.spec.name) + "\" fill-opacity=\"0.8\" stroke=\"" +
               (flagged[i] ? "#d00" : "#333") + "\" stroke-width=\"" + (flagged[i] ? "3" : "1") + "\"/>\n";

        const Vec3 center = c.center();
        const Vec3 f = facing_vector(p.orientation);
        const double len = 0.4 * std::min(c.max.x - c.min.x, c.max.y - c.min.y);
        const ImagePoint from = to_image(b, center.x, center.y, o);
        const ImagePoint to = to_image(b, center.x + f.x * len, center.y + f.y * len, o);
        svg += "<line class=\"facing\" x1=\"" + fmt(from.x) + "\" y1=\"" + fmt(from.y) + "\" x2=\"" + fmt(to.x) +
               "\" y2=\"" + fmt(to.y) + "\" stroke=\"#333\" stroke-width=\"1.5\" marker-end=\"url(#head)\"/>\n";
        svg += "<text x=\"" + fmt(from.x) + "\" y=\"" + fmt(from.y - 4.0) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" + name + "</text>\n";
        svg += "</g>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace scenelayout::eval
