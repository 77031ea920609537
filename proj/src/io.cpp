#include "scenelayout/io.hpp"

#include <fstream>
#include <sstream>

namespace scenelayout {

using nlohmann::json;

namespace {

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec_from(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 3) throw FormatError(std::string(what) + " must be a 3-element array");
    Vec3 v;
    for (std::size_t i = 0; i < 3; ++i) {
        if (!j[i].is_number()) throw FormatError(std::string(what) + " must contain numbers");
        v[i] = j[i].get<double>();
    }
    if (!v.finite()) throw FormatError(std::string(what) + " must be finite");
    return v;
}

json object_json(const ObjectSpec& o) {
    return json{{"name", o.name},
                {"dims", vec_json(o.dims)},
                {"support", std::string(to_string(o.support))},
                {"opening", o.is_opening}};
}

ObjectSpec object_from(const json& j) {
    if (!j.is_object()) throw FormatError("object entry must be a JSON object");
    ObjectSpec o;
    if (!j.contains("name") || !j["name"].is_string()) throw FormatError("object entry needs a string \"name\"");
    o.name = j["name"].get<std::string>();
    if (!j.contains("dims")) throw FormatError("object '" + o.name + "' needs \"dims\"");
    o.dims = vec_from(j["dims"], "dims");
    if (j.contains("support")) {
        const auto s = parse_support(j["support"].get<std::string>());
        if (!s) throw FormatError("object '" + o.name + "' has unknown support type");
        o.support = *s;
    }
    o.is_opening = j.value("opening", false);
    return o;
}

Cuboid bounds_from(const json& j) {
    // Scene bounds start at the origin; a 2x3 [[min],[max]] form is also accepted.
    if (j.is_array() && j.size() == 2 && j[0].is_array()) {
        return {vec_from(j[0], "bounds.min"), vec_from(j[1], "bounds.max")};
    }
    return {{0.0, 0.0, 0.0}, vec_from(j, "bounds")};
}

json bounds_json(const Cuboid& b) {
    if (b.min == Vec3{}) return vec_json(b.max);
    return json::array({vec_json(b.min), vec_json(b.max)});
}

}  // namespace

json to_json(const SceneTemplate& t) {
    json objects = json::array();
    for (const auto& o : t.objects) objects.push_back(object_json(o));
    return json{{"prompt", t.prompt}, {"bounds", bounds_json(t.bounds)}, {"objects", objects}};
}

SceneTemplate template_from_json(const json& j) {
    if (!j.is_object()) throw FormatError("scene template must be a JSON object");
    SceneTemplate t;
    t.prompt = j.value("prompt", std::string{});
    if (!j.contains("bounds")) throw FormatError("scene template needs \"bounds\"");
    t.bounds = bounds_from(j["bounds"]);
    if (j.contains("objects")) {
        for (const auto& o : j["objects"]) t.objects.push_back(object_from(o));
    }
    try {
        t.validate();
    } catch (const GeometryError& e) {
        throw FormatError(e.what());
    }
    return t;
}

json to_json(const Layout& layout) {
    json objects = json::array();
    for (const auto& p : layout.placements) {
        json o = object_json(p.spec);
        o["position"] = vec_json(p.position);
        o["orientation"] = std::string(to_string(p.orientation));
        objects.push_back(std::move(o));
    }
    return json{{"prompt", layout.prompt}, {"bounds", bounds_json(layout.bounds)}, {"objects", objects}};
}

Layout layout_from_json(const json& j) {
    const SceneTemplate t = template_from_json(j);
    Layout layout{t.prompt, t.bounds, {}};
    const auto& objects = j["objects"];
    for (std::size_t i = 0; i < t.objects.size(); ++i) {
        const auto& o = objects[i];
        PlacedObject p{t.objects[i], {}, Orientation::North};
        if (!o.contains("position")) throw FormatError("layout object '" + p.spec.name + "' needs \"position\"");
        p.position = vec_from(o["position"], "position");
        if (o.contains("orientation")) {
            const auto ori = parse_orientation(o["orientation"].get<std::string>());
            if (!ori) throw FormatError("layout object '" + p.spec.name + "' has unknown orientation");
            p.orientation = *ori;
        }
        layout.placements.push_back(std::move(p));
    }
    return layout;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path.string());
    out << text;
}

json read_json_file(const std::filesystem::path& path) {
    try {
        return json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

SceneTemplate load_template(const std::filesystem::path& path) { return template_from_json(read_json_file(path)); }

Layout load_layout(const std::filesystem::path& path) { return layout_from_json(read_json_file(path)); }

}  // namespace scenelayout
