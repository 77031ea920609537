#pragma once

// Helpers shared by the unit tests.

#include <string>

#include "scenelayout/geometry.hpp"

namespace testsupport {

using namespace scenelayout;

inline ObjectSpec object(std::string name, Vec3 dims, SupportType support = SupportType::Standing,
                         bool opening = false) {
    ObjectSpec s;
    s.name = std::move(name);
    s.dims = dims;
    s.support = support;
    s.is_opening = opening;
    return s;
}

inline PlacedObject place(ObjectSpec spec, Vec3 position, Orientation o = Orientation::North) {
    return {std::move(spec), position, o};
}

inline Layout room(Vec3 size, std::vector<PlacedObject> placements = {}) {
    Layout l;
    l.bounds = {{0, 0, 0}, size};
    l.placements = std::move(placements);
    return l;
}

inline SceneTemplate scene(Vec3 size, std::vector<ObjectSpec> objects) {
    SceneTemplate t;
    t.bounds = {{0, 0, 0}, size};
    t.objects = std::move(objects);
    return t;
}

inline std::string fixture(const std::string& name) { return std::string(SCENELAYOUT_FIXTURES) + "/" + name; }

}  // namespace testsupport
