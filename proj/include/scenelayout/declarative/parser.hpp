#pragma once

// Relation files (.rel): one relation call per line, `#` starts a comment.
//
//   on(lamp, nightstand)
//   next_to_wall(bed, 1, 0.0)
//   mounted_on_wall(painting, 1, 1.2, bed)
//   mounted_on_ceiling(light, bed)
//   adjacent(rug, bed, SOUTH, 0.3)       # dir + distance
//   adjacent(nightstand, bed, WEST, NORTH)
//   aligned([chair_1, chair_2], x)
//   facing(tv, sofa)
//   surround([chair_1, chair_2], table)
//   pin(bed, 1.0, 2.0, 0.0, SOUTH)
//
// Directions are NORTH/EAST/SOUTH/WEST or 0..3, walls 0..3, axes x/y/z or
// 0..2. The fourth `adjacent` argument is a distance when written with a
// decimal point or exponent, otherwise a direction.

#include <stdexcept>
#include <string>
#include <string_view>

#include "scenelayout/declarative/relations.hpp"

namespace scenelayout::decl {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, int line);
    int line() const { return line_; }

private:
    int line_;
};

class ArityError : public ParseError {
public:
    using ParseError::ParseError;
};

class UnknownObject : public ParseError {
public:
    UnknownObject(const std::string& name, int line);
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

ConstraintSet parse_relations(std::string_view source, const SceneTemplate& scene);

// Inverse of parse_relations (pins included).
std::string format_relations(const ConstraintSet& cs);

}  // namespace scenelayout::decl
