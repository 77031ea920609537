#pragma once

#include <optional>
#include <string>

#include "scenelayout/lang/ast.hpp"

namespace scenelayout::lang {

// Canonical source text: one statement per line, 4-space loop bodies,
// single spaces around binary operators, shortest round-trip literals.
std::string pretty_print(const Program& program);

// Shortest text that parses back to exactly `value`; integral values keep
// a trailing ".0".
std::string format_number(double value);

std::string format_orientation(const OrientationValue& value);

enum class CompareMode {
    Exact,
    // Literal values and facing expressions are ignored; parameter kinds
    // and everything else must match.
    IgnoreParameterValues,
};

// First structural difference between the two programs, or nullopt when
// they are equal under `mode`. Source spans never participate.
std::optional<std::string> structural_diff(const Program& a, const Program& b, CompareMode mode = CompareMode::Exact);

inline bool structurally_equal(const Program& a, const Program& b, CompareMode mode = CompareMode::Exact) {
    return !structural_diff(a, b, mode).has_value();
}

}  // namespace scenelayout::lang
