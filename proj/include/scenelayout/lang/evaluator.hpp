#pragma once

#include <stdexcept>
#include <string>

#include "scenelayout/geometry.hpp"
#include "scenelayout/lang/ast.hpp"

namespace scenelayout::lang {

enum class EvalErrorKind {
    UnplacedRead,    // read of an axis that no statement has pinned yet
    UnknownObject,   // assignment or read naming something that is not an object
    NonFiniteValue,  // an assigned or bound value is inf/nan
};

class EvalError : public std::runtime_error {
public:
    EvalError(EvalErrorKind kind, const std::string& message, const SourceSpan& span);
    EvalErrorKind kind() const { return kind_; }
    const SourceSpan& span() const { return span_; }

private:
    EvalErrorKind kind_;
    SourceSpan span_;
};

std::string_view to_string(EvalErrorKind kind);

// Static scope check against a template: every name is a bound variable,
// a loop variable, a template object or `scene`, used in a position that
// fits its kind. Throws UnknownIdentifier.
void check_bindings(const Program& program, const SceneTemplate& scene);

// Runs the program statement by statement. Each attribute assignment pins
// one axis of one object; after the last statement, unpinned axes take
// defaults:
//   - x/y: scene center, except the facing axis of a wall-mounted object,
//     whose back face goes to the wall behind it;
//   - z: standing objects rest on the highest top whose footprint contains
//     theirs (else the floor), resolved in template order after all
//     explicit z pins; candidates are z-pinned objects and standing
//     objects resolved earlier; others center at scene mid-height;
//   - facing: NORTH.
// `x.facing = obj` picks the cardinal direction with the largest dot
// product toward obj's center (ties prefer N, E, S, W). Horizontal axes
// not pinned yet count as the scene center.
Layout evaluate(const Program& program, const SceneTemplate& scene);

}  // namespace scenelayout::lang
