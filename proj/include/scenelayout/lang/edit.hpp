#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "scenelayout/lang/ast.hpp"

namespace scenelayout::lang {

enum class EditAction {
    Scale,    // literal *= amount (2 or 0.5 in the neighborhood)
    Offset,   // literal += amount (signed)
    Rotate,   // facing turned clockwise by `amount` quarter turns
    Reverse,  // facing turned around
};

struct Edit {
    ParamId param = 0;
    EditAction action = EditAction::Scale;
    double amount = 0.0;

    static Edit scale(ParamId p, double factor) { return {p, EditAction::Scale, factor}; }
    static Edit offset(ParamId p, double delta) { return {p, EditAction::Offset, delta}; }
    static Edit rotate(ParamId p, int quarter_turns) { return {p, EditAction::Rotate, static_cast<double>(quarter_turns)}; }
    static Edit reverse(ParamId p) { return {p, EditAction::Reverse, 0.0}; }

    friend bool operator==(const Edit&, const Edit&) = default;
};

class IncompatibleEdit : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Every literal and facing expression, in source order. A literal inside a
// loop body is one parameter shared by all iterations.
std::vector<ParamRef> list_parameters(const Program& program);

// A copy of `program` that differs only at `edit.param`.
// Throws IncompatibleEdit for unknown ids or mismatched kinds.
Program apply_edit(const Program& program, const Edit& edit);

// "scale*2", "offset-0.1", "rotate90", "reverse" ...
std::string action_label(const Edit& edit);

// {"param", "action", "from", "to"}; from/to are numbers for literals and
// source text for facing expressions.
nlohmann::json edit_to_json(const Program& before, const Edit& edit);

}  // namespace scenelayout::lang
