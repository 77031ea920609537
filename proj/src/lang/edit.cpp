#include "scenelayout/lang/edit.hpp"

#include <cmath>

#include "scenelayout/lang/printer.hpp"

namespace scenelayout::lang {

std::vector<ParamRef> list_parameters(const Program& program) { return program.params(); }

namespace {

OrientationValue turned(OrientationValue v, int quarter_turns) {
    if (v.cardinal) {
        v.cardinal = rotate_clockwise(*v.cardinal, quarter_turns);
    } else {
        v.quarter_turns = ((v.quarter_turns + quarter_turns) % 4 + 4) % 4;
    }
    return v;
}

}  // namespace

Program apply_edit(const Program& program, const Edit& edit) {
    if (edit.param >= program.params().size()) {
        throw IncompatibleEdit("no parameter with id " + std::to_string(edit.param));
    }
    Program out = program;
    ParamRef& p = out.mutable_params()[edit.param];
    const bool numeric = edit.action == EditAction::Scale || edit.action == EditAction::Offset;
    if (numeric != (p.kind == ParamKind::FloatLiteral)) {
        throw IncompatibleEdit(action_label(edit) + " does not apply to parameter " + std::to_string(edit.param));
    }
    switch (edit.action) {
        case EditAction::Scale: p.number *= edit.amount; break;
        case EditAction::Offset: p.number += edit.amount; break;
        case EditAction::Rotate: p.orientation = turned(p.orientation, static_cast<int>(std::lround(edit.amount))); break;
        case EditAction::Reverse: p.orientation = turned(p.orientation, 2); break;
    }
    return out;
}

std::string action_label(const Edit& edit) {
    switch (edit.action) {
        case EditAction::Scale: return "scale*" + format_number(edit.amount);
        case EditAction::Offset:
            return std::string("offset") + (edit.amount < 0 ? "-" : "+") + format_number(std::abs(edit.amount));
        case EditAction::Rotate: return "rotate" + std::to_string(std::lround(edit.amount) * 90);
        case EditAction::Reverse: return "reverse";
    }
    return "edit";
}

nlohmann::json edit_to_json(const Program& before, const Edit& edit) {
    const Program after = apply_edit(before, edit);
    const ParamRef& from = before.params()[edit.param];
    const ParamRef& to = after.params()[edit.param];
    nlohmann::json j{{"param", edit.param}, {"action", action_label(edit)}};
    if (from.kind == ParamKind::FloatLiteral) {
        j["from"] = from.number;
        j["to"] = to.number;
    } else {
        j["from"] = format_orientation(from.orientation);
        j["to"] = format_orientation(to.orientation);
    }
    return j;
}

}  // namespace scenelayout::lang
