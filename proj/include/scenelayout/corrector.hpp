#pragma once

// LLM-free program repair: greedy coordinate descent over program
// parameters. Each iteration evaluates every single-edit neighbor, keeps
// the one with the lowest loss (ties: smallest mass-transport distance to
// the original layout, then lowest (param, action) index) and accepts it
// only if it lowers the loss by at least epsilon.

#include <optional>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "scenelayout/geometry.hpp"
#include "scenelayout/lang/ast.hpp"
#include "scenelayout/lang/edit.hpp"
#include "scenelayout/loss.hpp"

namespace scenelayout {

struct CorrectorConfig {
    double epsilon = 1e-3;
    std::vector<double> offsets{0.1, 0.5, 1.0};
    int max_steps = 100;
    LossOptions loss;
    // Losses (and tie-break distances) within this relative tolerance are
    // treated as equal.
    double tie_tolerance = 1e-9;
    // Worker threads for candidate evaluation; results do not depend on it.
    unsigned threads = 1;

    // Throws std::invalid_argument.
    void validate() const;
};

class TemplateMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Candidate {
    lang::Edit edit;
    lang::Program program;
};

// For each literal: scale by 2, scale by 0.5, then +δ and -δ for each
// configured offset. For each facing expression: rotate 90, rotate 270 and
// reverse (the 180-degree rotation, listed once). Ordered by parameter id,
// then action.
std::vector<Candidate> neighborhood(const lang::Program& program, const CorrectorConfig& config);

// Sum over objects of volume * |center displacement|, objects matched by
// name. Throws TemplateMismatch when the object sets differ.
double mass_transport_distance(const Layout& a, const Layout& b);

struct CorrectionStep {
    lang::Edit edit;
    lang::ParamRef before;
    lang::ParamRef after;
    double loss_before = 0.0;
    double loss_after = 0.0;
    // Set when several candidates shared the minimal loss.
    std::optional<double> tie_break_distance;
};

struct CorrectionTrace {
    lang::Program initial_program;
    lang::Program final_program;
    std::vector<CorrectionStep> steps;
    LossReport initial_loss;
    LossReport final_loss;
    Layout final_layout;
};

// Throws lang::EvalError / lang::UnknownIdentifier when the initial program
// cannot be evaluated; failing candidates are skipped.
CorrectionTrace correct(const lang::Program& program, const SceneTemplate& scene, const CorrectorConfig& config = {});

// [{"edit": {param, action, from, to}, "loss_before", "loss_after", "tie_break"}]
nlohmann::json trace_to_json(const CorrectionTrace& trace);

}  // namespace scenelayout
