#pragma once

// Gradient-descent solver for a ConstraintSet. Positions follow an
// Adam-style update with a linearly decaying step; every
// `orientation_period` steps each free object tries the four cardinal
// orientations (rotating about its center) with the others held fixed.
// Restart 0 starts from the default placement, later restarts from seeded
// random placements; the lowest objective seen across all restarts wins
// (ties: lowest restart index).

#include <cstdint>
#include <vector>

#include "scenelayout/declarative/relations.hpp"

namespace scenelayout::decl {

struct SolverConfig {
    double step_size = 0.05;
    int iterations = 600;
    int restarts = 4;
    // Satisfaction threshold used when reporting which relations hold.
    double tolerance = 1e-2;
    int orientation_period = 25;
    // Weight of the hard-error terms (bounds, overlap, standing, mounted).
    double hard_weight = 1.0;
    std::uint64_t seed = 0;
    unsigned threads = 1;

    // Throws std::invalid_argument.
    void validate() const;
};

struct SolveResult {
    Layout layout;
    double objective = 0.0;       // relation loss + hard_weight * hard loss
    double relation_loss = 0.0;
    double hard_loss = 0.0;
    int best_restart = 0;
    // Best objective seen so far after each iteration, restarts concatenated
    // in index order.
    std::vector<double> best_history;
    // Per relation, whether `satisfied` holds at cfg.tolerance.
    std::vector<bool> satisfied;
};

// Objective of a concrete layout under the constraint set.
double objective(const ConstraintSet& cs, const Layout& layout, double hard_weight = 1.0);

SolveResult solve_detailed(const ConstraintSet& cs, const SolverConfig& cfg = {});
Layout solve(const ConstraintSet& cs, const SolverConfig& cfg = {});

}  // namespace scenelayout::decl
