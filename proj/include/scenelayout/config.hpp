#pragma once

// Engine configuration file: TOML-style `key = value` lines, optional
// `[section]` headers, `#` comments. Keys (section.key):
//
//   corrector.epsilon, corrector.max_steps, corrector.offsets ([0.1, 0.5]),
//   corrector.tie_tolerance, corrector.threads
//   weights.oob, weights.overlap, weights.standing, weights.mounted
//   loss.opening_margin, loss.support_band
//   solver.step_size, solver.iterations, solver.restarts, solver.tolerance,
//   solver.orientation_period, solver.hard_weight, solver.seed, solver.threads
//   report.tau

#include <stdexcept>
#include <string>
#include <string_view>

#include "scenelayout/corrector.hpp"
#include "scenelayout/declarative/solver.hpp"

namespace scenelayout {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EngineConfig {
    CorrectorConfig corrector;
    decl::SolverConfig solver;
    double tau = 0.01;
};

// Applies the settings in `text` on top of `base`. Throws ConfigError on
// unknown keys or malformed values.
EngineConfig parse_config(std::string_view text, EngineConfig base = {});
EngineConfig load_config(const std::string& path, EngineConfig base = {});

}  // namespace scenelayout
