#pragma once

// Fault-injection benchmark for the corrector: seeded valid programs, single
// parameter faults that break them, and convergence statistics.
//
// Each generated case is a room with a row of columns along the south side
// (loop with pitch `d`) and, in the north half, either a table with two
// chairs or a wall-mounted screen next to a wardrobe and desk. Faults:
//   halve / double   the column pitch
//   offset           the table pushed north until a chair leaves the room,
//                    or the column row start pushed past the west wall
//   flip             a screen reversed off its wall, or the wardrobe turned
//                    a quarter so it runs into the desk

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "scenelayout/corrector.hpp"
#include "scenelayout/geometry.hpp"

namespace scenelayout::bench {

struct BenchCase {
    std::string name;
    SceneTemplate scene;
    std::string valid_source;  // empty when loaded from disk
    std::string faulty_source;
    std::string fault;
};

// `count` cases whose faulty program evaluates and has total loss > epsilon
// while the valid program has total loss 0.
std::vector<BenchCase> generate_corpus(std::size_t count, std::uint64_t seed, double epsilon = 1e-3);

// A row of `columns` columns produced by one loop, in a room sized to fit.
BenchCase generate_row_scene(std::size_t columns, std::uint64_t seed);

// Writes name.scn (faulty program) and name.json (template) per case.
void write_corpus(const std::filesystem::path& dir, const std::vector<BenchCase>& cases);
// Reads every name.scn that has a sibling name.json, sorted by name.
std::vector<BenchCase> load_corpus(const std::filesystem::path& dir);

struct BenchOutcome {
    std::string name;
    std::string fault;
    double initial_loss = 0.0;
    double final_loss = 0.0;
    std::size_t steps = 0;
    bool converged = false;            // final total loss <= epsilon
    bool strictly_decreasing = false;  // every accepted step lowered the loss by >= epsilon
    bool structure_preserved = false;  // AST equal modulo parameter values
    double seconds = 0.0;
    std::string error;                 // set when the case could not be run
};

struct BenchSummary {
    std::vector<BenchOutcome> outcomes;
    std::size_t converged = 0;
    std::size_t strictly_decreasing = 0;
    std::size_t structure_preserved = 0;
    std::size_t failed = 0;
    double mean_steps = 0.0;
    double total_seconds = 0.0;
};

BenchSummary run_bench(const std::vector<BenchCase>& cases, const CorrectorConfig& config);

nlohmann::json to_json(const BenchSummary& summary);

}  // namespace scenelayout::bench
