#pragma once

// Pairwise layout judging. Both layouts are shown to a provider in an order
// chosen by the request seed; the verdict on the last line of the reply is
// mapped back to the caller's A/B labels.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scenelayout/eval/provider.hpp"
#include "scenelayout/eval/render.hpp"

namespace scenelayout::eval {

enum class CompareMode { WithProsCons, Direct };
enum class Winner { A, B };

std::string_view to_string(Winner w);
std::string_view to_string(CompareMode m);
std::optional<CompareMode> parse_compare_mode(std::string_view text);

struct CompareRequest {
    std::string prompt;
    Image image_a;
    Image image_b;
    std::uint64_t order_seed = 0;
};

struct Verdict {
    Winner winner = Winner::A;
    std::string rationale;  // full provider reply
    bool swapped = false;   // image_b was shown first
};

class UnparseableVerdict : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class LengthMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// True when the seed shows image_b first.
bool order_swapped(std::uint64_t seed);

// Task text sent alongside the two images (see docs/compare_prompt.md).
std::string build_prompt(std::string_view scene_prompt, CompareMode mode);

// Winner as shown to the provider: the last non-empty line must be exactly
// "ANSWER: A" or "ANSWER: B".
Winner parse_verdict(std::string_view reply);

// Throws ProviderError, UnparseableVerdict.
Verdict compare(const CompareRequest& request, Provider& provider, CompareMode mode = CompareMode::WithProsCons);

// Fraction of positions where verdicts[i].winner == labels[i]. Throws
// LengthMismatch when sizes differ, std::invalid_argument when empty.
double agreement(const std::vector<Verdict>& verdicts, const std::vector<Winner>& labels);
double agreement(const std::vector<Winner>& predicted, const std::vector<Winner>& labels);

// One line of a batch file: {"prompt", "layout_a_path", "layout_b_path", "seed"}.
struct BatchItem {
    std::string prompt;
    std::filesystem::path layout_a_path;
    std::filesystem::path layout_b_path;
    std::uint64_t seed = 0;
};

// Relative layout paths are resolved against `base_dir`.
std::vector<BatchItem> parse_batch(std::string_view jsonl, const std::filesystem::path& base_dir = {});

enum class BatchStatus { Ok, InputError, ProviderFailure, Unparseable };

struct BatchResult {
    std::size_t index = 0;
    BatchStatus status = BatchStatus::Ok;
    std::optional<Verdict> verdict;
    std::string error;
};

struct BatchOptions {
    CompareMode mode = CompareMode::WithProsCons;
    RenderOptions render;
    unsigned max_in_flight = 4;
};

// Results are ordered by item index regardless of completion order.
std::vector<BatchResult> run_batch(const std::vector<BatchItem>& items, Provider& provider,
                                   const BatchOptions& options = {});

}  // namespace scenelayout::eval
