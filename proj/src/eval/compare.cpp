#include "scenelayout/eval/compare.hpp"

#include <atomic>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "scenelayout/io.hpp"

namespace scenelayout::eval {

std::string_view to_string(Winner w) { return w == Winner::A ? "A" : "B"; }

std::string_view to_string(CompareMode m) { return m == CompareMode::WithProsCons ? "with_pros_cons" : "direct"; }

std::optional<CompareMode> parse_compare_mode(std::string_view text) {
    if (text == "with_pros_cons") return CompareMode::WithProsCons;
    if (text == "direct") return CompareMode::Direct;
    return std::nullopt;
}

bool order_swapped(std::uint64_t seed) {
    // splitmix64 finalizer
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return (z & 1U) != 0;
}

std::string build_prompt(std::string_view scene_prompt, CompareMode mode) {
    std::string text =
        "You are shown two top-down renderings of candidate layouts for the same room, Image A (first) and "
        "Image B (second). Each colored rectangle is one object seen from above, labeled with its name; the "
        "arrow inside it points the way the object faces. The outer rectangle is the room boundary.\n\n"
        "Room description: ";
    text += scene_prompt;
    text += "\n\n";
    if (mode == CompareMode::WithProsCons) {
        text +=
            "First list the pros and cons of Layout A, then the pros and cons of Layout B. Consider whether "
            "every object lies inside the room, whether objects overlap, whether furniture is oriented and "
            "grouped sensibly, and how well the layout matches the description. Then decide which layout is "
            "better.\n\n"
            "Finish with a final line that is exactly \"ANSWER: A\" or \"ANSWER: B\".";
    } else {
        text +=
            "Decide which layout is better: physically plausible, sensibly arranged and faithful to the "
            "description.\n\n"
            "Reply with a single line that is exactly \"ANSWER: A\" or \"ANSWER: B\".";
    }
    return text;
}

Winner parse_verdict(std::string_view reply) {
    std::string_view last;
    std::size_t pos = 0;
    while (pos <= reply.size()) {
        auto nl = reply.find('\n', pos);
        if (nl == std::string_view::npos) nl = reply.size();
        std::string_view line = reply.substr(pos, nl - pos);
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
            line.remove_suffix(1);
        }
        while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
        if (!line.empty()) last = line;
        pos = nl + 1;
    }
    if (last == "ANSWER: A") return Winner::A;
    if (last == "ANSWER: B") return Winner::B;
    throw UnparseableVerdict("reply does not end with \"ANSWER: A\" or \"ANSWER: B\"");
}

Verdict compare(const CompareRequest& request, Provider& provider, CompareMode mode) {
    Verdict v;
    v.swapped = order_swapped(request.order_seed);
    ProviderRequest pr;
    pr.text = build_prompt(request.prompt, mode);
    pr.images = v.swapped ? std::vector<Image>{request.image_b, request.image_a}
                          : std::vector<Image>{request.image_a, request.image_b};
    v.rationale = provider.send(pr);
    const Winner shown = parse_verdict(v.rationale);
    v.winner = v.swapped ? (shown == Winner::A ? Winner::B : Winner::A) : shown;
    return v;
}

double agreement(const std::vector<Winner>& predicted, const std::vector<Winner>& labels) {
    if (predicted.size() != labels.size()) {
        throw LengthMismatch("agreement: " + std::to_string(predicted.size()) + " verdicts vs " +
                             std::to_string(labels.size()) + " labels");
    }
    if (predicted.empty()) throw std::invalid_argument("agreement of empty lists is undefined");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) hits += predicted[i] == labels[i] ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(labels.size());
}

double agreement(const std::vector<Verdict>& verdicts, const std::vector<Winner>& labels) {
    std::vector<Winner> winners;
    winners.reserve(verdicts.size());
    for (const auto& v : verdicts) winners.push_back(v.winner);
    return agreement(winners, labels);
}

std::vector<BatchItem> parse_batch(std::string_view jsonl, const std::filesystem::path& base_dir) {
    std::vector<BatchItem> items;
    std::istringstream in{std::string(jsonl)};
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            BatchItem item;
            item.prompt = j.at("prompt").get<std::string>();
            item.layout_a_path = j.at("layout_a_path").get<std::string>();
            item.layout_b_path = j.at("layout_b_path").get<std::string>();
            item.seed = j.value("seed", std::uint64_t{0});
            if (item.layout_a_path.is_relative()) item.layout_a_path = base_dir / item.layout_a_path;
            if (item.layout_b_path.is_relative()) item.layout_b_path = base_dir / item.layout_b_path;
            items.push_back(std::move(item));
        } catch (const nlohmann::json::exception& e) {
            throw FormatError("batch line " + std::to_string(number) + ": " + e.what());
        }
    }
    return items;
}

namespace {

BatchResult run_item(std::size_t index, const BatchItem& item, Provider& provider, const BatchOptions& options) {
    BatchResult r;
    r.index = index;
    CompareRequest req;
    req.prompt = item.prompt;
    req.order_seed = item.seed;
    try {
        req.image_a.data = render_topdown(load_layout(item.layout_a_path), options.render);
        req.image_b.data = render_topdown(load_layout(item.layout_b_path), options.render);
    } catch (const std::exception& e) {
        r.status = BatchStatus::InputError;
        r.error = e.what();
        return r;
    }
    try {
        r.verdict = compare(req, provider, options.mode);
    } catch (const ProviderError& e) {
        r.status = BatchStatus::ProviderFailure;
        r.error = e.what();
    } catch (const UnparseableVerdict& e) {
        r.status = BatchStatus::Unparseable;
        r.error = e.what();
    }
    return r;
}

}  // namespace

std::vector<BatchResult> run_batch(const std::vector<BatchItem>& items, Provider& provider,
                                   const BatchOptions& options) {
    std::vector<BatchResult> results(items.size());
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(options.max_in_flight, items.size()));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < items.size(); i = next.fetch_add(1)) {
            results[i] = run_item(i, items[i], provider, options);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    return results;
}

}  // namespace scenelayout::eval
