#include "scenelayout/config.hpp"

#include <cctype>
#include <charconv>
#include <functional>
#include <map>
#include <sstream>

#include "scenelayout/io.hpp"

namespace scenelayout {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string unquote(std::string_view s) {
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
        s = s.substr(1, s.size() - 2);
    }
    return std::string(s);
}

template <class T>
T parse_value(std::string_view text, const std::string& key) {
    const std::string s = unquote(trim(text));
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw ConfigError("bad value for " + key + ": '" + s + "'");
    }
    return v;
}

std::vector<double> parse_list(std::string_view text, const std::string& key) {
    text = trim(text);
    if (!text.empty() && text.front() == '[') {
        if (text.back() != ']') throw ConfigError("unterminated list for " + key);
        text = text.substr(1, text.size() - 2);
    }
    std::vector<double> out;
    while (!trim(text).empty()) {
        const auto comma = text.find(',');
        out.push_back(parse_value<double>(text.substr(0, comma), key));
        if (comma == std::string_view::npos) break;
        text = text.substr(comma + 1);
    }
    return out;
}

using Setter = std::function<void(EngineConfig&, std::string_view, const std::string&)>;

template <class T, class F>
Setter scalar(F field) {
    return [field](EngineConfig& c, std::string_view v, const std::string& key) {
        field(c) = parse_value<T>(v, key);
    };
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"corrector.epsilon", scalar<double>([](EngineConfig& c) -> double& { return c.corrector.epsilon; })},
        {"corrector.max_steps", scalar<int>([](EngineConfig& c) -> int& { return c.corrector.max_steps; })},
        {"corrector.tie_tolerance",
         scalar<double>([](EngineConfig& c) -> double& { return c.corrector.tie_tolerance; })},
        {"corrector.threads", scalar<unsigned>([](EngineConfig& c) -> unsigned& { return c.corrector.threads; })},
        {"corrector.offsets",
         [](EngineConfig& c, std::string_view v, const std::string& key) { c.corrector.offsets = parse_list(v, key); }},
        {"weights.oob", scalar<double>([](EngineConfig& c) -> double& { return c.corrector.loss.weights.oob; })},
        {"weights.overlap",
         scalar<double>([](EngineConfig& c) -> double& { return c.corrector.loss.weights.overlap; })},
        {"weights.standing",
         scalar<double>([](EngineConfig& c) -> double& { return c.corrector.loss.weights.standing; })},
        {"weights.mounted",
         scalar<double>([](EngineConfig& c) -> double& { return c.corrector.loss.weights.mounted; })},
        {"loss.opening_margin",
         scalar<double>([](EngineConfig& c) -> double& { return c.corrector.loss.opening_margin; })},
        {"loss.support_band",
         scalar<double>([](EngineConfig& c) -> double& { return c.corrector.loss.support_band; })},
        {"solver.step_size", scalar<double>([](EngineConfig& c) -> double& { return c.solver.step_size; })},
        {"solver.iterations", scalar<int>([](EngineConfig& c) -> int& { return c.solver.iterations; })},
        {"solver.restarts", scalar<int>([](EngineConfig& c) -> int& { return c.solver.restarts; })},
        {"solver.tolerance", scalar<double>([](EngineConfig& c) -> double& { return c.solver.tolerance; })},
        {"solver.orientation_period",
         scalar<int>([](EngineConfig& c) -> int& { return c.solver.orientation_period; })},
        {"solver.hard_weight", scalar<double>([](EngineConfig& c) -> double& { return c.solver.hard_weight; })},
        {"solver.seed", scalar<std::uint64_t>([](EngineConfig& c) -> std::uint64_t& { return c.solver.seed; })},
        {"solver.threads", scalar<unsigned>([](EngineConfig& c) -> unsigned& { return c.solver.threads; })},
        {"report.tau", scalar<double>([](EngineConfig& c) -> double& { return c.tau; })},
    };
    return table;
}

}  // namespace

EngineConfig parse_config(std::string_view text, EngineConfig config) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view s = raw;
        if (auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        if (s.front() == '[' && s.back() == ']') {
            section = std::string(trim(s.substr(1, s.size() - 2)));
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line) + ": expected key = value");
        }
        std::string key(trim(s.substr(0, eq)));
        if (!section.empty()) key = section + "." + key;
        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
        it->second(config, s.substr(eq + 1), key);
    }
    try {
        config.corrector.validate();
        config.solver.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(config.tau >= 0.0)) throw ConfigError("report.tau must be non-negative");
    return config;
}

EngineConfig load_config(const std::string& path, EngineConfig base) {
    return parse_config(read_text_file(path), std::move(base));
}

}  // namespace scenelayout
