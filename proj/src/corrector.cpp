#include "scenelayout/corrector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <unordered_map>

#include "scenelayout/lang/evaluator.hpp"
#include "scenelayout/lang/printer.hpp"
#include "scenelayout/simd/kernels.hpp"

namespace scenelayout {

void CorrectorConfig::validate() const {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw std::invalid_argument("epsilon must be positive");
    if (offsets.empty()) throw std::invalid_argument("offsets must not be empty");
    for (double d : offsets) {
        if (!(d > 0.0) || !std::isfinite(d)) throw std::invalid_argument("offsets must be positive");
    }
    if (max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
    if (!(tie_tolerance >= 0.0)) throw std::invalid_argument("tie_tolerance must be non-negative");
    loss.weights.validate();
}

std::vector<Candidate> neighborhood(const lang::Program& program, const CorrectorConfig& config) {
    using lang::Edit;
    std::vector<Candidate> out;
    for (const auto& p : program.params()) {
        std::vector<Edit> edits;
        if (p.kind == lang::ParamKind::FloatLiteral) {
            edits.push_back(Edit::scale(p.id, 2.0));
            edits.push_back(Edit::scale(p.id, 0.5));
            for (double d : config.offsets) {
                edits.push_back(Edit::offset(p.id, d));
                edits.push_back(Edit::offset(p.id, -d));
            }
        } else {
            edits.push_back(Edit::rotate(p.id, 1));
            edits.push_back(Edit::rotate(p.id, 3));
            edits.push_back(Edit::reverse(p.id));
        }
        for (const auto& e : edits) out.push_back({e, lang::apply_edit(program, e)});
    }
    return out;
}

double mass_transport_distance(const Layout& a, const Layout& b) {
    if (a.placements.size() != b.placements.size()) throw TemplateMismatch("layouts have different object counts");
    std::unordered_map<std::string_view, std::size_t> index;
    for (std::size_t i = 0; i < b.placements.size(); ++i) index.emplace(b.placements[i].spec.name, i);

    simd::BoxArrays from, to;
    for (const auto& p : a.placements) {
        auto it = index.find(p.spec.name);
        if (it == index.end()) throw TemplateMismatch("object '" + p.spec.name + "' missing from second layout");
        from.push_back(world_cuboid(p));
        to.push_back(world_cuboid(b.placements[it->second]));
    }
    std::vector<double> per(from.size());
    simd::kernels().transport(from, to, per);
    double acc = 0.0;
    for (double v : per) acc += v;
    return acc;
}

namespace {

struct Scored {
    bool ok = false;
    double loss = std::numeric_limits<double>::infinity();
    Layout layout;
};

Scored score(const lang::Program& program, const SceneTemplate& scene, const LossOptions& options) {
    Scored s;
    try {
        s.layout = lang::evaluate(program, scene);
    } catch (const lang::EvalError&) {
        return s;
    } catch (const lang::UnknownIdentifier&) {
        return s;
    }
    s.loss = total_loss(s.layout, options).total;
    s.ok = std::isfinite(s.loss);
    return s;
}

std::vector<Scored> score_all(const std::vector<Candidate>& candidates, const SceneTemplate& scene,
                              const LossOptions& options, unsigned threads) {
    std::vector<Scored> out(candidates.size());
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, candidates.size()));
    if (workers == 1) {
        for (std::size_t i = 0; i < candidates.size(); ++i) out[i] = score(candidates[i].program, scene, options);
        return out;
    }
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < candidates.size(); i += workers) {
                out[i] = score(candidates[i].program, scene, options);
            }
        });
    }
    pool.clear();
    return out;
}

bool within(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

}  // namespace

CorrectionTrace correct(const lang::Program& program, const SceneTemplate& scene, const CorrectorConfig& config) {
    config.validate();
    const Layout original = lang::evaluate(program, scene);

    CorrectionTrace trace;
    trace.initial_program = program;
    trace.initial_loss = total_loss(original, config.loss);

    lang::Program current = program;
    Layout current_layout = original;
    double current_loss = trace.initial_loss.total;

    for (int step = 0; step < config.max_steps; ++step) {
        const auto candidates = neighborhood(current, config);
        if (candidates.empty()) break;
        const auto scored = score_all(candidates, scene, config.loss, config.threads);

        double best = std::numeric_limits<double>::infinity();
        for (const auto& s : scored) {
            if (s.ok) best = std::min(best, s.loss);
        }
        if (!std::isfinite(best)) break;

        std::vector<std::size_t> tied;
        for (std::size_t i = 0; i < scored.size(); ++i) {
            if (scored[i].ok && within(scored[i].loss, best, config.tie_tolerance)) tied.push_back(i);
        }

        std::size_t chosen = tied.front();
        std::optional<double> tie_distance;
        if (tied.size() > 1) {
            std::vector<double> dist(tied.size());
            double nearest = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < tied.size(); ++k) {
                dist[k] = mass_transport_distance(scored[tied[k]].layout, original);
                nearest = std::min(nearest, dist[k]);
            }
            for (std::size_t k = 0; k < tied.size(); ++k) {
                if (within(dist[k], nearest, config.tie_tolerance)) {
                    chosen = tied[k];
                    tie_distance = dist[k];
                    break;
                }
            }
        }

        const double next_loss = scored[chosen].loss;
        if (current_loss - next_loss < config.epsilon) break;

        CorrectionStep s;
        s.edit = candidates[chosen].edit;
        s.before = current.params()[s.edit.param];
        s.after = candidates[chosen].program.params()[s.edit.param];
        s.loss_before = current_loss;
        s.loss_after = next_loss;
        s.tie_break_distance = tie_distance;
        trace.steps.push_back(s);

        current = candidates[chosen].program;
        current_layout = scored[chosen].layout;
        current_loss = next_loss;
    }

    trace.final_program = current;
    trace.final_layout = current_layout;
    trace.final_loss = total_loss(current_layout, config.loss);
    return trace;
}

namespace {

nlohmann::json param_value(const lang::ParamRef& p) {
    if (p.kind == lang::ParamKind::FloatLiteral) return p.number;
    return lang::format_orientation(p.orientation);
}

}  // namespace

nlohmann::json trace_to_json(const CorrectionTrace& trace) {
    auto out = nlohmann::json::array();
    for (const auto& s : trace.steps) {
        nlohmann::json edit{{"param", s.edit.param},
                            {"action", lang::action_label(s.edit)},
                            {"from", param_value(s.before)},
                            {"to", param_value(s.after)}};
        out.push_back({{"edit", edit},
                       {"loss_before", s.loss_before},
                       {"loss_after", s.loss_after},
                       {"tie_break", s.tie_break_distance ? nlohmann::json(*s.tie_break_distance) : nlohmann::json()}});
    }
    return out;
}

}  // namespace scenelayout
