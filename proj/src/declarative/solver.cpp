#include "scenelayout/declarative/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include "scenelayout/lang/evaluator.hpp"

namespace scenelayout::decl {

void SolverConfig::validate() const {
    if (!(step_size > 0.0)) throw std::invalid_argument("solver step_size must be positive");
    if (iterations < 1) throw std::invalid_argument("solver iterations must be at least 1");
    if (restarts < 1) throw std::invalid_argument("solver restarts must be at least 1");
    if (!(tolerance > 0.0)) throw std::invalid_argument("solver tolerance must be positive");
    if (orientation_period < 1) throw std::invalid_argument("solver orientation_period must be at least 1");
    if (!(hard_weight >= 0.0)) throw std::invalid_argument("solver hard_weight must be non-negative");
}

namespace {

using Boxes = std::vector<BoxVar<double>>;

double objective_of(const ConstraintSet& cs, const Boxes& boxes, double hard_weight) {
    double total = 0.0;
    for (const auto& r : cs.relations) total += relation_loss(r, boxes, cs.scene.bounds);
    if (hard_weight > 0.0) total += hard_weight * hard_loss(boxes, cs.scene);
    return total;
}

Layout to_layout(const ConstraintSet& cs, const Boxes& boxes) {
    Layout out;
    out.prompt = cs.scene.prompt;
    out.bounds = cs.scene.bounds;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        out.placements.push_back(
            {cs.scene.objects[i], {boxes[i].min[0], boxes[i].min[1], boxes[i].min[2]}, boxes[i].facing});
    }
    return out;
}

void set_orientation(BoxVar<double>& b, const ObjectSpec& spec, Orientation o) {
    const Vec3 ext = oriented_dims(spec.dims, o);
    for (std::size_t a = 0; a < 2; ++a) {
        const double center = b.min[a] + 0.5 * b.extent[a];
        b.min[a] = center - 0.5 * ext[a];
    }
    b.extent = ext;
    b.facing = o;
}

struct RestartResult {
    Boxes best;
    double best_value = std::numeric_limits<double>::infinity();
    std::vector<double> history;
};

class Restart {
public:
    Restart(const ConstraintSet& cs, const SolverConfig& cfg, std::vector<bool> pinned)
        : cs_(cs), cfg_(cfg), pinned_(std::move(pinned)) {}

    RestartResult run(Boxes boxes) const {
        const std::size_t n = boxes.size();
        const std::size_t dim = 3 * n;
        std::vector<double> m(dim, 0.0), v(dim, 0.0);
        constexpr double beta1 = 0.9, beta2 = 0.999, adam_eps = 1e-8;

        RestartResult res;
        auto consider = [&](const Boxes& b) {
            const double value = objective_of(cs_, b, cfg_.hard_weight);
            if (value < res.best_value) {
                res.best_value = value;
                res.best = b;
            }
        };
        consider(boxes);

        for (int t = 0; t < cfg_.iterations; ++t) {
            if (t % cfg_.orientation_period == 0) search_orientations(boxes);

            const std::vector<double> grad = gradient(boxes);
            const double lr = cfg_.step_size * std::max(0.01, 1.0 - static_cast<double>(t) / cfg_.iterations);
            const double c1 = 1.0 - std::pow(beta1, t + 1);
            const double c2 = 1.0 - std::pow(beta2, t + 1);
            for (std::size_t i = 0; i < n; ++i) {
                if (pinned_[i]) continue;
                for (std::size_t a = 0; a < 3; ++a) {
                    const std::size_t k = 3 * i + a;
                    m[k] = beta1 * m[k] + (1.0 - beta1) * grad[k];
                    v[k] = beta2 * v[k] + (1.0 - beta2) * grad[k] * grad[k];
                    boxes[i].min[a] -= lr * (m[k] / c1) / (std::sqrt(v[k] / c2) + adam_eps);
                }
            }
            consider(boxes);
            res.history.push_back(res.best_value);
        }
        return res;
    }

private:
    std::vector<double> gradient(const Boxes& boxes) const {
        const std::size_t n = boxes.size();
        std::vector<BoxVar<Jet>> jets(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t a = 0; a < 3; ++a) {
                jets[i].min[a] = pinned_[i] ? Jet(boxes[i].min[a]) : Jet(boxes[i].min[a], 3 * n, 3 * i + a);
            }
            jets[i].extent = boxes[i].extent;
            jets[i].facing = boxes[i].facing;
        }
        Jet total(0.0);
        for (const auto& r : cs_.relations) total += relation_loss(r, jets, cs_.scene.bounds);
        if (cfg_.hard_weight > 0.0) total += Jet(cfg_.hard_weight) * hard_loss(jets, cs_.scene);
        total.g.resize(3 * n, 0.0);
        return total.g;
    }

    void search_orientations(Boxes& boxes) const {
        for (std::size_t i = 0; i < boxes.size(); ++i) {
            if (pinned_[i]) continue;
            double best = objective_of(cs_, boxes, cfg_.hard_weight);
            BoxVar<double> keep = boxes[i];
            for (int o = 0; o < 4; ++o) {
                const auto orient = static_cast<Orientation>(o);
                if (orient == keep.facing) continue;
                BoxVar<double> saved = boxes[i];
                set_orientation(boxes[i], cs_.scene.objects[i], orient);
                const double value = objective_of(cs_, boxes, cfg_.hard_weight);
                if (value < best - 1e-12) {
                    best = value;
                    keep = boxes[i];
                }
                boxes[i] = saved;
            }
            boxes[i] = keep;
        }
    }

    const ConstraintSet& cs_;
    const SolverConfig& cfg_;
    std::vector<bool> pinned_;
};

Boxes default_start(const ConstraintSet& cs) {
    const Layout defaults = lang::evaluate(lang::Program{}, cs.scene);
    return boxes_of(defaults);
}

Boxes random_start(const ConstraintSet& cs, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_orientation(0, 3);
    const Cuboid& b = cs.scene.bounds;
    Boxes out;
    for (const auto& spec : cs.scene.objects) {
        BoxVar<double> box;
        box.facing = static_cast<Orientation>(pick_orientation(rng));
        box.extent = oriented_dims(spec.dims, box.facing);
        for (std::size_t a = 0; a < 3; ++a) {
            const double hi = std::max(b.min[a], b.max[a] - box.extent[a]);
            box.min[a] = std::uniform_real_distribution<double>(b.min[a], std::nextafter(hi, hi + 1.0))(rng);
        }
        if (spec.support == SupportType::Standing) box.min[2] = b.min.z;
        out.push_back(box);
    }
    return out;
}

void apply_pins(const ConstraintSet& cs, Boxes& boxes) {
    for (const auto& p : cs.pinned) {
        auto& box = boxes[p.object];
        box.facing = p.orientation;
        box.extent = oriented_dims(cs.scene.objects[p.object].dims, p.orientation);
        for (std::size_t a = 0; a < 3; ++a) box.min[a] = p.position[a];
    }
}

}  // namespace

double objective(const ConstraintSet& cs, const Layout& layout, double hard_weight) {
    return objective_of(cs, boxes_of(layout), hard_weight);
}

SolveResult solve_detailed(const ConstraintSet& cs, const SolverConfig& cfg) {
    cfg.validate();
    const std::size_t n = cs.scene.objects.size();
    std::vector<bool> pinned(n, false);
    for (const auto& p : cs.pinned) {
        if (p.object >= n) throw std::invalid_argument("pinned object index out of range");
        pinned[p.object] = true;
    }

    SolveResult result;
    Boxes start = default_start(cs);
    apply_pins(cs, start);

    if (cs.relations.empty() || n == 0) {
        result.layout = to_layout(cs, start);
        result.hard_loss = hard_loss(start, cs.scene);
        result.objective = cfg.hard_weight * result.hard_loss;
        return result;
    }

    const Restart restart(cs, cfg, pinned);
    const std::size_t count = static_cast<std::size_t>(cfg.restarts);
    std::vector<RestartResult> runs(count);
    auto run_one = [&](std::size_t k) {
        Boxes init = k == 0 ? start : random_start(cs, cfg.seed * 0x9E3779B97F4A7C15ULL + k);
        apply_pins(cs, init);
        runs[k] = restart.run(std::move(init));
    };
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(cfg.threads, count));
    if (workers == 1) {
        for (std::size_t k = 0; k < count; ++k) run_one(k);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t k = w; k < count; k += workers) run_one(k);
            });
        }
    }

    std::size_t best = 0;
    double running = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < count; ++k) {
        if (runs[k].best_value < runs[best].best_value) best = k;
        for (double h : runs[k].history) {
            running = std::min(running, h);
            result.best_history.push_back(running);
        }
    }

    const Boxes& boxes = runs[best].best;
    result.layout = to_layout(cs, boxes);
    result.best_restart = static_cast<int>(best);
    result.hard_loss = hard_loss(boxes, cs.scene);
    for (const auto& r : cs.relations) result.relation_loss += relation_loss(r, boxes, cs.scene.bounds);
    result.objective = runs[best].best_value;
    for (const auto& r : cs.relations) result.satisfied.push_back(satisfied(r, result.layout, cfg.tolerance));
    return result;
}

Layout solve(const ConstraintSet& cs, const SolverConfig& cfg) { return solve_detailed(cs, cfg).layout; }

}  // namespace scenelayout::decl
