// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit when
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "common/oracles.hpp"
#include "scenelayout/bench/faults.hpp"
#include "scenelayout/corrector.hpp"
#include "scenelayout/declarative/parser.hpp"
#include "scenelayout/declarative/solver.hpp"
#include "scenelayout/eval/compare.hpp"
#include "scenelayout/eval/provider.hpp"
#include "scenelayout/eval/render.hpp"
#include "scenelayout/io.hpp"
#include "scenelayout/lang/edit.hpp"
#include "scenelayout/lang/evaluator.hpp"
#include "scenelayout/lang/parser.hpp"
#include "scenelayout/lang/printer.hpp"
#include "scenelayout/loss.hpp"

using namespace scenelayout;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string fixture(const std::string& name) { return std::string(SCENELAYOUT_FIXTURES) + "/" + name; }

ObjectSpec spec(std::string name, Vec3 dims, SupportType support = SupportType::Standing) {
    ObjectSpec s;
    s.name = std::move(name);
    s.dims = dims;
    s.support = support;
    return s;
}

// ---------------------------------------------------------------- 1

// Signed intersection length of two intervals (negative when apart).
double signed_overlap(double a0, double a1, double b0, double b1) { return std::min(a1, b1) - std::max(a0, b0); }

// A random scene with no slivers: every pair is either clearly apart on
// some axis or overlaps by at least `band` on all three, and every
// protrusion is zero or at least `band`.
Layout sliver_free_scene(std::mt19937_64& rng, std::size_t n, double band) {
    std::uniform_real_distribution<double> dim(0.3, 1.6), pos(-0.6, 4.4), z(-0.4, 2.0);
    Layout l;
    l.bounds = {{0, 0, 0}, {5, 5, 3}};
    while (l.placements.size() < n) {
        const PlacedObject cand{spec("o" + std::to_string(l.placements.size()), {dim(rng), dim(rng), dim(rng)}),
                                {pos(rng), pos(rng), z(rng)},
                                static_cast<Orientation>(rng() % 4)};
        const Cuboid c = world_cuboid(cand);
        bool ok = true;
        for (std::size_t a = 0; a < 3 && ok; ++a) {
            const double lo = l.bounds.min[a] - c.min[a], hi = c.max[a] - l.bounds.max[a];
            ok = !(lo > 0 && lo < band) && !(hi > 0 && hi < band);
        }
        for (const auto& p : l.placements) {
            if (!ok) break;
            const Cuboid o = world_cuboid(p);
            bool apart = false, deep = true;
            for (std::size_t a = 0; a < 3; ++a) {
                const double e = signed_overlap(c.min[a], c.max[a], o.min[a], o.max[a]);
                apart = apart || e <= -band;
                deep = deep && e >= band;
            }
            ok = apart || deep;
        }
        if (ok) l.placements.push_back(cand);
    }
    return l;
}

// Objects in separate cells of a coarse grid, all inside the room.
Layout valid_scene(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> dim(0.2, 0.9), jitter(0.0, 0.05);
    Layout l;
    l.bounds = {{0, 0, 0}, {5, 5, 3}};
    for (std::size_t i = 0; i < n; ++i) {
        const double cx = static_cast<double>(i % 5), cy = static_cast<double>(i / 5);
        l.placements.push_back({spec("v" + std::to_string(i), {dim(rng), dim(rng), dim(rng)}),
                                {cx + jitter(rng), cy + jitter(rng), 0.0},
                                Orientation::North});
    }
    return l;
}

Outcome loss_oracle() {
    const auto start = Clock::now();
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> phase(0.0, 1.0);
    double worst = 0.0;
    int zero_mismatch = 0, positive = 0;
    for (int scene = 0; scene < 200; ++scene) {
        const bool valid = scene % 4 == 3;
        const std::size_t n = 2 + static_cast<std::size_t>(scene % 9);
        const Layout l = valid ? valid_scene(rng, n) : sliver_free_scene(rng, n, 0.1);
        oracle::VoxelGrid grid;
        grid.h = 0.002;
        grid.phase = {phase(rng) * grid.h, phase(rng) * grid.h, phase(rng) * grid.h};
        std::vector<Cuboid> boxes;
        for (const auto& p : l.placements) boxes.push_back(world_cuboid(p));

        const std::pair<double, double> pairs[] = {{overlap_loss(l), oracle::voxel_overlap(boxes, grid)},
                                                   {oob_loss(l), oracle::voxel_oob(boxes, l.bounds, grid)}};
        for (const auto& [closed, voxel] : pairs) {
            if (closed == 0.0 || voxel == 0.0) {
                zero_mismatch += closed != voxel;
                continue;
            }
            ++positive;
            worst = std::max(worst, std::abs(closed - voxel) / closed);
        }
        if (valid) zero_mismatch += overlap_loss(l) != 0.0 || oob_loss(l) != 0.0;
    }
    const double t = seconds_since(start);
    return {worst <= 0.02 && zero_mismatch == 0 && t < 60.0,
            "200 scenes, " + std::to_string(positive) + " positive terms, worst rel err " + fmt("%.4f", worst) +
                ", zero mismatches " + std::to_string(zero_mismatch) + ", " + fmt("%.2f", t) + " s"};
}

// ---------------------------------------------------------------- 2 + 4

bench::BenchSummary corpus_run() {
    static const bench::BenchSummary summary = [] {
        CorrectorConfig cfg;
        cfg.max_steps = 50;
        return bench::run_bench(bench::generate_corpus(50, 7, cfg.epsilon), cfg);
    }();
    return summary;
}

Outcome corrector_convergence() {
    const auto s = corpus_run();
    const std::size_t n = s.outcomes.size();
    const double rate = n == 0 ? 0.0 : static_cast<double>(s.converged) / static_cast<double>(n);
    return {n == 50 && s.failed == 0 && rate >= 0.9 && s.strictly_decreasing == n,
            std::to_string(s.converged) + "/" + std::to_string(n) + " converged (" + fmt("%.0f", rate * 100) +
                "%), strictly decreasing " + std::to_string(s.strictly_decreasing) + "/" + std::to_string(n) +
                ", mean steps " + fmt("%.2f", s.mean_steps)};
}

Outcome structure_preservation() {
    const auto s = corpus_run();
    return {s.structure_preserved == s.outcomes.size() && !s.outcomes.empty(),
            std::to_string(s.structure_preserved) + "/" + std::to_string(s.outcomes.size()) +
                " final programs equal the initial AST modulo parameter values"};
}

// ---------------------------------------------------------------- 3

Outcome tie_break() {
    // Mirror pair around x = 5 overlapping by 0.6; either box moving 1.0
    // clears it. The heavy box comes first so index order alone would
    // pick the wrong one.
    SceneTemplate t;
    t.bounds = {{0, 0, 0}, {10, 4, 3}};
    t.objects = {spec("heavy", {1, 1, 2}), spec("light", {1, 1, 1})};
    const lang::Program p = lang::parse("heavy.min.x = 4.7\nlight.max.x = 5.3\n");
    const Layout original = lang::evaluate(p, t);

    double best = std::numeric_limits<double>::infinity();
    int zero_loss = 0;
    for (const auto& c : neighborhood(p, CorrectorConfig{})) {
        const Layout l = lang::evaluate(c.program, t);
        if (total_loss(l).total == 0.0) {
            ++zero_loss;
            best = std::min(best, mass_transport_distance(original, l));
        }
    }

    const CorrectionTrace trace = correct(p, t);
    const std::string first = trace_to_json(trace).dump();
    bool identical = true;
    for (int run = 0; run < 5; ++run) {
        CorrectorConfig cfg;
        cfg.threads = 1 + static_cast<unsigned>(run);
        identical = identical && trace_to_json(correct(p, t, cfg)).dump() == first;
    }
    const bool chosen_ok = trace.steps.size() == 1 && trace.steps[0].tie_break_distance &&
                           std::abs(*trace.steps[0].tie_break_distance - best) <= 1e-12 &&
                           trace.steps[0].edit.param == 1;
    return {chosen_ok && identical && zero_loss >= 2,
            std::to_string(zero_loss) + " equal-loss fixes, chose param " +
                (trace.steps.empty() ? std::string("none") : std::to_string(trace.steps[0].edit.param)) +
                " at distance " + (chosen_ok ? fmt("%.3f", best) : std::string("?")) + ", traces " +
                (identical ? "byte-identical" : "differ") + " over 5 runs"};
}

// ---------------------------------------------------------------- 5

Outcome round_trip() {
    int files = 0, ok = 0;
    std::string failed;
    std::vector<fs::path> paths;
    for (const auto& e : fs::directory_iterator(fixture("roundtrip"))) {
        if (e.path().extension() == ".scn") paths.push_back(e.path());
    }
    std::sort(paths.begin(), paths.end());
    bool loops = false, groups = false, facing = false;
    for (const auto& path : paths) {
        ++files;
        try {
            const lang::Program p1 = lang::parse(read_text_file(path));
            const std::string t1 = lang::pretty_print(p1);
            const lang::Program p2 = lang::parse(t1);
            const std::string t2 = lang::pretty_print(p2);
            if (lang::structurally_equal(p1, p2) && t1 == t2) {
                ++ok;
            } else {
                failed += " " + path.filename().string();
            }
            loops = loops || t1.find("for ") != std::string::npos;
            groups = groups || t1.find("group(") != std::string::npos;
            facing = facing || t1.find(".facing") != std::string::npos;
        } catch (const std::exception& e) {
            failed += " " + path.filename().string() + "(" + e.what() + ")";
        }
    }
    return {files == 30 && ok == files && loops && groups && facing,
            std::to_string(ok) + "/" + std::to_string(files) + " programs are fixed points" +
                (failed.empty() ? "" : "; failed:" + failed)};
}

// ---------------------------------------------------------------- 6

Outcome declarative() {
    double worst = 0.0;
    int short_kinds = 0;
    for (auto kind : oracle::kAllKinds) {
        const oracle::GradientCheck g = oracle::check_gradients(kind, 100, 1000 + static_cast<int>(kind));
        worst = std::max(worst, g.worst);
        short_kinds += g.points < 100;
    }
    const SceneTemplate t = load_template(fixture("bedroom.json"));
    const decl::ConstraintSet cs = decl::parse_relations(read_text_file(fixture("bedroom.rel")), t);
    const auto start = Clock::now();
    const decl::SolveResult res = decl::solve_detailed(cs, decl::SolverConfig{});
    const double secs = seconds_since(start);
    int sat = 0;
    for (const auto& r : cs.relations) sat += decl::satisfied(r, res.layout, 1e-2);
    const int total = static_cast<int>(cs.relations.size());
    return {worst <= 1e-4 && short_kinds == 0 && sat == total && secs < 10.0,
            "9 relations x 100 points, worst rel grad err " + fmt("%.2e", worst) + "; bedroom " +
                std::to_string(sat) + "/" + std::to_string(total) + " satisfied in " + fmt("%.2f", secs) + " s"};
}

// ---------------------------------------------------------------- 7

Outcome shared_parameter() {
    bool all = true;
    std::string detail;
    for (std::size_t n : {2u, 5u, 20u}) {
        SceneTemplate t;
        t.bounds = {{0, 0, 0}, {60, 4, 3}};
        for (std::size_t i = 0; i < n; ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "item_%02zu", i);
            t.objects.push_back(spec(name, {0.5, 0.5, 0.5}));
        }
        const lang::Program p =
            lang::parse("d = 0.7\nitems = group(\"item_*\")\nfor i, o in enumerate(items):\n    o.min.x = 0.25 + i * d\n");
        bool ok = true;
        for (const lang::Edit& e : {lang::Edit::scale(0, 2.0), lang::Edit::scale(0, 0.5), lang::Edit::offset(0, 0.1),
                                    lang::Edit::offset(0, -0.5)}) {
            const lang::Program q = lang::apply_edit(p, e);
            const double d = lang::list_parameters(q)[0].number;
            const Layout l = lang::evaluate(q, t);
            for (std::size_t i = 0; i < n; ++i) ok = ok && l.placements[i].position.x == 0.25 + static_cast<double>(i) * d;
        }
        all = all && ok;
        detail += " N=" + std::to_string(n) + (ok ? " ok" : " FAIL");
    }
    return {all, "loop-shared spacing edits re-evaluate exactly:" + detail};
}

// ---------------------------------------------------------------- 8

Outcome compare_protocol() {
    Layout clean;
    clean.bounds = {{0, 0, 0}, {6, 5, 3}};
    clean.placements = {{spec("sofa", {2, 0.9, 0.8}), {0.5, 0.2, 0}, Orientation::North},
                        {spec("table", {1.2, 0.8, 0.75}), {1.0, 2.0, 0}, Orientation::North},
                        {spec("shelf", {1, 0.4, 1.8}), {4.5, 4.6, 0}, Orientation::South}};
    Layout faulty = clean;
    faulty.placements[1].position = {1.2, 0.6, 0};  // into the sofa
    faulty.placements[2].position = {5.4, 4.8, 0};  // through the wall

    eval::RenderOptions ro;
    ro.highlight_violations = true;
    const eval::Image a{"image/svg+xml", eval::render_topdown(clean, ro)};
    const eval::Image b{"image/svg+xml", eval::render_topdown(faulty, ro)};
    auto mock = eval::MockProvider::fewest_violations();

    int invariant = 0, swaps = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const eval::Verdict ab = eval::compare({"a living room", a, b, seed}, *mock);
        const eval::Verdict ba = eval::compare({"a living room", b, a, seed}, *mock);
        swaps += ab.swapped;
        invariant += ab.winner == eval::Winner::A && ba.winner == eval::Winner::B;
    }

    bool unparseable = false;
    auto chatty = eval::MockProvider::constant("Layout A has more space.\nI would pick the first.");
    try {
        eval::compare({"a living room", a, b, 0}, *chatty);
    } catch (const eval::UnparseableVerdict&) {
        unparseable = true;
    }

    std::vector<eval::Winner> labels(70), predicted(70);
    for (std::size_t i = 0; i < 70; ++i) {
        labels[i] = i % 3 == 0 ? eval::Winner::B : eval::Winner::A;
        const bool agree = i < 54;
        predicted[i] = agree ? labels[i] : (labels[i] == eval::Winner::A ? eval::Winner::B : eval::Winner::A);
    }
    const double agreement = eval::agreement(predicted, labels);
    const bool agree_ok = std::abs(agreement - 0.7714) < 5e-5;
    return {invariant == 100 && swaps > 0 && swaps < 100 && unparseable && agree_ok,
            "winner invariant in " + std::to_string(invariant) + "/100 seeds (" + std::to_string(swaps) +
                " shown swapped), UnparseableVerdict " + (unparseable ? "raised" : "missing") + ", agreement " +
                fmt("%.4f", agreement)};
}

// ---------------------------------------------------------------- 9

Outcome scale_smoke() {
    const bench::BenchCase c = bench::generate_row_scene(100, 3);
    const lang::Program p = lang::parse(c.faulty_source);
    const auto start = Clock::now();
    const CorrectionTrace trace = correct(p, c.scene);
    const double secs = seconds_since(start);
    return {c.scene.objects.size() == 100 && secs < 60.0,
            "100 objects, loss " + fmt("%.3f", trace.initial_loss.total) + " -> " +
                fmt("%.3f", trace.final_loss.total) + " in " + std::to_string(trace.steps.size()) + " steps, " +
                fmt("%.2f", secs) + " s"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"loss-oracle equivalence", loss_oracle},
        {"corrector convergence", corrector_convergence},
        {"tie-break determinism", tie_break},
        {"structure preservation", structure_preservation},
        {"parser round-trip", round_trip},
        {"declarative gradients and bedroom solve", declarative},
        {"shared-parameter coherence", shared_parameter},
        {"evaluator protocol", compare_protocol},
        {"scale smoke test", scale_smoke},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s [%zu] %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
