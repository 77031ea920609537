#include <doctest.h>

#include "scenelayout/corrector.hpp"
#include "scenelayout/io.hpp"
#include "scenelayout/lang/evaluator.hpp"
#include "scenelayout/lang/parser.hpp"
#include "scenelayout/lang/printer.hpp"
#include "support.hpp"

using namespace scenelayout;
using namespace testsupport;

namespace {

CorrectorConfig small_offsets() {
    CorrectorConfig c;
    c.offsets = {0.1};
    return c;
}

// Two boxes overlapping by 0.6 around x = 5. Moving either one 1.0 away
// clears the overlap; the lighter one travels less mass.
SceneTemplate mirror_scene(bool heavy_first) {
    const ObjectSpec light = object("light", {1, 1, 1});
    const ObjectSpec heavy = object("heavy", {1, 1, 2});
    return heavy_first ? scene({10, 4, 3}, {heavy, light}) : scene({10, 4, 3}, {light, heavy});
}

const char* kMirrorLightFirst = "light.max.x = 5.3\nheavy.min.x = 4.7\n";
const char* kMirrorHeavyFirst = "heavy.min.x = 4.7\nlight.max.x = 5.3\n";

}  // namespace

TEST_CASE("neighborhood enumeration") {
    const auto one_float = neighborhood(lang::parse("d = 1.0"), small_offsets());
    REQUIRE(one_float.size() == 4);
    CHECK(one_float[0].edit == lang::Edit::scale(0, 2.0));
    CHECK(one_float[1].edit == lang::Edit::scale(0, 0.5));
    CHECK(one_float[2].edit == lang::Edit::offset(0, 0.1));
    CHECK(one_float[3].edit == lang::Edit::offset(0, -0.1));

    // Rotations by 90 and 270 plus the reversal; the 180-degree rotation
    // is the reversal and is listed once.
    const auto facing = neighborhood(lang::parse("c.facing = NORTH"), small_offsets());
    REQUIRE(facing.size() == 3);
    std::vector<Orientation> got;
    for (const auto& c : facing) got.push_back(*lang::list_parameters(c.program)[0].orientation.cardinal);
    CHECK(got == std::vector<Orientation>{Orientation::East, Orientation::West, Orientation::South});

    CHECK(neighborhood(lang::parse(""), small_offsets()).empty());
    CHECK(neighborhood(lang::parse("a.min.x = 1\nb.facing = a"), CorrectorConfig{}).size() == 8 + 3);
}

TEST_CASE("mass transport distance") {
    const ObjectSpec two = object("a", {2, 1, 1});
    Layout a = room({10, 10, 10}, {place(two, {1, 1, 0})});
    CHECK(mass_transport_distance(a, a) == 0.0);
    Layout b = a;
    b.placements[0].position.x += 3;
    CHECK(mass_transport_distance(a, b) == doctest::Approx(6.0));

    Layout c = room({10, 10, 10}, {place(object("u", {1, 1, 1}), {0, 0, 0}), place(object("v", {2, 2, 2}), {3, 3, 0})});
    Layout d = c;
    d.placements[0].position.y += 1.0;
    d.placements[1].position.x -= 0.5;
    CHECK(mass_transport_distance(c, d) == doctest::Approx(5.0));
    // Matched by name, not by index.
    std::swap(d.placements[0], d.placements[1]);
    CHECK(mass_transport_distance(c, d) == doctest::Approx(5.0));

    Layout e = c;
    e.placements[1].spec.name = "w";
    CHECK_THROWS_AS(mass_transport_distance(c, e), TemplateMismatch);
    e.placements.pop_back();
    CHECK_THROWS_AS(mass_transport_distance(c, e), TemplateMismatch);
}

TEST_CASE("columns with d = 0.4 are spread by doubling d") {
    const SceneTemplate t = load_template(fixture("columns_wide.json"));
    const lang::Program p = lang::parse(read_text_file(fixture("columns_overlap.scn")));
    const CorrectionTrace trace = correct(p, t, small_offsets());
    REQUIRE_FALSE(trace.steps.empty());
    bool doubled = false;
    for (const auto& s : trace.steps) doubled = doubled || s.edit == lang::Edit::scale(0, 2.0);
    CHECK(doubled);
    CHECK(overlap_loss(trace.final_layout) == 0.0);
    CHECK(trace.final_loss.total <= 1e-3);

    // Every accepted step lowers the loss by at least epsilon.
    double prev = trace.initial_loss.total;
    for (const auto& s : trace.steps) {
        CHECK(s.loss_before == prev);
        CHECK(prev - s.loss_after >= 1e-3);
        prev = s.loss_after;
    }
    CHECK(lang::structurally_equal(trace.initial_program, trace.final_program,
                                   lang::CompareMode::IgnoreParameterValues));

    // The final layout is the final program re-evaluated: all columns moved by the loop formula.
    const double d = lang::list_parameters(trace.final_program)[0].number;
    const Layout again = lang::evaluate(trace.final_program, t);
    CHECK(again == trace.final_layout);
    for (std::size_t i = 0; i < again.placements.size(); ++i) {
        CHECK(world_cuboid(again.placements[i]).center().x == doctest::Approx(5.0 + static_cast<double>(i) * d));
    }
}

TEST_CASE("valid programs are left alone") {
    const SceneTemplate t = load_template(fixture("columns.json"));
    const lang::Program p = lang::parse(read_text_file(fixture("columns.scn")));
    const CorrectionTrace trace = correct(p, t);
    CHECK(trace.steps.empty());
    CHECK(pretty_print(trace.final_program) == pretty_print(p));
    CHECK(trace.final_loss.total == 0.0);
}

TEST_CASE("equal-loss fixes prefer the smaller move") {
    for (bool heavy_first : {false, true}) {
        const SceneTemplate t = mirror_scene(heavy_first);
        const lang::Program p = lang::parse(heavy_first ? kMirrorHeavyFirst : kMirrorLightFirst);
        const CorrectionTrace trace = correct(p, t);
        REQUIRE(trace.steps.size() == 1);
        const auto& step = trace.steps[0];
        const auto param = lang::list_parameters(p)[step.edit.param];
        // The accepted edit moves the light box, whichever id it has.
        CHECK(param.span.line == (heavy_first ? 2 : 1));
        CHECK(step.edit == lang::Edit::offset(step.edit.param, -1.0));
        REQUIRE(step.tie_break_distance.has_value());
        CHECK(*step.tie_break_distance == doctest::Approx(1.0));
        CHECK(step.loss_after == 0.0);

        // Oracle: among zero-loss neighbors, the chosen one has minimal distance.
        const Layout original = lang::evaluate(p, t);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& c : neighborhood(p, CorrectorConfig{})) {
            const Layout l = lang::evaluate(c.program, t);
            if (total_loss(l).total == 0.0) best = std::min(best, mass_transport_distance(original, l));
        }
        CHECK(*step.tie_break_distance == doctest::Approx(best));
    }
}

TEST_CASE("traces are deterministic across runs and thread counts") {
    const SceneTemplate t = mirror_scene(false);
    const lang::Program p = lang::parse(kMirrorLightFirst);
    const std::string first = trace_to_json(correct(p, t)).dump();
    for (unsigned threads : {1u, 2u, 4u, 7u}) {
        CorrectorConfig c;
        c.threads = threads;
        CHECK(trace_to_json(correct(p, t, c)).dump() == first);
    }
    const SceneTemplate cols = load_template(fixture("columns_wide.json"));
    const lang::Program q = lang::parse(read_text_file(fixture("columns_overlap.scn")));
    CorrectorConfig one, many;
    many.threads = 3;
    CHECK(trace_to_json(correct(q, cols, one)).dump() == trace_to_json(correct(q, cols, many)).dump());
}

TEST_CASE("max_steps caps the trace") {
    const SceneTemplate t = load_template(fixture("columns_wide.json"));
    const lang::Program p = lang::parse("d = 0.01\ncols = group(\"column_*\")\nfor i, c in enumerate(cols):\n"
                                        "    c.center.x = scene.center.x + i * d\n");
    CorrectorConfig c = small_offsets();
    c.max_steps = 2;
    CHECK(correct(p, t, c).steps.size() <= 2);
    c.max_steps = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    CHECK_THROWS_AS(correct(p, t, c), std::invalid_argument);
}

TEST_CASE("orientation faults are repaired") {
    const SceneTemplate t = scene({4, 4, 3}, {object("tv", {1.0, 0.1, 0.6}, SupportType::WallMounted)});
    // Facing north with its back pinned to the north wall: the screen sticks out.
    const lang::Program p = lang::parse("tv.facing = NORTH\ntv.max.y = scene.max.y\ntv.min.z = 1.0\n");
    const CorrectionTrace trace = correct(p, t);
    CHECK(trace.initial_loss.total > 0.0);
    CHECK(trace.final_loss.total == 0.0);
    CHECK(*lang::list_parameters(trace.final_program)[0].orientation.cardinal == Orientation::South);
}

TEST_CASE("initial evaluation errors propagate") {
    const SceneTemplate t = scene({4, 4, 3}, {object("a", {1, 1, 1}), object("b", {1, 1, 1})});
    CHECK_THROWS_AS(correct(lang::parse("a.min.x = b.max.x"), t), lang::EvalError);
    CHECK_THROWS_AS(correct(lang::parse("a.min.x = q"), t), lang::UnknownIdentifier);
}

TEST_CASE("failing candidates are skipped") {
    // Halving z makes the divisor zero; that neighbor is discarded.
    const SceneTemplate t = scene({10, 4, 3}, {object("a", {1, 1, 1}), object("b", {1, 1, 1})});
    const lang::Program p = lang::parse("z = 1.0 - 0.5\na.min.x = 1 / z\nb.min.x = 2.5\n");
    CHECK_NOTHROW(correct(p, t));
}

TEST_CASE("trace json shape") {
    const SceneTemplate t = mirror_scene(false);
    const auto j = trace_to_json(correct(lang::parse(kMirrorLightFirst), t));
    REQUIRE(j.size() == 1);
    CHECK(j[0].at("edit").at("action") == "offset-1.0");
    CHECK(j[0].at("edit").at("from") == 5.3);
    CHECK(j[0].at("edit").at("to").get<double>() == doctest::Approx(4.3));
    CHECK(j[0].at("loss_before").get<double>() > 0.0);
    CHECK(j[0].at("tie_break").get<double>() == doctest::Approx(1.0));
}
