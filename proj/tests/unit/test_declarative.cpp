#include <doctest.h>

#include <chrono>

#include "common/oracles.hpp"
#include "scenelayout/declarative/parser.hpp"
#include "scenelayout/declarative/solver.hpp"
#include "scenelayout/io.hpp"
#include "scenelayout/loss.hpp"
#include "support.hpp"

using namespace scenelayout;
using namespace scenelayout::decl;
using namespace testsupport;

namespace {

SceneTemplate living_room() {
    return scene({5, 4, 3}, {object("sofa", {2.0, 0.9, 0.8}), object("table", {1.2, 0.8, 0.75}),
                             object("lamp", {0.3, 0.3, 0.5}), object("tv", {1.2, 0.1, 0.7}, SupportType::WallMounted),
                             object("chair_1", {0.5, 0.5, 0.9}), object("chair_2", {0.5, 0.5, 0.9}),
                             object("light", {0.4, 0.4, 0.2}, SupportType::Floating)});
}

Layout placed(const SceneTemplate& t, std::vector<std::pair<Vec3, Orientation>> at) {
    Layout l;
    l.bounds = t.bounds;
    for (std::size_t i = 0; i < t.objects.size(); ++i) {
        const auto& [pos, o] = i < at.size() ? at[i] : std::pair<Vec3, Orientation>{{0, 0, 0}, Orientation::North};
        l.placements.push_back({t.objects[i], pos, o});
    }
    return l;
}

Relation only(const std::string& src, const SceneTemplate& t) {
    const ConstraintSet cs = parse_relations(src, t);
    REQUIRE(cs.relations.size() == 1);
    return cs.relations[0];
}

}  // namespace

TEST_CASE("relation parsing") {
    const SceneTemplate t = living_room();
    const ConstraintSet cs = parse_relations(R"(# comment line
on(lamp, table)
next_to_wall(sofa, 3, 0.0)
mounted_on_wall(tv, 1, 1.2, sofa)
mounted_on_ceiling(light, table)
adjacent(chair_1, table, WEST, 0.1)
adjacent(chair_2, table, 1, NORTH)
aligned([sofa, table, tv], x)
facing(chair_1, table)
surround([chair_1, chair_2], table)
pin(table, 1.9, 1.6, 0, EAST)
)",
                                             t);
    REQUIRE(cs.relations.size() == 9);
    CHECK(cs.relations[0].kind == RelationKind::On);
    CHECK(cs.relations[0].line == 2);
    CHECK(cs.relations[2].objects == std::vector<std::size_t>{3, 0});
    CHECK(cs.relations[2].height == 1.2);
    CHECK(cs.relations[4].kind == RelationKind::AdjacentDirDist);
    CHECK(cs.relations[4].dir1 == Orientation::West);
    CHECK(cs.relations[5].kind == RelationKind::AdjacentTwoDirs);
    CHECK(cs.relations[5].dir1 == Orientation::East);
    CHECK(cs.relations[5].dir2 == Orientation::North);
    CHECK(cs.relations[6].axis == 0);
    CHECK(cs.relations[8].objects == std::vector<std::size_t>{4, 5, 1});
    REQUIRE(cs.pinned.size() == 1);
    CHECK(cs.pinned[0].orientation == Orientation::East);

    // The formatted set parses back to the same relations.
    const ConstraintSet again = parse_relations(format_relations(cs), t);
    CHECK(format_relations(again) == format_relations(cs));
    CHECK(again.relations.size() == cs.relations.size());

    CHECK(parse_relations("", t).relations.empty());
}

TEST_CASE("relation parse errors") {
    const SceneTemplate t = living_room();
    CHECK_THROWS_AS(parse_relations("on(lamp)", t), ArityError);
    CHECK_THROWS_AS(parse_relations("next_to_wall(sofa, 3)", t), ArityError);
    CHECK_THROWS_AS(parse_relations("on(lamp, piano)", t), UnknownObject);
    CHECK_THROWS_AS(parse_relations("beside(lamp, table)", t), ParseError);
    CHECK_THROWS_AS(parse_relations("next_to_wall(sofa, 4, 0.0)", t), ParseError);
    CHECK_THROWS_AS(parse_relations("adjacent(chair_1, table, NORTH, SOUTH)", t), ParseError);
    CHECK_THROWS_AS(parse_relations("aligned(sofa, x)", t), ParseError);
    CHECK_THROWS_AS(parse_relations("aligned([sofa, table], w)", t), ParseError);
    CHECK_THROWS_AS(parse_relations("on(lamp, lamp)", t), ParseError);
    CHECK_THROWS_AS(parse_relations("on(lamp, table", t), ParseError);
    try {
        parse_relations("on(lamp, table)\n\nfacing(chair_1, sofa_2)", t);
        FAIL("expected UnknownObject");
    } catch (const UnknownObject& e) {
        CHECK(e.line() == 3);
        CHECK(e.name() == "sofa_2");
    }
}

TEST_CASE("relation losses on hand-placed layouts") {
    const SceneTemplate t = living_room();
    Layout l = placed(t, {{{1.5, 0, 0}, Orientation::North},
                          {{1.9, 1.6, 0}, Orientation::North},
                          {{2.0, 1.7, 0.75}, Orientation::North},
                          {{1.9, 3.9, 1.2}, Orientation::South},
                          {{1.2, 1.75, 0}, Orientation::East},
                          {{2.25, 2.4, 0}, Orientation::South},
                          {{2.3, 1.8, 2.8}, Orientation::North}});

    auto check = [&](const std::string& src, double expected) {
        const Relation r = only(src, t);
        CHECK_MESSAGE(relation_loss(r, l) == doctest::Approx(expected), src);
        if (expected == 0.0) CHECK_MESSAGE(satisfied(r, l, 1e-9), src);
        if (expected > 0.1) CHECK_MESSAGE(!satisfied(r, l, 1e-2), src);
    };
    check("next_to_wall(sofa, 3, 0.0)", 0.0);
    check("next_to_wall(sofa, 3, 0.3)", 0.3);
    check("next_to_wall(sofa, 0, 0.0)", 1.5);
    check("on(lamp, table)", 0.0);
    check("mounted_on_wall(tv, 1, 1.2)", 0.0);
    check("mounted_on_wall(tv, 1, 1.2, table)", 0.0);
    check("mounted_on_wall(tv, 1, 1.0)", 0.2);
    check("mounted_on_ceiling(light, table)", 0.0);
    check("adjacent(chair_1, table, WEST, 0.2)", 0.0);
    check("adjacent(chair_2, table, NORTH, 0.0)", 0.0);
    check("adjacent(chair_1, table, WEST, NORTH)", 0.2 + 0.15);
    check("aligned([sofa, table, tv], x)", 0.0);
    check("facing(chair_1, table)", 0.0);
    check("facing(chair_2, table)", 0.0);
    check("facing(sofa, tv)", 0.0);
    check("facing(tv, sofa)", 0.0);
    check("facing(sofa, table)", 0.0);
    check("surround([chair_2], table)", 0.0);

    // Facing away costs the angle past 45 degrees.
    l.placements[4].orientation = Orientation::West;
    CHECK(relation_loss(only("facing(chair_1, table)", t), l) == doctest::Approx(3.0 * std::numbers::pi / 4.0));
    CHECK_FALSE(satisfied(only("facing(chair_1, table)", t), l, 1e-2));

    // Aligned is the population variance of the centers.
    const Relation al = only("aligned([sofa, table], y)", t);
    const double c0 = 0.45, c1 = 2.0;
    const double mean = 0.5 * (c0 + c1);
    CHECK(relation_loss(al, l) == doctest::Approx(0.5 * ((c0 - mean) * (c0 - mean) + (c1 - mean) * (c1 - mean))));
}

TEST_CASE("relation gradients match finite differences") {
    for (auto kind : oracle::kAllKinds) {
        const oracle::GradientCheck g = oracle::check_gradients(kind, 20, 11);
        CHECK_MESSAGE(g.points == 20, to_string(kind));
        CHECK_MESSAGE(g.worst <= 1e-4, to_string(kind) << " worst " << g.worst);
    }
}

TEST_CASE("bedroom solve satisfies every relation") {
    const SceneTemplate t = load_template(fixture("bedroom.json"));
    const ConstraintSet cs = parse_relations(read_text_file(fixture("bedroom.rel")), t);
    const auto start = std::chrono::steady_clock::now();
    const SolveResult res = solve_detailed(cs, SolverConfig{});
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(seconds < 10.0);
    REQUIRE(res.satisfied.size() == cs.relations.size());
    for (std::size_t i = 0; i < cs.relations.size(); ++i) {
        CHECK_MESSAGE(satisfied(cs.relations[i], res.layout, 1e-2), format_relations(cs));
    }
    CHECK(total_loss(res.layout).total <= 1e-2);

    // Restart histories only improve.
    for (std::size_t i = 1; i < res.best_history.size(); ++i) CHECK(res.best_history[i] <= res.best_history[i - 1]);
    CHECK(res.objective <= res.best_history.back() + 1e-12);

    // Deterministic for a fixed seed, independent of threads.
    SolverConfig threaded;
    threaded.threads = 4;
    const SolveResult again = solve_detailed(cs, threaded);
    CHECK(again.layout == res.layout);
    CHECK(again.best_restart == res.best_restart);
}

TEST_CASE("pinned objects stay put") {
    const SceneTemplate t = living_room();
    const ConstraintSet cs =
        parse_relations("pin(table, 1.0, 1.0, 0.0, EAST)\non(lamp, table)\nadjacent(sofa, table, SOUTH, 0.3)\n", t);
    const SolveResult res = solve_detailed(cs, SolverConfig{});
    const PlacedObject& table = res.layout.placements[1];
    CHECK(table.position == Vec3{1.0, 1.0, 0.0});
    CHECK(table.orientation == Orientation::East);
    CHECK(satisfied(cs.relations[0], res.layout, 1e-2));
    CHECK(world_cuboid(res.layout.placements[2]).min.z == doctest::Approx(0.75).epsilon(1e-2));
}

TEST_CASE("empty relation sets fall back to default placement") {
    const SceneTemplate t = load_template(fixture("bedroom.json"));
    const ConstraintSet cs = parse_relations("# nothing\n", t);
    const SolveResult res = solve_detailed(cs, SolverConfig{});
    CHECK(res.satisfied.empty());
    CHECK(res.best_history.empty());
    for (const auto& p : res.layout.placements) CHECK(p.orientation == Orientation::North);
    CHECK(res.objective == doctest::Approx(res.hard_loss));
}

TEST_CASE("solver config validation") {
    SolverConfig c;
    CHECK_NOTHROW(c.validate());
    c.iterations = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.step_size = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.restarts = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("jet arithmetic") {
    const Jet x(2.0, 2, 0), y(3.0, 2, 1);
    const Jet p = x * y + x / y - y;
    CHECK(p.v == doctest::Approx(6.0 + 2.0 / 3.0 - 3.0));
    CHECK(p.g[0] == doctest::Approx(3.0 + 1.0 / 3.0));
    CHECK(p.g[1] == doctest::Approx(2.0 - 2.0 / 9.0 - 1.0));
    const Jet a = atan2(y, x);
    CHECK(a.v == doctest::Approx(std::atan2(3.0, 2.0)));
    CHECK(a.g[0] == doctest::Approx(-3.0 / 13.0));
    CHECK(a.g[1] == doctest::Approx(2.0 / 13.0));
}
