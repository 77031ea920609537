#include <doctest.h>

#include <random>

#include "scenelayout/loss.hpp"
#include "support.hpp"

using namespace scenelayout;
using namespace testsupport;

namespace {

const ObjectSpec kCube = object("cube", {1, 1, 1});

ObjectSpec named(const ObjectSpec& s, std::string name) {
    ObjectSpec out = s;
    out.name = std::move(name);
    return out;
}

// Direct double loop over pairs, written without the kernels.
double naive_overlap(const Layout& l, double margin = kDefaultOpeningMargin) {
    double total = 0.0;
    for (std::size_t i = 0; i < l.placements.size(); ++i) {
        for (std::size_t j = i + 1; j < l.placements.size(); ++j) {
            const Cuboid a = collision_cuboid(l.placements[i], margin);
            const Cuboid b = collision_cuboid(l.placements[j], margin);
            const double ex = std::min(a.max.x, b.max.x) - std::max(a.min.x, b.min.x);
            const double ey = std::min(a.max.y, b.max.y) - std::max(a.min.y, b.min.y);
            const double ez = std::min(a.max.z, b.max.z) - std::max(a.min.z, b.min.z);
            if (ex > 1e-9 && ey > 1e-9 && ez > 1e-9) total += (ex + ey + ez) / 3.0;
        }
    }
    return total;
}

Layout random_layout(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> pos(-0.5, 3.5), dim(0.2, 1.5);
    std::uniform_int_distribution<int> orient(0, 3), support(0, 2);
    Layout l = room({4, 4, 3});
    for (std::size_t i = 0; i < n; ++i) {
        ObjectSpec s = object("o" + std::to_string(i), {dim(rng), dim(rng), dim(rng)},
                              static_cast<SupportType>(support(rng)), i % 5 == 4);
        l.placements.push_back(place(s, {pos(rng), pos(rng), pos(rng) * 0.5}, static_cast<Orientation>(orient(rng))));
    }
    return l;
}

}  // namespace

TEST_CASE("out-of-bounds loss") {
    Layout l = room({10, 10, 10}, {place(kCube, {1, 1, 0})});
    CHECK(oob_loss(l) == 0.0);
    l.placements[0].position.x = 9.25;
    CHECK(oob_loss(l) == doctest::Approx(0.25));
    l.placements.push_back(place(named(kCube, "b"), {-0.2, 3, 0}));
    l.placements[0].position.x = 9.1;
    CHECK(oob_loss(l) == doctest::Approx(0.3));
}

TEST_CASE("overlap loss") {
    Layout l = room({10, 10, 10}, {place(kCube, {0, 0, 0}), place(named(kCube, "b"), {0.5, 0, 0})});
    CHECK(overlap_loss(l) == doctest::Approx(2.5 / 3.0));
    l.placements[1].position = {5, 5, 5};
    CHECK(overlap_loss(l) == 0.0);
    Layout three = room({10, 10, 10}, {place(kCube, {1, 1, 1}), place(named(kCube, "b"), {1, 1, 1}),
                                       place(named(kCube, "c"), {1, 1, 1})});
    CHECK(overlap_loss(three) == doctest::Approx(3.0));

    // Shared faces are contact, not overlap.
    l.placements[1].position = {1, 0, 0};
    CHECK(overlap_loss(l) == 0.0);
}

TEST_CASE("openings collide through their clearance") {
    const ObjectSpec door = object("door", {1, 0.1, 2}, SupportType::Standing, true);
    const ObjectSpec chair = object("chair", {0.5, 0.5, 0.9});
    Layout l = room({5, 5, 3}, {place(door, {1, 0, 0}), place(chair, {1.2, 0.3, 0})});
    LossOptions opts;
    CHECK(overlap_loss(l, opts) > 0.0);
    opts.opening_margin = 0.1;
    CHECK(overlap_loss(l, opts) == 0.0);
}

TEST_CASE("standing loss") {
    const ObjectSpec table = object("table", {1.2, 0.8, 0.8});
    const ObjectSpec lamp = object("lamp", {0.3, 0.3, 0.5});
    Layout l = room({5, 5, 3}, {place(kCube, {1, 1, 0})});
    CHECK(standing_loss(l) == 0.0);
    l.placements[0].position.z = 0.4;
    CHECK(standing_loss(l) == doctest::Approx(0.4));

    Layout desk = room({5, 5, 3}, {place(table, {1, 1, 0}), place(lamp, {1.4, 1.2, 0.8})});
    CHECK(standing_loss(desk) == 0.0);
    CHECK(support_height(desk, 1) == doctest::Approx(0.8));
    desk.placements[1].position.z = 0.85;
    CHECK(standing_loss(desk) == doctest::Approx(0.05));
    // Slightly sunk into the table top: the top is still within the capture band.
    desk.placements[1].position.z = 0.795;
    CHECK(standing_loss(desk) == doctest::Approx(0.005));
    // Beside the table the floor is the support.
    desk.placements[1].position = {3, 3, 0.8};
    CHECK(standing_loss(desk) == doctest::Approx(0.8));
}

TEST_CASE("mounted loss measures the back face to the nearest parallel wall") {
    const ObjectSpec picture = object("picture", {0.8, 0.05, 0.6}, SupportType::WallMounted);
    Layout l = room({4, 5, 3}, {place(picture, {0, 1, 1.5}, Orientation::East)});
    CHECK(mounted_loss(l) == 0.0);
    l.placements[0].position.x = 0.3;
    CHECK(mounted_loss(l) == doctest::Approx(0.3));
    // Facing north: back face is min.y; the closer of y=0 and y=5 counts.
    l.placements[0].position = {1, 4.5, 1.5};
    l.placements[0].orientation = Orientation::North;
    CHECK(mounted_loss(l) == doctest::Approx(0.5));
    CHECK(mounted_loss(room({4, 4, 3}, {place(kCube, {1, 1, 0})})) == 0.0);
}

TEST_CASE("total loss is the weighted sum") {
    Layout l = room({4, 4, 3}, {place(kCube, {-0.2, 0, 0}), place(named(kCube, "b"), {0.3, 0.5, 0})});
    const LossReport r = total_loss(l);
    CHECK(r.total == doctest::Approx(r.oob + r.overlap + r.standing + r.mounted));
    LossWeights w;
    w.overlap = 2.0;
    const LossReport doubled = total_loss(l, w);
    CHECK(doubled.overlap == r.overlap);
    CHECK(doubled.total - r.total == doctest::Approx(r.overlap));
    CHECK(total_loss(room({4, 4, 3}, {place(kCube, {1, 1, 0})})).total == 0.0);
    w.oob = -1.0;
    CHECK_THROWS_AS(w.validate(), std::invalid_argument);
}

TEST_CASE("randomized layouts: oracle agreement, symmetry, translation invariance") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        const Layout l = random_layout(rng, 1 + trial % 10);
        const LossReport r = total_loss(l);
        CHECK(r.oob >= 0.0);
        CHECK(r.overlap >= 0.0);
        CHECK(r.standing >= 0.0);
        CHECK(r.mounted >= 0.0);
        CHECK(r.overlap == doctest::Approx(naive_overlap(l)).epsilon(1e-12));

        double oob = 0.0;
        for (const auto& p : l.placements) oob += protrusion(world_cuboid(p), l.bounds);
        CHECK(r.oob == doctest::Approx(oob).epsilon(1e-12));

        Layout reversed = l;
        std::reverse(reversed.placements.begin(), reversed.placements.end());
        CHECK(overlap_loss(reversed) == doctest::Approx(r.overlap).epsilon(1e-12));

        // Power-of-two shift keeps every coordinate difference exact.
        const Vec3 shift{2.0, -4.0, 8.0};
        Layout moved = l;
        moved.bounds = moved.bounds.translated(shift);
        for (auto& p : moved.placements) p.position = p.position + shift;
        const LossReport m = total_loss(moved);
        CHECK(m.oob == doctest::Approx(r.oob).epsilon(1e-9));
        CHECK(m.overlap == doctest::Approx(r.overlap).epsilon(1e-9));
        CHECK(m.standing == doctest::Approx(r.standing).epsilon(1e-9));
        CHECK(m.mounted == doctest::Approx(r.mounted).epsilon(1e-9));
    }
}

TEST_CASE("overlap loss is continuous while the intersection stays non-empty") {
    Layout l = room({10, 10, 10}, {place(kCube, {0, 0, 0}), place(named(kCube, "b"), {0.5, 0.2, 0.1})});
    const double base = overlap_loss(l);
    for (double h : {1e-3, 1e-5, 1e-7}) {
        l.placements[1].position.x = 0.5 + h;
        CHECK(std::abs(overlap_loss(l) - base) <= h);
    }
}

TEST_CASE("breakdown is consistent with the totals") {
    std::mt19937_64 rng(5);
    const Layout l = random_layout(rng, 8);
    const LossBreakdown b = loss_breakdown(l);
    double oob = 0.0, ovl = 0.0, st = 0.0, mt = 0.0;
    for (double v : b.protrusion) oob += v;
    for (const auto& p : b.overlaps) {
        CHECK(p.first < p.second);
        ovl += p.mean_extent;
    }
    for (double v : b.standing_gap) st += v;
    for (double v : b.mounted_gap) mt += v;
    const LossReport r = total_loss(l);
    CHECK(oob == doctest::Approx(r.oob));
    CHECK(ovl == doctest::Approx(r.overlap));
    CHECK(st == doctest::Approx(r.standing));
    CHECK(mt == doctest::Approx(r.mounted));
    const auto j = to_json(r);
    CHECK(j.at("total").get<double>() == r.total);
}
