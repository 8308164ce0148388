#include "rotor/engine.hpp"
#include "rotor/lattice.hpp"
#include "rotor/walker.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <set>

using namespace rotor;
using namespace rotor::lattice;

namespace {

void set_direction(LatticeEnvironment& env, Point p, int dir)
{
    env.set_turns(p, static_cast<std::uint32_t>((dir - initial_direction(env.seed(), p.x, p.y) + 4) & 3));
    REQUIRE(env.direction(p) == dir);
}

} // namespace

TEST_CASE("initial directions are deterministic and cover all four values")
{
    CHECK(initial_direction(5, 10, -3) == initial_direction(5, 10, -3));
    LatticeEnvironment a(5);
    LatticeEnvironment b(5);
    // Visit order does not matter.
    for (std::int64_t i = 0; i < 300; ++i)
        a.direction({i, -i});
    for (std::int64_t i = 299; i >= 0; --i)
        CHECK(b.direction({i, -i}) == a.direction({i, -i}));
}

TEST_CASE("initial directions are uniform")
{
    std::array<std::int64_t, 4> counts{};
    const std::int64_t side = 1000;
    for (std::int64_t x = 0; x < side; ++x)
        for (std::int64_t y = 0; y < side; ++y)
            ++counts[static_cast<std::size_t>(initial_direction(2024, x - 500, y - 500))];
    const double n = static_cast<double>(side * side);
    double chi2 = 0;
    for (auto c : counts) {
        CHECK(std::abs(static_cast<double>(c) / n - 0.25) < 0.002);
        chi2 += std::pow(static_cast<double>(c) - n / 4, 2) / (n / 4);
    }
    // 99.9% quantile of chi-square with 3 degrees of freedom.
    CHECK(chi2 < 16.27);
}

TEST_CASE("initial directions decorrelate across seeds and neighbours")
{
    std::vector<double> a;
    std::vector<double> b;
    std::vector<double> right;
    for (std::int64_t i = 0; i < 100000; ++i) {
        const std::int64_t x = i % 400 - 200;
        const std::int64_t y = i / 400 - 125;
        a.push_back(initial_direction(1, x, y));
        b.push_back(initial_direction(2, x, y));
        right.push_back(initial_direction(1, x + 1, y));
    }
    CHECK(std::abs(oracle::correlation(a, b)) < 0.01);
    CHECK(std::abs(oracle::correlation(a, right)) < 0.01);
}

TEST_CASE("rotor pointing north sends the chip east")
{
    LatticeEnvironment env(3);
    Point p{0, 0};
    while (env.direction(p) != 0)
        ++p.x;
    const Point q = sim_step(env, p);
    CHECK(q == Point{p.x + 1, p.y});
    CHECK(env.direction(p) == 1);
    CHECK(env.turns(p) == 1);
    CHECK(env.activated(p));
    CHECK_FALSE(env.activated(q));
}

TEST_CASE("chunks handle negative coordinates")
{
    LatticeEnvironment env(8);
    const std::vector<Point> pts{{-1, -1}, {-64, 0}, {-65, 63}, {64, -64}, {0, 0}, {-1000000, 999999}};
    for (std::size_t i = 0; i < pts.size(); ++i)
        env.set_turns(pts[i], static_cast<std::uint32_t>(i + 1));
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    env.for_each_activated([&](Point p, std::uint32_t turns) {
        seen.insert({p.x, p.y});
        const auto it = std::find(pts.begin(), pts.end(), p);
        REQUIRE(it != pts.end());
        CHECK(turns == static_cast<std::uint32_t>(it - pts.begin() + 1));
    });
    CHECK(seen.size() == pts.size());
    for (const Point& p : pts)
        CHECK(env.direction(p) == static_cast<int>((initial_direction(8, p.x, p.y) + env.turns(p)) & 3));
}

TEST_CASE("detect_contour on hand-built configurations")
{
    LatticeEnvironment env(11);
    std::vector<Point> out;
    SUBCASE("clockwise unit face")
    {
        // (0,0) N -> (0,1) E -> (1,1) S -> (1,0) W -> (0,0).
        set_direction(env, {0, 0}, 0);
        set_direction(env, {0, 1}, 1);
        set_direction(env, {1, 1}, 2);
        set_direction(env, {1, 0}, 3);
        CHECK(detect_contour(env, {0, 0}, out) == DetectOutcome::Clockwise);
        CHECK(out == std::vector<Point>{{0, 0}, {0, 1}, {1, 1}, {1, 0}});
        CHECK(detect_contour(env, {1, 1}, out) == DetectOutcome::Clockwise);
        CHECK(out.front() == Point{1, 1});
    }
    SUBCASE("anticlockwise unit face")
    {
        set_direction(env, {0, 0}, 1);
        set_direction(env, {1, 0}, 0);
        set_direction(env, {1, 1}, 3);
        set_direction(env, {0, 1}, 2);
        CHECK(detect_contour(env, {0, 0}, out) == DetectOutcome::Anticlockwise);
    }
    SUBCASE("dimer")
    {
        set_direction(env, {0, 0}, 1);
        set_direction(env, {1, 0}, 3);
        CHECK(detect_contour(env, {0, 0}, out) == DetectOutcome::Dimer);
    }
    SUBCASE("chain ending in a cycle elsewhere")
    {
        set_direction(env, {0, 0}, 1);
        set_direction(env, {1, 0}, 1);
        set_direction(env, {2, 0}, 1);
        set_direction(env, {3, 0}, 3);
        CHECK(detect_contour(env, {0, 0}, out) == DetectOutcome::NoCycle);
    }
    SUBCASE("cap")
    {
        set_direction(env, {0, 0}, 1);
        set_direction(env, {1, 0}, 1);
        set_direction(env, {2, 0}, 1);
        CHECK_THROWS_AS(detect_contour(env, {0, 0}, out, 2), DetectionCapExceeded);
    }
}

TEST_CASE("detect_contour agrees with find_cycles on cropped windows")
{
    const oracle::CropTally t = oracle::crop_detection_trials(2000, 41);
    INFO("compared " << t.compared << " escaped " << t.escaped);
    CHECK(t.mismatches == 0);
    CHECK(t.compared > 1900);
    CHECK(t.clockwise > 0);
    CHECK(t.anticlockwise > 0);
    CHECK(t.dimers > 0);
    CHECK(t.no_cycle > 0);
}

TEST_CASE("torus environment matches the finite-graph engine step for step")
{
    for (int side = 4; side <= 8; ++side)
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            CAPTURE(side);
            CAPTURE(seed);
            CHECK(oracle::torus_mismatch(side, side, seed, 20000) == -1);
        }
    CHECK(oracle::torus_mismatch(5, 7, 3, 20000) == -1);
}

TEST_CASE("activated rotors form a tree rooted at the chip")
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        WalkConfig c;
        c.seed = seed;
        c.steps = 5000 * static_cast<std::int64_t>(seed);
        LatticeWalker w(c);
        w.advance_to(c.steps);
        CHECK(oracle::activated_tree_violations(w.environment(), w.chip()) == 0);
    }
}
