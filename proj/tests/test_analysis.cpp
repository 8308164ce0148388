#include "rotor/analysis.hpp"
#include "rotor/ensemble.hpp"
#include "rotor/random.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace rotor;
using namespace rotor::analysis;

namespace {

constexpr double kPi = std::numbers::pi;

// Point at clockwise angle theta and radius r.
Vec2 at(double r, double theta) { return {r * std::cos(theta), -r * std::sin(theta)}; }

std::vector<SpiralPoint> archimedean(double a, double b, std::size_t n, double dtheta, Rng* jitter = nullptr)
{
    std::vector<Vec2> pts;
    for (std::size_t i = 1; i <= n; ++i) {
        const double theta = dtheta * static_cast<double>(i);
        double r = a + b * theta;
        if (jitter)
            r *= 1 + 0.1 * (jitter->uniform01() - 0.5);
        pts.push_back(at(r, theta));
    }
    return unwrap_points(pts);
}

LabelEvent label(std::int64_t x, std::int64_t y, std::int64_t t_in, std::int64_t t_out, int depth = 0)
{
    LabelEvent e;
    e.v = {x, y};
    e.t_in = t_in;
    e.t_out = t_out;
    e.depth = depth;
    e.area = 1;
    return e;
}

} // namespace

TEST_CASE("unwrap follows quarter turns clockwise")
{
    const std::vector<Vec2> pts{{1, 0}, {0, -1}, {-1, 0}, {0, 1}, {1, 0}};
    const auto s = unwrap_points(pts);
    REQUIRE(s.size() == 5);
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(s[i].theta == doctest::Approx(kPi / 2 * static_cast<double>(i)));
        CHECK(s[i].r == doctest::Approx(1.0));
        CHECK(s[i].n == static_cast<std::int64_t>(i) + 1);
    }
    // Anticlockwise motion unwinds.
    const std::vector<Vec2> back{{1, 0}, {0, 1}, {-1, 0}};
    CHECK(unwrap_points(back).back().theta == doctest::Approx(-kPi));
}

TEST_CASE("unwrap skips the origin")
{
    const std::vector<Vec2> pts{{0, 0}, {1, 0}, {0, 0}, {0, -2}};
    std::size_t skipped = 0;
    const auto s = unwrap_points(pts, &skipped);
    CHECK(skipped == 2);
    REQUIRE(s.size() == 2);
    CHECK(s[1].theta == doctest::Approx(kPi / 2));
    CHECK(s[1].source == 3);
    CHECK(s[1].n == 2);
}

TEST_CASE("unwrap_spiral filters by depth and keeps label indices")
{
    const std::vector<LabelEvent> labels{label(1, 0, 1, 2), label(5, 5, 3, 4, 1), label(0, -1, 5, 6)};
    const auto top = unwrap_spiral(labels, 0);
    REQUIRE(top.size() == 2);
    CHECK(top[1].source == 2);
    CHECK(unwrap_spiral(labels, 1).size() == 3);
}

TEST_CASE("spiral ratio recovers an Archimedean pitch")
{
    SUBCASE("single exact spiral")
    {
        const auto s = archimedean(1.0, 0.5, 20000, 0.1);
        const RatioSeries r = rms_ratio({s});
        CHECK(r.fit.b_est == doctest::Approx(0.5).epsilon(0.01));
        CHECK(r.fit.low_confidence);
        CHECK(r.fit.n_lo == 10001);
        CHECK(r.fit.n_hi == 20000);
        CHECK(mean_ratio({s}).fit.b_est == doctest::Approx(0.5).epsilon(0.01));
    }
    SUBCASE("jittered ensemble")
    {
        Rng rng(8);
        std::vector<std::vector<SpiralPoint>> ensemble;
        for (int i = 0; i < 50; ++i)
            ensemble.push_back(archimedean(0.0, 1.8, 3000, 0.05, &rng));
        const RatioSeries r = rms_ratio(ensemble);
        CHECK_FALSE(r.fit.low_confidence);
        CHECK(r.fit.b_est == doctest::Approx(1.8).epsilon(0.02));
        CHECK(mean_ratio(ensemble).fit.b_est == doctest::Approx(1.8).epsilon(0.02));
    }
    SUBCASE("circle has vanishing ratio")
    {
        std::vector<Vec2> pts;
        for (int i = 1; i <= 5000; ++i)
            pts.push_back(at(5.0, 0.1 * i));
        const auto s = unwrap_points(pts);
        const RatioSeries r = mean_ratio({s});
        CHECK(r.ratio.back() < 0.011);
        CHECK(r.late_slope < 0);
    }
    CHECK_THROWS_AS(rms_ratio({}), AnalysisError);
}

TEST_CASE("theta windows average r over theta")
{
    const auto s = archimedean(0.0, 2.0, 1000, 0.1);
    const ThetaWindowRatio w = mean_ratio_by_theta({s}, 2 * kPi);
    REQUIRE(!w.ratio.empty());
    for (double v : w.ratio)
        CHECK(v == doctest::Approx(2.0));
    std::int64_t total = 0;
    for (auto c : w.count)
        total += c;
    CHECK(total == 1000);
    CHECK_THROWS_AS(ThetaWindowAccumulator(0.0), AnalysisError);
}

TEST_CASE("label gaps")
{
    SUBCASE("examples")
    {
        const std::vector<LabelEvent> labels{label(1, 0, 1, 10), label(2, 0, 17, 30), label(3, 0, 30, 31)};
        CHECK(label_gaps(labels) == std::vector<double>{7, 0});
    }
    SUBCASE("nested labels are skipped at depth 0")
    {
        const std::vector<LabelEvent> labels{label(1, 0, 1, 10), label(2, 0, 4, 6, 1), label(3, 0, 12, 20)};
        CHECK(label_gaps(labels, 0) == std::vector<double>{2});
        CHECK(label_gaps(labels, 1).size() == 2);
    }
    SUBCASE("translation in time leaves gaps unchanged")
    {
        std::vector<LabelEvent> labels{label(1, 0, 1, 10), label(2, 0, 17, 30), label(3, 0, 35, 36)};
        const auto a = label_gaps(labels);
        for (auto& l : labels) {
            l.t_in += 1000;
            l.t_out += 1000;
        }
        CHECK(label_gaps(labels) == a);
    }
    SUBCASE("asymptote of an exact c + A n^-1/2 series")
    {
        GapAccumulator acc;
        std::vector<double> gaps;
        for (int n = 1; n <= 400; ++n)
            gaps.push_back(6.8 + 3.0 / std::sqrt(static_cast<double>(n)));
        acc.add(gaps);
        const GapSeries g = acc.result();
        CHECK(g.asymptote == doctest::Approx(6.8).epsilon(1e-9));
        CHECK(g.correction == doctest::Approx(3.0).epsilon(1e-9));
        CHECK(g.n_lo == 201);
    }
    CHECK_THROWS_AS(gap_stats({{label(1, 0, 1, 2), label(2, 0, 3, 4)}}), AnalysisError);
}

TEST_CASE("annulus_sites agrees with exact integer counting")
{
    for (int lo = 0; lo < 12; ++lo)
        for (int hi = lo + 1; hi < 14; ++hi) {
            std::int64_t count = 0;
            for (int x = -hi; x <= hi; ++x)
                for (int y = -hi; y <= hi; ++y) {
                    const int d2 = x * x + y * y;
                    count += d2 >= lo * lo && d2 < hi * hi;
                }
            REQUIRE(annulus_sites(lo, hi) == count);
        }
    CHECK(annulus_sites(0, 1) == 1);
    CHECK(annulus_sites(3, 3) == 0);
}

TEST_CASE("density of one label per site inside a disc")
{
    // T = 1000: plateau window [1, 5], far field from 20.
    std::vector<LabelEvent> labels;
    for (int x = -12; x <= 12; ++x)
        for (int y = -12; y <= 12; ++y)
            if (x * x + y * y < 144)
                labels.push_back(label(x, y, 1, 2));
    const DensityProfile d = label_density({labels, labels}, 1000);
    CHECK(d.peak == doctest::Approx(1.0));
    CHECK(d.plateau == doctest::Approx(1.0));
    CHECK(d.plateau_lo == doctest::Approx(1.0));
    CHECK(d.plateau_hi == doctest::Approx(5.0));
    CHECK(d.far_max == 0);
    CHECK(d.falloff_radius == doctest::Approx(12.0));
    for (std::size_t i = 0; i < d.density.size(); ++i)
        CHECK(d.density[i] == doctest::Approx(d.edges[i] < 12 ? 1.0 : 0.0));
    CHECK_THROWS_AS(DensityAccumulator(0), AnalysisError);
}

TEST_CASE("displacement exponent")
{
    MsdSeries m;
    for (double t = 1; t <= 1e6; t *= 1.1) {
        m.t.push_back(t);
        m.mean_r2.push_back(3.0 * std::pow(t, 2.0 / 3.0));
    }
    const ExponentFit f = msd_exponent(m);
    CHECK(f.nu == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(f.t_lo == doctest::Approx(m.t.back() / std::pow(10.0, 1.5)));

    MsdSeries narrow;
    for (double t = 100; t <= 1000; t *= 1.1) {
        narrow.t.push_back(t);
        narrow.mean_r2.push_back(t);
    }
    CHECK_THROWS_AS(msd_exponent(narrow), AnalysisError);
    CHECK_THROWS_AS(msd_exponent(m, 0.5), AnalysisError);

    // Only times present in every walk are averaged.
    const std::vector<std::vector<Sample>> walks{{{1, 1, 0}, {2, 1, 1}}, {{1, 0, 1}, {3, 3, 0}}};
    const MsdSeries shared = mean_square_displacement(walks);
    CHECK(shared.t == std::vector<double>{1});
    CHECK(shared.mean_r2 == std::vector<double>{1});
}

TEST_CASE("loop partition")
{
    // Quarter turns at growing radius: a loop every four labels.
    std::vector<LabelEvent> labels;
    const std::int64_t dirs[4][2]{{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    for (int i = 0; i < 13; ++i) {
        const std::int64_t r = 1 + i;
        labels.push_back(label(dirs[i % 4][0] * r, dirs[i % 4][1] * r, 10 * i, 10 * i + 5));
    }
    const auto spiral = unwrap_spiral(labels);
    const auto loops = loop_partition(spiral, labels);
    REQUIRE(loops.size() == 3);
    CHECK(loops[0].k == 1);
    CHECK(loops[0].k_end == 5);
    CHECK(loops[1].k == 5);
    CHECK(loops[0].duration == 40);
    CHECK(loops[0].radius == doctest::Approx(3.0));
    CHECK(loops[0].delta_r == doctest::Approx(4.0));
    CHECK(loops[0].area == 5);
}

TEST_CASE("loop growth recovers duration ~ radius^2")
{
    // r = 50 + theta / 2 and t_in = r^3 give dt/dtheta proportional to r^2.
    std::vector<LabelEvent> labels;
    for (int i = 1; i <= 20000; ++i) {
        const double theta = 0.05 * i;
        const double r = 50 + 0.5 * theta;
        const Vec2 p = at(r, theta);
        labels.push_back(label(std::llround(p.x), std::llround(p.y),
                               static_cast<std::int64_t>(r * r * r), static_cast<std::int64_t>(r * r * r) + 1));
    }
    const auto spiral = unwrap_spiral(labels);
    const auto loops = loop_partition(spiral, labels);
    REQUIRE(loops.size() > 100);
    CHECK(loop_growth(loops).slope == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("ensemble analyzer on short rotor walks")
{
    const std::int64_t T = 200000;
    EnsembleAnalyzer acc(T);
    lattice::WalkCounters sum;
    for (std::uint64_t i = 0; i < 6; ++i) {
        const auto t = lattice::run_walk(derive_seed(4, i), T);
        sum.steps += t.counters.steps;
        acc.add(t);
    }
    const EnsembleReport r = acc.result();
    CHECK(r.walks == 6);
    CHECK(r.totals.steps == sum.steps);
    CHECK(r.labels > 0);
    REQUIRE(r.nu.has_value());
    CHECK(r.nu->nu > 0.2);
    CHECK(r.nu->nu < 0.45);
    CHECK(r.rms.has_value());
    CHECK(r.gaps.has_value());
    CHECK(r.density.has_value());
}

TEST_CASE("ensemble analyzer without labels reports why")
{
    const std::int64_t T = 10000;
    EnsembleAnalyzer acc(T);
    for (std::uint64_t i = 0; i < 4; ++i)
        acc.add(lattice::run_random_walk_control(i, T));
    const EnsembleReport r = acc.result();
    CHECK(r.labels == 0);
    CHECK(r.nu.has_value());
    CHECK_FALSE(r.rms.has_value());
    REQUIRE(!r.notes.empty());
    CHECK(r.notes.back().find("no labels") != std::string::npos);
}
