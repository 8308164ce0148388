// Acceptance run: one [PASS]/[FAIL] line per criterion, exit status 1 if any fails.

#include "oracles.hpp"

#include "rotor/analysis.hpp"
#include "rotor/commands.hpp"
#include "rotor/engine.hpp"
#include "rotor/instances.hpp"
#include "rotor/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rotor;

namespace {

int failed = 0;

void verdict(int id, bool ok, const std::string& what)
{
    std::printf("[%s] %2d  %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
    std::fflush(stdout);
    failed += !ok;
}

void info(const std::string& what)
{
    std::printf("[INFO]     %s\n", what.c_str());
    std::fflush(stdout);
}

std::string fmt(double v, int digits = 4)
{
    std::ostringstream s;
    s.precision(digits);
    s << v;
    return s.str();
}

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

int cli(std::vector<std::string> args, std::string* out = nullptr)
{
    args.insert(args.begin(), "rotorwalk");
    std::ostringstream o;
    std::ostringstream e;
    const int code = cli::run(args, o, e);
    if (out)
        *out = o.str();
    if (code != 0)
        std::cerr << e.str();
    return code;
}

bool within(double v, double lo, double hi) { return v >= lo && v <= hi; }

double number(const json& j, const char* key)
{
    return j.contains(key) && j[key].is_number() ? j[key].get<double>() : std::nan("");
}

void theorem_suites(unsigned threads)
{
    Stopwatch w;
    int failures = 0;
    std::string detail;
    for (Suite s : all_suites()) {
        const SuiteResult r = run_suite(s, {500, 1, 14, 14, threads});
        failures += r.failures() + (r.trials != 500);
        detail += std::string(suite_name(s)) + "=" + std::to_string(r.failures()) + " ";
    }
    const double t = w.seconds();
    verdict(1, failures == 0, "theorem suites, 8 x 500 trials up to 14x14: failures " + detail + "(" + fmt(t, 3) +
                                  " s, target < 60 s)");
    if (t >= 60)
        info("criterion 1 runtime above target: " + fmt(t, 3) + " s");
}

void euler_tours()
{
    Rng rng(2024);
    int bad = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const Digraph g = random_eulerian_digraph(rng, static_cast<int>(rng.between(2, 30)),
                                                  static_cast<int>(rng.between(0, 5)));
        WalkState s = random_unicycle(g, rng);
        const Vertex start = s.chip;
        const RotorConfig before = s.rotors;
        std::vector<std::int64_t> arrivals(static_cast<std::size_t>(g.vertex_count()), 0);
        std::set<std::pair<Vertex, Vertex>> used;
        bool repeat = false;
        for (std::int64_t t = 1; t <= g.edge_count(); ++t) {
            const Vertex from = s.chip;
            advance(g, s, t);
            ++arrivals[s.chip];
            repeat = repeat || !used.insert({from, s.chip}).second;
        }
        bool ok = s.chip == start && !repeat && static_cast<std::int64_t>(used.size()) == g.edge_count() &&
                  s.rotors == before;
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            ok = ok && arrivals[v] == g.degree(v);
        ok = ok && verify_euler_tour(g, random_unicycle(g, rng)).passed();
        bad += !ok;
    }
    verdict(2, bad == 0, "Euler tours on 100 random unicycles (<= 30 vertices): " + std::to_string(bad) + " failures");
}

void oracles()
{
    Stopwatch w;
    int torus_bad = 0;
    for (int side = 4; side <= 8; ++side)
        for (std::uint64_t seed = 0; seed < 50; ++seed)
            torus_bad += oracle::torus_mismatch(side, side, seed, 100000) != -1;
    const oracle::CropTally crop = oracle::crop_detection_trials(10000, 9);
    verdict(9, torus_bad == 0 && crop.mismatches == 0 && crop.compared + crop.escaped == 10000,
            "oracle equivalence: torus runs mismatching " + std::to_string(torus_bad) + "/250, cropped detection " +
                std::to_string(crop.mismatches) + " mismatches in " + std::to_string(crop.compared) + " compared + " +
                std::to_string(crop.escaped) + " escaped (" + fmt(w.seconds(), 3) + " s)");
}

void reproducibility(const fs::path& root)
{
    const fs::path a = root / "repro";
    const fs::path b = root / "repro_rerun";
    bool ok = cli({"simulate", "--steps", "1000000", "--seed", "31", "--ensemble", "4", "--max-depth", "2",
                   "--checkpoint-every", "250000", "--out", a.string()}) == 0;
    std::string out;
    ok = ok && cli({"simulate", "--from-manifest", (a / cli::kManifestName).string(), "--out", b.string()}, &out) == 0;
    ok = ok && out.find("reproduction OK") != std::string::npos;
    std::string line = out.substr(0, out.find_last_not_of('\n') + 1);
    line = line.substr(line.find_last_of('\n') + 1);
    verdict(10, ok, "manifest rerun: " + line);
}

void ensemble(const fs::path& root, int walks, std::int64_t steps, unsigned threads)
{
    Stopwatch w;
    const std::string n = std::to_string(walks);
    const std::string T = std::to_string(steps);
    const std::string th = std::to_string(threads);
    const fs::path rotor_dir = root / "rotor";
    const fs::path random_dir = root / "random";
    const bool sim_ok =
        cli({"simulate", "--steps", T, "--seed", "1", "--ensemble", n, "--threads", th, "--out", rotor_dir.string()}) ==
            0 &&
        cli({"simulate", "--mode", "random", "--steps", T, "--seed", "2", "--ensemble", n, "--threads", th, "--out",
             random_dir.string()}) == 0;
    std::string rotor_out;
    std::string random_out;
    const bool ana_ok = sim_ok && cli({"analyze", "--input", rotor_dir.string()}, &rotor_out) == 0 &&
                        cli({"analyze", "--input", random_dir.string()}, &random_out) == 0;
    info("ensemble " + n + " walks x " + T + " steps per mode, simulated and analyzed in " + fmt(w.seconds(), 4) +
         " s");
    if (!ana_ok) {
        for (int id : {3, 4, 5, 6, 7, 8})
            verdict(id, false, "ensemble run failed");
        return;
    }
    const json r = json::parse(rotor_out);
    const json c = json::parse(random_out);

    const double nu = number(r, "nu");
    const double nu_c = number(c, "nu");
    verdict(3, within(nu, 0.30, 0.37) && within(nu_c, 0.48, 0.52),
            "displacement exponent: rotor nu = " + fmt(nu) + " in [0.30, 0.37], random nu = " + fmt(nu_c) +
                " in [0.48, 0.52]");

    // Synthetic spiral r = 1.85 theta with 10% radial noise.
    Rng rng(5);
    std::vector<std::vector<analysis::SpiralPoint>> synthetic;
    for (int i = 0; i < 100; ++i) {
        std::vector<analysis::Vec2> pts;
        for (int k = 1; k <= 3000; ++k) {
            const double theta = 0.05 * k;
            const double rad = 1.85 * theta * (1 + 0.1 * (rng.uniform01() - 0.5));
            pts.push_back({rad * std::cos(theta), -rad * std::sin(theta)});
        }
        synthetic.push_back(analysis::unwrap_points(pts));
    }
    const double recovered = analysis::rms_ratio(synthetic).fit.b_est;
    const double ratio = number(r, "ratio_c");
    verdict(4, within(ratio, 1.70, 2.00) && std::abs(recovered / 1.85 - 1) <= 0.02,
            "spiral RMS ratio c = " + fmt(ratio) + " in [1.70, 2.00]; synthetic 1.85 recovered as " + fmt(recovered));

    const double gap = number(r, "gap_c");
    verdict(5, within(gap, 6.5, 7.1), "inter-label gap asymptote c = " + fmt(gap) + " in [6.5, 7.1]");

    const double peak = number(r, "rho_peak");
    const double plateau = number(r, "rho_plateau");
    double far = std::nan("");
    if (r["details"].contains("density"))
        far = r["details"]["density"].value("far_max", std::nan(""));
    verdict(6, within(peak, 0.32, 0.42) && within(plateau, 0.11, 0.15) && far < 0.01,
            "label density: peak " + fmt(peak) + " in [0.32, 0.42], plateau " + fmt(plateau) +
                " in [0.11, 0.15], max beyond 2 T^(1/3) " + fmt(far) + " < 0.01");

    const double slope = number(r, "loop_slope");
    verdict(7, within(slope, 1.7, 2.3), "loop growth slope = " + fmt(slope) + " in [1.7, 2.3]");

    const json& k = r["counters"];
    const auto completed = k.value("episodes_completed", std::int64_t{-1});
    const auto irreversible = k.value("irreversible_episodes", std::int64_t{-1});
    verdict(8, irreversible == 0 && completed > 0,
            "weak reversibility: " + std::to_string(irreversible) + " of " + std::to_string(completed) +
                " completed episodes not exiting at v_k with the contour reversed (exit elsewhere " +
                std::to_string(k.value("exit_vertex_violations", std::int64_t{-1})) + ", not reversed " +
                std::to_string(k.value("reversal_violations", std::int64_t{-1})) + ")");
    info("episodes leaving the region before standing on v_k with the contour reversed: " +
         std::to_string(k.value("unreturned_exits", std::int64_t{-1})) + "; departures from v_k blocked by the region: " +
         std::to_string(k.value("blocked_exits", std::int64_t{-1})));
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app("Acceptance run");
    int walks = 200;
    std::int64_t steps = 10'000'000;
    unsigned threads = std::max(1U, std::thread::hardware_concurrency());
    fs::path work = fs::temp_directory_path() / "rotorwalk_acceptance";
    app.add_option("--walks", walks, "Walks per mode");
    app.add_option("--steps", steps, "Steps per walk");
    app.add_option("--threads", threads, "Worker threads");
    app.add_option("--work", work, "Scratch directory (wiped)");
    CLI11_PARSE(app, argc, argv);

    fs::remove_all(work);
    fs::create_directories(work);
    Stopwatch total;
    theorem_suites(threads);
    euler_tours();
    ensemble(work, walks, steps, threads);
    oracles();
    reproducibility(work);
    fs::remove_all(work);
    info(std::to_string(10 - failed) + "/10 criteria passed in " + fmt(total.seconds(), 4) + " s");
    return failed == 0 ? 0 : 1;
}
