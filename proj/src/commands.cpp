#include "rotor/commands.hpp"

#include "rotor/digest.hpp"
#include "rotor/ensemble.hpp"
#include "rotor/graph.hpp"
#include "rotor/parallel.hpp"
#include "rotor/random.hpp"
#include "rotor/suites.hpp"
#include "rotor/trace_io.hpp"
#include "rotor/walker.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <sstream>

#ifndef ROTORWALK_VERSION
#define ROTORWALK_VERSION "unknown"
#endif

namespace rotor::cli {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

class RunError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string utc_now()
{
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw RunError("cannot read " + p.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file_atomic(const fs::path& p, const std::string& data)
{
    const fs::path tmp = p.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out || !(out << data) || !out.flush())
            throw RunError("cannot write " + tmp.string());
    }
    fs::rename(tmp, p);
}

void ensure_directory(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw RunError("cannot create directory " + dir.string());
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
    std::int64_t steps = 100000;
    std::uint64_t seed = 1;
    std::size_t ensemble = 1;
    std::string mode = "rotor";
    int max_depth = 0;
    std::int64_t checkpoint_every = 0;
    unsigned threads = 1;
    std::string out;
    bool resume = false;
    std::string from_manifest;
    std::int64_t halt_at = 0;
};

lattice::WalkMode parse_mode(const std::string& m)
{
    return m == "random" ? lattice::WalkMode::Random : lattice::WalkMode::Rotor;
}

ordered_json config_json(const SimulateOptions& o)
{
    ordered_json c;
    c["steps"] = o.steps;
    c["seed"] = o.seed;
    c["ensemble"] = o.ensemble;
    c["mode"] = o.mode;
    c["max_depth"] = o.max_depth;
    c["checkpoint_every"] = o.checkpoint_every;
    return c;
}

void apply_manifest(SimulateOptions& o, const fs::path& manifest)
{
    try {
        const auto j = nlohmann::json::parse(read_file(manifest));
        const auto& c = j.at("config");
        o.steps = c.at("steps").get<std::int64_t>();
        o.seed = c.at("seed").get<std::uint64_t>();
        o.ensemble = c.at("ensemble").get<std::size_t>();
        o.mode = c.at("mode").get<std::string>();
        o.max_depth = c.at("max_depth").get<int>();
        o.checkpoint_every = c.at("checkpoint_every").get<std::int64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw RunError("bad manifest " + manifest.string() + ": " + e.what());
    }
}

lattice::WalkConfig walk_config(const SimulateOptions& o, std::size_t i)
{
    lattice::WalkConfig c;
    c.seed = derive_seed(o.seed, i);
    c.steps = o.steps;
    c.mode = parse_mode(o.mode);
    c.max_depth = o.max_depth;
    c.detect = c.mode == lattice::WalkMode::Rotor;
    return c;
}

fs::path checkpoint_path(const fs::path& dir, std::size_t i)
{
    return dir / (walk_stem(i) + ".rrwk");
}

// Returns false when the walk was halted before completion.
bool run_one_walk(const SimulateOptions& o, const fs::path& dir, std::size_t i, std::ostream& log,
                  std::mutex& log_mutex)
{
    const lattice::WalkConfig config = walk_config(o, i);
    const fs::path ckpt = checkpoint_path(dir, i);
    const auto files = lattice::trace_paths(dir, walk_stem(i));

    std::optional<lattice::LatticeWalker> walker;
    if (o.resume && fs::exists(ckpt)) {
        std::ifstream in(ckpt, std::ios::binary);
        walker.emplace(lattice::LatticeWalker::load(in));
        const auto& c = walker->config();
        if (c.seed != config.seed || c.steps != config.steps || c.mode != config.mode ||
            c.max_depth != config.max_depth)
            throw RunError("checkpoint " + ckpt.string() + " does not match the requested run");
    } else if (o.resume && fs::exists(files.summary)) {
        const auto s = lattice::parse_summary(read_file(files.summary));
        if (s.seed != config.seed || s.steps != config.steps || s.mode != config.mode ||
            s.max_depth != config.max_depth)
            throw RunError("existing output " + files.summary.string() + " does not match the requested run");
        return true;
    }
    if (!walker)
        walker.emplace(config);

    const std::int64_t stride = o.checkpoint_every > 0 ? o.checkpoint_every : o.steps;
    while (!walker->done()) {
        const std::int64_t next = (walker->time() / stride + 1) * stride;
        const std::int64_t target = o.halt_at > 0 ? std::min(next, o.halt_at) : next;
        walker->advance_to(target);
        if (o.checkpoint_every > 0 && !walker->done()) {
            std::ostringstream buf;
            walker->save(buf);
            write_file_atomic(ckpt, buf.str());
        }
        if (o.halt_at > 0 && walker->time() >= o.halt_at && !walker->done())
            return false;
    }
    const lattice::WalkTrace trace = walker->trace();
    lattice::write_trace(dir, walk_stem(i), trace);
    std::error_code ec;
    fs::remove(ckpt, ec);
    std::lock_guard lock(log_mutex);
    log << "walk " << i << " seed " << config.seed << " done: labels " << trace.labels.size() << " r2 "
        << trace.final_position.x * trace.final_position.x + trace.final_position.y * trace.final_position.y
        << '\n';
    return true;
}

std::map<std::string, std::string> output_digests(const fs::path& dir, std::size_t walks)
{
    std::map<std::string, std::string> digests;
    for (std::size_t i = 0; i < walks; ++i) {
        const auto f = lattice::trace_paths(dir, walk_stem(i));
        for (const fs::path& p : {f.events, f.samples, f.summary})
            digests[p.filename().string()] = sha256_file(p);
    }
    return digests;
}

int cmd_simulate(SimulateOptions o, const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::map<std::string, std::string> expected;
    if (!o.from_manifest.empty()) {
        apply_manifest(o, o.from_manifest);
        const auto j = nlohmann::json::parse(read_file(o.from_manifest));
        for (const auto& [name, digest] : j.at("files").items())
            expected[name] = digest.get<std::string>();
    }
    if (o.steps < 1)
        throw RunError("--steps must be at least 1");
    if (o.ensemble < 1)
        throw RunError("--ensemble must be at least 1");
    const fs::path dir = o.out;
    ensure_directory(dir);

    const std::string started = utc_now();
    std::mutex log_mutex;
    std::vector<char> finished(o.ensemble, 0);
    parallel_for(o.ensemble, o.threads,
                 [&](std::size_t i) { finished[i] = run_one_walk(o, dir, i, err, log_mutex) ? 1 : 0; });
    if (std::find(finished.begin(), finished.end(), 0) != finished.end()) {
        out << "halted at step " << o.halt_at << "; rerun with --resume to finish\n";
        return kOk;
    }

    const auto digests = output_digests(dir, o.ensemble);
    ordered_json m;
    m["format"] = "rotorwalk-manifest/1";
    m["command_line"] = args;
    m["config"] = config_json(o);
    m["master_seed"] = o.seed;
    m["seed_split"] = "seed_i = mix64(mix64(master_seed) + i * 0xd1b54a32d192ed03), "
                      "mix64 = splitmix64 finalizer";
    ordered_json walks = ordered_json::array();
    for (std::size_t i = 0; i < o.ensemble; ++i)
        walks.push_back({{"index", i}, {"seed", derive_seed(o.seed, i)}, {"stem", walk_stem(i)}});
    m["walks"] = walks;
    m["code_version"] = ROTORWALK_VERSION;
    m["started"] = started;
    m["finished"] = utc_now();
    m["files"] = digests;
    write_file_atomic(dir / kManifestName, m.dump(2) + "\n");
    out << "wrote " << o.ensemble << " walk(s) to " << dir.string() << '\n';

    if (!expected.empty()) {
        int mismatches = 0;
        for (const auto& [name, digest] : expected) {
            const auto it = digests.find(name);
            if (it == digests.end() || it->second != digest) {
                err << "digest mismatch: " << name << '\n';
                ++mismatches;
            }
        }
        if (digests.size() != expected.size()) {
            err << "file set differs from the manifest\n";
            ++mismatches;
        }
        out << (mismatches ? "reproduction FAILED" : "reproduction OK") << ": " << expected.size()
            << " files compared\n";
        return mismatches ? kFailure : kOk;
    }
    return kOk;
}

// ------------------------------------------------------------------ verify

struct VerifyOptions {
    std::string suite;
    int trials = 500;
    std::uint64_t seed = 1;
    int max_width = 14;
    int max_height = 14;
    unsigned threads = 1;
    std::string report;
    std::string counterexamples = "counterexamples";
    std::optional<std::uint64_t> replay;
};

std::string hex_seed(std::uint64_t s)
{
    std::ostringstream o;
    o << std::hex << std::setw(16) << std::setfill('0') << s;
    return o.str();
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err)
{
    std::vector<Suite> suites;
    if (o.suite == "all") {
        suites = all_suites();
    } else if (const auto s = parse_suite(o.suite)) {
        suites.push_back(*s);
    } else {
        err << "unknown suite '" << o.suite << "'; expected one of:";
        for (Suite s : all_suites())
            err << ' ' << suite_name(s);
        err << " all\n";
        return kUsage;
    }
    if (o.trials < 1 || o.max_width < 2 || o.max_height < 2) {
        err << "--trials must be positive and grid bounds at least 2\n";
        return kUsage;
    }

    ordered_json reports = ordered_json::array();
    int total_failures = 0;
    for (Suite s : suites) {
        SuiteResult result;
        if (o.replay) {
            result.suite = s;
            result.trials = 1;
            result.seeds = {*o.replay};
            TheoremReport r = run_trial(s, *o.replay, o.max_width, o.max_height);
            if (!r.passed())
                result.failed.push_back(std::move(r));
        } else {
            result = run_suite(s, {o.trials, o.seed, o.max_width, o.max_height, o.threads});
        }
        ordered_json j;
        j["suite"] = suite_name(s);
        j["trials"] = result.trials;
        j["failures"] = result.failures();
        ordered_json seeds = ordered_json::array();
        ordered_json paths = ordered_json::array();
        for (const auto& f : result.failed) {
            seeds.push_back(f.seed);
            ensure_directory(o.counterexamples);
            const fs::path p = fs::path(o.counterexamples) / (std::string(suite_name(s)) + "_" + hex_seed(f.seed) + ".txt");
            write_file_atomic(p, f.summary() + "\n" + f.counterexample);
            paths.push_back(p.string());
        }
        j["seeds"] = seeds;
        j["counterexamples"] = paths;
        ordered_json mult = ordered_json::object();
        for (const auto& [k, v] : result.turn_multiplicity)
            mult[std::to_string(k)] = v;
        j["turn_multiplicity"] = mult;
        reports.push_back(j);
        total_failures += result.failures();
        out << suite_name(s) << ": " << result.trials << " trials, " << result.failures() << " failures\n";
        for (const auto& f : result.failed)
            out << "  " << f.summary() << '\n';
    }
    const ordered_json report = reports.size() == 1 ? reports[0] : reports;
    if (!o.report.empty())
        write_file_atomic(o.report, report.dump(2) + "\n");
    return total_failures ? kFailure : kOk;
}

// ----------------------------------------------------------------- analyze

struct AnalyzeOptions {
    std::string input;
    std::string report;
    std::string tables;
    bool include_nested = false;
};

ordered_json opt(const std::optional<double>& v)
{
    return v && std::isfinite(*v) ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json headline(const analysis::EnsembleReport& r)
{
    ordered_json j;
    j["nu"] = opt(r.nu ? std::optional(r.nu->nu) : std::nullopt);
    j["ratio_c"] = opt(r.rms ? std::optional(r.rms->fit.b_est) : std::nullopt);
    j["gap_c"] = opt(r.gaps ? std::optional(r.gaps->asymptote) : std::nullopt);
    j["rho_peak"] = opt(r.density ? std::optional(r.density->peak) : std::nullopt);
    j["rho_plateau"] = opt(r.density ? std::optional(r.density->plateau) : std::nullopt);
    j["loop_slope"] = opt(r.loop_fit ? std::optional(r.loop_fit->slope) : std::nullopt);
    return j;
}

ordered_json details(const analysis::EnsembleReport& r)
{
    ordered_json j;
    j["max_depth"] = r.max_depth;
    j["labels"] = r.labels;
    j["origin_labels"] = r.origin_labels;
    if (r.nu)
        j["nu_fit"] = {{"t_lo", r.nu->t_lo}, {"t_hi", r.nu->t_hi}, {"residual", r.nu->residual}, {"points", r.nu->points}};
    if (r.rms)
        j["ratio_fit"] = {{"c", r.rms->fit.b_est}, {"A", r.rms->fit.correction}, {"n_lo", r.rms->fit.n_lo},
                          {"n_hi", r.rms->fit.n_hi}, {"late_slope", r.rms->late_slope},
                          {"low_confidence", r.rms->fit.low_confidence}};
    if (r.mean)
        j["mean_ratio_fit"] = {{"c", r.mean->fit.b_est}, {"A", r.mean->fit.correction}, {"a", r.mean->fit.a_est},
                               {"late_slope", r.mean->late_slope}};
    if (r.gaps)
        j["gap_fit"] = {{"c", r.gaps->asymptote}, {"A", r.gaps->correction}, {"n_lo", r.gaps->n_lo},
                        {"n_hi", r.gaps->n_hi}};
    if (r.density)
        j["density"] = {{"bin_width", r.density->bin_width}, {"plateau_lo", r.density->plateau_lo},
                        {"plateau_hi", r.density->plateau_hi}, {"falloff_radius", r.density->falloff_radius},
                        {"far_radius", r.density->far_radius}, {"far_max", r.density->far_max}};
    if (r.loop_fit)
        j["loop_fit"] = {{"slope", r.loop_fit->slope}, {"intercept", r.loop_fit->intercept}, {"loops", r.loops.size()}};
    j["notes"] = r.notes;
    return j;
}

template <typename Row>
void write_table(const fs::path& p, const std::string& header, std::size_t rows, Row&& row)
{
    std::ostringstream s;
    s << std::setprecision(10) << header << '\n';
    for (std::size_t i = 0; i < rows; ++i) {
        row(s, i);
        s << '\n';
    }
    write_file_atomic(p, s.str());
}

void write_tables(const fs::path& dir, const analysis::EnsembleReport& r)
{
    ensure_directory(dir);
    write_table(dir / "msd.csv", "t,mean_r2", r.msd.t.size(),
                [&](std::ostream& s, std::size_t i) { s << r.msd.t[i] << ',' << r.msd.mean_r2[i]; });
    if (r.rms && r.mean)
        write_table(dir / "ratio.csv", "n,rms_ratio,mean_ratio", r.rms->n.size(), [&](std::ostream& s, std::size_t i) {
            s << r.rms->n[i] << ',' << r.rms->ratio[i] << ',' << r.mean->ratio[i];
        });
    write_table(dir / "ratio_theta.csv", "theta,mean_ratio,count", r.by_theta.theta_mid.size(),
                [&](std::ostream& s, std::size_t i) {
                    s << r.by_theta.theta_mid[i] << ',' << r.by_theta.ratio[i] << ',' << r.by_theta.count[i];
                });
    if (r.gaps)
        write_table(dir / "gap.csv", "n,mean_gap", r.gaps->n.size(),
                    [&](std::ostream& s, std::size_t i) { s << r.gaps->n[i] << ',' << r.gaps->mean_gap[i]; });
    if (r.density)
        write_table(dir / "density.csv", "r_lo,r_hi,sites,density", r.density->density.size(),
                    [&](std::ostream& s, std::size_t i) {
                        s << r.density->edges[i] << ',' << r.density->edges[i + 1] << ',' << r.density->sites[i] << ','
                          << r.density->density[i];
                    });
    write_table(dir / "loops.csv", "k,k_end,radius,delta_r,duration,area", r.loops.size(),
                [&](std::ostream& s, std::size_t i) {
                    const auto& l = r.loops[i];
                    s << l.k << ',' << l.k_end << ',' << l.radius << ',' << l.delta_r << ',' << l.duration << ',' << l.area;
                });
}

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out, std::ostream& err)
{
    const fs::path dir = o.input;
    const fs::path manifest_path = dir / kManifestName;
    if (!fs::exists(manifest_path))
        throw RunError("no " + std::string(kManifestName) + " in " + dir.string());
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(read_file(manifest_path));
    } catch (const nlohmann::json::exception& e) {
        throw RunError("bad manifest: " + std::string(e.what()));
    }
    int bad = 0;
    for (const auto& [name, digest] : manifest.at("files").items()) {
        const fs::path p = dir / name;
        if (!fs::exists(p)) {
            err << "missing trace file: " << name << '\n';
            ++bad;
        } else if (sha256_file(p) != digest.get<std::string>()) {
            err << "digest mismatch: " << name << '\n';
            ++bad;
        }
    }
    if (bad)
        throw RunError(std::to_string(bad) + " trace file(s) failed the manifest digest check");

    const auto& config = manifest.at("config");
    const auto steps = config.at("steps").get<std::int64_t>();
    const auto mode = config.at("mode").get<std::string>();
    analysis::EnsembleAnalyzer top(steps, 0);
    analysis::EnsembleAnalyzer all(steps, std::numeric_limits<int>::max());
    for (const auto& w : manifest.at("walks")) {
        const auto files = lattice::trace_paths(dir, w.at("stem").get<std::string>());
        std::ifstream events(files.events);
        std::ifstream samples(files.samples);
        const auto labels = lattice::read_events(events);
        const auto s = lattice::read_samples(samples);
        const auto summary = lattice::parse_summary(read_file(files.summary));
        top.add(labels, s, summary.counters);
        all.add(labels, s, summary.counters);
    }
    const auto top_report = top.result();
    const auto all_report = all.result();
    const auto& main_report = o.include_nested ? all_report : top_report;

    ordered_json report;
    report["mode"] = mode;
    report["walks"] = main_report.walks;
    report["steps"] = steps;
    report["nesting"] = o.include_nested ? "all_depths" : "top_level";
    const ordered_json head = headline(main_report);
    for (const auto& [k, v] : head.items())
        report[k] = v;
    report["details"] = details(main_report);
    ordered_json variants;
    variants["top_level"] = headline(top_report);
    variants["top_level"]["labels"] = top_report.labels;
    variants["all_depths"] = headline(all_report);
    variants["all_depths"]["labels"] = all_report.labels;
    report["variants"] = variants;
    ordered_json counters;
    for (const auto& f : lattice::counter_fields())
        counters[f.name] = main_report.totals.*f.member;
    report["counters"] = counters;

    const std::string text = report.dump(2) + "\n";
    if (o.report.empty())
        out << text;
    else
        write_file_atomic(o.report, text);
    if (!o.tables.empty())
        write_tables(o.tables, main_report);
    return kOk;
}

// Values from the file fill only options left unset on the command line.
void apply_config_file(CLI::App& sub, const std::string& path)
{
    for (const CLI::ConfigItem& item : CLI::ConfigTOML().from_file(path)) {
        if (item.name == "++" || item.name == "--")
            continue;
        CLI::Option* opt = item.parents.empty() ? sub.get_option_no_throw("--" + item.name) : nullptr;
        if (!opt || item.name == "config")
            throw CLI::ValidationError("--config", "unknown key '" + item.fullname() + "' in " + path);
        if (opt->count() > 0)
            continue;
        opt->add_result(item.inputs);
        opt->run_callback();
    }
}

} // namespace

std::string walk_stem(std::size_t index)
{
    std::ostringstream s;
    s << "walk_" << std::setw(4) << std::setfill('0') << index;
    return s.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Rotor-router walk simulator and verification toolkit", "rotorwalk"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ROTORWALK_VERSION);

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "Run an ensemble of lattice walks");
    std::string config_file;
    simulate->add_option("--config", config_file, "Flat key=value file; command-line flags take precedence")
        ->check(CLI::ExistingFile);
    simulate->add_option("--steps", sim.steps, "Steps per walk")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim.seed, "Master seed");
    simulate->add_option("--ensemble", sim.ensemble, "Number of walks")->check(CLI::PositiveNumber);
    simulate->add_option("--mode", sim.mode, "Walk mode")->check(CLI::IsMember({"rotor", "random"}));
    simulate->add_option("--max-depth", sim.max_depth, "Open episodes below which contours are still detected")
        ->check(CLI::NonNegativeNumber);
    simulate->add_option("--out", sim.out, "Output directory")->required();
    simulate->add_option("--checkpoint-every", sim.checkpoint_every, "Checkpoint interval in steps, 0 = off")
        ->check(CLI::NonNegativeNumber);
    simulate->add_option("--threads", sim.threads, "Walks run concurrently")->check(CLI::PositiveNumber);
    simulate->add_flag("--resume", sim.resume, "Continue from checkpoints and completed walks in --out");
    simulate->add_option("--from-manifest", sim.from_manifest,
                         "Rerun the configuration of a manifest and compare output digests")
        ->check(CLI::ExistingFile);
    simulate->add_option("--halt-at", sim.halt_at, "Stop every walk at this step after checkpointing")
        ->check(CLI::NonNegativeNumber)
        ->group("");

    VerifyOptions ver;
    std::uint64_t replay = 0;
    auto* verify = app.add_subcommand("verify", "Run a randomized theorem suite");
    verify->add_option("--suite", ver.suite, "Suite name or 'all'")->required();
    verify->add_option("--trials", ver.trials, "Trials per suite");
    verify->add_option("--seed", ver.seed, "Master seed");
    verify->add_option("--max-width", ver.max_width, "Largest grid width");
    verify->add_option("--max-height", ver.max_height, "Largest grid height");
    verify
        ->add_option_function<std::string>(
            "--grid",
            [&ver](const std::string& v) {
                int w = 0;
                int h = 0;
                char x = 0;
                char extra = 0;
                if (std::sscanf(v.c_str(), "%d%c%d%c", &w, &x, &h, &extra) != 3 || (x != 'x' && x != 'X') || w < 1 ||
                    h < 1)
                    throw CLI::ValidationError("--grid", "expected WxH, got " + v);
                ver.max_width = w;
                ver.max_height = h;
            },
            "Largest grid as WxH")
        ->excludes("--max-width")
        ->excludes("--max-height");
    verify->add_option("--threads", ver.threads, "Worker threads")->check(CLI::PositiveNumber);
    verify->add_option("--report", ver.report, "JSON report path");
    verify->add_option("--counterexamples", ver.counterexamples, "Directory for failing instances");
    auto* replay_opt = verify->add_option("--replay", replay, "Run the single trial with this trial seed");

    AnalyzeOptions ana;
    auto* analyze = app.add_subcommand("analyze", "Ensemble statistics of a simulate output directory");
    analyze->add_option("--input", ana.input, "Directory written by simulate")->required();
    analyze->add_option("--report", ana.report, "Summary JSON path (default: stdout)");
    analyze->add_option("--tables", ana.tables, "Directory for CSV tables");
    analyze->add_flag("--include-nested", ana.include_nested, "Headline statistics over labels of every depth");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty())
        reversed.pop_back();
    try {
        app.parse(reversed);
        if (!config_file.empty())
            apply_config_file(*simulate, config_file);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*simulate)
            return cmd_simulate(sim, args, out, err);
        if (*verify) {
            if (*replay_opt)
                ver.replay = replay;
            return cmd_verify(ver, out, err);
        }
        return cmd_analyze(ana, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

} // namespace rotor::cli
