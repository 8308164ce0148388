#pragma once

#include "rotor/geometry.hpp"
#include "rotor/lattice.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace rotor::lattice {

enum class WalkMode { Rotor, Random };

const char* to_string(WalkMode m);

/// Label s_k: the vertex v_k where the k-th clockwise contour through the chip
/// appeared, with the step that created it and the step that left it.
struct LabelEvent {
    std::int64_t k = 0;
    Point v;
    std::int64_t t_in = 0;
    std::int64_t t_out = -1;    // -1 while the episode is open
    std::int64_t t_return = -1; // chip back on v_k with the contour reversed
    std::int64_t length = 0;
    std::int64_t area = 0;
    int depth = 0;
    std::vector<Point> contour; // chain order from v_k, only with keep_contours

    friend bool operator==(const LabelEvent&, const LabelEvent&) = default;
};

struct Sample {
    std::int64_t t = 0;
    std::int64_t x = 0;
    std::int64_t y = 0;

    std::int64_t r2() const { return x * x + y * y; }
    friend bool operator==(const Sample&, const Sample&) = default;
};

struct WalkCounters {
    std::int64_t steps = 0;
    std::int64_t detections = 0;
    std::int64_t clockwise = 0;
    std::int64_t anticlockwise = 0;
    std::int64_t dimers = 0;
    std::int64_t no_cycle = 0;
    std::int64_t chain_total = 0;
    std::int64_t chain_max = 0;
    std::int64_t episodes_completed = 0;
    std::int64_t episodes_open = 0;
    std::int64_t nested_events = 0;
    /// First step outside the closed region did not depart from v_k.
    std::int64_t exit_vertex_violations = 0;
    /// Contour rotors not all pointing backwards when that step was taken.
    std::int64_t reversal_violations = 0;
    /// Left the closed region before ever standing on v_k with the whole
    /// contour reversed.
    std::int64_t unreturned_exits = 0;
    /// Exit-vertex violations at a v_k where every direction between the
    /// backward and forward contour edges stays in the closed region.
    std::int64_t blocked_exits = 0;
    /// Episodes with an exit-vertex or a reversal violation, or both.
    std::int64_t irreversible_episodes = 0;
    std::int64_t containment_violations = 0;
    std::int64_t max_depth_seen = 0;

    friend bool operator==(const WalkCounters&, const WalkCounters&) = default;
};

/// Field table for serialization, in a fixed order.
struct CounterField {
    const char* name;
    std::int64_t WalkCounters::*member;
};
const std::vector<CounterField>& counter_fields();

struct WalkConfig {
    std::uint64_t seed = 0;
    std::int64_t steps = 0;
    WalkMode mode = WalkMode::Rotor;
    /// Contours are detected only while at most this many episodes are open;
    /// 0 records top-level labels only.
    int max_depth = 0;
    std::int64_t chain_cap = 1'000'000;
    bool detect = true;
    bool keep_contours = false;
    std::vector<std::int64_t> schedule; // empty: geometric_schedule(steps)
    std::optional<TorusSize> torus;     // rotor mode only, detection off

    friend bool operator==(const WalkConfig&, const WalkConfig&) = default;
};

struct WalkTrace {
    WalkConfig config;
    std::vector<LabelEvent> labels; // completed episodes, in order of t_in
    std::vector<Sample> samples;
    WalkCounters counters;
    Point final_position;
};

/// Times ceil(r^j), j = 0, 1, ..., deduplicated, up to T; T is always included.
std::vector<std::int64_t> geometric_schedule(std::int64_t T, double ratio = 1.05);

class LatticeWalker {
public:
    explicit LatticeWalker(WalkConfig config);

    const WalkConfig& config() const { return config_; }
    std::int64_t time() const { return time_; }
    bool done() const { return time_ >= config_.steps; }
    Point chip() const { return chip_; }
    const WalkCounters& counters() const { return counters_; }
    LatticeEnvironment& environment() { return env_; }
    std::size_t open_episodes() const { return open_.size(); }

    /// Runs until time() == min(t, steps).
    void advance_to(std::int64_t t);
    void step();

    /// Completed labels and samples so far; open episodes are counted only.
    WalkTrace trace() const;

    /// RRWK1 checkpoint, see checkpoint.cpp for the layout.
    void save(std::ostream& out) const;
    static LatticeWalker load(std::istream& in);

private:
    struct Episode {
        std::size_t label = 0;
        std::vector<Point> contour;
        LatticeRegion region;
        std::unordered_map<std::uint64_t, std::uint32_t> index; // point -> contour position
        std::size_t reversed = 0;

        void track(Point from, int before, int after);
    };

    void rotor_step();
    void random_step();
    void open_episode(Point at);
    void close_episode(Point from, int from_dir_before);

    WalkConfig config_;
    LatticeEnvironment env_;
    std::uint64_t random_key_ = 0;
    std::int64_t time_ = 0;
    Point chip_{};
    std::size_t next_sample_ = 0;
    std::vector<LabelEvent> labels_;
    std::vector<Episode> open_;
    std::vector<Sample> samples_;
    WalkCounters counters_;
    std::vector<Point> buffer_;
};

WalkTrace run_walk(std::uint64_t seed, std::int64_t T, std::vector<std::int64_t> schedule = {}, int max_depth = 0);
WalkTrace run_random_walk_control(std::uint64_t seed, std::int64_t T, std::vector<std::int64_t> schedule = {});

class CheckpointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rotor::lattice
