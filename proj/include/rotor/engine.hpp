#pragma once

#include "rotor/graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

namespace rotor {

class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class RecurrenceBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Per-vertex tallies. `turns[v]` counts rotor increments at v (departures),
/// `arrivals[v]` counts chip arrivals. Both sum to the number of steps.
struct VisitCounts {
    std::vector<std::int64_t> arrivals;
    std::vector<std::int64_t> turns;

    explicit VisitCounts(std::size_t n = 0) : arrivals(n, 0), turns(n, 0) {}
};

struct StepRecord {
    std::int64_t time = 0; // 1-based index of the step
    Vertex from = 0;
    Vertex to = 0;
    std::int32_t edge_index = 0;

    friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

/// One rotor-router step in place: advance the rotor at the chip, then move
/// the chip along it.
inline StepRecord advance(const Digraph& g, WalkState& s, std::int64_t time = 0)
{
    const Vertex from = s.chip;
    auto& a = s.rotors.alpha[from];
    if (++a == g.degree(from))
        a = 0;
    s.chip = g.target(from, a);
    return {time, from, s.chip, a};
}

WalkState step(const Digraph& g, WalkState s);

struct RunResult {
    WalkState state;
    VisitCounts counts;
    std::vector<StepRecord> trace;
};

RunResult run(const Digraph& g, WalkState s, std::int64_t steps, bool record = false);

/// Outcome of cycle detection on the sequence of full states.
/// The start state is recurrent iff transient_length == 0, in which case
/// `period` is its first return time.
struct Recurrence {
    std::int64_t transient_length = 0;
    std::int64_t period = 0;
    WalkState limit_state; // first state on the limit cycle
    std::int64_t steps_used = 0;

    bool recurrent() const { return transient_length == 0; }
};

std::int64_t default_recurrence_budget(const Digraph& g);

Recurrence detect_recurrence(const Digraph& g, const WalkState& s, std::int64_t max_steps);
inline Recurrence detect_recurrence(const Digraph& g, const WalkState& s)
{
    return detect_recurrence(g, s, default_recurrence_budget(g));
}

struct EulerTourReport {
    std::int64_t steps = 0;
    bool each_edge_once = false;
    bool returned = false;
    bool one_full_turn = false;

    bool passed() const { return each_edge_once && returned && one_full_turn; }
};

/// Runs |E| steps from a unicycle on an Eulerian digraph and checks the tour.
EulerTourReport verify_euler_tour(const Digraph& g, const WalkState& s);

/// `t from to edge_index`, tab separated, one record per line.
void write_trajectory(std::ostream& out, std::span<const StepRecord> records);
std::vector<StepRecord> read_trajectory(std::istream& in);

} // namespace rotor
