#include "rotor/engine.hpp"

#include "rotor/random.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace rotor {

namespace {

// Order-independent state hash, updated in O(1) per step.
class Fingerprint {
public:
    Fingerprint(const Digraph& g, const WalkState& s) : state_(s)
    {
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            hash_ += rotor_term(v, s.rotors.alpha[v]);
        hash_ += chip_term(s.chip);
    }

    void advance(const Digraph& g)
    {
        const Vertex from = state_.chip;
        const auto old = state_.rotors.alpha[from];
        rotor::advance(g, state_);
        hash_ += rotor_term(from, state_.rotors.alpha[from]) - rotor_term(from, old);
        hash_ += chip_term(state_.chip) - chip_term(from);
    }

    bool same_as(const Fingerprint& other) const { return hash_ == other.hash_ && state_ == other.state_; }
    const WalkState& state() const { return state_; }

private:
    static std::uint64_t rotor_term(Vertex v, std::int32_t a)
    {
        return mix64((static_cast<std::uint64_t>(v) << 32) ^ static_cast<std::uint32_t>(a));
    }
    static std::uint64_t chip_term(Vertex v) { return mix64(0xc2b2ae3d27d4eb4fULL ^ static_cast<std::uint64_t>(v)); }

    WalkState state_;
    std::uint64_t hash_ = 0;
};

} // namespace

WalkState step(const Digraph& g, WalkState s)
{
    advance(g, s);
    return s;
}

RunResult run(const Digraph& g, WalkState s, std::int64_t steps, bool record)
{
    if (steps < 0)
        throw PreconditionError("run: negative step count");
    RunResult result{std::move(s), VisitCounts(static_cast<std::size_t>(g.vertex_count())), {}};
    if (record)
        result.trace.reserve(static_cast<std::size_t>(steps));
    for (std::int64_t t = 1; t <= steps; ++t) {
        const StepRecord r = advance(g, result.state, t);
        ++result.counts.turns[r.from];
        ++result.counts.arrivals[r.to];
        if (record)
            result.trace.push_back(r);
    }
    return result;
}

std::int64_t default_recurrence_budget(const Digraph& g)
{
    return 4 * g.edge_count() * g.vertex_count();
}

// Brent's cycle finding: the tortoise jumps to the hare at powers of two, so
// only two states are held regardless of the transient length.
Recurrence detect_recurrence(const Digraph& g, const WalkState& s, std::int64_t max_steps)
{
    if (max_steps < 1)
        throw PreconditionError("detect_recurrence: max_steps must be positive");
    validate(g, s);
    std::int64_t used = 0;
    auto tick = [&] {
        if (++used > max_steps)
            throw RecurrenceBudgetExceeded("detect_recurrence: no limit cycle within " + std::to_string(max_steps) +
                                           " steps");
    };

    std::int64_t power = 1;
    std::int64_t period = 1;
    Fingerprint tortoise(g, s);
    Fingerprint hare = tortoise;
    hare.advance(g);
    tick();
    while (!tortoise.same_as(hare)) {
        if (power == period) {
            tortoise = hare;
            power *= 2;
            period = 0;
        }
        hare.advance(g);
        tick();
        ++period;
    }

    Fingerprint lead(g, s);
    for (std::int64_t i = 0; i < period; ++i) {
        lead.advance(g);
        tick();
    }
    Fingerprint trail(g, s);
    std::int64_t transient = 0;
    while (!trail.same_as(lead)) {
        trail.advance(g);
        lead.advance(g);
        tick();
        ++transient;
    }
    return {transient, period, trail.state(), used};
}

EulerTourReport verify_euler_tour(const Digraph& g, const WalkState& s)
{
    validate(g, s);
    if (!is_eulerian(g))
        throw PreconditionError("verify_euler_tour: graph is not Eulerian");
    if (!is_unicycle(g, s))
        throw PreconditionError("verify_euler_tour: state is not a unicycle");

    EulerTourReport report;
    report.steps = g.edge_count();
    // Edge ids follow the CSR layout: offset of v plus rotor index.
    std::vector<std::int64_t> first_edge(g.vertex_count() + 1, 0);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        first_edge[v + 1] = first_edge[v] + g.degree(v);
    std::vector<std::int32_t> used(static_cast<std::size_t>(g.edge_count()), 0);

    WalkState cur = s;
    VisitCounts counts(static_cast<std::size_t>(g.vertex_count()));
    for (std::int64_t t = 1; t <= report.steps; ++t) {
        const StepRecord r = advance(g, cur, t);
        ++used[static_cast<std::size_t>(first_edge[r.from] + r.edge_index)];
        ++counts.turns[r.from];
        ++counts.arrivals[r.to];
    }
    report.each_edge_once = std::all_of(used.begin(), used.end(), [](std::int32_t u) { return u == 1; });
    report.returned = cur == s;
    report.one_full_turn = true;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (counts.turns[v] != g.degree(v) || counts.arrivals[v] != g.degree(v))
            report.one_full_turn = false;
    return report;
}

void write_trajectory(std::ostream& out, std::span<const StepRecord> records)
{
    for (const auto& r : records)
        out << r.time << '\t' << r.from << '\t' << r.to << '\t' << r.edge_index << '\n';
}

std::vector<StepRecord> read_trajectory(std::istream& in)
{
    std::vector<StepRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream is(line);
        StepRecord r;
        std::string extra;
        if (!(is >> r.time >> r.from >> r.to >> r.edge_index) || (is >> extra))
            throw std::runtime_error("trajectory: malformed line '" + line + "'");
        records.push_back(r);
    }
    return records;
}

} // namespace rotor
