#include "rotor/theorems.hpp"

#include "rotor/engine.hpp"
#include "rotor/geometry.hpp"
#include "rotor/instances.hpp"
#include "rotor/random.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace rotor {

namespace {

constexpr int kRetryBudget = 2000;

enum class Zone : char { OnCycle, Region, Untouched };

std::string join_times(const std::vector<std::int64_t>& t)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < t.size(); ++i)
        os << (i ? "," : "") << t[i];
    return os.str();
}

std::string instance_text(const Digraph& g, const RotorConfig& rho, const std::vector<Vertex>& chips,
                          std::uint64_t seed)
{
    std::ostringstream os;
    write_instance(os, Instance{g, rho, chips, seed});
    return os.str();
}

std::vector<Cycle> chip_cycles(const Digraph& g, const Multicycle& m)
{
    if (m.chips.empty())
        throw PreconditionError("multicycle without chips");
    validate(g, m.rotors);
    if (!is_multicycle(g, m))
        throw PreconditionError("rotor configuration is not a multicycle for these chips");
    std::vector<Cycle> cycles;
    for (Vertex chip : m.chips)
        cycles.push_back(*cycle_through(g, m.rotors, chip));
    return cycles;
}

std::vector<std::vector<Point>> polygons(const Digraph& g, const std::vector<Cycle>& cycles)
{
    std::vector<std::vector<Point>> polys;
    for (const auto& c : cycles)
        polys.push_back(polygon_of(c, g));
    return polys;
}

// Region: strictly inside C_0 and outside the closed regions of C_1..C_{k-1}.
std::vector<Zone> classify(const Digraph& g, const std::vector<Cycle>& cycles)
{
    const auto polys = polygons(g, cycles);
    std::vector<Zone> zone(static_cast<std::size_t>(g.vertex_count()), Zone::Untouched);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        const Point p = g.position(v);
        if (std::any_of(cycles.begin(), cycles.end(), [&](const Cycle& c) { return c.contains(v); })) {
            zone[v] = Zone::OnCycle;
            continue;
        }
        if (locate(p, polys[0]) != Location::Inside)
            continue;
        bool in_hole = false;
        for (std::size_t i = 1; i < polys.size() && !in_hole; ++i)
            in_hole = locate(p, polys[i]) == Location::Inside;
        if (!in_hole)
            zone[v] = Zone::Region;
    }
    return zone;
}

void require_outer_clockwise(const Digraph& g, const std::vector<Cycle>& cycles)
{
    if (!cycles[0].is_contour() || orientation(cycles[0], g) != Orientation::Clockwise)
        throw PreconditionError("external cycle C_0 must be a clockwise contour");
    const auto outer = polygon_of(cycles[0], g);
    for (std::size_t i = 1; i < cycles.size(); ++i) {
        if (!cycles[i].is_contour())
            throw PreconditionError("internal cycles must be contours");
        for (Vertex v : cycles[i].vertices)
            if (locate(g.position(v), outer) != Location::Inside)
                throw PreconditionError("internal cycle leaves the interior of C_0");
    }
}

// Sequential chip protocol: chip i walks from a_i until it is back at a_i
// with the a_i rotor pointing to its predecessor on C_i.
struct Protocol {
    RotorConfig rotors;
    std::vector<std::int64_t> turns;
    std::vector<std::int64_t> phase_steps; // -1 when the bound was hit
    bool stayed_in_outer = true;           // phase 0 never left closed C_0
    std::vector<std::int64_t> outer_flip;  // chain order of C_0, first time pointing back
};

Protocol run_protocol(const Digraph& g, const Multicycle& m, const std::vector<Cycle>& cycles, std::size_t phases,
                      const std::vector<char>& outer_closed)
{
    Protocol p{m.rotors, std::vector<std::int64_t>(static_cast<std::size_t>(g.vertex_count()), 0), {}, true, {}};
    const Cycle& outer = cycles[0];
    std::vector<int> outer_index(static_cast<std::size_t>(g.vertex_count()), -1);
    std::vector<std::int32_t> outer_back(outer.size());
    for (std::size_t i = 0; i < outer.size(); ++i) {
        outer_index[outer.vertices[i]] = static_cast<int>(i);
        outer_back[i] = direction_to(g, outer.vertices[i], outer.predecessor(i));
    }
    p.outer_flip.assign(outer.size(), -1);

    WalkState s{p.rotors, 0};
    std::int64_t clock = 0;
    for (std::size_t i = 0; i < phases; ++i) {
        const Vertex home = m.chips[i];
        const std::int32_t target = direction_to(g, home, cycles[i].predecessor(0));
        s.chip = home;
        std::int64_t used = -1;
        for (std::int64_t t = 1; t <= g.edge_count(); ++t) {
            const StepRecord r = advance(g, s);
            ++clock;
            ++p.turns[r.from];
            if (i == 0) {
                if (!outer_closed[r.to])
                    p.stayed_in_outer = false;
                const int oi = outer_index[r.from];
                if (oi >= 0 && p.outer_flip[oi] < 0 && r.edge_index == outer_back[oi])
                    p.outer_flip[oi] = clock;
            }
            if (s.chip == home && s.rotors.alpha[home] == target) {
                used = t;
                break;
            }
        }
        p.phase_steps.push_back(used);
        if (used < 0)
            break;
    }
    p.rotors = std::move(s.rotors);
    return p;
}

std::vector<char> closed_mask(const Digraph& g, const Cycle& c)
{
    auto mask = interior_mask(g, c.vertices);
    for (Vertex v : c.vertices)
        mask[v] = 1;
    return mask;
}

bool points_back(const Digraph& g, const RotorConfig& rho, const Cycle& c)
{
    for (std::size_t i = 0; i < c.size(); ++i)
        if (rotor_target(g, rho, c.vertices[i]) != c.predecessor(i))
            return false;
    return true;
}

Multicycle assemble(const Digraph& g, std::vector<std::vector<Vertex>> cycles, Rng& rng)
{
    Multicycle m;
    m.rotors.alpha.assign(static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<char> roots(static_cast<std::size_t>(g.vertex_count()), 0);
    for (auto& c : cycles) {
        std::rotate(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(rng.below(c.size())), c.end());
        orient_along(g, m.rotors, c);
        for (Vertex v : c)
            roots[v] = 1;
        m.chips.push_back(c.front());
    }
    grow_forest(g, m.rotors, roots, rng);
    return m;
}

std::string describe(const Digraph& g, const std::vector<Cycle>& cycles)
{
    std::ostringstream os;
    os << "V=" << g.vertex_count() << " E=" << g.edge_count() << " cycles=";
    for (std::size_t i = 0; i < cycles.size(); ++i)
        os << (i ? "," : "") << cycles[i].size();
    return os.str();
}

} // namespace

void TheoremReport::expect(std::string name, bool ok, std::string detail)
{
    assertions.push_back({std::move(name), ok, std::move(detail)});
}

bool TheoremReport::passed() const
{
    return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

std::string TheoremReport::summary() const
{
    std::ostringstream os;
    os << check << " seed=" << seed << " [" << instance << "]";
    for (const auto& a : assertions)
        if (!a.passed)
            os << "\n  FAILED " << a.name << (a.detail.empty() ? "" : ": " + a.detail);
    return os.str();
}

WalkState gen_unicycle_cw(const Digraph& grid, std::uint64_t seed)
{
    if (!grid.has_embedding())
        throw PreconditionError("gen_unicycle_cw: grid needs an embedding");
    Rng rng(seed);
    for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
        const Recurrence rec = detect_recurrence(grid, random_state(grid, rng));
        WalkState s = rec.limit_state;
        std::vector<std::int64_t> hits;
        for (std::int64_t t = 0; t < rec.period; ++t) {
            const auto c = cycle_through(grid, s.rotors, s.chip);
            if (c && c->is_contour() && orientation(*c, grid) == Orientation::Clockwise)
                hits.push_back(t);
            advance(grid, s);
        }
        if (hits.empty())
            continue;
        const std::int64_t pick = rng.pick(hits);
        s = rec.limit_state;
        for (std::int64_t t = 0; t < pick; ++t)
            advance(grid, s);
        return s;
    }
    throw std::runtime_error("gen_unicycle_cw: retry budget exhausted (seed " + std::to_string(seed) + ")");
}

TheoremReport verify_theorem1(const Digraph& g, const WalkState& s)
{
    validate(g, s);
    if (!is_unicycle(g, s))
        throw PreconditionError("verify_theorem1: state is not a unicycle");
    const Cycle c = *cycle_through(g, s.rotors, s.chip);
    if (!c.is_contour() || orientation(c, g) != Orientation::Clockwise)
        throw PreconditionError("verify_theorem1: cycle is not a clockwise contour");

    TheoremReport r;
    r.check = "theorem1";
    r.instance = describe(g, {c});

    const std::size_t n = c.size();
    std::vector<int> index(static_cast<std::size_t>(g.vertex_count()), -1);
    std::vector<std::int32_t> back(n);
    int reversed = 0;
    for (std::size_t i = 0; i < n; ++i) {
        index[c.vertices[i]] = static_cast<int>(i);
        back[i] = direction_to(g, c.vertices[i], c.predecessor(i));
        reversed += s.rotors.alpha[c.vertices[i]] == back[i];
    }

    WalkState cur = s;
    std::vector<std::int64_t> turns(static_cast<std::size_t>(g.vertex_count()), 0);
    bool done = false;
    for (std::int64_t t = 1; t <= g.edge_count() && !done; ++t) {
        const Vertex from = cur.chip;
        const auto before = cur.rotors.alpha[from];
        advance(g, cur);
        ++turns[from];
        if (const int i = index[from]; i >= 0)
            reversed += (cur.rotors.alpha[from] == back[i]) - (before == back[i]);
        if (reversed == static_cast<int>(n) && cur.chip == s.chip) {
            done = true;
            r.steps = t;
        }
    }
    r.expect("contour reversed with chip home within |E| steps", done);

    const auto inside = interior_mask(g, c.vertices);
    bool interior_ok = true;
    bool exterior_ok = true;
    std::ostringstream bad;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (index[v] >= 0)
            continue;
        if (inside[v]) {
            ++r.turn_multiplicity[turns[v] / g.degree(v)];
            if (turns[v] != g.degree(v)) {
                interior_ok = false;
                bad << " v" << v << ":" << turns[v];
            }
        } else if (turns[v] != 0) {
            exterior_ok = false;
            bad << " v" << v << ":" << turns[v];
        }
    }
    r.expect("interior rotors made one full turn", interior_ok, bad.str());
    r.expect("exterior rotors did not move", exterior_ok, bad.str());
    const auto now = cycle_through(g, cur.rotors, cur.chip);
    r.expect("contour now anticlockwise",
             now && now->is_contour() && points_back(g, cur.rotors, c) && orientation(*now, g) == Orientation::Anticlockwise);
    r.expect("chip back at start", cur.chip == s.chip);
    if (!r.passed())
        r.counterexample = instance_text(g, s.rotors, {s.chip}, 0);
    return r;
}

DominoInstance gen_domino_instance(const Digraph& g, std::span<const Vertex> contour, std::uint64_t seed)
{
    const std::size_t n = contour.size();
    if (n < 3)
        throw PreconditionError("gen_domino_instance: a contour needs at least 3 vertices");
    std::vector<Vertex> sorted(contour.begin(), contour.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw PreconditionError("gen_domino_instance: contour repeats a vertex");

    DominoInstance inst;
    inst.domino.contour.assign(contour.begin(), contour.end());
    for (std::size_t i = 0; i < n; ++i) {
        const Vertex v = contour[i];
        const Vertex pred = contour[(i + n - 1) % n];
        const Vertex succ = contour[(i + 1) % n];
        const auto back = g.edge_index(v, pred);
        const auto fwd = g.edge_index(v, succ);
        if (!back || !fwd || !g.has_edge(pred, v) || !g.has_edge(succ, v))
            throw PreconditionError("gen_domino_instance: contour is not bidirected in g");
        if ((*back + 1) % g.degree(v) != *fwd)
            throw PreconditionError("gen_domino_instance: contour does not obey domino ordering at vertex " +
                                    std::to_string(v));
        inst.domino.negative.push_back(*back);
    }
    Rng rng(seed);
    inst.state = random_state(g, rng);
    for (std::size_t i = 0; i < n; ++i)
        inst.state.rotors.alpha[contour[i]] = (inst.domino.negative[i] + 1) % g.degree(contour[i]);
    inst.state.chip = contour[n - 1];
    return inst;
}

TheoremReport verify_lemma1(const Digraph& g, const WalkState& s, const DominoContour& dc)
{
    validate(g, s);
    const std::size_t n = dc.contour.size();
    if (n < 3 || dc.negative.size() != n || s.chip != dc.contour.back())
        throw PreconditionError("verify_lemma1: malformed domino instance");

    TheoremReport r;
    r.check = "lemma1";
    r.instance = "V=" + std::to_string(g.vertex_count()) + " E=" + std::to_string(g.edge_count()) +
                 " n=" + std::to_string(n);
    std::vector<int> index(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < n; ++i)
        index[dc.contour[i]] = static_cast<int>(i);

    std::vector<std::int64_t> times(n, -1);
    std::size_t remaining = n;
    WalkState cur = s;
    for (std::int64_t t = 1; t <= g.edge_count() && remaining > 0; ++t) {
        const StepRecord rec = advance(g, cur, t);
        const int i = index[rec.from];
        if (i >= 0 && times[i] < 0 && rec.edge_index == dc.negative[i]) {
            times[i] = t;
            --remaining;
        }
        r.steps = t;
    }
    r.flip_times = times;
    r.expect("every contour rotor reached its negative direction within |E| steps", remaining == 0,
             join_times(times));
    r.expect("t_n > 0", times[n - 1] > 0);
    bool ordered = remaining == 0;
    for (std::size_t i = 0; i + 1 < n && ordered; ++i)
        ordered = times[i] > times[i + 1];
    r.expect("t_n < t_{n-1} < ... < t_1", ordered, join_times(times));
    r.expect("t_1 <= |E|", times[0] > 0 && times[0] <= g.edge_count());
    if (!r.passed())
        r.counterexample = instance_text(g, s.rotors, {s.chip}, 0);
    return r;
}

Multicycle gen_multicycle(const Digraph& grid, int k, std::uint64_t seed)
{
    if (k < 1)
        throw PreconditionError("gen_multicycle: k must be positive");
    const GridShape shape = grid_shape(grid);
    Rng rng(seed);
    const std::vector<char> everywhere(static_cast<std::size_t>(grid.vertex_count()), 1);
    const int cells = shape.cells();
    for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
        const int target = k == 1 ? static_cast<int>(rng.between(1, std::max(1, cells / 2)))
                                  : static_cast<int>(rng.between(std::min(cells, 4 * k), cells));
        auto outer = random_lattice_contour(shape, rng, target, everywhere);
        if (!outer)
            continue;
        std::vector<std::vector<Vertex>> cycles{*outer};
        auto room = interior_mask(grid, *outer);
        bool placed = true;
        for (int i = 1; i < k && placed; ++i) {
            auto inner = random_lattice_contour(shape, rng, static_cast<int>(rng.between(1, 6)), room);
            if (!inner) {
                placed = false;
                break;
            }
            for (Vertex v : *inner)
                room[v] = 0;
            const auto hole = interior_mask(grid, *inner);
            for (Vertex v = 0; v < grid.vertex_count(); ++v)
                if (hole[v])
                    room[v] = 0;
            std::reverse(inner->begin(), inner->end());
            cycles.push_back(std::move(*inner));
        }
        if (placed)
            return assemble(grid, std::move(cycles), rng);
    }
    throw std::runtime_error("gen_multicycle: placement failed (seed " + std::to_string(seed) + ")");
}

TheoremReport verify_theorem2(const Digraph& g, const Multicycle& m)
{
    const auto cycles = chip_cycles(g, m);
    require_outer_clockwise(g, cycles);
    for (std::size_t i = 1; i < cycles.size(); ++i)
        if (orientation(cycles[i], g) != Orientation::Anticlockwise)
            throw PreconditionError("verify_theorem2: internal cycles must be anticlockwise");

    TheoremReport r;
    r.check = "theorem2";
    r.instance = describe(g, cycles);
    const auto outer_closed = closed_mask(g, cycles[0]);
    const Protocol p = run_protocol(g, m, cycles, cycles.size(), outer_closed);
    const bool completed = p.phase_steps.size() == cycles.size() && p.phase_steps.back() >= 0;
    r.steps = std::accumulate(p.phase_steps.begin(), p.phase_steps.end(), std::int64_t{0});
    r.expect("every phase ends within |E| steps", completed, join_times(p.phase_steps));
    r.expect("phase 0 stays in the closed region of C_0", p.stayed_in_outer);
    r.expect("C_0 oriented anticlockwise", points_back(g, p.rotors, cycles[0]));
    bool inner_ok = true;
    for (std::size_t i = 1; i < cycles.size(); ++i)
        inner_ok = inner_ok && points_back(g, p.rotors, cycles[i]);
    r.expect("C_1..C_{k-1} oriented clockwise", inner_ok);

    const auto zone = classify(g, cycles);
    bool region_ok = true;
    bool untouched_ok = true;
    std::ostringstream bad;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (zone[v] == Zone::Region) {
            ++r.turn_multiplicity[p.turns[v] / g.degree(v)];
            if (p.turns[v] != g.degree(v)) {
                region_ok = false;
                bad << " v" << v << ":" << p.turns[v];
            }
        } else if (zone[v] == Zone::Untouched && p.turns[v] != 0) {
            untouched_ok = false;
            bad << " v" << v << ":" << p.turns[v];
        }
    }
    r.expect("region between C_0 and the internal cycles made one full turn", region_ok, bad.str());
    r.expect("outside C_0 and inside internal cycles untouched", untouched_ok, bad.str());
    if (!r.passed())
        r.counterexample = instance_text(g, m.rotors, m.chips, 0);
    return r;
}

TheoremReport verify_corollary(const Digraph& g, const Multicycle& m)
{
    const auto cycles = chip_cycles(g, m);
    require_outer_clockwise(g, cycles);

    TheoremReport r;
    r.check = "corollary";
    r.instance = describe(g, cycles);
    const auto outer_closed = closed_mask(g, cycles[0]);
    const Protocol p = run_protocol(g, m, cycles, 1, outer_closed);
    r.expect("phase 0 ends within |E| steps", p.phase_steps.front() >= 0);
    r.steps = p.phase_steps.front();

    // Clockwise labels v_1..v_n with v_n = a_0: v_i is chain position i mod n.
    const std::size_t n = cycles[0].size();
    std::vector<std::int64_t> times(n);
    for (std::size_t i = 1; i <= n; ++i)
        times[i - 1] = p.outer_flip[i % n];
    r.flip_times = times;
    const bool all = std::all_of(times.begin(), times.end(), [](std::int64_t t) { return t > 0; });
    r.expect("every C_0 rotor turned anticlockwise during phase 0", all, join_times(times));
    bool ordered = all;
    for (std::size_t i = 0; i + 1 < n && ordered; ++i)
        ordered = times[i] > times[i + 1];
    r.expect("t_n < t_{n-1} < ... < t_1", ordered, join_times(times));
    if (!r.passed())
        r.counterexample = instance_text(g, m.rotors, m.chips, 0);
    return r;
}

AuxiliaryUnicycle build_auxiliary_unicycle(const Multicycle& m, const Digraph& g)
{
    const auto cycles = chip_cycles(g, m);
    require_outer_clockwise(g, cycles);
    const auto zone = classify(g, cycles);
    const std::size_t k = cycles.size();

    AuxiliaryUnicycle aux;
    aux.aux_of.assign(static_cast<std::size_t>(g.vertex_count()), -1);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (zone[v] != Zone::Untouched) {
            aux.aux_of[v] = static_cast<Vertex>(aux.original_of.size());
            aux.original_of.push_back(v);
        }
    }
    const auto kept = static_cast<Vertex>(aux.original_of.size());
    for (std::size_t i = 0; i < k; ++i) {
        aux.primes.push_back(kept + static_cast<Vertex>(i));
        aux.original_of.push_back(-1);
    }

    // Edges are tested at their midpoint, in doubled coordinates.
    auto doubled = [](std::vector<Point> poly) {
        for (auto& p : poly)
            p = {2 * p.x, 2 * p.y};
        return poly;
    };
    std::vector<std::vector<Point>> polys;
    for (const auto& c : cycles)
        polys.push_back(doubled(polygon_of(c, g)));
    auto keep_edge = [&](Vertex u, Vertex w) {
        if (aux.aux_of[u] < 0 || aux.aux_of[w] < 0)
            return false;
        const Point mid{g.position(u).x + g.position(w).x, g.position(u).y + g.position(w).y};
        if (locate(mid, polys[0]) == Location::Outside)
            return false;
        for (std::size_t i = 1; i < k; ++i)
            if (locate(mid, polys[i]) == Location::Inside)
                return false;
        return true;
    };

    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(kept) + k);
    for (Vertex x = 0; x < kept; ++x) {
        const Vertex u = aux.original_of[x];
        for (Vertex w : g.out(u))
            if (keep_edge(u, w))
                adj[x].push_back(aux.aux_of[w]);
    }
    for (std::size_t i = 0; i < k; ++i) {
        auto& row = adj[aux.aux_of[m.chips[i]]];
        const Vertex pred = aux.aux_of[cycles[i].predecessor(0)];
        const auto at = std::find(row.begin(), row.end(), pred);
        row.insert(at + 1, aux.primes[i]);
    }
    for (std::size_t i = 0; i < k; ++i) {
        auto& row = adj[static_cast<std::size_t>(aux.primes[i])];
        row.push_back(aux.aux_of[m.chips[i]]);
        if (k == 2)
            row.push_back(aux.primes[1 - i]);
        else if (k >= 3) {
            row.push_back(aux.primes[(i + 1) % k]);
            row.push_back(aux.primes[(i + k - 1) % k]);
        }
    }
    aux.graph = Digraph(adj);

    // Cycles reversed, a_i pointing to a'_i, forest unchanged, primes pointing
    // backwards around the extra contour.
    auto& alpha = aux.state.rotors.alpha;
    alpha.assign(adj.size(), 0);
    for (Vertex x = 0; x < kept; ++x) {
        const Vertex u = aux.original_of[x];
        alpha[x] = direction_to(aux.graph, x, aux.aux_of[rotor_target(g, m.rotors, u)]);
    }
    for (std::size_t i = 0; i < k; ++i) {
        const Cycle& c = cycles[i];
        for (std::size_t j = 1; j < c.size(); ++j)
            alpha[aux.aux_of[c.vertices[j]]] = direction_to(aux.graph, aux.aux_of[c.vertices[j]], aux.aux_of[c.predecessor(j)]);
        alpha[aux.aux_of[c.vertices[0]]] = direction_to(aux.graph, aux.aux_of[c.vertices[0]], aux.primes[i]);
        alpha[aux.primes[i]] = k == 1 ? 0 : aux.graph.degree(aux.primes[i]) - 1;
    }
    aux.state.chip = aux.primes[0];
    return aux;
}

TheoremReport verify_aux_equivalence(const Digraph& g, const Multicycle& m)
{
    const auto cycles = chip_cycles(g, m);
    TheoremReport r;
    r.check = "aux-equiv";
    r.instance = describe(g, cycles);
    const AuxiliaryUnicycle aux = build_auxiliary_unicycle(m, g);
    const bool unicycle = is_unicycle(aux.graph, aux.state);
    const bool eulerian = is_eulerian(aux.graph);
    r.expect("auxiliary state is a unicycle", unicycle);
    r.expect("auxiliary graph is Eulerian", eulerian);
    if (!unicycle || !eulerian) {
        r.counterexample = instance_text(g, m.rotors, m.chips, 0);
        return r;
    }
    const EulerTourReport tour = verify_euler_tour(aux.graph, aux.state);
    r.steps = tour.steps;
    r.expect("auxiliary Euler tour traverses each edge once", tour.each_edge_once);
    r.expect("auxiliary Euler tour returns to the unicycle", tour.returned);
    r.expect("auxiliary Euler tour turns each rotor once", tour.one_full_turn);

    const RotorConfig after = run(aux.graph, aux.state, aux.graph.edge_count()).state.rotors;
    const auto outer_closed = closed_mask(g, cycles[0]);
    const Protocol p = run_protocol(g, m, cycles, cycles.size(), outer_closed);
    r.expect("sequential protocol completes", p.phase_steps.size() == cycles.size() && p.phase_steps.back() >= 0);

    bool same = true;
    std::ostringstream bad;
    for (Vertex x = 0; x < static_cast<Vertex>(aux.original_of.size()); ++x) {
        const Vertex v = aux.original_of[x];
        if (v < 0)
            continue;
        const int d = aux.graph.degree(x);
        Vertex t = aux.graph.target(x, after.alpha[x]);
        if (aux.original_of[t] < 0) // a_i pointing to a'_i: compare the direction just before
            t = aux.graph.target(x, (after.alpha[x] + d - 1) % d);
        if (aux.original_of[t] != rotor_target(g, p.rotors, v)) {
            same = false;
            bad << " v" << v;
        }
    }
    r.expect("post-tour auxiliary rotors match the protocol's final rotors", same, bad.str());
    if (!r.passed())
        r.counterexample = instance_text(g, m.rotors, m.chips, 0);
    return r;
}

Multicycle gen_cw_internal_instance(const Digraph& grid, std::uint64_t seed)
{
    const GridShape shape = grid_shape(grid);
    Rng rng(seed);
    const std::vector<char> everywhere(static_cast<std::size_t>(grid.vertex_count()), 1);
    const int cells = shape.cells();

    for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
        auto outer = random_lattice_contour(shape, rng, static_cast<int>(rng.between(cells / 2, cells)), everywhere);
        if (!outer)
            continue;
        std::vector<std::vector<Vertex>> cycles{*outer};
        bool has_clockwise_inner = false;

        // Children of a cycle go into its strict interior, away from siblings.
        auto place = [&](auto&& self, std::vector<char> room, int depth) -> void {
            const int children = depth == 1 ? static_cast<int>(rng.between(1, 3)) : static_cast<int>(rng.between(0, 2));
            for (int c = 0; c < children; ++c) {
                const int target = depth == 1 ? static_cast<int>(rng.between(4, 20))
                                              : static_cast<int>(rng.between(1, 12 / depth));
                auto inner = random_lattice_contour(shape, rng, target, room);
                if (!inner)
                    return;
                auto hole = interior_mask(grid, *inner);
                for (Vertex v = 0; v < grid.vertex_count(); ++v)
                    if (hole[v] || std::find(inner->begin(), inner->end(), v) != inner->end())
                        room[v] = 0;
                const bool clockwise = (depth == 1 && c == 0) || rng.coin();
                has_clockwise_inner = has_clockwise_inner || clockwise;
                if (!clockwise)
                    std::reverse(inner->begin(), inner->end());
                cycles.push_back(std::move(*inner));
                if (depth < 3)
                    self(self, std::move(hole), depth + 1);
            }
        };
        place(place, interior_mask(grid, *outer), 1);
        if (cycles.size() > 1 && has_clockwise_inner)
            return assemble(grid, std::move(cycles), rng);
    }
    throw std::runtime_error("gen_cw_internal_instance: placement failed (seed " + std::to_string(seed) + ")");
}

TheoremReport verify_cw_internal(const Digraph& g, const Multicycle& m)
{
    const auto cycles = chip_cycles(g, m);
    require_outer_clockwise(g, cycles);

    TheoremReport r;
    r.check = "cw-internal";
    r.instance = describe(g, cycles);
    const auto outer_closed = closed_mask(g, cycles[0]);
    const Protocol p = run_protocol(g, m, cycles, 1, outer_closed);
    r.steps = p.phase_steps.front();
    r.expect("chip returns to a_0 with its rotor anticlockwise within |E| steps", p.phase_steps.front() >= 0);
    r.expect("walk stays in the closed region of C_0", p.stayed_in_outer);
    r.expect("C_0 oriented anticlockwise on return", points_back(g, p.rotors, cycles[0]));

    // Rotating clockwise away from the predecessor sweeps the exterior side of
    // a_0 before reaching the successor, never the interior.
    const Vertex home = m.chips[0];
    const auto inside = interior_mask(g, cycles[0].vertices);
    const Vertex next = g.target(home, (p.rotors.alpha[home] + 1) % g.degree(home));
    r.expect("next step from a_0 does not re-enter the interior of C_0", !inside[next]);
    if (!r.passed())
        r.counterexample = instance_text(g, m.rotors, m.chips, 0);
    return r;
}

} // namespace rotor
