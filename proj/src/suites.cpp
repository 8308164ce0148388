#include "rotor/suites.hpp"

#include "rotor/engine.hpp"
#include "rotor/instances.hpp"
#include "rotor/parallel.hpp"
#include "rotor/random.hpp"

#include <array>
#include <mutex>
#include <sstream>

namespace rotor {

namespace {

constexpr std::array<std::pair<Suite, std::string_view>, 8> kNames{{
    {Suite::PropA, "propA"},
    {Suite::PropB, "propB"},
    {Suite::Lemma1, "lemma1"},
    {Suite::Theorem1, "theorem1"},
    {Suite::Theorem2, "theorem2"},
    {Suite::Corollary, "corollary"},
    {Suite::AuxEquiv, "aux-equiv"},
    {Suite::CwInternal, "cw-internal"},
}};

Digraph random_grid(Rng& rng, int min_side, int max_width, int max_height)
{
    const int w = static_cast<int>(rng.between(std::min(min_side, max_width), max_width));
    const int h = static_cast<int>(rng.between(std::min(min_side, max_height), max_height));
    return build_bidirected_grid(w, h);
}

Digraph random_test_digraph(Rng& rng)
{
    return random_eulerian_digraph(rng, static_cast<int>(rng.between(2, 30)), static_cast<int>(rng.between(0, 6)));
}

TheoremReport prop_a(std::uint64_t seed, int max_width, int max_height)
{
    Rng rng(seed);
    const Digraph g = rng.coin() ? random_test_digraph(rng) : random_grid(rng, 2, std::min(max_width, 8), std::min(max_height, 8));
    TheoremReport r;
    r.check = "propA";
    r.instance = "V=" + std::to_string(g.vertex_count()) + " E=" + std::to_string(g.edge_count());

    const WalkState s = random_state(g, rng);
    const Recurrence rec = detect_recurrence(g, s);
    r.steps = rec.steps_used;
    r.expect("limit state is a unicycle", is_unicycle(g, rec.limit_state));
    r.expect("limit cycle length equals |E|", rec.period == g.edge_count(), std::to_string(rec.period));
    r.expect("start state recurrent iff unicycle", rec.recurrent() == is_unicycle(g, s));

    const WalkState u = random_unicycle(g, rng);
    const Recurrence back = detect_recurrence(g, u);
    r.expect("unicycle is recurrent with first return at |E|", back.recurrent() && back.period == g.edge_count());
    if (!r.passed()) {
        std::ostringstream os;
        write_instance(os, Instance{g, s.rotors, {s.chip}, seed});
        r.counterexample = os.str();
    }
    return r;
}

TheoremReport prop_b(std::uint64_t seed)
{
    Rng rng(seed);
    const Digraph g = random_test_digraph(rng);
    const WalkState u = random_unicycle(g, rng);
    const EulerTourReport tour = verify_euler_tour(g, u);
    TheoremReport r;
    r.check = "propB";
    r.instance = "V=" + std::to_string(g.vertex_count()) + " E=" + std::to_string(g.edge_count());
    r.steps = tour.steps;
    r.expect("each edge traversed once in |E| steps", tour.each_edge_once);
    r.expect("state returned after |E| steps", tour.returned);
    r.expect("each rotor made one full turn", tour.one_full_turn);
    if (!r.passed()) {
        std::ostringstream os;
        write_instance(os, Instance{g, u.rotors, {u.chip}, seed});
        r.counterexample = os.str();
    }
    return r;
}

TheoremReport lemma1(std::uint64_t seed, int max_width, int max_height)
{
    Rng rng(seed);
    Digraph g;
    std::vector<Vertex> contour;
    switch (rng.below(3)) {
    case 0: { // anticlockwise unit face: domino by the planar N, E, S, W order
        g = random_grid(rng, 2, max_width, max_height);
        const GridShape shape = grid_shape(g);
        const int cx = static_cast<int>(rng.below(static_cast<std::uint64_t>(shape.width - 1)));
        const int cy = static_cast<int>(rng.below(static_cast<std::uint64_t>(shape.height - 1)));
        contour = {shape.at(cx, cy), shape.at(cx + 1, cy), shape.at(cx + 1, cy + 1), shape.at(cx, cy + 1)};
        break;
    }
    case 1: { // larger lattice contour, orders rearranged around it
        const Digraph grid = random_grid(rng, 3, max_width, max_height);
        const GridShape shape = grid_shape(grid);
        const std::vector<char> all(static_cast<std::size_t>(grid.vertex_count()), 1);
        contour = *random_lattice_contour(shape, rng, static_cast<int>(rng.between(1, shape.cells())), all);
        if (rng.coin())
            std::reverse(contour.begin(), contour.end());
        g = impose_domino_order(grid, contour, rng);
        break;
    }
    default: { // non-contractible loop on a torus
        const int w = static_cast<int>(rng.between(3, std::max(3, std::min(max_width, 8))));
        const int h = static_cast<int>(rng.between(3, std::max(3, std::min(max_height, 8))));
        const Digraph torus = build_bidirected_torus(w, h);
        contour = random_torus_loop(w, h, rng);
        g = impose_domino_order(torus, contour, rng);
        break;
    }
    }
    const DominoInstance inst = gen_domino_instance(g, contour, rng.next());
    return verify_lemma1(g, inst.state, inst.domino);
}

Digraph multicycle_grid(Rng& rng, int k, int max_width, int max_height)
{
    return random_grid(rng, 4 + k, max_width, max_height);
}

} // namespace

const std::vector<Suite>& all_suites()
{
    static const std::vector<Suite> suites = [] {
        std::vector<Suite> v;
        for (const auto& [s, name] : kNames)
            v.push_back(s);
        return v;
    }();
    return suites;
}

std::string_view suite_name(Suite s)
{
    for (const auto& [suite, name] : kNames)
        if (suite == s)
            return name;
    return "?";
}

std::optional<Suite> parse_suite(std::string_view name)
{
    for (const auto& [suite, n] : kNames)
        if (n == name)
            return suite;
    return std::nullopt;
}

TheoremReport run_trial(Suite suite, std::uint64_t trial_seed, int max_width, int max_height)
{
    TheoremReport r;
    try {
        Rng rng(trial_seed);
        switch (suite) {
        case Suite::PropA:
            r = prop_a(trial_seed, max_width, max_height);
            break;
        case Suite::PropB:
            r = prop_b(trial_seed);
            break;
        case Suite::Lemma1:
            r = lemma1(trial_seed, max_width, max_height);
            break;
        case Suite::Theorem1: {
            const Digraph g = random_grid(rng, 3, max_width, max_height);
            r = verify_theorem1(g, gen_unicycle_cw(g, rng.next()));
            break;
        }
        case Suite::Theorem2:
        case Suite::Corollary:
        case Suite::AuxEquiv: {
            const int k = static_cast<int>(rng.between(1, 5));
            const Digraph g = multicycle_grid(rng, k, max_width, max_height);
            const Multicycle m = gen_multicycle(g, k, rng.next());
            r = suite == Suite::Theorem2    ? verify_theorem2(g, m)
                : suite == Suite::Corollary ? verify_corollary(g, m)
                                            : verify_aux_equivalence(g, m);
            break;
        }
        case Suite::CwInternal: {
            const Digraph g = random_grid(rng, 8, max_width, max_height);
            r = verify_cw_internal(g, gen_cw_internal_instance(g, rng.next()));
            break;
        }
        }
    } catch (const std::exception& e) {
        r = TheoremReport{};
        r.check = std::string(suite_name(suite));
        r.expect("trial ran to completion", false, e.what());
    }
    r.seed = trial_seed;
    return r;
}

SuiteResult run_suite(Suite suite, const SuiteOptions& options)
{
    SuiteResult result;
    result.suite = suite;
    result.trials = options.trials;
    for (int i = 0; i < options.trials; ++i)
        result.seeds.push_back(derive_seed(options.seed, static_cast<std::uint64_t>(i)));

    std::vector<TheoremReport> reports(static_cast<std::size_t>(options.trials));
    parallel_for(reports.size(), options.threads, [&](std::size_t i) {
        reports[i] = run_trial(suite, result.seeds[i], options.max_width, options.max_height);
    });
    for (auto& r : reports) {
        result.steps += r.steps;
        for (const auto& [mult, count] : r.turn_multiplicity)
            result.turn_multiplicity[mult] += count;
        if (!r.passed())
            result.failed.push_back(std::move(r));
    }
    return result;
}

} // namespace rotor
