#pragma once

#include "rotor/graph.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace rotor {

/// Outcome of one verification run: a list of named assertions plus the data
/// needed to replay a failure.
struct TheoremReport {
    struct Assertion {
        std::string name;
        bool passed = false;
        std::string detail;
    };

    std::string check;
    std::uint64_t seed = 0;
    std::string instance; // short human-readable descriptor
    std::vector<Assertion> assertions;
    std::vector<std::int64_t> flip_times;
    std::int64_t steps = 0;
    /// turns / d_v over the vertices that must complete full rotations.
    std::map<std::int64_t, std::int64_t> turn_multiplicity;
    std::string counterexample; // Instance text, filled on failure

    void expect(std::string name, bool ok, std::string detail = {});
    bool passed() const;
    std::string summary() const;
};

/// Contour v_1..v_n in domino ordering. `negative[i]` is the rotor index at
/// contour[i] pointing to contour[i - 1]; the next index points to contour[i + 1].
struct DominoContour {
    std::vector<Vertex> contour;
    std::vector<std::int32_t> negative;
};

struct DominoInstance {
    WalkState state;
    DominoContour domino;
};

/// Unicycle on a planar bidirected grid whose cycle is a clockwise contour,
/// found by running a random state into its recurrent class and picking a
/// state along the limit cycle. Throws after the retry budget.
WalkState gen_unicycle_cw(const Digraph& grid, std::uint64_t seed);

TheoremReport verify_theorem1(const Digraph& g, const WalkState& s);

/// Positive directions on the contour, uniform rotors elsewhere, chip at v_n.
DominoInstance gen_domino_instance(const Digraph& g, std::span<const Vertex> contour, std::uint64_t seed);

TheoremReport verify_lemma1(const Digraph& g, const WalkState& s, const DominoContour& dc);

/// External clockwise lattice contour with k - 1 disjoint anticlockwise
/// contours strictly inside, chips at random cycle vertices and a random
/// forest elsewhere.
Multicycle gen_multicycle(const Digraph& grid, int k, std::uint64_t seed);

TheoremReport verify_theorem2(const Digraph& g, const Multicycle& m);
TheoremReport verify_corollary(const Digraph& g, const Multicycle& m);

/// Auxiliary graph with an extra contour a'_0..a'_{k-1} outside C_0 and the
/// unicycle on it. Vertex maps translate between g and the auxiliary graph
/// (-1 where a vertex was removed).
struct AuxiliaryUnicycle {
    Digraph graph;
    WalkState state;
    std::vector<Vertex> aux_of;      // g vertex -> aux vertex
    std::vector<Vertex> original_of; // aux vertex -> g vertex
    std::vector<Vertex> primes;      // aux ids of a'_0..a'_{k-1}
};

AuxiliaryUnicycle build_auxiliary_unicycle(const Multicycle& m, const Digraph& g);

/// Euler tour on the auxiliary unicycle against the sequential protocol on g.
TheoremReport verify_aux_equivalence(const Digraph& g, const Multicycle& m);

/// Multicycle whose internal cycles have random orientations and may nest,
/// including clockwise cycles inside clockwise cycles.
Multicycle gen_cw_internal_instance(const Digraph& grid, std::uint64_t seed);

/// Walks only the chip on C_0 and checks that it stays in the closed region,
/// returns with C_0 reversed, and that its next step does not go back inside.
TheoremReport verify_cw_internal(const Digraph& g, const Multicycle& m);

} // namespace rotor
