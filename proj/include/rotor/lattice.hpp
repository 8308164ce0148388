#pragma once

#include "rotor/graph.hpp"
#include "rotor/random.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace rotor::lattice {

/// Directions: 0 = N, 1 = E, 2 = S, 3 = W. Adding one turns clockwise.
inline constexpr std::array<std::int64_t, 4> kDx{0, 1, 0, -1};
inline constexpr std::array<std::int64_t, 4> kDy{1, 0, -1, 0};

inline Point neighbour(Point p, int dir) { return {p.x + kDx[dir], p.y + kDy[dir]}; }

/// Packs a coordinate with |x|, |y| < 2^31 into one word.
inline std::uint64_t point_key(Point p)
{
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.x)) << 32) | static_cast<std::uint32_t>(p.y);
}

/// Initial rotor at (x, y): top two bits of a keyed hash of the coordinate.
constexpr int initial_direction(std::uint64_t seed, std::int64_t x, std::int64_t y)
{
    const std::uint64_t key = mix64(seed ^ 0x6a09e667f3bcc909ULL);
    const std::uint64_t h = mix64(key ^ mix64(static_cast<std::uint64_t>(x) + mix64(static_cast<std::uint64_t>(y) ^ key)));
    return static_cast<int>(h >> 62);
}

class DetectionCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TorusSize {
    std::int64_t width = 0;
    std::int64_t height = 0;
};

/// Lazily materialized rotor field over Z^2, or over a torus when a size is
/// given. Cells live in 64 x 64 chunks created on first touch; an untouched
/// cell's rotor is initial_direction(seed, x, y).
class LatticeEnvironment {
public:
    static constexpr int kChunkBits = 6;
    static constexpr int kChunkSide = 1 << kChunkBits;
    static constexpr int kChunkCells = kChunkSide * kChunkSide;

    explicit LatticeEnvironment(std::uint64_t seed, std::optional<TorusSize> torus = std::nullopt);

    std::uint64_t seed() const { return seed_; }
    const std::optional<TorusSize>& torus() const { return torus_; }

    int direction(Point p)
    {
        const Slot s = slot(p);
        return s.chunk->dir[s.index];
    }
    /// Number of times the rotor at p has turned (chip departures).
    std::uint32_t turns(Point p)
    {
        const Slot s = slot(p);
        return s.chunk->turns[s.index];
    }
    bool activated(Point p) { return turns(p) > 0; }

    /// Turns the rotor at p one step clockwise and returns the new direction.
    int rotate(Point p)
    {
        const Slot s = slot(p);
        ++s.chunk->turns[s.index];
        return s.chunk->dir[s.index] = static_cast<std::uint8_t>((s.chunk->dir[s.index] + 1) & 3);
    }

    /// Sets the turn count at p (checkpoint restore); direction follows.
    void set_turns(Point p, std::uint32_t turns);

    /// Point reached from p through its rotor, wrapped on a torus.
    Point step_from(Point p, int dir) const { return wrap(neighbour(p, dir)); }
    Point wrap(Point p) const;

    /// Follows rotors from `chip`. Returns the cycle through the chip (chain
    /// order, starting at the chip) in `out` together with its doubled signed
    /// area, or nothing when the chain closes elsewhere.
    struct Chain {
        enum class Kind { Cycle, Elsewhere } kind = Kind::Elsewhere;
        std::size_t length = 0;      // vertices visited
        std::int64_t twice_area = 0; // valid for Kind::Cycle on the plane
    };
    Chain follow_chain(Point chip, std::vector<Point>& out, std::int64_t cap);

    /// Calls fn(point, turns) for every cell that has turned, in a fixed order.
    template <typename Fn>
    void for_each_activated(Fn&& fn) const;

    std::size_t chunk_count() const { return chunks_.size(); }

private:
    struct Chunk {
        std::array<std::uint8_t, kChunkCells> dir;
        std::array<std::uint32_t, kChunkCells> turns;
        std::array<std::uint32_t, kChunkCells> mark;
    };
    struct Slot {
        Chunk* chunk;
        int index;
    };

    static std::uint64_t chunk_key(std::int64_t cx, std::int64_t cy)
    {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cx)) << 32) | static_cast<std::uint32_t>(cy);
    }
    Slot slot(Point p)
    {
        const std::int64_t cx = p.x >> kChunkBits;
        const std::int64_t cy = p.y >> kChunkBits;
        const int index = static_cast<int>(((p.y & (kChunkSide - 1)) << kChunkBits) | (p.x & (kChunkSide - 1)));
        if (cache_ && cx == cache_x_ && cy == cache_y_)
            return {cache_, index};
        return {fetch(cx, cy), index};
    }
    Chunk* fetch(std::int64_t cx, std::int64_t cy);

    std::uint64_t seed_;
    std::optional<TorusSize> torus_;
    std::unordered_map<std::uint64_t, std::unique_ptr<Chunk>> chunks_;
    Chunk* cache_ = nullptr;
    std::int64_t cache_x_ = 0;
    std::int64_t cache_y_ = 0;
    std::uint32_t stamp_ = 0;
};

template <typename Fn>
void LatticeEnvironment::for_each_activated(Fn&& fn) const
{
    std::vector<std::uint64_t> keys;
    keys.reserve(chunks_.size());
    for (const auto& [key, chunk] : chunks_)
        keys.push_back(key);
    std::sort(keys.begin(), keys.end());
    for (std::uint64_t key : keys) {
        const Chunk& c = *chunks_.at(key);
        const auto cx = static_cast<std::int64_t>(static_cast<std::int32_t>(key >> 32));
        const auto cy = static_cast<std::int64_t>(static_cast<std::int32_t>(key & 0xffffffffU));
        for (int i = 0; i < kChunkCells; ++i)
            if (c.turns[i] > 0)
                fn(Point{cx * kChunkSide + (i & (kChunkSide - 1)), cy * kChunkSide + (i >> kChunkBits)}, c.turns[i]);
    }
}

enum class DetectOutcome { Clockwise, Anticlockwise, Dimer, NoCycle };

/// detect_contour on the environment at the chip position. `contour` receives
/// the cycle in chain order when one exists.
DetectOutcome detect_contour(LatticeEnvironment& env, Point chip, std::vector<Point>& contour,
                             std::int64_t cap = 1'000'000);

/// One rotor-router step: turn the rotor at the chip, move along it.
inline Point sim_step(LatticeEnvironment& env, Point chip)
{
    return env.step_from(chip, env.rotate(chip));
}

} // namespace rotor::lattice
