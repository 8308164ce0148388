#include "rotor/lattice.hpp"

namespace rotor::lattice {

LatticeEnvironment::LatticeEnvironment(std::uint64_t seed, std::optional<TorusSize> torus)
    : seed_(seed), torus_(torus)
{
    if (torus_ && (torus_->width < 3 || torus_->height < 3))
        throw std::invalid_argument("torus sides must be at least 3");
}

Point LatticeEnvironment::wrap(Point p) const
{
    if (!torus_)
        return p;
    auto mod = [](std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; };
    return {mod(p.x, torus_->width), mod(p.y, torus_->height)};
}

LatticeEnvironment::Chunk* LatticeEnvironment::fetch(std::int64_t cx, std::int64_t cy)
{
    auto& slot = chunks_[chunk_key(cx, cy)];
    if (!slot) {
        slot = std::make_unique<Chunk>();
        for (int i = 0; i < kChunkCells; ++i) {
            const std::int64_t x = cx * kChunkSide + (i & (kChunkSide - 1));
            const std::int64_t y = cy * kChunkSide + (i >> kChunkBits);
            slot->dir[i] = static_cast<std::uint8_t>(initial_direction(seed_, x, y));
        }
        slot->turns.fill(0);
        slot->mark.fill(0);
    }
    cache_ = slot.get();
    cache_x_ = cx;
    cache_y_ = cy;
    return cache_;
}

void LatticeEnvironment::set_turns(Point p, std::uint32_t turns)
{
    const Slot s = slot(p);
    s.chunk->turns[s.index] = turns;
    s.chunk->dir[s.index] = static_cast<std::uint8_t>((initial_direction(seed_, p.x, p.y) + turns) & 3);
}

LatticeEnvironment::Chain LatticeEnvironment::follow_chain(Point chip, std::vector<Point>& out, std::int64_t cap)
{
    if (++stamp_ == 0) {
        for (auto& [key, chunk] : chunks_)
            chunk->mark.fill(0);
        stamp_ = 1;
    }
    Chain chain;
    out.clear();
    out.push_back(chip);
    Slot s = slot(chip);
    s.chunk->mark[s.index] = stamp_;
    Point p = chip;
    std::int64_t area = 0;
    for (;;) {
        const Point q = step_from(p, s.chunk->dir[s.index]);
        area += p.x * q.y - q.x * p.y;
        if (q == chip) {
            chain.kind = Chain::Kind::Cycle;
            break;
        }
        s = slot(q);
        if (s.chunk->mark[s.index] == stamp_)
            break;
        s.chunk->mark[s.index] = stamp_;
        out.push_back(q);
        if (static_cast<std::int64_t>(out.size()) > cap)
            throw DetectionCapExceeded("rotor chain longer than " + std::to_string(cap) + " cells (seed " +
                                       std::to_string(seed_) + ")");
        p = q;
    }
    chain.length = out.size();
    chain.twice_area = torus_ ? 0 : area;
    return chain;
}

DetectOutcome detect_contour(LatticeEnvironment& env, Point chip, std::vector<Point>& contour, std::int64_t cap)
{
    const auto chain = env.follow_chain(chip, contour, cap);
    if (chain.kind != LatticeEnvironment::Chain::Kind::Cycle)
        return DetectOutcome::NoCycle;
    if (chain.length == 2)
        return DetectOutcome::Dimer;
    return chain.twice_area < 0 ? DetectOutcome::Clockwise : DetectOutcome::Anticlockwise;
}

} // namespace rotor::lattice
