// RRWK1 checkpoint layout. All integers little-endian, no padding.
//
//   magic       5 bytes  "RRWK1"
//   version     u32      1
//   config      u64 seed, i64 steps, u8 mode, i32 max_depth, i64 chain_cap,
//               u8 detect, u8 keep_contours, u8 has_torus, i64 width, i64 height,
//               u64 n, i64 schedule[n]
//   state       i64 time, i64 chip_x, i64 chip_y, u64 next_sample
//   counters    u64 n, i64 value[n]              (counter_fields() order)
//   cells       u64 n, {i64 x, i64 y, u32 turns}[n]   cells with turns > 0
//   labels      u64 n, {i64 k, x, y, t_in, t_out, t_return, length, area,
//                       i32 depth, u64 m, {i64 x, i64 y}[m]}[n]
//   episodes    u64 n, {u64 label, u64 reversed, u64 m, {i64 x, i64 y}[m]}[n]
//   samples     u64 n, {i64 t, i64 x, i64 y}[n]
//   end         4 bytes  "END1"
//
// Rotor directions are not stored: direction = initial_direction + turns.

#include "rotor/walker.hpp"

#include <array>
#include <cstring>
#include <istream>
#include <ostream>

namespace rotor::lattice {

namespace {

constexpr std::array<char, 5> kMagic{'R', 'R', 'W', 'K', '1'};
constexpr std::array<char, 4> kEnd{'E', 'N', 'D', '1'};
constexpr std::uint32_t kVersion = 1;

class Writer {
public:
    explicit Writer(std::ostream& out) : out_(out) {}

    template <typename T>
    void put(T value)
    {
        static_assert(std::is_integral_v<T>);
        using U = std::make_unsigned_t<T>;
        auto u = static_cast<U>(value);
        std::array<char, sizeof(T)> bytes;
        for (std::size_t i = 0; i < sizeof(T); ++i) {
            bytes[i] = static_cast<char>(u & 0xff);
            u = static_cast<U>(u >> 8);
        }
        out_.write(bytes.data(), bytes.size());
    }
    void put_points(const std::vector<Point>& pts)
    {
        put<std::uint64_t>(pts.size());
        for (const Point& p : pts) {
            put(p.x);
            put(p.y);
        }
    }
    void raw(const char* data, std::size_t n) { out_.write(data, static_cast<std::streamsize>(n)); }

private:
    std::ostream& out_;
};

class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    template <typename T>
    T get()
    {
        static_assert(std::is_integral_v<T>);
        std::array<unsigned char, sizeof(T)> bytes;
        if (!in_.read(reinterpret_cast<char*>(bytes.data()), bytes.size()))
            throw CheckpointError("checkpoint truncated");
        std::make_unsigned_t<T> u = 0;
        for (std::size_t i = sizeof(T); i-- > 0;)
            u = static_cast<std::make_unsigned_t<T>>((u << 8) | bytes[i]);
        return static_cast<T>(u);
    }
    std::uint64_t count(std::uint64_t limit = 1ULL << 40)
    {
        const auto n = get<std::uint64_t>();
        if (n > limit)
            throw CheckpointError("checkpoint count out of range");
        return n;
    }
    std::vector<Point> get_points()
    {
        std::vector<Point> pts(count(1ULL << 32));
        for (Point& p : pts) {
            p.x = get<std::int64_t>();
            p.y = get<std::int64_t>();
        }
        return pts;
    }
    template <std::size_t N>
    bool expect(const std::array<char, N>& tag)
    {
        std::array<char, N> buf{};
        return in_.read(buf.data(), N) && buf == tag;
    }

private:
    std::istream& in_;
};

} // namespace

void LatticeWalker::save(std::ostream& out) const
{
    Writer w(out);
    w.raw(kMagic.data(), kMagic.size());
    w.put(kVersion);

    w.put(config_.seed);
    w.put(config_.steps);
    w.put<std::uint8_t>(config_.mode == WalkMode::Rotor ? 0 : 1);
    w.put<std::int32_t>(config_.max_depth);
    w.put(config_.chain_cap);
    w.put<std::uint8_t>(config_.detect);
    w.put<std::uint8_t>(config_.keep_contours);
    w.put<std::uint8_t>(config_.torus.has_value());
    w.put(config_.torus ? config_.torus->width : 0);
    w.put(config_.torus ? config_.torus->height : 0);
    w.put<std::uint64_t>(config_.schedule.size());
    for (auto t : config_.schedule)
        w.put(t);

    w.put(time_);
    w.put(chip_.x);
    w.put(chip_.y);
    w.put<std::uint64_t>(next_sample_);

    w.put<std::uint64_t>(counter_fields().size());
    for (const auto& f : counter_fields())
        w.put(counters_.*f.member);

    std::vector<std::pair<Point, std::uint32_t>> cells;
    env_.for_each_activated([&](Point p, std::uint32_t turns) { cells.emplace_back(p, turns); });
    w.put<std::uint64_t>(cells.size());
    for (const auto& [p, turns] : cells) {
        w.put(p.x);
        w.put(p.y);
        w.put(turns);
    }

    w.put<std::uint64_t>(labels_.size());
    for (const LabelEvent& l : labels_) {
        for (auto v : {l.k, l.v.x, l.v.y, l.t_in, l.t_out, l.t_return, l.length, l.area})
            w.put(v);
        w.put<std::int32_t>(l.depth);
        w.put_points(l.contour);
    }

    w.put<std::uint64_t>(open_.size());
    for (const Episode& e : open_) {
        w.put<std::uint64_t>(e.label);
        w.put<std::uint64_t>(e.reversed);
        w.put_points(e.contour);
    }

    w.put<std::uint64_t>(samples_.size());
    for (const Sample& s : samples_) {
        w.put(s.t);
        w.put(s.x);
        w.put(s.y);
    }
    w.raw(kEnd.data(), kEnd.size());
    if (!out)
        throw CheckpointError("checkpoint write failed");
}

LatticeWalker LatticeWalker::load(std::istream& in)
{
    Reader r(in);
    if (!r.expect(kMagic))
        throw CheckpointError("not an RRWK1 checkpoint");
    if (const auto version = r.get<std::uint32_t>(); version != kVersion)
        throw CheckpointError("unsupported checkpoint version " + std::to_string(version));

    WalkConfig config;
    config.seed = r.get<std::uint64_t>();
    config.steps = r.get<std::int64_t>();
    config.mode = r.get<std::uint8_t>() == 0 ? WalkMode::Rotor : WalkMode::Random;
    config.max_depth = r.get<std::int32_t>();
    config.chain_cap = r.get<std::int64_t>();
    config.detect = r.get<std::uint8_t>() != 0;
    config.keep_contours = r.get<std::uint8_t>() != 0;
    const bool has_torus = r.get<std::uint8_t>() != 0;
    const auto tw = r.get<std::int64_t>();
    const auto th = r.get<std::int64_t>();
    if (has_torus)
        config.torus = TorusSize{tw, th};
    config.schedule.resize(r.count());
    for (auto& t : config.schedule)
        t = r.get<std::int64_t>();

    LatticeWalker walker(std::move(config));
    walker.time_ = r.get<std::int64_t>();
    walker.chip_.x = r.get<std::int64_t>();
    walker.chip_.y = r.get<std::int64_t>();
    walker.next_sample_ = r.get<std::uint64_t>();
    if (walker.time_ < 0 || walker.time_ > walker.config_.steps || walker.next_sample_ > walker.config_.schedule.size())
        throw CheckpointError("checkpoint state out of range");

    if (r.count() != counter_fields().size())
        throw CheckpointError("checkpoint counter table mismatch");
    for (const auto& f : counter_fields())
        walker.counters_.*f.member = r.get<std::int64_t>();

    for (auto n = r.count(); n > 0; --n) {
        const Point p{r.get<std::int64_t>(), r.get<std::int64_t>()};
        walker.env_.set_turns(p, r.get<std::uint32_t>());
    }

    walker.labels_.resize(r.count());
    for (LabelEvent& l : walker.labels_) {
        l.k = r.get<std::int64_t>();
        l.v.x = r.get<std::int64_t>();
        l.v.y = r.get<std::int64_t>();
        l.t_in = r.get<std::int64_t>();
        l.t_out = r.get<std::int64_t>();
        l.t_return = r.get<std::int64_t>();
        l.length = r.get<std::int64_t>();
        l.area = r.get<std::int64_t>();
        l.depth = r.get<std::int32_t>();
        l.contour = r.get_points();
    }

    for (auto n = r.count(); n > 0; --n) {
        const auto label = r.get<std::uint64_t>();
        const auto reversed = r.get<std::uint64_t>();
        std::vector<Point> contour = r.get_points();
        if (label >= walker.labels_.size() || contour.size() < 4)
            throw CheckpointError("checkpoint episode out of range");
        Episode e{label, contour, LatticeRegion(contour), {}, reversed};
        for (std::size_t i = 0; i < contour.size(); ++i)
            e.index.emplace(point_key(contour[i]), static_cast<std::uint32_t>(i));
        walker.open_.push_back(std::move(e));
    }

    walker.samples_.resize(r.count());
    for (Sample& s : walker.samples_) {
        s.t = r.get<std::int64_t>();
        s.x = r.get<std::int64_t>();
        s.y = r.get<std::int64_t>();
    }
    if (!r.expect(kEnd))
        throw CheckpointError("checkpoint trailer missing");
    return walker;
}

} // namespace rotor::lattice
