#include "rotor/walker.hpp"

#include <cmath>
#include <set>

namespace rotor::lattice {

const char* to_string(WalkMode m)
{
    return m == WalkMode::Rotor ? "rotor" : "random";
}

const std::vector<CounterField>& counter_fields()
{
    static const std::vector<CounterField> fields{
        {"steps", &WalkCounters::steps},
        {"detections", &WalkCounters::detections},
        {"clockwise", &WalkCounters::clockwise},
        {"anticlockwise", &WalkCounters::anticlockwise},
        {"dimers", &WalkCounters::dimers},
        {"no_cycle", &WalkCounters::no_cycle},
        {"chain_total", &WalkCounters::chain_total},
        {"chain_max", &WalkCounters::chain_max},
        {"episodes_completed", &WalkCounters::episodes_completed},
        {"episodes_open", &WalkCounters::episodes_open},
        {"nested_events", &WalkCounters::nested_events},
        {"exit_vertex_violations", &WalkCounters::exit_vertex_violations},
        {"reversal_violations", &WalkCounters::reversal_violations},
        {"unreturned_exits", &WalkCounters::unreturned_exits},
        {"blocked_exits", &WalkCounters::blocked_exits},
        {"irreversible_episodes", &WalkCounters::irreversible_episodes},
        {"containment_violations", &WalkCounters::containment_violations},
        {"max_depth_seen", &WalkCounters::max_depth_seen},
    };
    return fields;
}

std::vector<std::int64_t> geometric_schedule(std::int64_t T, double ratio)
{
    if (ratio <= 1.0)
        throw std::invalid_argument("geometric_schedule: ratio must exceed 1");
    std::vector<std::int64_t> times;
    for (int j = 0;; ++j) {
        const auto t = static_cast<std::int64_t>(std::ceil(std::pow(ratio, j) - 1e-9));
        if (t > T)
            break;
        if (times.empty() || t > times.back())
            times.push_back(t);
    }
    if (T >= 1 && (times.empty() || times.back() != T))
        times.push_back(T);
    return times;
}

LatticeWalker::LatticeWalker(WalkConfig config) : config_(std::move(config)), env_(config_.seed, config_.torus)
{
    if (config_.steps < 0)
        throw std::invalid_argument("walk length must be non-negative");
    if (config_.torus)
        config_.detect = false;
    if (config_.schedule.empty())
        config_.schedule = geometric_schedule(config_.steps);
    const std::set<std::int64_t> unique(config_.schedule.begin(), config_.schedule.end());
    config_.schedule.assign(unique.begin(), unique.end());
    random_key_ = mix64(config_.seed ^ 0xbb67ae8584caa73bULL);
}

void LatticeWalker::advance_to(std::int64_t t)
{
    t = std::min(t, config_.steps);
    while (time_ < t)
        step();
}

void LatticeWalker::step()
{
    if (config_.mode == WalkMode::Rotor)
        rotor_step();
    else
        random_step();
    while (next_sample_ < config_.schedule.size() && config_.schedule[next_sample_] <= time_) {
        if (config_.schedule[next_sample_] == time_)
            samples_.push_back({time_, chip_.x, chip_.y});
        ++next_sample_;
    }
}

void LatticeWalker::random_step()
{
    ++time_;
    ++counters_.steps;
    const int dir = static_cast<int>(mix64(random_key_ + static_cast<std::uint64_t>(time_)) >> 62);
    chip_ = neighbour(chip_, dir);
}

void LatticeWalker::rotor_step()
{
    const Point from = chip_;
    const int before = env_.direction(from);
    const int after = env_.rotate(from);
    const Point to = env_.step_from(from, after);
    ++time_;
    ++counters_.steps;
    for (Episode& e : open_) {
        LabelEvent& label = labels_[e.label];
        if (label.t_return >= 0)
            continue;
        e.track(from, before, after);
        if (to == label.v && e.reversed == e.contour.size())
            label.t_return = time_;
    }
    while (!open_.empty() && !open_.back().region.contains(to))
        close_episode(from, before);
    chip_ = to;
    if (!config_.detect || static_cast<int>(open_.size()) > config_.max_depth)
        return;
    ++counters_.detections;
    const DetectOutcome outcome = detect_contour(env_, to, buffer_, config_.chain_cap);
    counters_.chain_total += static_cast<std::int64_t>(buffer_.size());
    counters_.chain_max = std::max(counters_.chain_max, static_cast<std::int64_t>(buffer_.size()));
    switch (outcome) {
    case DetectOutcome::Clockwise:
        ++counters_.clockwise;
        open_episode(to);
        break;
    case DetectOutcome::Anticlockwise:
        ++counters_.anticlockwise;
        break;
    case DetectOutcome::Dimer:
        ++counters_.dimers;
        break;
    case DetectOutcome::NoCycle:
        ++counters_.no_cycle;
        break;
    }
}

namespace {

int direction_between(Point from, Point to)
{
    for (int d = 0; d < 4; ++d)
        if (neighbour(from, d) == to)
            return d;
    return -1;
}

} // namespace

void LatticeWalker::Episode::track(Point from, int before, int after)
{
    const auto it = index.find(point_key(from));
    if (it == index.end())
        return;
    const std::size_t n = contour.size();
    const Point back = contour[(it->second + n - 1) % n];
    reversed -= neighbour(from, before) == back;
    reversed += neighbour(from, after) == back;
}

void LatticeWalker::open_episode(Point at)
{
    LabelEvent label;
    label.k = static_cast<std::int64_t>(labels_.size());
    label.v = at;
    label.t_in = time_;
    label.length = static_cast<std::int64_t>(buffer_.size());
    label.area = std::abs(twice_signed_area(buffer_)) / 2;
    label.depth = static_cast<int>(open_.size());
    if (config_.keep_contours)
        label.contour = buffer_;
    if (!open_.empty()) {
        ++counters_.nested_events;
        const LatticeRegion& parent = open_.back().region;
        for (const Point& p : buffer_)
            if (!parent.contains(p)) {
                ++counters_.containment_violations;
                break;
            }
    }
    counters_.max_depth_seen = std::max<std::int64_t>(counters_.max_depth_seen, label.depth);
    labels_.push_back(std::move(label));
    Episode e{labels_.size() - 1, buffer_, LatticeRegion(buffer_), {}, 0};
    const std::size_t n = buffer_.size();
    e.index.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        e.index.emplace(point_key(buffer_[i]), static_cast<std::uint32_t>(i));
        e.reversed += neighbour(buffer_[i], env_.direction(buffer_[i])) == buffer_[(i + n - 1) % n];
    }
    open_.push_back(std::move(e));
}

void LatticeWalker::close_episode(Point from, int from_dir_before)
{
    Episode& e = open_.back();
    LabelEvent& label = labels_[e.label];
    label.t_out = time_;
    const std::size_t n = e.contour.size();
    if (label.t_return < 0)
        ++counters_.unreturned_exits;
    bool reversible = from == label.v;
    if (!reversible) {
        ++counters_.exit_vertex_violations;
        // Directions strictly between the backward and forward contour edges,
        // clockwise, are the only ones a returning chip can leave by.
        const int back = direction_between(e.contour[0], e.contour[n - 1]);
        const int ahead = direction_between(e.contour[0], e.contour[1]);
        bool blocked = true;
        for (int d = (back + 1) % 4; d != ahead && blocked; d = (d + 1) % 4)
            blocked = e.region.contains(neighbour(e.contour[0], d));
        if (blocked)
            ++counters_.blocked_exits;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Point p = e.contour[i];
        const int dir = p == from ? from_dir_before : env_.direction(p);
        if (neighbour(p, dir) != e.contour[(i + n - 1) % n]) {
            ++counters_.reversal_violations;
            reversible = false;
            break;
        }
    }
    counters_.irreversible_episodes += !reversible;
    ++counters_.episodes_completed;
    open_.pop_back();
}

WalkTrace LatticeWalker::trace() const
{
    WalkTrace t;
    t.config = config_;
    for (const auto& label : labels_)
        if (label.t_out >= 0)
            t.labels.push_back(label);
    t.samples = samples_;
    t.counters = counters_;
    t.counters.episodes_open = static_cast<std::int64_t>(open_.size());
    t.final_position = chip_;
    return t;
}

WalkTrace run_walk(std::uint64_t seed, std::int64_t T, std::vector<std::int64_t> schedule, int max_depth)
{
    if (T < 1)
        throw std::invalid_argument("run_walk: T must be at least 1");
    WalkConfig config;
    config.seed = seed;
    config.steps = T;
    config.max_depth = max_depth;
    config.schedule = std::move(schedule);
    LatticeWalker walker(std::move(config));
    walker.advance_to(T);
    return walker.trace();
}

WalkTrace run_random_walk_control(std::uint64_t seed, std::int64_t T, std::vector<std::int64_t> schedule)
{
    if (T < 1)
        throw std::invalid_argument("run_random_walk_control: T must be at least 1");
    WalkConfig config;
    config.seed = seed;
    config.steps = T;
    config.mode = WalkMode::Random;
    config.detect = false;
    config.schedule = std::move(schedule);
    LatticeWalker walker(std::move(config));
    walker.advance_to(T);
    return walker.trace();
}

} // namespace rotor::lattice
