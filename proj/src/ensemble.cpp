#include "rotor/ensemble.hpp"

#include <numbers>

namespace rotor::analysis {

EnsembleAnalyzer::EnsembleAnalyzer(std::int64_t steps, int max_depth, double msd_decades)
    : steps_(steps), max_depth_(max_depth), decades_(msd_decades), density_(steps), theta_(2 * std::numbers::pi)
{
}

void EnsembleAnalyzer::add(const std::vector<LabelEvent>& labels, const std::vector<Sample>& samples,
                           const lattice::WalkCounters& counters)
{
    std::size_t skipped = 0;
    const auto spiral = unwrap_spiral(labels, max_depth_, &skipped);
    origin_ += skipped;
    labels_ += static_cast<std::int64_t>(spiral.size() + skipped);
    spiral_.add(spiral);
    theta_.add(spiral);
    gaps_.add(label_gaps(labels, max_depth_));
    density_.add(labels, max_depth_);
    const auto loops = loop_partition(spiral, labels);
    loops_.insert(loops_.end(), loops.begin(), loops.end());
    samples_.push_back(samples);
    for (const auto& f : lattice::counter_fields()) {
        if (std::string_view(f.name) == "chain_max" || std::string_view(f.name) == "max_depth_seen")
            totals_.*f.member = std::max(totals_.*f.member, counters.*f.member);
        else
            totals_.*f.member += counters.*f.member;
    }
    ++walks_;
}

EnsembleReport EnsembleAnalyzer::result() const
{
    EnsembleReport r;
    r.walks = walks_;
    r.steps = steps_;
    r.max_depth = max_depth_;
    r.labels = labels_;
    r.origin_labels = origin_;
    r.totals = totals_;
    r.loops = loops_;
    auto attempt = [&r](const char* what, auto&& fn) {
        try {
            fn();
        } catch (const AnalysisError& e) {
            r.notes.push_back(std::string(what) + ": " + e.what());
        }
    };
    attempt("msd", [&] {
        r.msd = mean_square_displacement(samples_);
        r.nu = msd_exponent(r.msd, decades_);
    });
    if (labels_ == 0) {
        r.notes.emplace_back("no labels: spiral, gap, density and loop statistics skipped");
        return r;
    }
    attempt("rms ratio", [&] { r.rms = spiral_.rms_ratio(); });
    attempt("mean ratio", [&] { r.mean = spiral_.mean_ratio(); });
    r.by_theta = theta_.result();
    attempt("gaps", [&] { r.gaps = gaps_.result(); });
    attempt("density", [&] { r.density = density_.result(); });
    attempt("loops", [&] {
        if (loops_.size() < 2)
            throw AnalysisError("fewer than two complete loops");
        r.loop_fit = loop_growth(loops_);
    });
    return r;
}

} // namespace rotor::analysis
