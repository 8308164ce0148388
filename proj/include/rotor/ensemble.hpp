#pragma once

#include "rotor/analysis.hpp"

#include <optional>
#include <string>

namespace rotor::analysis {

/// Everything the ensemble statistics produce. A statistic that cannot be
/// computed from the input (too few labels, too short a walk) is left empty
/// and its reason is appended to `notes`.
struct EnsembleReport {
    std::size_t walks = 0;
    std::int64_t steps = 0;
    int max_depth = 0;
    std::int64_t labels = 0; // labels with depth <= max_depth
    std::size_t origin_labels = 0;

    MsdSeries msd;
    std::optional<ExponentFit> nu;
    std::optional<RatioSeries> rms;
    std::optional<RatioSeries> mean;
    ThetaWindowRatio by_theta;
    std::optional<GapSeries> gaps;
    std::optional<DensityProfile> density;
    std::vector<Loop> loops;
    std::optional<LineFit> loop_fit;
    lattice::WalkCounters totals;
    std::vector<std::string> notes;
};

/// Streams walks of one length through every statistic; only per-index sums,
/// displacement samples and loops are retained.
class EnsembleAnalyzer {
public:
    EnsembleAnalyzer(std::int64_t steps, int max_depth = 0, double msd_decades = 1.5);

    void add(const std::vector<LabelEvent>& labels, const std::vector<Sample>& samples,
             const lattice::WalkCounters& counters);
    void add(const lattice::WalkTrace& trace) { add(trace.labels, trace.samples, trace.counters); }

    std::size_t walks() const { return walks_; }
    EnsembleReport result() const;

private:
    std::int64_t steps_;
    int max_depth_;
    double decades_;
    std::size_t walks_ = 0;
    std::int64_t labels_ = 0;
    std::size_t origin_ = 0;
    SpiralAccumulator spiral_;
    GapAccumulator gaps_;
    DensityAccumulator density_;
    ThetaWindowAccumulator theta_;
    std::vector<std::vector<Sample>> samples_;
    std::vector<Loop> loops_;
    lattice::WalkCounters totals_;
};

} // namespace rotor::analysis
