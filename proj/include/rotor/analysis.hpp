#pragma once

#include "rotor/walker.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace rotor::analysis {

using lattice::LabelEvent;
using lattice::Sample;

class AnalysisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Vec2 {
    double x = 0;
    double y = 0;
};

struct SpiralPoint {
    std::int64_t n = 0; // 1-based label index
    double r = 0;
    double theta = 0; // cumulative, clockwise positive
    std::int64_t source = 0; // index into the input sequence
};

/// Cumulative clockwise angle of a point sequence. The first angle is the
/// clockwise polar angle in (-pi, pi]; each later one adds the clockwise turn
/// from the previous point, taken in (-pi, pi]. Points at the origin are
/// skipped and counted in `skipped`.
std::vector<SpiralPoint> unwrap_points(std::span<const Vec2> points, std::size_t* skipped = nullptr);

/// Labels with depth <= max_depth, in order, unwrapped.
std::vector<SpiralPoint> unwrap_spiral(std::span<const LabelEvent> labels, int max_depth = 0,
                                       std::size_t* skipped = nullptr);

/// Least squares y = c + slope * x.
struct LineFit {
    double intercept = 0;
    double slope = 0;
    double residual = 0; // root mean square
    std::size_t count = 0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct SpiralFit {
    double b_est = 0;      // asymptote c of c + A n^-p
    double correction = 0; // A
    double a_est = 0;      // intercept of the r-on-theta regression over the window
    std::int64_t n_lo = 0;
    std::int64_t n_hi = 0;
    double residual = 0;
    bool low_confidence = false; // fewer than two walks
};

struct RatioSeries {
    std::vector<double> n;
    std::vector<double> ratio;
    SpiralFit fit;
    double late_slope = 0; // d ratio / d n over the upper half
};

/// Per-index ensemble sums; one walk at a time, so the ensemble never has to
/// be held in memory.
class SpiralAccumulator {
public:
    void add(std::span<const SpiralPoint> walk);
    std::size_t walks() const { return walks_; }
    /// Indices present in every walk.
    std::size_t common_length() const { return walks_ ? min_length_ : 0; }

    /// sqrt(<r^2>) / sqrt(<theta^2>) per n, fit c + A n^-1/4 on the upper half.
    RatioSeries rms_ratio() const;
    /// <r> / <theta> per n, same fit.
    RatioSeries mean_ratio() const;

private:
    std::vector<double> sum_r_, sum_r2_, sum_t_, sum_t2_;
    std::size_t walks_ = 0;
    std::size_t min_length_ = 0;
};

RatioSeries rms_ratio(const std::vector<std::vector<SpiralPoint>>& ensemble);
RatioSeries mean_ratio(const std::vector<std::vector<SpiralPoint>>& ensemble);

/// <r> / <theta> over all points falling in consecutive theta windows.
struct ThetaWindowRatio {
    std::vector<double> theta_mid;
    std::vector<double> ratio;
    std::vector<std::int64_t> count;
};
ThetaWindowRatio mean_ratio_by_theta(const std::vector<std::vector<SpiralPoint>>& ensemble, double window);

class ThetaWindowAccumulator {
public:
    explicit ThetaWindowAccumulator(double window);
    void add(std::span<const SpiralPoint> walk);
    ThetaWindowRatio result() const;

private:
    double window_;
    std::map<std::int64_t, std::tuple<double, double, std::int64_t>> bins_;
};

struct GapSeries {
    std::vector<double> n;
    std::vector<double> mean_gap;
    double asymptote = 0; // c of c + A n^-1/2
    double correction = 0;
    double residual = 0;
    std::int64_t n_lo = 0;
    std::int64_t n_hi = 0;
};

/// delta t_n = t_in(n+1) - t_out(n) over the labels of one walk with
/// depth <= max_depth.
std::vector<double> label_gaps(std::span<const LabelEvent> labels, int max_depth = 0);

class GapAccumulator {
public:
    void add(std::span<const double> gaps);
    std::size_t walks() const { return walks_; }
    GapSeries result() const;

private:
    std::vector<double> sum_;
    std::size_t walks_ = 0;
    std::size_t min_length_ = 0;
};

GapSeries gap_stats(const std::vector<std::vector<LabelEvent>>& walks, int max_depth = 0);

struct DensityProfile {
    double bin_width = 2;
    std::vector<double> edges;        // bins [edges[i], edges[i+1])
    std::vector<double> density;      // labels per site per walk
    std::vector<std::int64_t> sites;  // lattice points per bin
    double peak = 0;                  // first bin
    double plateau = 0;
    double plateau_lo = 0;
    double plateau_hi = 0;
    double falloff_radius = 0;        // first bin edge past the plateau below half of it
    double far_max = 0;               // max density with r >= far_radius
    double far_radius = 0;
};

/// Lattice points with lo <= |p| < hi.
std::int64_t annulus_sites(double lo, double hi);

class DensityAccumulator {
public:
    DensityAccumulator(std::int64_t T, double bin_width = 2.0);
    void add(std::span<const LabelEvent> labels, int max_depth = 0);
    DensityProfile result() const;

private:
    std::int64_t T_;
    double width_;
    std::vector<std::int64_t> counts_;
    std::size_t walks_ = 0;
};

DensityProfile label_density(const std::vector<std::vector<LabelEvent>>& walks, std::int64_t T, int max_depth = 0);

struct ExponentFit {
    double nu = 0;
    double t_lo = 0;
    double t_hi = 0;
    double residual = 0;
    std::size_t points = 0;
};

struct MsdSeries {
    std::vector<double> t;
    std::vector<double> mean_r2;
};

/// Mean r^2 at every sample time shared by all walks.
MsdSeries mean_square_displacement(const std::vector<std::vector<Sample>>& walks);

/// nu = slope / 2 of log <r^2> against log t on [t_hi / 10^decades, t_hi].
ExponentFit msd_exponent(const MsdSeries& msd, double decades = 1.5);
ExponentFit msd_exponent(const std::vector<std::vector<Sample>>& walks, double decades = 1.5);

struct Loop {
    std::int64_t k = 0;     // first label (1-based spiral index)
    std::int64_t k_end = 0; // first label a full turn later
    double radius = 0;      // mean r over k..k_end
    double delta_r = 0;
    std::int64_t duration = 0; // t_in(k_end) - t_in(k)
    std::int64_t area = 0;     // sum of contour areas
};

/// Consecutive non-overlapping loops: each starts where the previous ended.
/// `labels` must be the sequence the spiral was unwrapped from.
std::vector<Loop> loop_partition(std::span<const SpiralPoint> spiral, std::span<const LabelEvent> labels);

/// Regression of log duration on log radius.
LineFit loop_growth(std::span<const Loop> loops);

} // namespace rotor::analysis
