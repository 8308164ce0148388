#include "rotor/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace rotor::analysis {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;

// Angle folded into (-pi, pi].
double fold(double a)
{
    a = std::remainder(a, kTwoPi);
    return a <= -kPi ? a + kTwoPi : a;
}

struct PowerFit {
    double c = 0;
    double A = 0;
    double residual = 0;
    std::int64_t n_lo = 0;
    std::int64_t n_hi = 0;
};

// y_n = c + A n^-p over the upper half of n = 1..N.
PowerFit fit_upper_half(std::span<const double> y, double p)
{
    const std::size_t N = y.size();
    if (N < 2)
        throw AnalysisError("need at least two indices to fit");
    const std::size_t first = N / 2; // zero-based, n = first + 1 .. N
    std::vector<double> x;
    std::vector<double> v;
    for (std::size_t i = first; i < N; ++i) {
        x.push_back(std::pow(static_cast<double>(i + 1), -p));
        v.push_back(y[i]);
    }
    const LineFit f = fit_line(x, v);
    return {f.intercept, f.slope, f.residual, static_cast<std::int64_t>(first + 1), static_cast<std::int64_t>(N)};
}

void grow(std::vector<double>& v, std::size_t n)
{
    if (v.size() < n)
        v.resize(n, 0.0);
}

} // namespace

std::vector<SpiralPoint> unwrap_points(std::span<const Vec2> points, std::size_t* skipped)
{
    std::vector<SpiralPoint> out;
    std::size_t dropped = 0;
    double prev_angle = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Vec2 p = points[i];
        if (p.x == 0 && p.y == 0) {
            ++dropped;
            continue;
        }
        const double angle = -std::atan2(p.y, p.x); // clockwise polar angle
        SpiralPoint s;
        s.n = static_cast<std::int64_t>(out.size()) + 1;
        s.r = std::hypot(p.x, p.y);
        s.theta = out.empty() ? fold(angle) : out.back().theta + fold(angle - prev_angle);
        s.source = static_cast<std::int64_t>(i);
        prev_angle = angle;
        out.push_back(s);
    }
    if (skipped)
        *skipped = dropped;
    return out;
}

std::vector<SpiralPoint> unwrap_spiral(std::span<const LabelEvent> labels, int max_depth, std::size_t* skipped)
{
    std::vector<Vec2> pts;
    std::vector<std::int64_t> index;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i].depth <= max_depth) {
            pts.push_back({static_cast<double>(labels[i].v.x), static_cast<double>(labels[i].v.y)});
            index.push_back(static_cast<std::int64_t>(i));
        }
    auto spiral = unwrap_points(pts, skipped);
    for (auto& s : spiral)
        s.source = index[static_cast<std::size_t>(s.source)];
    return spiral;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw AnalysisError("line fit needs at least two points");
    const auto n = static_cast<double>(x.size());
    double mx = 0;
    double my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0;
    double sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0)
        throw AnalysisError("line fit with constant abscissa");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - f.intercept - f.slope * x[i];
        ss += e * e;
    }
    f.residual = std::sqrt(ss / n);
    f.count = x.size();
    return f;
}

void SpiralAccumulator::add(std::span<const SpiralPoint> walk)
{
    grow(sum_r_, walk.size());
    grow(sum_r2_, walk.size());
    grow(sum_t_, walk.size());
    grow(sum_t2_, walk.size());
    for (std::size_t i = 0; i < walk.size(); ++i) {
        sum_r_[i] += walk[i].r;
        sum_r2_[i] += walk[i].r * walk[i].r;
        sum_t_[i] += walk[i].theta;
        sum_t2_[i] += walk[i].theta * walk[i].theta;
    }
    min_length_ = walks_ == 0 ? walk.size() : std::min(min_length_, walk.size());
    ++walks_;
}

namespace {

RatioSeries ratio_series(const std::vector<double>& num, const std::vector<double>& den, std::size_t N,
                         std::size_t walks, bool root, const std::vector<double>& sum_r,
                         const std::vector<double>& sum_t)
{
    if (walks == 0 || N < 2)
        throw AnalysisError("spiral ratio needs walks with at least two labels");
    RatioSeries s;
    for (std::size_t i = 0; i < N; ++i) {
        s.n.push_back(static_cast<double>(i + 1));
        s.ratio.push_back(root ? std::sqrt(num[i]) / std::sqrt(den[i]) : num[i] / den[i]);
    }
    const PowerFit f = fit_upper_half(s.ratio, 0.25);
    s.fit.b_est = f.c;
    s.fit.correction = f.A;
    s.fit.residual = f.residual;
    s.fit.n_lo = f.n_lo;
    s.fit.n_hi = f.n_hi;
    s.fit.low_confidence = walks < 2;

    std::vector<double> mr;
    std::vector<double> mt;
    std::vector<double> nn;
    std::vector<double> rr;
    for (auto i = static_cast<std::size_t>(f.n_lo - 1); i < N; ++i) {
        mr.push_back(sum_r[i] / static_cast<double>(walks));
        mt.push_back(sum_t[i] / static_cast<double>(walks));
        nn.push_back(s.n[i]);
        rr.push_back(s.ratio[i]);
    }
    if (mt.size() >= 2) {
        try {
            s.fit.a_est = fit_line(mt, mr).intercept;
        } catch (const AnalysisError&) {
            s.fit.a_est = std::nan("");
        }
        s.late_slope = fit_line(nn, rr).slope;
    }
    return s;
}

} // namespace

RatioSeries SpiralAccumulator::rms_ratio() const
{
    return ratio_series(sum_r2_, sum_t2_, common_length(), walks_, true, sum_r_, sum_t_);
}

RatioSeries SpiralAccumulator::mean_ratio() const
{
    return ratio_series(sum_r_, sum_t_, common_length(), walks_, false, sum_r_, sum_t_);
}

RatioSeries rms_ratio(const std::vector<std::vector<SpiralPoint>>& ensemble)
{
    SpiralAccumulator acc;
    for (const auto& w : ensemble)
        acc.add(w);
    return acc.rms_ratio();
}

RatioSeries mean_ratio(const std::vector<std::vector<SpiralPoint>>& ensemble)
{
    SpiralAccumulator acc;
    for (const auto& w : ensemble)
        acc.add(w);
    return acc.mean_ratio();
}

ThetaWindowAccumulator::ThetaWindowAccumulator(double window) : window_(window)
{
    if (!(window > 0))
        throw AnalysisError("theta window must be positive");
}

void ThetaWindowAccumulator::add(std::span<const SpiralPoint> walk)
{
    for (const auto& p : walk)
        if (p.theta > 0) {
            auto& [r, t, c] = bins_[static_cast<std::int64_t>(std::floor(p.theta / window_))];
            r += p.r;
            t += p.theta;
            ++c;
        }
}

ThetaWindowRatio ThetaWindowAccumulator::result() const
{
    ThetaWindowRatio out;
    for (const auto& [bin, acc] : bins_) {
        const auto& [r, t, c] = acc;
        out.theta_mid.push_back((static_cast<double>(bin) + 0.5) * window_);
        out.ratio.push_back(r / t);
        out.count.push_back(c);
    }
    return out;
}

ThetaWindowRatio mean_ratio_by_theta(const std::vector<std::vector<SpiralPoint>>& ensemble, double window)
{
    ThetaWindowAccumulator acc(window);
    for (const auto& walk : ensemble)
        acc.add(walk);
    return acc.result();
}

std::vector<double> label_gaps(std::span<const LabelEvent> labels, int max_depth)
{
    std::vector<double> gaps;
    const LabelEvent* prev = nullptr;
    for (const auto& l : labels) {
        if (l.depth > max_depth)
            continue;
        if (prev)
            gaps.push_back(static_cast<double>(l.t_in - prev->t_out));
        prev = &l;
    }
    return gaps;
}

void GapAccumulator::add(std::span<const double> gaps)
{
    grow(sum_, gaps.size());
    for (std::size_t i = 0; i < gaps.size(); ++i)
        sum_[i] += gaps[i];
    min_length_ = walks_ == 0 ? gaps.size() : std::min(min_length_, gaps.size());
    ++walks_;
}

GapSeries GapAccumulator::result() const
{
    const std::size_t N = walks_ ? min_length_ : 0;
    if (N < 2)
        throw AnalysisError("gap statistics need walks with at least three labels");
    GapSeries g;
    for (std::size_t i = 0; i < N; ++i) {
        g.n.push_back(static_cast<double>(i + 1));
        g.mean_gap.push_back(sum_[i] / static_cast<double>(walks_));
    }
    const PowerFit f = fit_upper_half(g.mean_gap, 0.5);
    g.asymptote = f.c;
    g.correction = f.A;
    g.residual = f.residual;
    g.n_lo = f.n_lo;
    g.n_hi = f.n_hi;
    return g;
}

GapSeries gap_stats(const std::vector<std::vector<LabelEvent>>& walks, int max_depth)
{
    GapAccumulator acc;
    for (const auto& w : walks)
        acc.add(label_gaps(w, max_depth));
    return acc.result();
}

std::int64_t annulus_sites(double lo, double hi)
{
    if (hi <= lo)
        return 0;
    const auto reach = static_cast<std::int64_t>(std::ceil(hi));
    const double lo2 = lo * lo;
    const double hi2 = hi * hi;
    std::int64_t count = 0;
    for (std::int64_t x = -reach; x <= reach; ++x)
        for (std::int64_t y = -reach; y <= reach; ++y) {
            const auto d2 = static_cast<double>(x * x + y * y);
            count += d2 >= lo2 && d2 < hi2;
        }
    return count;
}

DensityAccumulator::DensityAccumulator(std::int64_t T, double bin_width) : T_(T), width_(bin_width)
{
    if (T < 1 || !(bin_width > 0))
        throw AnalysisError("density needs T >= 1 and a positive bin width");
    const double reach = 3.0 * std::cbrt(static_cast<double>(T)) + bin_width;
    counts_.assign(static_cast<std::size_t>(std::ceil(reach / bin_width)), 0);
}

void DensityAccumulator::add(std::span<const LabelEvent> labels, int max_depth)
{
    for (const auto& l : labels) {
        if (l.depth > max_depth)
            continue;
        const double r = std::hypot(static_cast<double>(l.v.x), static_cast<double>(l.v.y));
        const auto bin = static_cast<std::size_t>(r / width_);
        if (bin >= counts_.size())
            counts_.resize(bin + 1, 0);
        ++counts_[bin];
    }
    ++walks_;
}

DensityProfile DensityAccumulator::result() const
{
    if (walks_ == 0)
        throw AnalysisError("density of an empty ensemble");
    DensityProfile d;
    d.bin_width = width_;
    const double scale = std::cbrt(static_cast<double>(T_));
    d.plateau_lo = 0.1 * scale;
    d.plateau_hi = 0.5 * scale;
    d.far_radius = 2.0 * scale;
    std::int64_t plateau_labels = 0;
    std::int64_t plateau_sites = 0;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        const double lo = static_cast<double>(i) * width_;
        const double hi = lo + width_;
        const std::int64_t sites = annulus_sites(lo, hi);
        d.edges.push_back(lo);
        d.sites.push_back(sites);
        d.density.push_back(static_cast<double>(counts_[i]) / static_cast<double>(sites) /
                            static_cast<double>(walks_));
        const double mid = 0.5 * (lo + hi);
        if (mid >= d.plateau_lo && mid <= d.plateau_hi) {
            plateau_labels += counts_[i];
            plateau_sites += sites;
        }
        if (lo >= d.far_radius)
            d.far_max = std::max(d.far_max, d.density.back());
    }
    d.edges.push_back(static_cast<double>(counts_.size()) * width_);
    d.peak = d.density.front();
    if (plateau_sites > 0)
        d.plateau = static_cast<double>(plateau_labels) / static_cast<double>(plateau_sites) / static_cast<double>(walks_);
    d.falloff_radius = d.edges.back();
    for (std::size_t i = 0; i < d.density.size(); ++i)
        if (d.edges[i] >= d.plateau_lo && d.density[i] < 0.5 * d.plateau) {
            d.falloff_radius = d.edges[i];
            break;
        }
    return d;
}

DensityProfile label_density(const std::vector<std::vector<LabelEvent>>& walks, std::int64_t T, int max_depth)
{
    DensityAccumulator acc(T);
    for (const auto& w : walks)
        acc.add(w, max_depth);
    return acc.result();
}

MsdSeries mean_square_displacement(const std::vector<std::vector<Sample>>& walks)
{
    if (walks.empty())
        throw AnalysisError("displacement of an empty ensemble");
    std::map<std::int64_t, std::pair<double, std::size_t>> acc;
    for (const auto& w : walks)
        for (const auto& s : w) {
            auto& [sum, count] = acc[s.t];
            sum += static_cast<double>(s.r2());
            ++count;
        }
    MsdSeries m;
    for (const auto& [t, v] : acc)
        if (v.second == walks.size()) {
            m.t.push_back(static_cast<double>(t));
            m.mean_r2.push_back(v.first / static_cast<double>(walks.size()));
        }
    return m;
}

ExponentFit msd_exponent(const MsdSeries& msd, double decades)
{
    if (msd.t.empty())
        throw AnalysisError("no shared sample times");
    if (decades < 1.0)
        throw AnalysisError("fit window must span at least one decade");
    const double t_hi = msd.t.back();
    const double t_lo = t_hi / std::pow(10.0, decades);
    if (msd.t.front() > t_lo * (1 + 1e-12))
        throw AnalysisError("samples span fewer decades than the fit window");
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < msd.t.size(); ++i)
        if (msd.t[i] >= t_lo * (1 - 1e-12) && msd.mean_r2[i] > 0) {
            x.push_back(std::log(msd.t[i]));
            y.push_back(std::log(msd.mean_r2[i]));
        }
    if (x.size() < 3)
        throw AnalysisError("too few samples in the fit window");
    const LineFit f = fit_line(x, y);
    return {0.5 * f.slope, t_lo, t_hi, f.residual, f.count};
}

ExponentFit msd_exponent(const std::vector<std::vector<Sample>>& walks, double decades)
{
    return msd_exponent(mean_square_displacement(walks), decades);
}

std::vector<Loop> loop_partition(std::span<const SpiralPoint> spiral, std::span<const LabelEvent> labels)
{
    std::vector<Loop> loops;
    std::size_t k = 0;
    while (k < spiral.size()) {
        std::size_t end = k + 1;
        while (end < spiral.size() && spiral[end].theta < spiral[k].theta + kTwoPi)
            ++end;
        if (end >= spiral.size())
            break;
        Loop loop;
        loop.k = spiral[k].n;
        loop.k_end = spiral[end].n;
        double sum_r = 0;
        for (std::size_t j = k; j <= end; ++j)
            sum_r += spiral[j].r;
        loop.radius = sum_r / static_cast<double>(end - k + 1);
        loop.delta_r = spiral[end].r - spiral[k].r;
        const auto first = static_cast<std::size_t>(spiral[k].source);
        const auto last = static_cast<std::size_t>(spiral[end].source);
        if (last >= labels.size())
            throw AnalysisError("spiral does not match its label sequence");
        loop.duration = labels[last].t_in - labels[first].t_in;
        for (std::size_t j = first; j <= last; ++j)
            loop.area += labels[j].area;
        loops.push_back(loop);
        k = end;
    }
    return loops;
}

LineFit loop_growth(std::span<const Loop> loops)
{
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& l : loops)
        if (l.radius > 0 && l.duration > 0) {
            x.push_back(std::log(l.radius));
            y.push_back(std::log(static_cast<double>(l.duration)));
        }
    return fit_line(x, y);
}

} // namespace rotor::analysis
