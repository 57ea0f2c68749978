#include "zerolab/zero_counter.hpp"

#include "zerolab/errors.hpp"
#include "zerolab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace zerolab {

namespace {

constexpr double kRefineTolerance = 1e-10;
constexpr double kEndpointSlack = 1e-10;
constexpr double kTinyValue = 1e-12;
constexpr int kSubdivisions = 16;

bool opposite(double a, double b) { return (a < 0.0) != (b < 0.0); }

// Safeguarded Newton inside a sign-change bracket.
double refine_root(const PathRealization& path, double lo, double hi, double flo)
{
    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200 && hi - lo > kRefineTolerance; ++iter) {
        const auto [fx, dx] = evaluate_with_deriv(path, x);
        if (fx == 0.0) return x;
        if (opposite(fx, flo)) {
            hi = x;
        } else {
            lo = x;
            flo = fx;
        }
        const double newton = dx != 0.0 ? x - fx / dx : lo - 1.0;
        if (newton > lo && newton < hi && std::abs(newton - x) < 0.5 * (hi - lo)) {
            if (std::abs(newton - x) < 0.25 * kRefineTolerance) return newton;
            x = newton;
        } else {
            x = 0.5 * (lo + hi);
        }
    }
    return 0.5 * (lo + hi);
}

class ZeroCollector {
public:
    ZeroCollector(const PathRealization& path, bool retain) : path_(path), retain_(retain) {}

    void node(double t)
    {
        ++count_;
        if (retain_) locations_.push_back(t);
    }

    void bracket(double lo, double hi, double flo)
    {
        ++count_;
        if (retain_) locations_.push_back(refine_root(path_, lo, hi, flo));
    }

    long count() const { return count_; }
    std::vector<double>& locations() { return locations_; }

private:
    const PathRealization& path_;
    bool retain_;
    long count_ = 0;
    std::vector<double> locations_;
};

bool suspicious_cell(double fa, double fb, double da, double db, double h)
{
    if (std::abs(fa) < kTinyValue && std::abs(fb) < kTinyValue) return true;
    const bool interior_min = fa * da < 0.0 && fb * db > 0.0;
    return interior_min && std::min(std::abs(fa), std::abs(fb)) < h * std::max(std::abs(da), std::abs(db));
}

void rescan_cell(const PathRealization& path, double a, double h, double fa, double fb, ZeroCollector& out)
{
    const double sub = h / kSubdivisions;
    double prev_t = a;
    double prev_f = fa;
    for (int i = 1; i <= kSubdivisions; ++i) {
        const double t = a + sub * i;
        const double f = i == kSubdivisions ? fb : evaluate(path, t);
        if (i < kSubdivisions && f == 0.0) {
            out.node(t);
        } else if (prev_f != 0.0 && f != 0.0 && opposite(prev_f, f)) {
            out.bracket(prev_t, t, prev_f);
        }
        prev_t = t;
        prev_f = f;
    }
}

} // namespace

double default_grid_step(const WaveExpansion& frame)
{
    const double sigma = frame.max_frequency();
    return sigma > 0.0 ? std::numbers::pi / (20.0 * sigma) : 1.0;
}

ZeroReport count_zeros(const PathRealization& path, double T, double grid_step, const ZeroCountOptions& options)
{
    if (!(T > 0.0)) throw ValidationError("count_zeros needs T > 0");
    if (!(grid_step > 0.0)) throw ValidationError("count_zeros needs grid_step > 0");
    const double sigma = path.frame().max_frequency();
    if (sigma > 0.0 && grid_step > std::numbers::pi / (20.0 * sigma) * (1.0 + 1e-12)) {
        throw ResolutionTooCoarse("grid step exceeds pi/(20 sigma) for sigma = " + std::to_string(sigma));
    }

    const auto cells = std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::ceil(T / grid_step - 1e-9)));
    const double h = T / static_cast<double>(cells);
    const double t0 = options.start;

    Eigen::VectorXd f;
    Eigen::VectorXd d;
    evaluate_grid(path, t0, h, cells + 1, f, &d);

    ZeroCollector zeros(path, options.retain_locations);

    const double before = evaluate(path, t0 - kEndpointSlack);
    if (f(0) != 0.0 && before != 0.0 && opposite(before, f(0))) zeros.node(t0);

    for (Eigen::Index k = 0; k <= cells; ++k) {
        if (f(k) == 0.0) zeros.node(t0 + static_cast<double>(k) * h);
    }
    for (Eigen::Index k = 0; k < cells; ++k) {
        const double fa = f(k);
        const double fb = f(k + 1);
        if (fa == 0.0 || fb == 0.0) continue;
        const double a = t0 + static_cast<double>(k) * h;
        if (opposite(fa, fb)) {
            zeros.bracket(a, a + h, fa);
        } else if (suspicious_cell(fa, fb, d(k), d(k + 1), h)) {
            rescan_cell(path, a, h, fa, fb, zeros);
        }
    }

    const double after = evaluate(path, t0 + T + kEndpointSlack);
    if (f(cells) != 0.0 && after != 0.0 && opposite(f(cells), after)) zeros.node(t0 + T);

    ZeroReport report;
    report.start = t0;
    report.T = T;
    report.count = zeros.count();
    report.grid_step = h;
    report.refinement_tolerance = kRefineTolerance;
    if (options.retain_locations) {
        auto& loc = zeros.locations();
        for (double& x : loc) x = std::clamp(x, t0, t0 + T);
        std::sort(loc.begin(), loc.end());
        report.zero_locations = std::move(loc);
    }
    return report;
}

double kac_rice_density(const SpectralMeasure& mu)
{
    return std::sqrt(moment(mu, 2)) / std::numbers::pi;
}

DensitySummary empirical_density(const SpectralMeasure& mu, double T, std::size_t n_samples,
                                 std::uint64_t base_seed, const DensityOptions& options)
{
    if (n_samples < 2) throw ValidationError("empirical_density needs at least 2 samples");
    const int n_freq = options.n_freq > 0 ? options.n_freq : default_n_freq(mu, T);
    const FramePtr frame = discretize(mu, n_freq);
    const double step = default_grid_step(*frame);

    DensitySummary out;
    out.T = T;
    out.counts = parallel_map(n_samples, resolve_workers(options.workers), [&](std::size_t i) {
        Rng rng = make_stream(base_seed, i);
        return count_zeros(sample_path(frame, rng), T, step).count;
    });
    out.seeds.resize(n_samples);
    std::vector<double> density(n_samples);
    std::vector<double> squared(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        out.seeds[i] = stream_seed(base_seed, i);
        density[i] = static_cast<double>(out.counts[i]) / T;
    }
    const double n = static_cast<double>(n_samples);
    out.mean = pairwise_sum(density) / n;
    for (std::size_t i = 0; i < n_samples; ++i) squared[i] = (density[i] - out.mean) * (density[i] - out.mean);
    out.standard_error = std::sqrt(pairwise_sum(squared) / (n - 1.0) / n);
    out.min = *std::min_element(density.begin(), density.end());
    out.max = *std::max_element(density.begin(), density.end());
    return out;
}

} // namespace zerolab
