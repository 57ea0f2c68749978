#include "zerolab/rare_events.hpp"

#include "zerolab/errors.hpp"
#include "zerolab/parallel.hpp"
#include "zerolab/zero_counter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace zerolab {

namespace {

constexpr double kZ95 = 1.96;
constexpr double kMinEss = 10.0;

struct SampleOutcome {
    long zeros = 0;
    double log_lr = 0.0;
    bool fired = false;
    bool contradiction = false;
};

double log_sum_exp(const std::vector<double>& v) { return pairwise_log_sum_exp(v); }

double sum_exp(const std::vector<double>& v)
{
    std::vector<double> e(v.size());
    std::transform(v.begin(), v.end(), e.begin(), [](double x) { return std::exp(x); });
    return pairwise_sum(e);
}

/// Importance-weighted summary; hit_log_lr holds log LR of the hits, all_log_lr of every sample.
void fill_weighted(TailEstimate& out, const std::vector<double>& hit_log_lr, const std::vector<double>& all_log_lr)
{
    const auto n = static_cast<double>(out.n_samples);
    out.hits = static_cast<long>(hit_log_lr.size());

    const double mean_lr = sum_exp(all_log_lr) / n;
    std::vector<double> doubled(all_log_lr.size());
    std::transform(all_log_lr.begin(), all_log_lr.end(), doubled.begin(), [](double x) { return 2.0 * x; });
    out.lr_mean = mean_lr;
    out.lr_mean_se = std::sqrt(std::max(0.0, sum_exp(doubled) / n - mean_lr * mean_lr) / (n - 1.0));

    if (hit_log_lr.empty()) {
        out.p_hat = 0.0;
        out.log_p_hat = -std::numeric_limits<double>::infinity();
        out.log_p_se = std::numeric_limits<double>::infinity();
        out.ci_lo = 0.0;
        out.ci_hi = 0.0;
        out.ess = 0.0;
        out.degenerate_ess = true;
        return;
    }
    const double log_s1 = log_sum_exp(hit_log_lr);
    std::vector<double> hit_doubled(hit_log_lr.size());
    std::transform(hit_log_lr.begin(), hit_log_lr.end(), hit_doubled.begin(), [](double x) { return 2.0 * x; });
    const double log_s2 = log_sum_exp(hit_doubled);

    out.log_p_hat = log_s1 - std::log(n);
    out.p_hat = std::min(1.0, sum_exp(hit_log_lr) / n);
    out.ess = std::exp(2.0 * log_s1 - log_s2);
    out.degenerate_ess = out.ess < kMinEss;
    const double relative_se = std::sqrt(std::max(0.0, n / out.ess - 1.0) / (n - 1.0));
    out.log_p_se = relative_se;
    out.standard_error = out.p_hat * relative_se;
    out.ci_lo = std::max(0.0, out.p_hat - kZ95 * out.standard_error);
    out.ci_hi = std::min(1.0, out.p_hat + kZ95 * out.standard_error);
}

void fill_plain(TailEstimate& out, long hits)
{
    const auto n = static_cast<double>(out.n_samples);
    out.hits = hits;
    out.p_hat = static_cast<double>(hits) / n;
    out.ess = n;
    out.standard_error = std::sqrt(out.p_hat * (1.0 - out.p_hat) / n);
    if (hits == 0) {
        out.ci_lo = 0.0;
        out.ci_hi = 3.0 / n;
        out.log_p_hat = -std::numeric_limits<double>::infinity();
        out.log_p_se = std::numeric_limits<double>::infinity();
    } else {
        const auto ci = wilson_interval(hits, out.n_samples);
        out.ci_lo = ci.lo;
        out.ci_hi = ci.hi;
        out.log_p_hat = std::log(out.p_hat);
        out.log_p_se = std::sqrt((1.0 - out.p_hat) / (n * out.p_hat));
    }
}

std::vector<Eigen::Index> band_nodes(const WaveExpansion& frame, const BandQuery& band)
{
    std::vector<Eigen::Index> idx;
    const double tol = band.half_width * (1.0 + 1e-12) + 1e-15;
    for (Eigen::Index j = 0; j < frame.size(); ++j) {
        if (std::abs(frame.frequencies()(j) - band.center) <= tol) idx.push_back(j);
    }
    return idx;
}

WaveCertificate certify(const PathRealization& path, const BandQuery& band, double eps_prime, double L, double T,
                        long zero_count)
{
    const double a = band.center;
    if (!(a > 0.0)) throw ValidationError("wave_certificate needs a band centre a > 0");
    if (!(T > 0.0)) throw ValidationError("wave_certificate needs T > 0");

    WaveCertificate c;
    c.band_center = a;
    c.half_width = band.half_width;
    c.L = L;
    c.amplitude_floor = 10.0 * L;
    c.eps_prime = eps_prime;
    c.zero_count = zero_count;
    const double density = static_cast<double>(zero_count) / T;
    c.density_window_holds = density >= (a - 2.0 * eps_prime) / std::numbers::pi
                             && density <= (a + 2.0 * eps_prime) / std::numbers::pi;

    const auto& frame = path.frame();
    const auto idx = band_nodes(frame, band);
    if (idx.empty()) return c;

    double W = 0.0;
    for (auto j : idx) W += frame.weights()(j);
    double xi1 = 0.0;
    for (auto j : idx) xi1 += std::sqrt(frame.weights()(j) / W) * path.xi()(j);
    c.amplitude = std::sqrt(W) * xi1;

    Eigen::VectorXd residual_xi = path.xi();
    for (auto j : idx) residual_xi(j) -= xi1 * std::sqrt(frame.weights()(j) / W);
    const PathRealization G(path.frame_ptr(), std::move(residual_xi), path.eta());

    const double step = default_grid_step(frame);
    const auto cells = std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::ceil(T / step)));
    const double h = T / static_cast<double>(cells);
    Eigen::VectorXd g;
    Eigen::VectorXd dg;
    evaluate_grid(G, 0.0, h, cells + 1, g, &dg);
    const double h2 = h * h / 8.0;
    c.residual_sup = g.cwiseAbs().maxCoeff() + h2 * G.derivative_bound(2);
    c.residual_deriv_sup = dg.cwiseAbs().maxCoeff() + h2 * G.derivative_bound(3);

    c.E1 = c.amplitude >= c.amplitude_floor;
    c.E2 = c.residual_sup <= L;
    c.E3 = c.residual_deriv_sup <= a * L;
    if (!(c.amplitude > 0.0)) return c;

    double spread = 0.0;
    for (auto j : idx) spread += frame.weights()(j) * std::abs(frame.frequencies()(j) - a);
    spread /= W;
    c.value_deviation = spread * T + c.residual_sup / c.amplitude;
    c.deriv_deviation = spread * (a * T + 1.0) / a + c.residual_deriv_sup / (a * c.amplitude);
    c.S1 = c.value_deviation < 0.5;
    c.S2 = c.deriv_deviation < 0.5;

    const double period = std::numbers::pi / a;
    c.sign_alternation = true;
    for (long k = 0; static_cast<double>(k) * period <= T; ++k) {
        const double f = evaluate(path, static_cast<double>(k) * period);
        const bool positive = f > 0.0;
        const bool negative = f < 0.0;
        if (!((k % 2 == 0 && positive) || (k % 2 == 1 && negative))) {
            c.sign_alternation = false;
            break;
        }
    }

    long full = 0;
    bool partial = false;
    for (long k = 0;; ++k) {
        const double lo = (static_cast<double>(k) + 0.25) * period;
        const double hi = (static_cast<double>(k) + 0.75) * period;
        if (lo >= T) break;
        if (hi <= T) {
            ++full;
        } else {
            partial = true;
        }
    }
    c.window_lo = full;
    c.window_hi = full + (partial ? 1 : 0);
    return c;
}

double mean(std::span<const double> v)
{
    return pairwise_sum(v) / static_cast<double>(v.size());
}

LineFit fit_line(std::span<const double> x, std::span<const double> y)
{
    const double mx = mean(x);
    const double my = mean(y);
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    f.intercept = my - f.slope * mx;
    f.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return f;
}

} // namespace

std::string to_string(Side side) { return side == Side::over ? "over" : "under"; }

std::string to_string(EstimatorKind kind) { return kind == EstimatorKind::naive ? "naive" : "tilted"; }

std::string to_string(DecayRegime regime)
{
    return regime == DecayRegime::linear_in_T ? "linear_in_T" : "quadratic_in_T";
}

Side parse_side(const std::string& text)
{
    if (text == "over") return Side::over;
    if (text == "under") return Side::under;
    throw ValidationError("side must be 'over' or 'under', got '" + text + "'");
}

CountEvent tail_event(double T, double eta, Side side)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    return side == Side::over ? CountEvent{eta * T, inf} : CountEvent{-inf, eta * T};
}

CountEvent density_window_event(double T, double X, double eps)
{
    return {T * (X - 2.0 * eps) / std::numbers::pi, T * (X + 2.0 * eps) / std::numbers::pi};
}

Interval wilson_interval(long hits, std::size_t n, double z)
{
    if (n == 0) throw ValidationError("wilson_interval needs n > 0");
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(hits) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double centre = (p + z2 / (2.0 * nn)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
    const double lo = hits <= 0 ? 0.0 : std::max(0.0, centre - half);
    const double hi = hits >= static_cast<long>(n) ? 1.0 : std::min(1.0, centre + half);
    return {lo, hi};
}

TailEstimate naive_event(const FramePtr& frame, double T, const CountEvent& event, std::size_t n_samples,
                         std::uint64_t base_seed, unsigned workers)
{
    if (n_samples < 2) throw ValidationError("need at least 2 samples");
    const double step = default_grid_step(*frame);
    const auto counts = parallel_map(n_samples, resolve_workers(workers), [&](std::size_t i) {
        Rng rng = make_stream(base_seed, i);
        return count_zeros(sample_path(frame, rng), T, step).count;
    });
    TailEstimate out;
    out.T = T;
    out.n_samples = n_samples;
    out.estimator = EstimatorKind::naive;
    const long hits = std::count_if(counts.begin(), counts.end(), [&](long c) { return event.contains(c); });
    fill_plain(out, hits);
    return out;
}

TailEstimate naive_tail(const SpectralMeasure& mu, double T, double eta, Side side, std::size_t n_samples,
                        std::uint64_t base_seed, const SamplingOptions& options)
{
    if (n_samples < 100) throw ValidationError("naive_tail needs at least 100 samples");
    if (!(T > 0.0)) throw ValidationError("naive_tail needs T > 0");
    const int n_freq = options.n_freq > 0 ? options.n_freq : default_n_freq(mu, T);
    auto out = naive_event(discretize(mu, n_freq), T, tail_event(T, eta, side), n_samples, base_seed,
                           options.workers);
    out.eta = eta;
    out.side = side;
    return out;
}

TiltPlan plan_tilt(const SpectralMeasure& mu, double T, double X, double eps, const TiltOptions& options)
{
    if (!(T > 0.0)) throw ValidationError("tilted_tail needs T > 0");
    TiltPlan plan;
    plan.band = select_heavy_band(mu, X, eps, T);
    const double window_mass = band_mass(mu, {X, eps});
    const double w = plan.band.half_width;
    const double a = plan.band.center;

    auto& d = plan.descriptor;
    d.band_center = a;
    d.half_width = w;
    d.band_mass = band_mass(mu, plan.band);
    d.kappa = eps / (10.0 * window_mass);
    d.L = options.L_override ? *options.L_override : std::pow(d.kappa, -1.0 / 3.0);
    d.theta = options.theta_override ? *options.theta_override : 10.0 * d.L / std::sqrt(2.0 * d.band_mass);

    const int n_freq = options.n_freq > 0 ? options.n_freq : default_n_freq(mu, T);
    plan.frame = discretize(mu.refined_at({a - w, a + w}), n_freq);
    plan.band_indices = band_nodes(*plan.frame, plan.band);
    if (plan.band_indices.empty()) throw EmptyBand("no discretization node inside the selected band");
    d.band_nodes = static_cast<long>(plan.band_indices.size());

    double W = 0.0;
    for (auto j : plan.band_indices) W += plan.frame->weights()(j);
    const Eigen::Index n = plan.frame->size();
    plan.shift.xi_shift = Eigen::VectorXd::Zero(n);
    plan.shift.eta_shift = Eigen::VectorXd::Zero(n);
    for (auto j : plan.band_indices) plan.shift.xi_shift(j) = d.theta * std::sqrt(plan.frame->weights()(j) / W);

    plan.event = options.event_override ? *options.event_override : density_window_event(T, X, eps);
    plan.eps_prime = std::abs(a - X) + w;
    return plan;
}

TailEstimate tilted_event(const TiltPlan& plan, double T, std::size_t n_samples, std::uint64_t base_seed,
                          unsigned workers, bool certificates)
{
    if (n_samples < 2) throw ValidationError("need at least 2 samples");
    const double step = default_grid_step(*plan.frame);
    const auto outcomes = parallel_map(n_samples, resolve_workers(workers), [&](std::size_t i) {
        Rng rng = make_stream(base_seed, i);
        const auto path = sample_path(plan.frame, rng, plan.shift);
        SampleOutcome o;
        o.zeros = count_zeros(path, T, step).count;
        o.log_lr = path.log_likelihood_ratio();
        if (certificates) {
            const auto cert = certify(path, plan.band, plan.eps_prime, plan.descriptor.L, T, o.zeros);
            o.fired = cert.fired();
            o.contradiction = cert.contradicts();
        }
        return o;
    });

    TailEstimate out;
    out.T = T;
    out.eta = plan.band.center / std::numbers::pi;
    out.estimator = EstimatorKind::tilted;
    out.n_samples = n_samples;
    out.tilt = plan.descriptor;
    std::vector<double> all;
    std::vector<double> hits;
    all.reserve(n_samples);
    for (const auto& o : outcomes) {
        if (!std::isfinite(o.log_lr)) throw NumericError("non-finite likelihood ratio");
        all.push_back(o.log_lr);
        if (plan.event.contains(o.zeros)) hits.push_back(o.log_lr);
        out.certificates_fired += o.fired ? 1 : 0;
        out.certificate_contradictions += o.contradiction ? 1 : 0;
    }
    fill_weighted(out, hits, all);
    return out;
}

TailEstimate tilted_tail(const SpectralMeasure& mu, double T, double X, double eps, std::size_t n_samples,
                         std::uint64_t base_seed, const TiltOptions& options)
{
    const auto plan = plan_tilt(mu, T, X, eps, options);
    auto out = tilted_event(plan, T, n_samples, base_seed, options.workers, options.certificates);
    out.eta = X / std::numbers::pi;
    return out;
}

TailEstimate tilted_gaussian_tail(double threshold, double theta, std::size_t n_samples, std::uint64_t base_seed)
{
    if (n_samples < 2) throw ValidationError("need at least 2 samples");
    Rng rng = make_stream(base_seed, 0);
    std::normal_distribution<double> normal;
    std::vector<double> all(n_samples);
    std::vector<double> hits;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double x = theta + normal(rng);
        all[i] = -theta * x + 0.5 * theta * theta;
        if (x > threshold) hits.push_back(all[i]);
    }
    TailEstimate out;
    out.estimator = EstimatorKind::tilted;
    out.n_samples = n_samples;
    TiltDescriptor d;
    d.theta = theta;
    out.tilt = d;
    fill_weighted(out, hits, all);
    return out;
}

WaveCertificate wave_certificate(const PathRealization& path, const BandQuery& band, double eps_prime, double L,
                                 double T)
{
    const long zeros = count_zeros(path, T, default_grid_step(path.frame())).count;
    return certify(path, band, eps_prime, L, T, zeros);
}

DecayFit decay_fit(std::span<const double> T, std::span<const double> log_p)
{
    if (T.size() != log_p.size()) throw ValidationError("decay_fit: T and log p differ in length");
    std::vector<double> x;
    std::vector<double> x2;
    std::vector<double> y;
    for (std::size_t i = 0; i < T.size(); ++i) {
        if (!std::isfinite(log_p[i])) continue;
        x.push_back(T[i]);
        x2.push_back(T[i] * T[i]);
        y.push_back(log_p[i]);
    }
    if (y.size() < 3) throw InsufficientData("decay_fit needs at least 3 estimates with p_hat > 0");
    DecayFit f;
    f.points = y.size();
    f.linear = fit_line(x, y);
    f.quadratic = fit_line(x2, y);
    f.regime = f.linear.r_squared >= f.quadratic.r_squared ? DecayRegime::linear_in_T : DecayRegime::quadratic_in_T;
    return f;
}

DecayFit decay_fit(std::span<const TailEstimate> estimates)
{
    std::vector<double> T;
    std::vector<double> log_p;
    for (const auto& e : estimates) {
        T.push_back(e.T);
        log_p.push_back(e.log_p_hat);
    }
    return decay_fit(T, log_p);
}

} // namespace zerolab
