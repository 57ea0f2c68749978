#include "zerolab/sampler.hpp"

#include "zerolab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

namespace zerolab {

namespace {

constexpr double kRunTolerance = 1e-13;

std::vector<FrequencyRun> find_runs(const Eigen::VectorXd& f)
{
    std::vector<FrequencyRun> runs;
    const Eigen::Index n = f.size();
    Eigen::Index begin = 0;
    while (begin < n) {
        Eigen::Index end = begin + 1;  // exclusive
        if (end < n) {
            const double step = f(end) - f(begin);
            ++end;
            while (end < n) {
                const double d = f(end) - f(end - 1);
                if (std::abs(d - step) > kRunTolerance * std::max(1.0, std::abs(f(end)))) break;
                ++end;
            }
        }
        const Eigen::Index len = end - begin;
        const double step = len > 1 ? (f(end - 1) - f(begin)) / static_cast<double>(len - 1) : 0.0;
        runs.push_back({begin, len, step});
        begin = end;
    }
    return runs;
}

// Plain complex multiply without the NaN/Inf recovery of operator*.
inline void cmul_add(double& hr, double& hi, double qr, double qi, double cr, double ci)
{
    const double r = hr * qr - hi * qi + cr;
    const double i = hr * qi + hi * qr + ci;
    hr = r;
    hi = i;
}

} // namespace

WaveExpansion::WaveExpansion(Eigen::VectorXd frequencies, Eigen::VectorXd weights,
                             std::shared_ptr<const SpectralMeasure> source)
    : frequencies_(std::move(frequencies)), weights_(std::move(weights)), source_(std::move(source))
{
    if (!source_) throw ValidationError("wave expansion needs a source measure");
    if (frequencies_.size() == 0 || frequencies_.size() != weights_.size()) {
        throw ValidationError("wave expansion needs matching, non-empty frequency and weight arrays");
    }
    for (Eigen::Index j = 0; j < frequencies_.size(); ++j) {
        if (!(frequencies_(j) >= 0.0) || !std::isfinite(frequencies_(j))) {
            throw ValidationError("frequencies must be finite and >= 0");
        }
        if (j > 0 && !(frequencies_(j) > frequencies_(j - 1))) {
            throw ValidationError("frequencies must be strictly increasing");
        }
        if (!(weights_(j) > 0.0)) throw ValidationError("weights must be > 0");
    }
    if (std::abs(weights_.sum() - 1.0) > 1e-12) {
        throw ValidationError("weights must sum to 1");
    }
    const auto [B, A] = support_bounds(*source_);
    if (max_frequency() > A + 1e-12) {
        throw FrequencyOutOfBand("frequency above the support edge A of the source measure");
    }
    if (frequencies_(0) < B - 1e-12) {
        throw FrequencyOutOfBand("frequency below the inner support edge B of the source measure");
    }
    runs_ = find_runs(frequencies_);
}

std::string WaveExpansion::hash() const
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](const Eigen::VectorXd& v) {
        const auto* bytes = reinterpret_cast<const unsigned char*>(v.data());
        for (std::size_t i = 0; i < static_cast<std::size_t>(v.size()) * sizeof(double); ++i) {
            h ^= bytes[i];
            h *= 0x100000001b3ULL;
        }
    };
    feed(frequencies_);
    feed(weights_);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

PathRealization::PathRealization(FramePtr frame, Eigen::VectorXd xi, Eigen::VectorXd eta,
                                 std::optional<CoefficientTilt> tilt)
    : frame_(std::move(frame)), xi_(std::move(xi)), eta_(std::move(eta)), tilt_(std::move(tilt))
{
    if (!frame_) throw ValidationError("path needs a frame");
    const Eigen::Index n = frame_->size();
    if (xi_.size() != n || eta_.size() != n) {
        throw ValidationError("coefficient count must equal frequency count");
    }
    if (tilt_ && (tilt_->xi_shift.size() != n || tilt_->eta_shift.size() != n)) {
        throw ValidationError("tilt size must equal frequency count");
    }
    const Eigen::ArrayXd amp = frame_->weights().array().sqrt();
    alpha_.resize(n);
    beta_.resize(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        alpha_(j) = std::complex<double>(0.5 * amp(j) * xi_(j), -0.5 * amp(j) * eta_(j));
        beta_(j) = std::complex<double>(0.0, frame_->frequencies()(j)) * alpha_(j);
    }
}

double PathRealization::log_likelihood_ratio() const
{
    if (!tilt_) return 0.0;
    // Gaussian density ratio N(0,1)/N(theta,1) at x is exp(-theta x + theta^2 / 2).
    const auto& t = *tilt_;
    return -t.xi_shift.dot(xi_) + 0.5 * t.xi_shift.squaredNorm() - t.eta_shift.dot(eta_)
           + 0.5 * t.eta_shift.squaredNorm();
}

double PathRealization::derivative_bound(int order) const
{
    const auto& f = frame_->frequencies().array();
    const Eigen::ArrayXd amp = frame_->weights().array().sqrt() * (xi_.array().abs() + eta_.array().abs());
    return (amp * f.pow(order)).sum();
}

FramePtr discretize(const SpectralMeasure& mu, int n_freq)
{
    if (n_freq < 1) throw ValidationError("n_freq must be >= 1");
    struct Node {
        double lambda;
        double weight;
    };
    std::vector<Node> nodes;
    for (const auto& a : mu.atoms()) nodes.push_back({a.frequency, a.mass});

    const auto& pieces = mu.pieces();
    if (!pieces.empty()) {
        const auto n_pieces = static_cast<long>(pieces.size());
        const long remaining = std::max<long>(n_freq - static_cast<long>(mu.atoms().size()), n_pieces);
        std::vector<double> masses;
        for (const auto& p : pieces) masses.push_back(2.0 * p.density * (p.hi - p.lo));
        const double piece_total = std::accumulate(masses.begin(), masses.end(), 0.0);

        // Largest-remainder allocation, at least one node per piece.
        std::vector<long> count(pieces.size());
        std::vector<double> frac(pieces.size());
        long assigned = 0;
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            const double share = static_cast<double>(remaining) * masses[i] / piece_total;
            count[i] = std::max<long>(1, static_cast<long>(std::floor(share)));
            frac[i] = share - std::floor(share);
            assigned += count[i];
        }
        std::vector<std::size_t> order(pieces.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
        for (std::size_t k = 0; assigned < remaining; k = (k + 1) % order.size()) {
            ++count[order[k]];
            ++assigned;
        }

        for (std::size_t i = 0; i < pieces.size(); ++i) {
            const auto& p = pieces[i];
            const double h = (p.hi - p.lo) / static_cast<double>(count[i]);
            const double w = masses[i] / static_cast<double>(count[i]);
            for (long k = 0; k < count[i]; ++k) {
                nodes.push_back({p.lo + (static_cast<double>(k) + 0.5) * h, w});
            }
        }
    }

    std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.lambda < b.lambda; });
    Eigen::VectorXd f(static_cast<Eigen::Index>(nodes.size()));
    Eigen::VectorXd w(f.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        f(static_cast<Eigen::Index>(i)) = nodes[i].lambda;
        w(static_cast<Eigen::Index>(i)) = nodes[i].weight;
    }
    w /= w.sum();
    return std::make_shared<const WaveExpansion>(std::move(f), std::move(w),
                                                 std::make_shared<const SpectralMeasure>(mu));
}

int default_n_freq(const SpectralMeasure& mu, double T)
{
    const double A = support_bounds(mu).A;
    return std::max(64, static_cast<int>(std::ceil(8.0 * A * T / std::numbers::pi)));
}

PathRealization sample_path(FramePtr frame, Rng& rng)
{
    const Eigen::Index n = frame->size();
    std::normal_distribution<double> normal;
    Eigen::VectorXd xi(n);
    Eigen::VectorXd eta(n);
    for (Eigen::Index j = 0; j < n; ++j) xi(j) = normal(rng);
    for (Eigen::Index j = 0; j < n; ++j) eta(j) = normal(rng);
    return PathRealization(std::move(frame), std::move(xi), std::move(eta));
}

PathRealization sample_path(FramePtr frame, Rng& rng, const CoefficientTilt& tilt)
{
    const Eigen::Index n = frame->size();
    std::normal_distribution<double> normal;
    Eigen::VectorXd xi(n);
    Eigen::VectorXd eta(n);
    for (Eigen::Index j = 0; j < n; ++j) xi(j) = normal(rng);
    for (Eigen::Index j = 0; j < n; ++j) eta(j) = normal(rng);
    xi += tilt.xi_shift;
    eta += tilt.eta_shift;
    return PathRealization(std::move(frame), std::move(xi), std::move(eta), tilt);
}

namespace detail {

PhaseSums phase_sums(const PathRealization& path, std::complex<double> z)
{
    const auto& frame = path.frame();
    const auto& lambda = frame.frequencies();
    const std::complex<double>* alpha = path.wave_coefficients().data();
    const std::complex<double>* beta = path.derivative_coefficients().data();
    const double x = z.real();
    const double y = z.imag();

    double vr = 0.0, vi = 0.0, dr = 0.0, di = 0.0;
    for (const auto& run : frame.runs()) {
        const double qm = std::exp(-run.step * y);
        const double qr = qm * std::cos(run.step * x);
        const double qi = qm * std::sin(run.step * x);
        double ar = 0.0, ai = 0.0, br = 0.0, bi = 0.0;
        for (Eigen::Index k = run.begin + run.length - 1; k >= run.begin; --k) {
            cmul_add(ar, ai, qr, qi, alpha[k].real(), alpha[k].imag());
            cmul_add(br, bi, qr, qi, beta[k].real(), beta[k].imag());
        }
        const double l0 = lambda(run.begin);
        const double bm = std::exp(-l0 * y);
        const double cr = bm * std::cos(l0 * x);
        const double ci = bm * std::sin(l0 * x);
        vr += ar * cr - ai * ci;
        vi += ar * ci + ai * cr;
        dr += br * cr - bi * ci;
        di += br * ci + bi * cr;
    }
    return {{vr, vi}, {dr, di}};
}

PhaseSums phase_sums_real(const PathRealization& path, double t)
{
    const auto& frame = path.frame();
    const auto& lambda = frame.frequencies();
    const std::complex<double>* alpha = path.wave_coefficients().data();
    const std::complex<double>* beta = path.derivative_coefficients().data();

    double vr = 0.0, vi = 0.0, dr = 0.0, di = 0.0;
    for (const auto& run : frame.runs()) {
        const double qr = std::cos(run.step * t);
        const double qi = std::sin(run.step * t);
        double ar = 0.0, ai = 0.0, br = 0.0, bi = 0.0;
        for (Eigen::Index k = run.begin + run.length - 1; k >= run.begin; --k) {
            cmul_add(ar, ai, qr, qi, alpha[k].real(), alpha[k].imag());
            cmul_add(br, bi, qr, qi, beta[k].real(), beta[k].imag());
        }
        const double l0 = lambda(run.begin);
        const double cr = std::cos(l0 * t);
        const double ci = std::sin(l0 * t);
        vr += ar * cr - ai * ci;
        vi += ar * ci + ai * cr;
        dr += br * cr - bi * ci;
        di += br * ci + bi * cr;
    }
    return {{vr, vi}, {dr, di}};
}

} // namespace detail

double evaluate_direct(const PathRealization& path, double t)
{
    const auto& f = path.frame().frequencies();
    const auto& w = path.frame().weights();
    double s = 0.0;
    for (Eigen::Index j = 0; j < f.size(); ++j) {
        s += std::sqrt(w(j)) * (path.xi()(j) * std::cos(f(j) * t) + path.eta()(j) * std::sin(f(j) * t));
    }
    return s;
}

void evaluate_grid(const PathRealization& path, double t0, double h, Eigen::Index count, Eigen::VectorXd& values,
                   Eigen::VectorXd* derivs)
{
    values.resize(count);
    if (derivs) derivs->resize(count);
    for (Eigen::Index k = 0; k < count; ++k) {
        const auto s = detail::phase_sums_real(path, t0 + static_cast<double>(k) * h);
        values(k) = 2.0 * s.value.real();
        if (derivs) (*derivs)(k) = 2.0 * s.deriv.real();
    }
}

GaussianVectorOracle::GaussianVectorOracle(const SpectralMeasure& mu, std::span<const double> grid)
{
    const auto m = static_cast<Eigen::Index>(grid.size());
    if (m == 0) throw ValidationError("oracle grid must be non-empty");
    covariance_.resize(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double k = covariance_kernel(mu, grid[static_cast<std::size_t>(i)] - grid[static_cast<std::size_t>(j)]);
            covariance_(i, j) = k;
            covariance_(j, i) = k;
        }
    }
    const Eigen::MatrixXd regularized = covariance_ + jitter * Eigen::MatrixXd::Identity(m, m);
    Eigen::LLT<Eigen::MatrixXd> llt(regularized);
    if (llt.info() != Eigen::Success) {
        throw FactorizationFailure("covariance matrix plus jitter is not numerically positive definite");
    }
    lower_ = llt.matrixL();
    if (!lower_.allFinite()) {
        throw FactorizationFailure("Cholesky factor contains non-finite entries");
    }
}

Eigen::VectorXd GaussianVectorOracle::sample(Rng& rng) const
{
    std::normal_distribution<double> normal;
    Eigen::VectorXd z(lower_.rows());
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = normal(rng);
    return lower_.triangularView<Eigen::Lower>() * z;
}

std::vector<double> gaussian_vector_oracle(const SpectralMeasure& mu, std::span<const double> grid, Rng& rng)
{
    const Eigen::VectorXd v = GaussianVectorOracle(mu, grid).sample(rng);
    return {v.data(), v.data() + v.size()};
}

double frame_kernel(const WaveExpansion& frame, double t)
{
    return (frame.weights().array() * (frame.frequencies().array() * t).cos()).sum();
}

double kernel_error(const WaveExpansion& frame, double horizon)
{
    if (!(horizon > 0.0)) throw ValidationError("kernel_error horizon must be > 0");
    constexpr int points = 10000;
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        const double t = horizon * static_cast<double>(i) / (points - 1);
        worst = std::max(worst, std::abs(frame_kernel(frame, t) - covariance_kernel(frame.source(), t)));
    }
    return worst;
}

} // namespace zerolab
