#pragma once

#include "zerolab/sampler.hpp"
#include "zerolab/spectral_measure.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace zerolab {

enum class Side { over, under };
enum class EstimatorKind { naive, tilted };

std::string to_string(Side side);
std::string to_string(EstimatorKind kind);
Side parse_side(const std::string& text);

/// Event {lo <= N(T) <= hi} on the zero count.
struct CountEvent {
    double lo;
    double hi;
    bool contains(long n) const { return lo <= static_cast<double>(n) && static_cast<double>(n) <= hi; }
};

/// {N >= eta T} for Side::over, {N <= eta T} for Side::under.
CountEvent tail_event(double T, double eta, Side side);

/// {N / T in [(X - 2 eps) / pi, (X + 2 eps) / pi]}.
CountEvent density_window_event(double T, double X, double eps);

struct TiltDescriptor {
    double band_center = 0.0;
    double half_width = 0.0;
    double band_mass = 0.0;  ///< positive-side mass of the chosen band
    double theta = 0.0;      ///< mean of the normalized band coefficient under the tilt
    double L = 0.0;
    double kappa = 0.0;
    long band_nodes = 0;
};

struct TailEstimate {
    double T = 0.0;
    double eta = 0.0;
    Side side = Side::over;
    EstimatorKind estimator = EstimatorKind::naive;
    std::size_t n_samples = 0;
    long hits = 0;
    double p_hat = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double log_p_hat = 0.0;  ///< -inf when there are no hits
    double log_p_se = 0.0;   ///< delta-method standard error of log_p_hat
    double standard_error = 0.0;
    double ess = 0.0;             ///< effective sample size of the weighted hits (tilted only)
    bool degenerate_ess = false;  ///< ess < 10
    double lr_mean = 1.0;         ///< mean likelihood ratio over all samples
    double lr_mean_se = 0.0;
    long certificates_fired = 0;
    long certificate_contradictions = 0;
    std::optional<TiltDescriptor> tilt;
};

struct Interval {
    double lo;
    double hi;
};

/// Wilson score interval at normal quantile z (1.96 for 95%).
Interval wilson_interval(long hits, std::size_t n, double z = 1.96);

struct SamplingOptions {
    int n_freq = 0;        ///< 0 selects default_n_freq(mu, T)
    unsigned workers = 0;  ///< 0 selects resolve_workers()
};

/// Plain Monte Carlo frequency of {N >= eta T} (over) or {N <= eta T} (under).
/// Path i uses stream (base_seed, i). Zero hits give p_hat = 0 and CI [0, 3/n].
/// Requires n_samples >= 100.
TailEstimate naive_tail(const SpectralMeasure& mu, double T, double eta, Side side, std::size_t n_samples,
                        std::uint64_t base_seed, const SamplingOptions& options = {});

/// Plain Monte Carlo frequency of an arbitrary count event on a given frame.
TailEstimate naive_event(const FramePtr& frame, double T, const CountEvent& event, std::size_t n_samples,
                         std::uint64_t base_seed, unsigned workers = 0);

struct TiltOptions {
    std::optional<double> L_override;
    std::optional<double> theta_override;
    std::optional<CountEvent> event_override;  ///< replaces the density window event
    int n_freq = 0;
    unsigned workers = 0;
    bool certificates = true;
};

/// Everything the tilted sampler needs, fixed before any path is drawn.
struct TiltPlan {
    FramePtr frame;  ///< discretization of mu refined at the band edges
    BandQuery band;
    TiltDescriptor descriptor;
    CoefficientTilt shift;
    CountEvent event;
    double eps_prime = 0.0;  ///< |a - X| + half-width
    std::vector<Eigen::Index> band_indices;
};

/// Band from select_heavy_band; kappa = eps / (10 mu([X - eps, X + eps])), L = kappa^{-1/3};
/// the cos-coefficients of in-band nodes are shifted by theta sqrt(w_j / W), W the in-band
/// weight, with theta = 10 L / sqrt(2 band_mass).
TiltPlan plan_tilt(const SpectralMeasure& mu, double T, double X, double eps, const TiltOptions& options = {});

/// Importance-sampling estimate of P(N(T)/T in [(X - 2 eps)/pi, (X + 2 eps)/pi]) under the
/// band tilt, weighted by the exact Gaussian likelihood ratio. Every path is also run through
/// wave_certificate; fired certificates are checked against the zero count.
TailEstimate tilted_tail(const SpectralMeasure& mu, double T, double X, double eps, std::size_t n_samples,
                         std::uint64_t base_seed, const TiltOptions& options = {});

/// Same, for a prepared plan.
TailEstimate tilted_event(const TiltPlan& plan, double T, std::size_t n_samples, std::uint64_t base_seed,
                          unsigned workers = 0, bool certificates = true);

/// One-dimensional tilt check: P(xi > threshold) for xi ~ N(0,1), sampling from N(theta, 1).
TailEstimate tilted_gaussian_tail(double threshold, double theta, std::size_t n_samples, std::uint64_t base_seed);

struct WaveCertificate {
    double band_center = 0.0;
    double half_width = 0.0;
    double L = 0.0;
    double amplitude = 0.0;  ///< sqrt(W) xi_1, the band amplitude
    double amplitude_floor = 0.0;  ///< 10 L
    double residual_sup = 0.0;       ///< certified bound on sup |G| over [0, T]
    double residual_deriv_sup = 0.0; ///< certified bound on sup |G'| over [0, T]
    double value_deviation = 0.0;    ///< S1 deviation, relative to the amplitude
    double deriv_deviation = 0.0;    ///< S2 deviation, relative to a times the amplitude
    bool E1 = false;
    bool E2 = false;
    bool E3 = false;
    bool S1 = false;
    bool S2 = false;
    bool sign_alternation = false;
    long window_lo = 0;  ///< certified zero-count window on [0, T]
    long window_hi = 0;
    double eps_prime = 0.0;
    long zero_count = 0;
    bool density_window_holds = false;  ///< N/T in [(a - 2 eps')/pi, (a + 2 eps')/pi]
    bool fired() const { return E1 && E2 && E3 && S1 && S2 && sign_alternation; }
    bool contradicts() const { return fired() && (zero_count < window_lo || zero_count > window_hi); }
};

/// Splits the path into its band part sqrt(W) xi_1 (1/W) sum w_j cos(lambda_j t), with
/// xi_1 = sum sqrt(w_j / W) xi_j over in-band nodes, and the residual G. E1: amplitude >= 10L;
/// E2: sup |G| <= L; E3: sup |G'| <= aL. S1 and S2 bound the deviation from a pure wave
/// cos(at) on the no-zero set and on the monotone set; when everything holds, each full
/// interval of the monotone set in [0, T] has exactly one zero and nothing else does.
WaveCertificate wave_certificate(const PathRealization& path, const BandQuery& band, double eps_prime, double L,
                                 double T);

enum class DecayRegime { linear_in_T, quadratic_in_T };

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double r_squared = 0.0;
};

struct DecayFit {
    LineFit linear;     ///< log p against T
    LineFit quadratic;  ///< log p against T^2
    DecayRegime regime = DecayRegime::linear_in_T;
    std::size_t points = 0;
};

std::string to_string(DecayRegime regime);

/// Least squares of log p against T and against T^2; the regime with larger R^2 wins.
/// Pairs with non-finite log p are skipped. Throws InsufficientData below 3 usable pairs.
DecayFit decay_fit(std::span<const double> T, std::span<const double> log_p);
DecayFit decay_fit(std::span<const TailEstimate> estimates);

} // namespace zerolab
