#pragma once

#include "zerolab/rng.hpp"
#include "zerolab/spectral_measure.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace zerolab {

/// Maximal block of frequencies in arithmetic progression.
struct FrequencyRun {
    Eigen::Index begin;
    Eigen::Index length;
    double step;
};

/// Finite random-wave model
///   F(t) = sum_j sqrt(w_j) (xi_j cos(lambda_j t) + eta_j sin(lambda_j t)),
/// whose effective spectral measure is sum_j (w_j / 2)(delta_{lambda_j} + delta_{-lambda_j}).
/// The same sum, read on the complex plane, is the entire extension of every path.
class WaveExpansion {
public:
    WaveExpansion(Eigen::VectorXd frequencies, Eigen::VectorXd weights,
                  std::shared_ptr<const SpectralMeasure> source);

    const Eigen::VectorXd& frequencies() const { return frequencies_; }
    const Eigen::VectorXd& weights() const { return weights_; }
    const SpectralMeasure& source() const { return *source_; }
    const std::shared_ptr<const SpectralMeasure>& source_ptr() const { return source_; }
    const std::vector<FrequencyRun>& runs() const { return runs_; }

    Eigen::Index size() const { return frequencies_.size(); }
    double max_frequency() const { return frequencies_(frequencies_.size() - 1); }

    /// FNV-1a digest of the frequency and weight arrays, as 16 hex digits.
    std::string hash() const;

private:
    Eigen::VectorXd frequencies_;
    Eigen::VectorXd weights_;
    std::shared_ptr<const SpectralMeasure> source_;
    std::vector<FrequencyRun> runs_;
};

using FramePtr = std::shared_ptr<const WaveExpansion>;

/// Mean shifts of the coefficient law a path was drawn from.
struct CoefficientTilt {
    Eigen::VectorXd xi_shift;
    Eigen::VectorXd eta_shift;
};

/// A coefficient vector bound to its frame.
class PathRealization {
public:
    PathRealization(FramePtr frame, Eigen::VectorXd xi, Eigen::VectorXd eta,
                    std::optional<CoefficientTilt> tilt = std::nullopt);

    const WaveExpansion& frame() const { return *frame_; }
    const FramePtr& frame_ptr() const { return frame_; }
    const Eigen::VectorXd& xi() const { return xi_; }
    const Eigen::VectorXd& eta() const { return eta_; }
    const std::optional<CoefficientTilt>& tilt() const { return tilt_; }

    /// alpha_j = sqrt(w_j) (xi_j - i eta_j) / 2, so that F(t) = 2 Re sum_j alpha_j e^{i lambda_j t}.
    const Eigen::VectorXcd& wave_coefficients() const { return alpha_; }
    /// beta_j = i lambda_j alpha_j, the same representation for F'.
    const Eigen::VectorXcd& derivative_coefficients() const { return beta_; }

    /// Log of the density ratio base law / sampling law at this coefficient vector (0 if untilted).
    double log_likelihood_ratio() const;

    /// sum_j sqrt(w_j)(|xi_j| + |eta_j|) lambda_j^order: a global bound on |F^(order)| over the real line.
    double derivative_bound(int order) const;

private:
    FramePtr frame_;
    Eigen::VectorXd xi_;
    Eigen::VectorXd eta_;
    std::optional<CoefficientTilt> tilt_;
    Eigen::VectorXcd alpha_;
    Eigen::VectorXcd beta_;
};

/// Midpoint-rule discretization: atoms pass through with their pair masses,
/// the remaining nodes are shared among density pieces in proportion to mass
/// (at least one each) and placed at midpoints of equal subintervals.
FramePtr discretize(const SpectralMeasure& mu, int n_freq);

/// max(64, ceil(8 A T / pi)).
int default_n_freq(const SpectralMeasure& mu, double T);

/// i.i.d. standard Gaussian coefficients (all xi, then all eta).
PathRealization sample_path(FramePtr frame, Rng& rng);

/// Coefficients drawn from N(shift, 1); the tilt is recorded on the path.
PathRealization sample_path(FramePtr frame, Rng& rng, const CoefficientTilt& tilt);

namespace detail {

struct PhaseSums {
    std::complex<double> value;
    std::complex<double> deriv;
};

/// sum_j c_j e^{i lambda_j z} for c = alpha and c = beta, Horner-evaluated run by run.
PhaseSums phase_sums(const PathRealization& path, std::complex<double> z);

/// Real-line variant; only the real part of z is used.
PhaseSums phase_sums_real(const PathRealization& path, double t);

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};

} // namespace detail

/// F and F' at a real or complex point.
template <class Scalar>
std::pair<Scalar, Scalar> evaluate_with_deriv(const PathRealization& path, const Scalar& z)
{
    if constexpr (detail::is_complex<Scalar>::value) {
        const auto up = detail::phase_sums(path, z);
        const auto down = detail::phase_sums(path, std::conj(z));
        return {up.value + std::conj(down.value), up.deriv + std::conj(down.deriv)};
    } else {
        const auto s = detail::phase_sums_real(path, z);
        return {2.0 * s.value.real(), 2.0 * s.deriv.real()};
    }
}

template <class Scalar>
Scalar evaluate(const PathRealization& path, const Scalar& z)
{
    return evaluate_with_deriv(path, z).first;
}

template <class Scalar>
Scalar evaluate_deriv(const PathRealization& path, const Scalar& z)
{
    return evaluate_with_deriv(path, z).second;
}

/// Plain trigonometric sum, term by term. Slow; kept as an independent reference.
double evaluate_direct(const PathRealization& path, double t);

/// F (and optionally F') on the uniform grid t0 + k h, k = 0..count-1.
void evaluate_grid(const PathRealization& path, double t0, double h, Eigen::Index count, Eigen::VectorXd& values,
                   Eigen::VectorXd* derivs = nullptr);

/// Exact-law sampler of (F(t_1), ..., F(t_m)) via Cholesky of K + 1e-10 I.
class GaussianVectorOracle {
public:
    GaussianVectorOracle(const SpectralMeasure& mu, std::span<const double> grid);

    Eigen::VectorXd sample(Rng& rng) const;
    const Eigen::MatrixXd& covariance() const { return covariance_; }

    static constexpr double jitter = 1e-10;

private:
    Eigen::MatrixXd covariance_;
    Eigen::MatrixXd lower_;
};

std::vector<double> gaussian_vector_oracle(const SpectralMeasure& mu, std::span<const double> grid, Rng& rng);

/// sum_j w_j cos(lambda_j t): covariance of the discretized model.
double frame_kernel(const WaveExpansion& frame, double t);

/// Sup over 10^4 points of [0, horizon] of |frame_kernel - covariance_kernel(source)|.
double kernel_error(const WaveExpansion& frame, double horizon);

} // namespace zerolab
