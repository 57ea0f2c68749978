#pragma once

#include "zerolab/rng.hpp"
#include "zerolab/sampler.hpp"

#include <complex>
#include <vector>

namespace zerolab {

/// F(z) on the complex plane via the exact entire form of the wave sum.
/// Throws OverflowGuard when |Im z| * sigma > 700.
std::complex<double> evaluate_complex(const PathRealization& path, std::complex<double> z);

/// Largest frequency of the frame; it never exceeds the support edge A of the source.
double exponential_type(const WaveExpansion& frame);

/// (1/2pi) int_0^{2pi} log|F(center + r e^{i theta})| d theta by the trapezoid
/// rule on n_theta equispaced angles. If |F| <= 1e-14 at a node the radius is
/// multiplied by (1 + 1e-6 j), j = 1, 2, 3; afterwards ZeroOnContour is thrown.
double jensen_integral(const PathRealization& path, double center, double radius, int n_theta = 2048);

struct CircleAverage {
    double value = 0.0;
    int n_theta = 0;         ///< finest rule used
    double change = 0.0;     ///< |I(n) - I(n/2)| at the last doubling
    bool converged = false;  ///< change <= tolerance
};

/// jensen_integral with doubling of n_theta until two successive rules agree
/// within `tolerance` (at most `max_doublings` doublings).
CircleAverage jensen_integral_converged(const PathRealization& path, double center, double radius,
                                        int n_theta = 2048, double tolerance = 1e-6, int max_doublings = 5);

/// Zeros of F in the open disc B(center, radius), counted with multiplicity,
/// from the argument principle. The trapezoid rule is doubled until two rules
/// round to the same integer with residual below 0.1; otherwise NonIntegerWinding.
long disc_zero_count(const PathRealization& path, std::complex<double> center, double radius, int n_theta = 1024);

/// int_0^r n_F(center, t) / t dt, from disc counts on `n_radii` equispaced radii
/// with every jump located by bisection on the radius.
double counting_integral(const PathRealization& path, double center, double radius, int n_radii = 64);

struct CircleBoundCheck {
    bool holds = true;
    double worst_margin = 0.0;  ///< min over trials of (A/pi) 2r + 6 log T - circle average
    std::vector<double> centers;
    std::vector<double> radii;
};

/// Draws `trials` pairs (a, r) in [0, T] x (0, T) and tests
/// circle average of log|F| <= (A/pi) 2r + 6 log T. Requires T >= 10.
CircleBoundCheck circle_average_bound_check(const PathRealization& path, double T, Rng& rng, int trials = 20);

struct GrowthCertificate {
    double M = 0.0;  ///< sup |F(t)| / (1 + |t|) over the grid of [-T, T]
    double horizon = 0.0;
    double cartwright_integral = 0.0;  ///< int_{-T}^{T} log+|F| / (1 + t^2)
    double exponential_type = 0.0;
};

GrowthCertificate growth_certificate(const PathRealization& path, double T);

struct PhragmenCheck {
    double lhs = 0.0;       ///< log|F(z)|
    double rhs = 0.0;       ///< Poisson term + tail bound + sigma |Im z|
    double integral = 0.0;  ///< truncated Poisson integral of log+|F|
    double tail = 0.0;      ///< bound on the Poisson integral outside the truncation window
    bool holds = false;
};

/// Phragmen-Lindelof type bound for Cartwright functions,
///   log|F(z)| <= (|y|/pi) int log+|F(t)| / |t - z|^2 dt + sigma |y|,
/// with the integral truncated to [Re z - T_trunc, Re z + T_trunc] and the rest
/// bounded through the global bound |F| <= sum_j sqrt(w_j)(|xi_j| + |eta_j|).
PhragmenCheck phragmen_check(const PathRealization& path, std::complex<double> z, double T_trunc);

/// Bookkeeping of the averaged Jensen bound on [0, T] for a given eps:
/// Delta = eps^2 T, r = eps T, n = ceil((T + 2r) / Delta), I_k = [(k-1) Delta - r, k Delta - r].
struct JensenScheme {
    double eps = 0.0;
    double T = 0.0;
    double delta = 0.0;
    double radius = 0.0;
    long n = 0;
    std::vector<double> interval_lo;
    std::vector<double> interval_hi;
    std::vector<double> points;          ///< x_k, argmax of |F| over 64 points of I_k
    std::vector<double> log_abs_values;  ///< log|F(x_k)|
    std::vector<double> circle_averages;
    double coefficient = 0.0;  ///< 2 (1/eps - 2 log(1/eps))
    double bound = 0.0;
    long exact = 0;
    double min_log_abs = 0.0;  ///< observed floor min_k log|F(x_k)|
};

/// Scheme geometry only (no path).
JensenScheme make_jensen_scheme(double T, double eps);

/// Upper bound on N_F(T) from Jensen's formula averaged over the points x_k:
///   bound = (sum_k circle_average(x_k, r) - sum_k log|F(x_k)|) / (2 (1/eps - 2 log(1/eps))),
/// together with the exact count. Requires T >= 10 and eps in (0, 1/e].
JensenScheme jensen_upper_bound(const PathRealization& path, double T, double eps);

} // namespace zerolab
