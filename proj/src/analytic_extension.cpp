#include "zerolab/analytic_extension.hpp"

#include "zerolab/errors.hpp"
#include "zerolab/zero_counter.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace zerolab {

namespace {

using cplx = std::complex<double>;

constexpr double kOverflowExponent = 700.0;
constexpr double kContourFloor = 1e-14;
constexpr double kWindingResidual = 0.1;
constexpr int kMaxWindingNodes = 1 << 17;
constexpr int kMaxMoment = 8;

void guard_overflow(double max_abs_imag, double sigma)
{
    if (max_abs_imag * sigma > kOverflowExponent) {
        throw OverflowGuard("|Im z| * sigma exceeds 700; rescale the problem");
    }
}

struct NodeValue {
    cplx offset;  // z - center
    cplx value;
    cplx deriv;
};

/// F and F' at center + r e^{i theta_m}, theta_m = 2 pi (m + shift) / n.
/// For a real center the nodes come in conjugate pairs, which halves the work.
std::vector<NodeValue> circle_nodes(const PathRealization& path, cplx center, double r, int n, double shift)
{
    guard_overflow(std::abs(center.imag()) + r, exponential_type(path.frame()));
    std::vector<NodeValue> out(static_cast<std::size_t>(n));
    const double two_pi = 2.0 * std::numbers::pi;
    if (center.imag() == 0.0) {
        std::vector<detail::PhaseSums> s(static_cast<std::size_t>(n));
        for (int m = 0; m < n; ++m) {
            const double theta = two_pi * (m + shift) / n;
            const cplx off = std::polar(r, theta);
            out[static_cast<std::size_t>(m)].offset = off;
            s[static_cast<std::size_t>(m)] = detail::phase_sums(path, center + off);
        }
        for (int m = 0; m < n; ++m) {
            // Index of the conjugate node.
            const int c = shift == 0.0 ? (n - m) % n : n - m - 1;
            auto& node = out[static_cast<std::size_t>(m)];
            const auto& a = s[static_cast<std::size_t>(m)];
            const auto& b = s[static_cast<std::size_t>(c)];
            node.value = a.value + std::conj(b.value);
            node.deriv = a.deriv + std::conj(b.deriv);
        }
    } else {
        for (int m = 0; m < n; ++m) {
            const double theta = two_pi * (m + shift) / n;
            const cplx off = std::polar(r, theta);
            const auto [v, d] = evaluate_with_deriv(path, center + off);
            out[static_cast<std::size_t>(m)] = {off, v, d};
        }
    }
    return out;
}

struct LogSum {
    double sum = 0.0;
    double min_abs = std::numeric_limits<double>::infinity();
};

LogSum log_abs_sum(const std::vector<NodeValue>& nodes)
{
    LogSum s;
    for (const auto& node : nodes) {
        const double a = std::abs(node.value);
        s.min_abs = std::min(s.min_abs, a);
        s.sum += std::log(a);
    }
    return s;
}

struct ContourData {
    long count = 0;
    double radius = 0.0;
    int n_theta = 0;
    double residual = 0.0;   // distance of the winding integral from the nearest integer
    std::vector<cplx> power_sums;  // sum over enclosed zeros of (z_k - center)^p, p = 0..kMaxMoment
};

/// Argument-principle integrals over one circle, doubling until the winding
/// number is within `target` of an integer (and two rules round alike).
/// Returns false if a zero sits too close to the contour.
bool try_contour(const PathRealization& path, cplx center, double r, int n_theta, double target, ContourData& out)
{
    std::vector<cplx> sums(kMaxMoment + 1, cplx{});
    int n = n_theta;
    double prev_winding = std::numeric_limits<double>::quiet_NaN();
    auto accumulate = [&](const std::vector<NodeValue>& nodes) {
        for (const auto& node : nodes) {
            if (std::abs(node.value) <= 1e-8 * std::abs(node.deriv) || std::abs(node.value) <= kContourFloor) {
                return false;
            }
            const cplx q = node.deriv / node.value * node.offset;
            cplx pw = q;
            for (int p = 0; p <= kMaxMoment; ++p) {
                sums[static_cast<std::size_t>(p)] += pw;
                pw *= node.offset;
            }
        }
        return true;
    };
    auto finish = [&](double winding, double residual) {
        out.count = std::lround(winding);
        out.radius = r;
        out.n_theta = n;
        out.residual = residual;
        out.power_sums.resize(sums.size());
        for (std::size_t p = 0; p < sums.size(); ++p) out.power_sums[p] = sums[p] / static_cast<double>(n);
    };
    if (!accumulate(circle_nodes(path, center, r, n, 0.0))) return false;
    while (true) {
        const double winding = sums[0].real() / n;
        const double residual = std::abs(winding - std::round(winding));
        const bool agree = std::round(winding) == std::round(prev_winding);
        if (residual < target && agree) {
            finish(winding, residual);
            return true;
        }
        if (n >= kMaxWindingNodes) {
            if (residual < kWindingResidual && agree) {
                finish(winding, residual);
                return true;
            }
            throw NonIntegerWinding("argument principle did not resolve to an integer (residual "
                                    + std::to_string(residual) + ")");
        }
        prev_winding = winding;
        if (!accumulate(circle_nodes(path, center, r, n, 0.5))) return false;
        n *= 2;
    }
}

ContourData contour(const PathRealization& path, cplx center, double r, int n_theta,
                    double target = kWindingResidual)
{
    if (!(r > 0.0)) throw ValidationError("contour radius must be > 0");
    ContourData data;
    for (int j = 0; j <= 3; ++j) {
        if (try_contour(path, center, r * (1.0 + 1e-6 * j), n_theta, target, data)) return data;
    }
    throw ZeroOnContour("zero within 1e-8 of the contour after 3 radius perturbations");
}

/// Zeros in the annulus between two contours, from the difference of their
/// power sums (Newton identities + companion matrix), each polished by Newton
/// on F. Returns false if the polished set is not m distinct zeros of F inside
/// the annulus.
bool annulus_zeros(const PathRealization& path, cplx center, const ContourData& inner, const ContourData& outer,
                   std::vector<cplx>& roots)
{
    roots.clear();
    const long m = outer.count - inner.count;
    if (m <= 0) return true;
    if (m > kMaxMoment) return false;
    std::vector<cplx> P(static_cast<std::size_t>(m + 1));
    for (long p = 1; p <= m; ++p) {
        P[static_cast<std::size_t>(p)] = outer.power_sums[static_cast<std::size_t>(p)]
                                         - inner.power_sums[static_cast<std::size_t>(p)];
    }
    // Elementary symmetric polynomials from power sums.
    std::vector<cplx> e(static_cast<std::size_t>(m + 1));
    e[0] = 1.0;
    for (long k = 1; k <= m; ++k) {
        cplx acc{};
        for (long i = 1; i <= k; ++i) {
            const double sign = (i % 2 == 1) ? 1.0 : -1.0;
            acc += sign * e[static_cast<std::size_t>(k - i)] * P[static_cast<std::size_t>(i)];
        }
        e[static_cast<std::size_t>(k)] = acc / static_cast<double>(k);
    }
    // u^m - e1 u^{m-1} + e2 u^{m-2} - ... as a companion matrix.
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(m, m);
    for (long k = 1; k <= m; ++k) {
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        companion(0, k - 1) = sign * e[static_cast<std::size_t>(k)];
    }
    for (long i = 1; i < m; ++i) companion(i, i - 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success) return false;

    const double slack = 1e-9 * outer.radius;
    const double scale = path.derivative_bound(0) * std::exp(exponential_type(path.frame()) * std::abs(center.imag()) + outer.radius);
    for (long i = 0; i < m; ++i) {
        cplx u = solver.eigenvalues()(i);
        bool converged = false;
        for (int it = 0; it < 60; ++it) {
            const auto [f, d] = evaluate_with_deriv(path, center + u);
            if (d == cplx{}) break;
            const cplx step = f / d;
            u -= step;
            if (std::abs(step) < 1e-13 * std::max(1.0, std::abs(u))) {
                converged = true;
                break;
            }
        }
        const double rho = std::abs(u);
        if (!converged || rho < inner.radius - slack || rho > outer.radius + slack) return false;
        if (std::abs(evaluate(path, center + u)) > 1e-9 * scale) return false;
        for (const cplx& v : roots) {
            if (std::abs(v - u) < 1e-7 * std::max(1.0, rho)) return false;
        }
        roots.push_back(u);
    }
    return true;
}

} // namespace

std::complex<double> evaluate_complex(const PathRealization& path, std::complex<double> z)
{
    guard_overflow(std::abs(z.imag()), exponential_type(path.frame()));
    return evaluate(path, z);
}

double exponential_type(const WaveExpansion& frame)
{
    return frame.max_frequency();
}

double jensen_integral(const PathRealization& path, double center, double radius, int n_theta)
{
    if (!(radius > 0.0) || n_theta < 4) throw ValidationError("jensen_integral needs radius > 0 and n_theta >= 4");
    for (int j = 0; j <= 3; ++j) {
        const double r = radius * (1.0 + 1e-6 * j);
        const auto s = log_abs_sum(circle_nodes(path, center, r, n_theta, 0.0));
        if (s.min_abs > kContourFloor) return s.sum / n_theta;
    }
    throw ZeroOnContour("|F| <= 1e-14 on the Jensen contour after 3 radius perturbations");
}

CircleAverage jensen_integral_converged(const PathRealization& path, double center, double radius, int n_theta,
                                        double tolerance, int max_doublings)
{
    if (!(radius > 0.0) || n_theta < 4) throw ValidationError("jensen_integral needs radius > 0 and n_theta >= 4");
    for (int j = 0; j <= 3; ++j) {
        const double r = radius * (1.0 + 1e-6 * j);
        auto s = log_abs_sum(circle_nodes(path, center, r, n_theta, 0.0));
        if (!(s.min_abs > kContourFloor)) continue;
        CircleAverage out;
        int n = n_theta;
        double sum = s.sum;
        out.value = sum / n;
        bool ok = true;
        for (int d = 0; d < max_doublings; ++d) {
            const auto odd = log_abs_sum(circle_nodes(path, center, r, n, 0.5));
            if (!(odd.min_abs > kContourFloor)) {
                ok = false;
                break;
            }
            sum += odd.sum;
            n *= 2;
            const double next = sum / n;
            out.change = std::abs(next - out.value);
            out.value = next;
            out.n_theta = n;
            if (out.change <= tolerance) {
                out.converged = true;
                break;
            }
        }
        if (!ok) continue;
        if (max_doublings == 0) {
            out.n_theta = n;
            out.converged = true;
        }
        return out;
    }
    throw ZeroOnContour("|F| <= 1e-14 on the Jensen contour after 3 radius perturbations");
}

long disc_zero_count(const PathRealization& path, std::complex<double> center, double radius, int n_theta)
{
    return contour(path, center, radius, n_theta).count;
}

double counting_integral(const PathRealization& path, double center, double radius, int n_radii)
{
    if (!(radius > 0.0) || n_radii < 1) throw ValidationError("counting_integral needs radius > 0");
    const cplx c{center, 0.0};
    constexpr int n_theta = 512;
    constexpr double moment_target = 1e-10;
    const double min_width = 1e-7 * radius;
    auto ring = [&](double t) { return contour(path, c, t, n_theta, moment_target); };

    std::vector<ContourData> coarse;
    coarse.reserve(static_cast<std::size_t>(n_radii) + 1);
    // Innermost contour: tiny disc, expected to hold no zeros when F(center) != 0.
    coarse.push_back(ring(radius * 1e-6));
    for (int i = 1; i <= n_radii; ++i) coarse.push_back(ring(radius * i / n_radii));

    double total = 0.0;
    std::vector<cplx> roots;
    std::function<void(const ContourData&, const ContourData&)> refine = [&](const ContourData& lo,
                                                                            const ContourData& hi) {
        const long jump = hi.count - lo.count;
        if (jump == 0) return;
        if (annulus_zeros(path, c, lo, hi, roots)) {
            for (const cplx& u : roots) total += std::log(radius / std::abs(u));
            return;
        }
        if (hi.radius - lo.radius > min_width) {
            const auto mid = ring(0.5 * (lo.radius + hi.radius));
            refine(lo, mid);
            refine(mid, hi);
            return;
        }
        // Unresolved cluster in a very thin annulus: every zero sits at the mid radius.
        total += static_cast<double>(jump) * std::log(radius / (0.5 * (lo.radius + hi.radius)));
    };
    for (std::size_t i = 1; i < coarse.size(); ++i) refine(coarse[i - 1], coarse[i]);
    // Zeros in the innermost tiny disc, if any.
    total += static_cast<double>(coarse.front().count) * std::log(1e6);
    return total;
}

CircleBoundCheck circle_average_bound_check(const PathRealization& path, double T, Rng& rng, int trials)
{
    if (!(T >= 10.0)) throw ValidationError("circle_average_bound_check requires T >= 10");
    const double A = support_bounds(path.frame().source()).A;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    CircleBoundCheck out;
    out.worst_margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < trials; ++i) {
        const double a = T * unit(rng);
        double r = 0.0;
        while (!(r > 0.0)) r = T * unit(rng);
        const double average = jensen_integral_converged(path, a, r, 2048, 1e-6, 3).value;
        const double margin = A / std::numbers::pi * 2.0 * r + 6.0 * std::log(T) - average;
        out.centers.push_back(a);
        out.radii.push_back(r);
        out.worst_margin = std::min(out.worst_margin, margin);
        if (margin < 0.0) out.holds = false;
    }
    return out;
}

GrowthCertificate growth_certificate(const PathRealization& path, double T)
{
    if (!(T > 0.0)) throw ValidationError("growth_certificate needs T > 0");
    const double step = std::min(default_grid_step(path.frame()), T / 1000.0);
    const auto cells = static_cast<Eigen::Index>(std::ceil(2.0 * T / step));
    const double h = 2.0 * T / static_cast<double>(cells);
    Eigen::VectorXd f;
    evaluate_grid(path, -T, h, cells + 1, f);

    GrowthCertificate out;
    out.horizon = T;
    out.exponential_type = exponential_type(path.frame());
    double integral = 0.0;
    for (Eigen::Index k = 0; k <= cells; ++k) {
        const double t = -T + static_cast<double>(k) * h;
        out.M = std::max(out.M, std::abs(f(k)) / (1.0 + std::abs(t)));
        const double weight = (k == 0 || k == cells) ? 0.5 : 1.0;
        integral += weight * std::max(0.0, std::log(std::abs(f(k)))) / (1.0 + t * t);
    }
    out.cartwright_integral = integral * h;
    return out;
}

PhragmenCheck phragmen_check(const PathRealization& path, std::complex<double> z, double T_trunc)
{
    const double x = z.real();
    const double y = std::abs(z.imag());
    if (!(y > 0.0)) throw ValidationError("phragmen_check needs Im z != 0");
    if (!(T_trunc > 0.0)) throw ValidationError("phragmen_check needs T_trunc > 0");

    PhragmenCheck out;
    out.lhs = std::log(std::abs(evaluate_complex(path, z)));

    // (|y|/pi) int g(t) / ((t-x)^2 + y^2) dt = (1/pi) int g(x + y tan(phi)) d phi.
    const double phi_max = std::atan(T_trunc / y);
    auto g = [&](double phi) {
        const double v = std::abs(evaluate(path, x + y * std::tan(phi)));
        return std::max(0.0, std::log(v));
    };
    int n = 1024;
    double h = 2.0 * phi_max / n;
    double sum = 0.5 * (g(-phi_max) + g(phi_max));
    for (int i = 1; i < n; ++i) sum += g(-phi_max + i * h);
    double estimate = sum * h;
    for (int level = 0; level < 8; ++level) {
        double odd = 0.0;
        for (int i = 0; i < n; ++i) odd += g(-phi_max + (i + 0.5) * h);
        sum += odd;
        n *= 2;
        h *= 0.5;
        const double next = sum * h;
        const double change = std::abs(next - estimate);
        estimate = next;
        if (change < 1e-6 && level >= 1) break;
    }
    out.integral = estimate / std::numbers::pi;

    const double global_bound = path.derivative_bound(0);
    out.tail = std::max(0.0, std::log(global_bound)) * (1.0 - 2.0 / std::numbers::pi * phi_max);
    out.rhs = out.integral + out.tail + exponential_type(path.frame()) * y;
    out.holds = out.lhs <= out.rhs;
    return out;
}

JensenScheme make_jensen_scheme(double T, double eps)
{
    if (!(T >= 10.0)) throw ValidationError("the Jensen scheme requires T >= 10");
    if (!(eps > 0.0) || eps > std::exp(-1.0)) throw ValidationError("the Jensen scheme requires eps in (0, 1/e]");
    JensenScheme s;
    s.eps = eps;
    s.T = T;
    s.delta = eps * eps * T;
    s.radius = eps * T;
    s.n = static_cast<long>(std::ceil((T + 2.0 * s.radius) / s.delta - 1e-9));
    for (long k = 1; k <= s.n; ++k) {
        s.interval_lo.push_back(static_cast<double>(k - 1) * s.delta - s.radius);
        s.interval_hi.push_back(static_cast<double>(k) * s.delta - s.radius);
    }
    s.coefficient = 2.0 * (1.0 / eps - 2.0 * std::log(1.0 / eps));
    return s;
}

JensenScheme jensen_upper_bound(const PathRealization& path, double T, double eps)
{
    JensenScheme s = make_jensen_scheme(T, eps);
    constexpr int grid = 64;
    double circle_sum = 0.0;
    double point_sum = 0.0;
    s.min_log_abs = std::numeric_limits<double>::infinity();
    for (long k = 0; k < s.n; ++k) {
        const double lo = s.interval_lo[static_cast<std::size_t>(k)];
        const double step = s.delta / (grid - 1);
        double best_t = lo;
        double best_abs = -1.0;
        for (int i = 0; i < grid; ++i) {
            const double t = i == grid - 1 ? s.interval_hi[static_cast<std::size_t>(k)] : lo + step * i;
            const double a = std::abs(evaluate(path, t));
            if (a > best_abs) {
                best_abs = a;
                best_t = t;
            }
        }
        if (!(best_abs > 0.0)) throw ZeroOnContour("F vanishes on a whole Jensen interval grid");
        const double log_abs = std::log(best_abs);
        const double average = jensen_integral_converged(path, best_t, s.radius).value;
        s.points.push_back(best_t);
        s.log_abs_values.push_back(log_abs);
        s.circle_averages.push_back(average);
        circle_sum += average;
        point_sum += log_abs;
        s.min_log_abs = std::min(s.min_log_abs, log_abs);
    }
    s.bound = (circle_sum - point_sum) / s.coefficient;
    s.exact = count_zeros(path, T, default_grid_step(path.frame())).count;
    return s;
}

} // namespace zerolab
