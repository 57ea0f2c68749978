// Acceptance run: one PASS/FAIL line per criterion. Exit status is non-zero
// only when a hard criterion fails; the decay-regime diagnostic is soft.

#include "../support.hpp"

#include "zerolab/analytic_extension.hpp"
#include "zerolab/gap_coupling.hpp"
#include "zerolab/rare_events.hpp"
#include "zerolab/sampler.hpp"
#include "zerolab/zero_counter.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace zerolab;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    bool soft;
    std::function<Outcome()> body;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

long g_fired = 0;
long g_contradictions = 0;

void tally(const TailEstimate& e)
{
    g_fired += e.certificates_fired;
    g_contradictions += e.certificate_contradictions;
}

Outcome kac_rice()
{
    const auto mu = SpectralMeasure::uniform(0.0, 1.0);
    const double target = 1.0 / (std::numbers::pi * std::sqrt(3.0));
    const auto d = empirical_density(mu, 100.0, 2000, 1001);
    const double rel = std::abs(d.mean / target - 1.0);
    return {rel < 0.01, fmt("mean N/T = %.5f, target %.5f, rel err %.3f%% (tol 1%%)", d.mean, target, 100.0 * rel)};
}

Outcome pure_tone()
{
    const auto d = empirical_density(SpectralMeasure::tone(1.0), 100.0, 1000, 1002);
    long bad = 0;
    for (long n : d.counts) bad += (n == 31 || n == 32) ? 0 : 1;
    return {bad == 0, fmt("%ld of %zu paths outside {31, 32}", bad, d.counts.size())};
}

Outcome band_containment()
{
    const auto d = empirical_density(SpectralMeasure::uniform(1.0, 2.0), 200.0, 1000, 1003);
    const double lo = 1.0 / std::numbers::pi - 0.02;
    const double hi = 2.0 / std::numbers::pi + 0.02;
    long bad = 0;
    for (long n : d.counts) {
        const double r = static_cast<double>(n) / 200.0;
        bad += (r >= lo && r <= hi) ? 0 : 1;
    }
    return {bad == 0, fmt("N/T in [%.4f, %.4f], window [%.4f, %.4f], %ld violations", d.min, d.max, lo, hi, bad)};
}

Outcome coupling()
{
    const auto mu = SpectralMeasure::uniform(1.0, 2.0);
    const double T = 100.0;
    const auto frame = discretize(mu, default_n_freq(mu, T));
    const auto g_frame = coupled_frame(*frame);
    double id = 0.0;
    double lat = 0.0;
    int ineq = 0;
    int degenerate = 0;
    constexpr int n = 500;
    for (int i = 0; i < n; ++i) {
        Rng rng = make_stream(1004, static_cast<std::uint64_t>(i));
        const auto r = verify_coupling(couple(sample_path(frame, rng), g_frame), T);
        id = std::max(id, r.identity_residual);
        lat = std::max(lat, r.lattice_residual);
        ineq += r.inequality_ok ? 1 : 0;
        degenerate += r.degenerate ? 1 : 0;
    }
    return {id < 1e-9 && lat < 1e-9 && ineq == n,
            fmt("identity %.2e, lattice %.2e (tol 1e-9), inequality %d/%d, degenerate lattice samples %d", id, lat,
                ineq, n, degenerate)};
}

Outcome jensen()
{
    auto mu = std::make_shared<const SpectralMeasure>(SpectralMeasure::tone(1.0));
    auto tone = std::make_shared<const WaveExpansion>(Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1), mu);
    const PathRealization c(tone, Eigen::VectorXd::Ones(1), Eigen::VectorXd::Zero(1));
    const double exact = 2.0 * std::log(4.0 / std::numbers::pi);
    const double err_a = std::abs(jensen_integral(c, 0.0, 2.0, 2048) - exact);

    const auto frame = discretize(SpectralMeasure::uniform(0.0, 1.0), 64);
    Rng draws = make_stream(7, 0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_b = 0.0;
    for (int i = 0; i < 50; ++i) {
        Rng rng = make_stream(500 + static_cast<std::uint64_t>(i), 0);
        const auto p = sample_path(frame, rng);
        const double a = 30.0 * u(draws);
        const double r = 0.5 + 6.0 * u(draws);
        const double lhs = counting_integral(p, a, r);
        const double rhs = jensen_integral_converged(p, a, r).value - std::log(std::abs(evaluate(p, a)));
        worst_b = std::max(worst_b, std::abs(lhs - rhs));
    }

    const auto sinc = SpectralMeasure::uniform(0.0, 1.0);
    const auto big = discretize(sinc, default_n_freq(sinc, 100.0));
    int dominated = 0;
    double min_slack = std::numeric_limits<double>::infinity();
    constexpr int n = 200;
    for (int i = 0; i < n; ++i) {
        Rng rng = make_stream(1005, static_cast<std::uint64_t>(i));
        const auto s = jensen_upper_bound(sample_path(big, rng), 100.0, 0.2);
        dominated += s.bound >= static_cast<double>(s.exact) ? 1 : 0;
        min_slack = std::min(min_slack, s.bound - static_cast<double>(s.exact));
    }
    return {err_a < 1e-4 && worst_b < 2e-3 && dominated == n,
            fmt("(a) err %.2e (tol 1e-4); (b) worst %.2e over 50 (tol 2e-3); (c) %d/%d, min slack %.2f", err_a,
                worst_b, dominated, n, min_slack)};
}

Outcome growth()
{
    Rng mrng = make_stream(1006, 0);
    int type_ok = 0;
    constexpr int frames = 200;
    for (int i = 0; i < frames; ++i) {
        const auto mu = testing::random_measure(mrng);
        const auto f = discretize(mu, 16 + i);
        type_ok += exponential_type(*f) <= support_bounds(mu).A ? 1 : 0;
    }

    Rng zr = make_stream(11, 0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto frame = discretize(SpectralMeasure::uniform(0.0, 1.0), 64);
    int holds = 0;
    constexpr int n = 1000;
    for (int i = 0; i < n; ++i) {
        Rng rng = make_stream(1007, static_cast<std::uint64_t>(i));
        const auto p = sample_path(frame, rng);
        const double y = (0.1 + 4.9 * u(zr)) * (u(zr) < 0.5 ? -1.0 : 1.0);
        const double x = std::sqrt(400.0 - y * y) * (2.0 * u(zr) - 1.0);
        holds += phragmen_check(p, {x, y}, 200.0).holds ? 1 : 0;
    }

    std::array<int, 3> exceed{};
    const std::array<double, 3> levels{3.0, 5.0, 10.0};
    constexpr int paths = 10000;
    for (int i = 0; i < paths; ++i) {
        Rng rng = make_stream(1008, static_cast<std::uint64_t>(i));
        const auto g = growth_certificate(sample_path(frame, rng), 20.0);
        for (int k = 0; k < 3; ++k) exceed[k] += g.M > levels[k] ? 1 : 0;
    }
    const bool monotone = exceed[0] >= exceed[1] && exceed[1] >= exceed[2];
    return {type_ok == frames && holds == n && monotone,
            fmt("type <= A on %d/%d frames; Phragmen-Lindelof %d/%d; P(M > 3, 5, 10) = %.4f, %.4f, %.4f", type_ok,
                frames, holds, n, exceed[0] / double(paths), exceed[1] / double(paths), exceed[2] / double(paths))};
}

Outcome rarity()
{
    const auto mu = SpectralMeasure::uniform(0.0, 1.0);
    const double eta = 1.3 / std::numbers::pi;
    const auto e = naive_tail(mu, 50.0, eta, Side::over, 100000, 1009);
    return {e.hits == 0 && std::abs(e.ci_hi - 3e-5) < 1e-12,
            fmt("eta = %.4f, %ld hits in %zu, upper bound %.1e (target 3e-5)", eta, e.hits, e.n_samples, e.ci_hi)};
}

Outcome tilt_validity()
{
    const double exact = 0.5 * std::erfc(3.0 / std::numbers::sqrt2);
    const auto one = tilted_gaussian_tail(3.0, 3.0, 100000, 1010);
    const double rel = std::abs(one.p_hat / exact - 1.0);

    const auto mu = SpectralMeasure::uniform(0.0, 1.0);
    TiltOptions lr_opt;
    lr_opt.theta_override = 1.0;
    const auto lr_plan = plan_tilt(mu, 20.0, 0.5, 0.1, lr_opt);
    const auto lr = tilted_event(lr_plan, 20.0, 2000, 1011);
    tally(lr);
    const double lr_z = std::abs(lr.lr_mean - 1.0) / lr.lr_mean_se;

    TiltOptions zero_opt;
    zero_opt.theta_override = 0.0;
    bool identical = true;
    for (double eta : {0.15, 0.2, 0.25}) {
        zero_opt.event_override = tail_event(20.0, eta, Side::over);
        const auto plan = plan_tilt(mu, 20.0, 0.5, 0.1, zero_opt);
        const auto t = tilted_event(plan, 20.0, 1000, 1012);
        const auto nv = naive_event(plan.frame, 20.0, plan.event, 1000, 1012);
        tally(t);
        identical = identical && t.hits == nv.hits && t.p_hat == nv.p_hat;
    }
    return {rel < 0.05 && lr_z < 3.0 && identical,
            fmt("P(xi > 3) = %.5e vs %.5e, rel err %.2f%% (tol 5%%); LR mean %.4f, %.2f SE (tol 3); theta = 0 %s",
                one.p_hat, exact, 100.0 * rel, lr.lr_mean, lr_z, identical ? "identical" : "differs")};
}

Outcome decay_regime()
{
    const auto mu = SpectralMeasure::uniform(0.0, 1.0);
    const double A = support_bounds(mu).A;
    std::vector<TailEstimate> est;
    std::string values;
    for (double T : {10.0, 20.0, 30.0, 40.0}) {
        est.push_back(tilted_tail(mu, T, A, 0.1, 2000, 1013 + static_cast<std::uint64_t>(T)));
        tally(est.back());
        values += fmt(" %.1f", est.back().log_p_hat);
    }
    bool finite = true;
    bool decreasing = true;
    for (std::size_t i = 0; i < est.size(); ++i) {
        finite = finite && std::isfinite(est[i].log_p_hat);
        if (i > 0) decreasing = decreasing && est[i].log_p_hat < est[i - 1].log_p_hat;
    }
    if (!finite) return {false, "log p_hat:" + values + " (not all finite)"};
    const auto fit = decay_fit(est);
    return {decreasing && fit.regime == DecayRegime::linear_in_T,
            "log p_hat:" + values
                + fmt("; R^2 linear %.4f, quadratic %.4f -> %s; min ESS %.1f", fit.linear.r_squared,
                      fit.quadratic.r_squared, to_string(fit.regime).c_str(),
                      std::min({est[0].ess, est[1].ess, est[2].ess, est[3].ess}))};
}

Outcome certificates()
{
    return {g_contradictions == 0,
            fmt("%ld certificates fired over all tilted runs, %ld contradictions", g_fired, g_contradictions)};
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "Kac-Rice mean density", 60.0, false, kac_rice},
        {2, "pure tone exactness", 10.0, false, pure_tone},
        {3, "band containment", 120.0, false, band_containment},
        {4, "coupling suite", 60.0, false, coupling},
        {5, "Jensen machinery", 300.0, false, jensen},
        {6, "growth and type suite", 120.0, false, growth},
        {7, "super-exponential rarity", 600.0, false, rarity},
        {8, "tilted estimator validity", 60.0, false, tilt_validity},
        {9, "exponential-regime diagnostic", 900.0, true, decay_regime},
        {10, "certificate soundness", 900.0, false, certificates},
    };
    int hard_failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = s <= c.budget_seconds;
        const bool pass = o.pass && in_time;
        std::printf("%s %2d %s: %s; %.1f s (budget %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.c_str(), s, c.budget_seconds, !pass && c.soft ? " [soft: warning only]" : "");
        std::fflush(stdout);
        if (!pass && !c.soft) ++hard_failures;
    }
    return hard_failures == 0 ? 0 : 1;
}
