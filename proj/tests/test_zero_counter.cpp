#include "support.hpp"

#include "zerolab/errors.hpp"
#include "zerolab/zero_counter.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace zerolab;

namespace {

PathRealization cosine_path(double xi = 1.0, double eta = 0.0)
{
    auto mu = std::make_shared<const SpectralMeasure>(SpectralMeasure::tone(1.0));
    auto frame = std::make_shared<const WaveExpansion>(Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1), mu);
    return PathRealization(frame, Eigen::VectorXd::Constant(1, xi), Eigen::VectorXd::Constant(1, eta));
}

} // namespace

TEST_CASE("pure cosine zeros")
{
    const auto path = cosine_path();
    const double step = default_grid_step(path.frame());
    CHECK(step == doctest::Approx(std::numbers::pi / 20.0));
    const auto r = count_zeros(path, 10.0, step, {0.0, true});
    CHECK(r.count == 3);
    REQUIRE(r.zero_locations);
    REQUIRE(r.zero_locations->size() == 3);
    for (int k = 0; k < 3; ++k) CHECK(std::abs((*r.zero_locations)[k] - (k + 0.5) * std::numbers::pi) < 1e-8);
    CHECK(count_zeros(path, std::numbers::pi / 2.0 - 1e-3, step).count == 0);
    CHECK_THROWS_AS(count_zeros(path, 10.0, 2.0 * step), ResolutionTooCoarse);
}

TEST_CASE("endpoint zeros count once")
{
    // sin t has zeros at 0 and pi.
    const auto path = cosine_path(0.0, 1.0);
    const double step = default_grid_step(path.frame());
    CHECK(count_zeros(path, std::numbers::pi, step).count == 2);
    CHECK(count_zeros(path, std::numbers::pi + 1e-11, step).count == 2);
}

TEST_CASE("near-tangential zero pairs are split by the rescan")
{
    // F(t) = cos t + (1 - delta): a pair of zeros sqrt(8 delta) apart near each odd multiple of pi.
    auto mu = std::make_shared<const SpectralMeasure>(SpectralMeasure({{0.0, 0.5}, {1.0, 0.5}}, {}));
    auto frame = std::make_shared<const WaveExpansion>((Eigen::VectorXd(2) << 0.0, 1.0).finished(),
                                                       (Eigen::VectorXd(2) << 0.5, 0.5).finished(), mu);
    const double s = std::sqrt(0.5);
    const double step = default_grid_step(*frame);
    for (double delta : {1e-2, 1e-3, 1e-4}) {
        const PathRealization p(frame, (Eigen::VectorXd(2) << (1.0 - delta) / s, 1.0 / s).finished(),
                                Eigen::VectorXd::Zero(2));
        CAPTURE(delta);
        CHECK(count_zeros(p, 20.0, step).count == 6);
    }
    const PathRealization above(frame, (Eigen::VectorXd(2) << 1.001 / s, 1.0 / s).finished(), Eigen::VectorXd::Zero(2));
    CHECK(count_zeros(above, 20.0, step).count == 0);
}

TEST_CASE("property: counts and locations on random paths")
{
    Rng rng = make_stream(31, 0);
    for (int trial = 0; trial < 60; ++trial) {
        const auto mu = testing::random_measure(rng);
        const auto frame = discretize(mu, 128);
        const auto path = sample_path(frame, rng);
        const double step = default_grid_step(*frame);
        const auto r = count_zeros(path, 40.0, step, {0.0, true});
        REQUIRE(r.zero_locations);
        const auto& z = *r.zero_locations;
        CHECK(static_cast<long>(z.size()) == r.count);
        for (std::size_t i = 0; i < z.size(); ++i) {
            CHECK(z[i] >= 0.0);
            CHECK(z[i] <= 40.0);
            if (i > 0) CHECK(z[i] > z[i - 1]);
            CHECK(std::abs(evaluate(path, z[i])) < 1e-8 * std::max(1.0, std::abs(evaluate_deriv(path, z[i]))));
        }
        // Monotone in the horizon on a shared grid.
        long prev = 0;
        for (int k = 1; k <= 8; ++k) {
            const long c = count_zeros(path, 5.0 * k, step).count;
            CHECK(c >= prev);
            prev = c;
        }
        CHECK(count_zeros(path, 40.0, step, {0.0, false}).count == r.count);
    }
}

TEST_CASE("count is stable under halving the grid step")
{
    const auto frame = discretize(SpectralMeasure::uniform(0.0, 1.0), 64);
    const double step = default_grid_step(*frame);
    int agree = 0;
    constexpr int n = 10000;
    for (int i = 0; i < n; ++i) {
        Rng rng = make_stream(17, static_cast<std::uint64_t>(i));
        const auto path = sample_path(frame, rng);
        agree += count_zeros(path, 50.0, step).count == count_zeros(path, 50.0, step / 2.0).count ? 1 : 0;
    }
    CHECK(agree >= 0.999 * n);
}

TEST_CASE("Kac-Rice densities")
{
    CHECK(kac_rice_density(SpectralMeasure::tone(1.0)) == doctest::Approx(1.0 / std::numbers::pi));
    CHECK(kac_rice_density(SpectralMeasure::uniform(0.0, 1.0)) == doctest::Approx(0.18378).epsilon(1e-4));
    CHECK(kac_rice_density(SpectralMeasure::uniform(1.0, 2.0)) == doctest::Approx(0.48627).epsilon(1e-4));
}

TEST_CASE("empirical density: pure tone is exact")
{
    const auto s = empirical_density(SpectralMeasure::tone(1.0), 100.0, 200, 4);
    for (long n : s.counts) CHECK((n == 31 || n == 32));
    CHECK_THROWS_AS(empirical_density(SpectralMeasure::tone(1.0), 100.0, 1, 4), ValidationError);
}

TEST_CASE("empirical density: Kac-Rice and band containment")
{
    const auto sinc = SpectralMeasure::uniform(0.0, 1.0);
    const auto s = empirical_density(sinc, 100.0, 2000, 12);
    CHECK(std::abs(s.mean - kac_rice_density(sinc)) < 3.0 * s.standard_error);

    const auto band = SpectralMeasure::uniform(1.0, 2.0);
    const auto b = empirical_density(band, 200.0, 300, 13);
    CHECK(b.min >= 1.0 / std::numbers::pi - 0.02);
    CHECK(b.max <= 2.0 / std::numbers::pi + 0.02);
}

TEST_CASE("results do not depend on the worker count")
{
    const auto sinc = SpectralMeasure::uniform(0.0, 1.0);
    DensityOptions one;
    one.workers = 1;
    DensityOptions four;
    four.workers = 4;
    const auto a = empirical_density(sinc, 30.0, 64, 3, one);
    const auto b = empirical_density(sinc, 30.0, 64, 3, four);
    CHECK(a.counts == b.counts);
    CHECK(a.mean == b.mean);
}

TEST_CASE("shifted windows share the mean density")
{
    const auto sinc = SpectralMeasure::uniform(0.0, 1.0);
    const auto frame = discretize(sinc, 128);
    const double step = default_grid_step(*frame);
    Rng srng = make_stream(40, 0);
    std::uniform_real_distribution<double> u(0.0, 500.0);
    constexpr int n = 400;
    std::vector<double> means;
    std::vector<double> ses;
    for (int w = 0; w < 10; ++w) {
        const double s = u(srng);
        double sum = 0.0, sq = 0.0;
        for (int i = 0; i < n; ++i) {
            Rng rng = make_stream(41 + w, static_cast<std::uint64_t>(i));
            const double d = count_zeros(sample_path(frame, rng), 30.0, step, {s, false}).count / 30.0;
            sum += d;
            sq += d * d;
        }
        means.push_back(sum / n);
        ses.push_back(std::sqrt((sq / n - means.back() * means.back()) / n));
    }
    for (int w = 1; w < 10; ++w) {
        CHECK(std::abs(means[w] - means[0]) < 3.0 * std::sqrt(ses[w] * ses[w] + ses[0] * ses[0]) + 1e-12);
    }
}
