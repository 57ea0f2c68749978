#include "zerolab/gap_coupling.hpp"

#include "zerolab/errors.hpp"
#include "zerolab/zero_counter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace zerolab {

namespace {

constexpr double kResidualTolerance = 1e-9;
constexpr double kLatticeFloor = 1e-12;
constexpr double kFrequencySlack = 1e-12;

} // namespace

SpectralMeasure build_nu(const SpectralMeasure& mu)
{
    const double A = support_bounds(mu).A;
    std::vector<Atom> atoms;
    std::vector<DensityPiece> pieces;
    for (const auto& a : mu.atoms()) {
        atoms.push_back({std::max(0.0, A - a.frequency), a.mass});
    }
    for (const auto& p : mu.pieces()) {
        pieces.push_back({std::max(0.0, A - p.hi), A - p.lo, p.density});
    }
    return SpectralMeasure(std::move(atoms), std::move(pieces));
}

FramePtr coupled_frame(const WaveExpansion& frame)
{
    const double A = support_bounds(frame.source()).A;
    const Eigen::Index n = frame.size();
    if (frame.max_frequency() > A + kFrequencySlack) {
        throw FrequencyOutOfBand("frame frequency " + std::to_string(frame.max_frequency())
                                 + " exceeds the support edge A = " + std::to_string(A));
    }
    Eigen::VectorXd freqs(n);
    Eigen::VectorXd weights(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::Index src = n - 1 - j;
        freqs(j) = std::max(0.0, A - frame.frequencies()(src));
        weights(j) = frame.weights()(src);
    }
    auto nu = std::make_shared<const SpectralMeasure>(build_nu(frame.source()));
    return std::make_shared<const WaveExpansion>(std::move(freqs), std::move(weights), std::move(nu));
}

CouplingTriple couple(const PathRealization& F)
{
    return couple(F, coupled_frame(F.frame()));
}

CouplingTriple couple(const PathRealization& F, FramePtr g_frame)
{
    const double A = support_bounds(F.frame().source()).A;
    const Eigen::Index n = F.frame().size();
    if (g_frame->size() != n) throw ValidationError("coupled frame does not match the path's frame");
    PathRealization H(F.frame_ptr(), -F.eta(), F.xi());
    Eigen::VectorXd gx = F.xi().reverse();
    Eigen::VectorXd ge = -F.eta().reverse();
    PathRealization G(std::move(g_frame), std::move(gx), std::move(ge));
    return {F, std::move(H), std::move(G), A};
}

CouplingReport verify_coupling(const CouplingTriple& triple, double T)
{
    if (!(triple.A > 0.0)) throw ValidationError("verify_coupling needs A > 0");
    if (!(T > 0.0)) throw ValidationError("verify_coupling needs T > 0");
    const double A = triple.A;
    CouplingReport r;
    r.T = T;

    constexpr int grid = 1000;
    for (int i = 0; i < grid; ++i) {
        const double x = T * i / (grid - 1);
        const double lhs = evaluate(triple.G, x);
        const double rhs = std::cos(A * x) * evaluate(triple.F, x) + std::sin(A * x) * evaluate(triple.H, x);
        r.identity_residual = std::max(r.identity_residual, std::abs(lhs - rhs));
    }

    r.lattice_count = static_cast<long>(std::floor(A * T / std::numbers::pi));
    for (long k = 0; k <= r.lattice_count; ++k) {
        const double x = static_cast<double>(k) * std::numbers::pi / A;
        const double f = evaluate(triple.F, x);
        const double g = evaluate(triple.G, x);
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        r.lattice_residual = std::max(r.lattice_residual, std::abs(g - sign * f));
        if (std::abs(f) < kLatticeFloor) r.degenerate = true;
    }

    r.zeros_F = count_zeros(triple.F, T, default_grid_step(triple.F.frame())).count;
    r.zeros_G = count_zeros(triple.G, T, default_grid_step(triple.G.frame())).count;
    r.slack = r.zeros_F - (r.lattice_count - r.zeros_G);
    r.identity_ok = r.identity_residual < kResidualTolerance;
    r.lattice_ok = r.lattice_residual < kResidualTolerance;
    r.inequality_ok = r.slack >= 0;
    return r;
}

} // namespace zerolab
