#pragma once

#include "zerolab/rng.hpp"
#include "zerolab/spectral_measure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace testing {

/// Composite Simpson rule on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000)
{
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

/// Random admissible measure: up to 3 atoms and up to 3 disjoint pieces inside [0, 3].
inline zerolab::SpectralMeasure random_measure(zerolab::Rng& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> count(0, 3);
    const int n_pieces = count(rng);
    int n_atoms = count(rng);
    if (n_pieces == 0 && n_atoms == 0) n_atoms = 1;

    // Cut [0, 3] into 2 * n_pieces + n_atoms + 1 slots and use alternate slots for pieces.
    std::vector<double> cuts{0.0, 3.0};
    for (int i = 0; i < 2 * n_pieces + 1; ++i) cuts.push_back(3.0 * u(rng));
    std::sort(cuts.begin(), cuts.end());
    std::vector<zerolab::DensityPiece> pieces;
    for (int i = 0; i < n_pieces; ++i) {
        const double lo = cuts[2 * i + 1];
        const double hi = cuts[2 * i + 2];
        if (hi - lo > 1e-3) pieces.push_back({lo, hi, 0.1 + u(rng)});
    }
    std::vector<zerolab::Atom> atoms;
    for (int i = 0; i < n_atoms; ++i) {
        double lambda = 3.0 * u(rng);
        bool inside = false;
        for (const auto& p : pieces) inside = inside || (lambda >= p.lo && lambda <= p.hi);
        for (const auto& a : atoms) inside = inside || std::abs(a.frequency - lambda) < 1e-9;
        if (!inside) atoms.push_back({lambda, 0.1 + u(rng)});
    }
    if (atoms.empty() && pieces.empty()) atoms.push_back({1.0, 1.0});
    return zerolab::SpectralMeasure::normalized(std::move(atoms), std::move(pieces));
}

} // namespace testing
