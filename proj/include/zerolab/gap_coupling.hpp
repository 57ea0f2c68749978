#pragma once

#include "zerolab/sampler.hpp"
#include "zerolab/spectral_measure.hpp"

namespace zerolab {

/// Translated measure nu(S) = mu_+(S + A) + mu_-(S - A), A the outer support edge.
/// A pair atom at lambda > 0 becomes a pair atom at A - lambda with the same mass
/// (an atom at the origin when lambda = A); a piece [lo, hi] becomes [A - hi, A - lo]
/// with the same density. An atom at the origin is split evenly between +-A.
SpectralMeasure build_nu(const SpectralMeasure& mu);

/// (F, H) on the mu-frame and G on the nu-frame with
///   G(x) = cos(Ax) F(x) + sin(Ax) H(x).
struct CouplingTriple {
    PathRealization F;
    PathRealization H;
    PathRealization G;
    double A;
};

/// Frame of G: frequencies A - lambda_j in increasing order, same weights,
/// source build_nu(source of `frame`).
FramePtr coupled_frame(const WaveExpansion& frame);

/// H has coefficients (-eta_j, xi_j); G has (xi_j, -eta_j) at A - lambda_j.
/// Throws FrequencyOutOfBand if a frame frequency exceeds A by more than 1e-12.
CouplingTriple couple(const PathRealization& F);

/// Same, reusing a frame previously built by coupled_frame(F.frame()).
CouplingTriple couple(const PathRealization& F, FramePtr g_frame);

struct CouplingReport {
    double T = 0.0;
    double identity_residual = 0.0;  ///< max |G - cos(Ax)F - sin(Ax)H| on 1000 points of [0, T]
    double lattice_residual = 0.0;   ///< max_k |G(k pi/A) - (-1)^k F(k pi/A)|, k <= floor(AT/pi)
    long lattice_count = 0;          ///< floor(AT/pi)
    long zeros_F = 0;
    long zeros_G = 0;
    long slack = 0;  ///< N_F - (floor(AT/pi) - N_G)
    bool identity_ok = false;
    bool lattice_ok = false;
    bool inequality_ok = false;
    bool degenerate = false;  ///< |F| < 1e-12 at a lattice point
    bool passed() const { return identity_ok && lattice_ok && inequality_ok; }
};

CouplingReport verify_coupling(const CouplingTriple& triple, double T);

} // namespace zerolab
