#pragma once

#include <string>
#include <vector>

namespace zerolab {

/// Point mass of a symmetric measure. For lambda > 0 `mass` is the combined
/// mass of the pair {lambda, -lambda}; for lambda == 0 it is the mass at the origin.
struct Atom {
    double frequency;
    double mass;
};

/// Constant density on [lo, hi] (positive half-line), mirrored onto [-hi, -lo].
/// `density` is the per-side value, so the piece carries 2*density*(hi-lo) in total.
struct DensityPiece {
    double lo;
    double hi;
    double density;
};

struct SupportBounds {
    double B;  ///< inner edge: support avoids (-B, B)
    double A;  ///< outer edge: support inside [-A, A]
};

/// Closed frequency band [center - half_width, center + half_width] on the positive side.
struct BandQuery {
    double center;
    double half_width;
};

/// Symmetric, compactly supported spectral measure: atoms plus a
/// piecewise-constant density, stored by its positive half.
///
/// Immutable after construction. The constructor enforces total mass 1
/// (within 1e-12), disjoint pieces and atoms outside piece interiors.
class SpectralMeasure {
public:
    SpectralMeasure(std::vector<Atom> atoms, std::vector<DensityPiece> pieces);

    /// Rescales the given components to total mass 1 before validating.
    static SpectralMeasure normalized(std::vector<Atom> atoms, std::vector<DensityPiece> pieces);

    /// Uniform density on +-[lo, hi] with total mass 1.
    static SpectralMeasure uniform(double lo, double hi);

    /// Pure tone (delta_lambda + delta_{-lambda}) / 2, or delta_0 when lambda == 0.
    static SpectralMeasure tone(double lambda);

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<DensityPiece>& pieces() const { return pieces_; }

    /// Mass over the whole real line.
    static double total_mass(const std::vector<Atom>& atoms, const std::vector<DensityPiece>& pieces);

    /// Same measure with density pieces split at the given cut points.
    SpectralMeasure refined_at(const std::vector<double>& cuts) const;

private:
    std::vector<Atom> atoms_;
    std::vector<DensityPiece> pieces_;
};

/// Integral of lambda^p over the real line; p must be even and non-negative.
double moment(const SpectralMeasure& mu, int p);

/// k(t) = integral of cos(lambda t) d mu(lambda), in closed form.
double covariance_kernel(const SpectralMeasure& mu, double t);

SupportBounds support_bounds(const SpectralMeasure& mu);

/// Positive-side mass of the closed band; an atom at the origin counts in full.
double band_mass(const SpectralMeasure& mu, const BandQuery& band);

/// Band of half-width 1/(10T) centred in (X - eps, X + eps) with maximal mass.
/// Candidate centres form a grid of spacing equal to the half-width around X;
/// ties go to the centre nearest X. Throws EmptyBand if mu([X-eps, X+eps]) = 0.
BandQuery select_heavy_band(const SpectralMeasure& mu, double X, double eps, double T);

std::string describe(const SpectralMeasure& mu);

} // namespace zerolab
