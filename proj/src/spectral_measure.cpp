#include "zerolab/spectral_measure.hpp"

#include "zerolab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace zerolab {

namespace {

constexpr double kMassTolerance = 1e-12;
constexpr double kSmallT = 1e-6;

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void validate(const std::vector<Atom>& atoms, const std::vector<DensityPiece>& pieces)
{
    if (atoms.empty() && pieces.empty()) {
        throw InvalidMeasure("measure is empty: at least one atom or density piece is required");
    }
    for (const auto& a : atoms) {
        if (!std::isfinite(a.frequency) || a.frequency < 0.0) {
            throw InvalidMeasure("atom frequency must be finite and >= 0, got " + fmt(a.frequency));
        }
        if (!std::isfinite(a.mass) || a.mass <= 0.0) {
            throw InvalidMeasure("atom mass must be > 0, got " + fmt(a.mass));
        }
    }
    for (std::size_t i = 1; i < atoms.size(); ++i) {
        if (atoms[i].frequency == atoms[i - 1].frequency) {
            throw InvalidMeasure("duplicate atom at frequency " + fmt(atoms[i].frequency));
        }
    }
    for (const auto& p : pieces) {
        if (!(std::isfinite(p.lo) && std::isfinite(p.hi)) || p.lo < 0.0 || !(p.lo < p.hi)) {
            throw InvalidMeasure("density piece needs 0 <= lo < hi, got [" + fmt(p.lo) + ", " + fmt(p.hi) + "]");
        }
        if (!std::isfinite(p.density) || p.density <= 0.0) {
            throw InvalidMeasure("density value must be > 0, got " + fmt(p.density));
        }
    }
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        if (pieces[i].lo < pieces[i - 1].hi) {
            throw InvalidMeasure("density pieces must be pairwise disjoint: [" + fmt(pieces[i - 1].lo) + ", "
                                 + fmt(pieces[i - 1].hi) + "] overlaps [" + fmt(pieces[i].lo) + ", "
                                 + fmt(pieces[i].hi) + "]");
        }
    }
    for (const auto& a : atoms) {
        for (const auto& p : pieces) {
            if (a.frequency > p.lo && a.frequency < p.hi) {
                throw InvalidMeasure("atom at " + fmt(a.frequency) + " lies inside the interior of piece ["
                                     + fmt(p.lo) + ", " + fmt(p.hi) + "]");
            }
        }
    }
    const double mass = SpectralMeasure::total_mass(atoms, pieces);
    if (std::abs(mass - 1.0) > kMassTolerance) {
        throw InvalidMeasure("total mass must equal 1 (k(0) = 1 normalization), got " + fmt(mass));
    }
}

void sort_components(std::vector<Atom>& atoms, std::vector<DensityPiece>& pieces)
{
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.frequency < b.frequency; });
    std::sort(pieces.begin(), pieces.end(), [](const DensityPiece& a, const DensityPiece& b) { return a.lo < b.lo; });
}

// Integral of cos(lambda t) over [lo, hi], divided by t, stable near t = 0.
double sin_difference_over_t(double lo, double hi, double t)
{
    if (std::abs(t) < kSmallT) {
        const double t2 = t * t;
        const double d1 = hi - lo;
        const double d3 = hi * hi * hi - lo * lo * lo;
        const double d5 = std::pow(hi, 5) - std::pow(lo, 5);
        return d1 - d3 * t2 / 6.0 + d5 * t2 * t2 / 120.0;
    }
    return (std::sin(hi * t) - std::sin(lo * t)) / t;
}

} // namespace

SpectralMeasure::SpectralMeasure(std::vector<Atom> atoms, std::vector<DensityPiece> pieces)
    : atoms_(std::move(atoms)), pieces_(std::move(pieces))
{
    sort_components(atoms_, pieces_);
    validate(atoms_, pieces_);
}

SpectralMeasure SpectralMeasure::normalized(std::vector<Atom> atoms, std::vector<DensityPiece> pieces)
{
    const double mass = total_mass(atoms, pieces);
    if (!(mass > 0.0) || !std::isfinite(mass)) {
        throw InvalidMeasure("cannot normalize a measure with total mass " + fmt(mass));
    }
    for (auto& a : atoms) a.mass /= mass;
    for (auto& p : pieces) p.density /= mass;
    return SpectralMeasure(std::move(atoms), std::move(pieces));
}

SpectralMeasure SpectralMeasure::uniform(double lo, double hi)
{
    return SpectralMeasure({}, {{lo, hi, 0.5 / (hi - lo)}});
}

SpectralMeasure SpectralMeasure::tone(double lambda)
{
    return SpectralMeasure({{lambda, 1.0}}, {});
}

double SpectralMeasure::total_mass(const std::vector<Atom>& atoms, const std::vector<DensityPiece>& pieces)
{
    double mass = 0.0;
    for (const auto& a : atoms) mass += a.mass;
    for (const auto& p : pieces) mass += 2.0 * p.density * (p.hi - p.lo);
    return mass;
}

SpectralMeasure SpectralMeasure::refined_at(const std::vector<double>& cuts) const
{
    std::vector<DensityPiece> out;
    for (const auto& p : pieces_) {
        std::vector<double> inner;
        for (double c : cuts) {
            if (c > p.lo && c < p.hi) inner.push_back(c);
        }
        std::sort(inner.begin(), inner.end());
        inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
        double lo = p.lo;
        for (double c : inner) {
            out.push_back({lo, c, p.density});
            lo = c;
        }
        out.push_back({lo, p.hi, p.density});
    }
    return SpectralMeasure(atoms_, std::move(out));
}

double moment(const SpectralMeasure& mu, int p)
{
    if (p < 0 || p % 2 != 0) {
        throw ValidationError("moment order must be even and non-negative, got " + std::to_string(p));
    }
    double m = 0.0;
    for (const auto& a : mu.atoms()) {
        m += a.mass * (p == 0 ? 1.0 : std::pow(a.frequency, p));
    }
    for (const auto& piece : mu.pieces()) {
        m += 2.0 * piece.density * (std::pow(piece.hi, p + 1) - std::pow(piece.lo, p + 1)) / (p + 1);
    }
    return m;
}

double covariance_kernel(const SpectralMeasure& mu, double t)
{
    double k = 0.0;
    for (const auto& a : mu.atoms()) {
        k += a.mass * std::cos(a.frequency * t);
    }
    for (const auto& p : mu.pieces()) {
        k += 2.0 * p.density * sin_difference_over_t(p.lo, p.hi, t);
    }
    return k;
}

SupportBounds support_bounds(const SpectralMeasure& mu)
{
    double A = 0.0;
    double B = std::numeric_limits<double>::infinity();
    for (const auto& a : mu.atoms()) {
        A = std::max(A, a.frequency);
        B = std::min(B, a.frequency);
    }
    for (const auto& p : mu.pieces()) {
        A = std::max(A, p.hi);
        B = std::min(B, p.lo);
    }
    return {B, A};
}

double band_mass(const SpectralMeasure& mu, const BandQuery& band)
{
    const double lo = band.center - band.half_width;
    const double hi = band.center + band.half_width;
    double m = 0.0;
    for (const auto& a : mu.atoms()) {
        if (a.frequency >= lo && a.frequency <= hi) {
            m += a.frequency == 0.0 ? a.mass : 0.5 * a.mass;
        }
    }
    for (const auto& p : mu.pieces()) {
        const double overlap = std::min(p.hi, hi) - std::max({p.lo, lo, 0.0});
        if (overlap > 0.0) m += p.density * overlap;
    }
    return m;
}

BandQuery select_heavy_band(const SpectralMeasure& mu, double X, double eps, double T)
{
    if (!(eps > 0.0) || !(T > 0.0)) {
        throw ValidationError("select_heavy_band needs eps > 0 and T > 0");
    }
    if (band_mass(mu, {X, eps}) <= 0.0) {
        throw EmptyBand("no spectral mass in [" + fmt(X - eps) + ", " + fmt(X + eps) + "]");
    }
    const double w = 1.0 / (10.0 * T);
    const auto K = static_cast<long>(std::ceil(eps / w)) - 1;

    BandQuery best{X, w};
    double best_mass = -1.0;
    long best_k = 0;
    for (long k = -K; k <= K; ++k) {
        const double c = X + static_cast<double>(k) * w;
        const double m = band_mass(mu, {c, w});
        const double tie = 1e-12 * std::max(m, best_mass);
        const bool better = m > best_mass + tie
                            || (std::abs(m - best_mass) <= tie && std::labs(k) < std::labs(best_k));
        if (better) {
            best_mass = m;
            best_k = k;
            best = {c, w};
        }
    }
    return best;
}

std::string describe(const SpectralMeasure& mu)
{
    std::ostringstream os;
    os.precision(6);
    const auto [B, A] = support_bounds(mu);
    os << "atoms=" << mu.atoms().size() << " pieces=" << mu.pieces().size() << " support=[" << B << ", " << A
       << "]";
    return os.str();
}

} // namespace zerolab
