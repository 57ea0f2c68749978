#pragma once

#include "zerolab/sampler.hpp"
#include "zerolab/spectral_measure.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace zerolab {

struct ZeroReport {
    double start = 0.0;
    double T = 0.0;
    long count = 0;
    std::optional<std::vector<double>> zero_locations;
    double grid_step = 0.0;  ///< step actually used (T divided into equal cells)
    double refinement_tolerance = 1e-10;
};

struct ZeroCountOptions {
    double start = 0.0;             ///< count on [start, start + T]
    bool retain_locations = false;  ///< refine and keep the zero locations
};

/// pi / (20 sigma) for a frame of exponential type sigma (1 for a constant frame).
double default_grid_step(const WaveExpansion& frame);

/// Real zeros of the path on [start, start + T], without multiplicity.
///
/// Sign changes on the grid bracket simple zeros. Cells whose two ends have
/// the same sign but where |F| dips toward zero (both ends below 1e-12, or the
/// derivative signs show an interior minimum of |F| that the slope could drive
/// through zero) are subdivided x16 and rescanned. Zeros within 1e-10 outside
/// either end count as inside. Throws ResolutionTooCoarse if the step exceeds
/// pi / (20 sigma).
ZeroReport count_zeros(const PathRealization& path, double T, double grid_step, const ZeroCountOptions& options = {});

/// sqrt(moment(mu, 2)) / pi: expected zeros per unit time.
double kac_rice_density(const SpectralMeasure& mu);

struct DensitySummary {
    double T = 0.0;
    double mean = 0.0;  ///< mean of N/T
    double standard_error = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::vector<long> counts;
    std::vector<std::uint64_t> seeds;  ///< per-path stream seeds
};

struct DensityOptions {
    int n_freq = 0;        ///< 0 selects default_n_freq(mu, T)
    unsigned workers = 0;  ///< 0 selects resolve_workers()
};

/// Monte Carlo zero density over i.i.d. paths; path i uses stream (base_seed, i).
DensitySummary empirical_density(const SpectralMeasure& mu, double T, std::size_t n_samples,
                                 std::uint64_t base_seed, const DensityOptions& options = {});

} // namespace zerolab
