#pragma once

#include "zerolab/sampler.hpp"
#include "zerolab/spectral_measure.hpp"

#include <json.hpp>

#include <string>

namespace zerolab {

/// {"atoms":[{"lambda":1.0,"mass":0.5}], "pieces":[{"lo":1.0,"hi":2.0,"density":0.25}], "normalize":false}
/// Atom masses are pair masses, densities are per side. With "normalize": true the
/// components are rescaled to total mass 1; otherwise a mass != 1 is an InvalidMeasure.
SpectralMeasure measure_from_json(const nlohmann::json& j);
nlohmann::json measure_to_json(const SpectralMeasure& mu);

/// Accepts a path to a JSON file or an inline JSON object (text starting with '{').
SpectralMeasure load_measure(const std::string& file_or_inline);

/// Frame hash, frequencies, weights and coefficient arrays (plus tilt when present).
nlohmann::json path_to_json(const PathRealization& path);

/// Rebuilds a path on `frame`; throws ValidationError if the stored frame hash differs.
PathRealization path_from_json(const nlohmann::json& j, FramePtr frame);

} // namespace zerolab
