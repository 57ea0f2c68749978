#include "zerolab/measure_io.hpp"

#include "zerolab/errors.hpp"

#include <fstream>
#include <sstream>

namespace zerolab {

namespace {

double number(const nlohmann::json& obj, const char* key)
{
    if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_number()) {
        throw InvalidMeasure(std::string("measure JSON: missing numeric field \"") + key + "\"");
    }
    return obj.at(key).get<double>();
}

nlohmann::json to_array(const Eigen::VectorXd& v)
{
    return nlohmann::json(std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::VectorXd from_array(const nlohmann::json& j, Eigen::Index expected, const char* what)
{
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != expected) {
        throw ValidationError(std::string("path JSON: array \"") + what + "\" has the wrong length");
    }
    Eigen::VectorXd v(expected);
    for (Eigen::Index i = 0; i < expected; ++i) v(i) = j[static_cast<std::size_t>(i)].get<double>();
    return v;
}

} // namespace

SpectralMeasure measure_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) throw InvalidMeasure("measure JSON must be an object");
    std::vector<Atom> atoms;
    std::vector<DensityPiece> pieces;
    if (j.contains("atoms")) {
        if (!j.at("atoms").is_array()) throw InvalidMeasure("measure JSON: \"atoms\" must be an array");
        for (const auto& a : j.at("atoms")) atoms.push_back({number(a, "lambda"), number(a, "mass")});
    }
    if (j.contains("pieces")) {
        if (!j.at("pieces").is_array()) throw InvalidMeasure("measure JSON: \"pieces\" must be an array");
        for (const auto& p : j.at("pieces")) pieces.push_back({number(p, "lo"), number(p, "hi"), number(p, "density")});
    }
    const bool normalize = j.value("normalize", false);
    return normalize ? SpectralMeasure::normalized(std::move(atoms), std::move(pieces))
                     : SpectralMeasure(std::move(atoms), std::move(pieces));
}

nlohmann::json measure_to_json(const SpectralMeasure& mu)
{
    nlohmann::json j;
    j["atoms"] = nlohmann::json::array();
    j["pieces"] = nlohmann::json::array();
    for (const auto& a : mu.atoms()) j["atoms"].push_back({{"lambda", a.frequency}, {"mass", a.mass}});
    for (const auto& p : mu.pieces()) j["pieces"].push_back({{"lo", p.lo}, {"hi", p.hi}, {"density", p.density}});
    return j;
}

SpectralMeasure load_measure(const std::string& file_or_inline)
{
    const auto first = file_or_inline.find_first_not_of(" \t\r\n");
    try {
        if (first != std::string::npos && file_or_inline[first] == '{') {
            return measure_from_json(nlohmann::json::parse(file_or_inline));
        }
        std::ifstream in(file_or_inline);
        if (!in) throw InvalidMeasure("cannot open measure file: " + file_or_inline);
        return measure_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw InvalidMeasure(std::string("measure JSON does not parse: ") + e.what());
    }
}

nlohmann::json path_to_json(const PathRealization& path)
{
    nlohmann::json j;
    j["frame_hash"] = path.frame().hash();
    j["frequencies"] = to_array(path.frame().frequencies());
    j["weights"] = to_array(path.frame().weights());
    j["xi"] = to_array(path.xi());
    j["eta"] = to_array(path.eta());
    if (path.tilt()) {
        j["tilt"] = {{"xi_shift", to_array(path.tilt()->xi_shift)}, {"eta_shift", to_array(path.tilt()->eta_shift)}};
    } else {
        j["tilt"] = nullptr;
    }
    return j;
}

PathRealization path_from_json(const nlohmann::json& j, FramePtr frame)
{
    if (j.at("frame_hash").get<std::string>() != frame->hash()) {
        throw ValidationError("path JSON was produced on a different frame (hash mismatch)");
    }
    const Eigen::Index n = frame->size();
    std::optional<CoefficientTilt> tilt;
    if (j.contains("tilt") && !j.at("tilt").is_null()) {
        tilt = CoefficientTilt{from_array(j.at("tilt").at("xi_shift"), n, "xi_shift"),
                               from_array(j.at("tilt").at("eta_shift"), n, "eta_shift")};
    }
    return PathRealization(std::move(frame), from_array(j.at("xi"), n, "xi"), from_array(j.at("eta"), n, "eta"),
                           std::move(tilt));
}

} // namespace zerolab
