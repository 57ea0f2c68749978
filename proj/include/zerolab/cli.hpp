#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zerolab::cli {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kCsvSchema = "zerolab-csv/1";
inline constexpr const char* kManifestSchema = "zerolab-manifest/1";

/// Exit codes: 0 success, 2 validation error, 3 numeric failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

} // namespace zerolab::cli
