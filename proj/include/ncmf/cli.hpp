#pragma once

// Command-line front end. Every command produces one primary output (a file
// or stdout) and, when an output file is given, a JSON run manifest.

#include <iosfwd>
#include <string>
#include <vector>

namespace ncmf {

inline constexpr const char* kArtifactVersion = "1.0.0";
inline constexpr const char* kManifestSchema = "ncmf-manifest/1";

/// Exit codes: 0 success, 1 computation or replay failure, 2 usage error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string sha256_hex(const std::string& bytes);

}  // namespace ncmf
