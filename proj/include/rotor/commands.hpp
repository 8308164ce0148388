#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace rotor::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUsage = 2;

/// Full command line, program name first. Never throws; errors become exit
/// codes with a message on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "walk_0007" for walk 7.
std::string walk_stem(std::size_t index);

inline constexpr const char* kManifestName = "manifest.json";

} // namespace rotor::cli
