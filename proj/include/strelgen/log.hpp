#pragma once

// Logging controlled by the STRELGEN_LOG environment variable:
// unset/"0"/"off" silent, "1"/"info" progress lines, "2"/"debug" per-step
// detail. Output goes to stderr.

#include <string>

namespace strelgen::logging {

enum class Level { Off = 0, Info = 1, Debug = 2 };

Level level();
bool enabled(Level l);
void info(const std::string& msg);
void debug(const std::string& msg);

}  // namespace strelgen::logging
