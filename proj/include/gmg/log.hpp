#pragma once

#include <spdlog/spdlog.h>

namespace gmg {

// Stderr logger; level from the GMG_LOG environment variable (trace..off, default warn).
spdlog::logger& log();

} // namespace gmg
