#include "gmg/log.hpp"

#include <cstdlib>
#include <memory>

#include <spdlog/sinks/stdout_sinks.h>

namespace gmg {

spdlog::logger& log()
{
    static std::shared_ptr<spdlog::logger> logger = [] {
        auto l = spdlog::stderr_logger_mt("gmg");
        l->set_pattern("[%Y-%m-%d %H:%M:%S.%e] [%l] %v");
        const char* level = std::getenv("GMG_LOG");
        l->set_level(level ? spdlog::level::from_str(level) : spdlog::level::warn);
        return l;
    }();
    return *logger;
}

} // namespace gmg
