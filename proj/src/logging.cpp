#include "demon/logging.hpp"

#include <cstdlib>
#include <cstring>
#include <iostream>

namespace demon {

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("DEMON_ENGINE_LOG");
        if (env == nullptr) return LogLevel::info;
        if (std::strcmp(env, "off") == 0) return LogLevel::off;
        if (std::strcmp(env, "debug") == 0) return LogLevel::debug;
        return LogLevel::info;
    }();
    return level;
}

void log_info(const std::string& message) {
    if (log_level() >= LogLevel::info) std::cerr << "[engine] " << message << "\n";
}

void log_debug(const std::string& message) {
    if (log_level() >= LogLevel::debug) std::cerr << "[engine:debug] " << message << "\n";
}

} // namespace demon
