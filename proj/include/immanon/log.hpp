#pragma once

#include <cstdlib>
#include <iostream>
#include <string>

namespace immanon::log {

enum class Level : int { error = 0, warn = 1, info = 2, debug = 3 };

/// Log threshold from the IMMANON_LOG environment variable ("error", "warn",
/// "info", "debug" or 0-3). Defaults to warn. Read once per process.
inline Level threshold() {
    static const Level level = [] {
        const char* raw = std::getenv("IMMANON_LOG");
        if (!raw) return Level::warn;
        std::string v(raw);
        for (auto& c : v) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (v == "error" || v == "0") return Level::error;
        if (v == "warn" || v == "warning" || v == "1") return Level::warn;
        if (v == "info" || v == "2") return Level::info;
        if (v == "debug" || v == "3") return Level::debug;
        return Level::warn;
    }();
    return level;
}

inline void emit(Level level, const std::string& message) {
    if (static_cast<int>(level) > static_cast<int>(threshold())) return;
    static const char* names[] = {"error", "warn", "info", "debug"};
    std::cerr << "[" << names[static_cast<int>(level)] << "] " << message << "\n";
}

inline void error(const std::string& m) { emit(Level::error, m); }
inline void warn(const std::string& m) { emit(Level::warn, m); }
inline void info(const std::string& m) { emit(Level::info, m); }
inline void debug(const std::string& m) { emit(Level::debug, m); }

}  // namespace immanon::log
