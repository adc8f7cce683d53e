// SPDX-License-Identifier: Apache-2.0

#include "fsmrv/common.hpp"

#include <cstdlib>
#include <iostream>

namespace fsmrv {

log_level current_log_level() {
    static log_level level = [] {
        const char* env = std::getenv("FSMRV_LOG");
        if (!env) return log_level::off;
        std::string v(env);
        if (v == "info") return log_level::info;
        if (v == "debug") return log_level::debug;
        return log_level::off;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (current_log_level() >= log_level::info) std::cerr << "[fsm-rv] " << msg << "\n";
}

void log_debug(const std::string& msg) {
    if (current_log_level() >= log_level::debug) std::cerr << "[fsm-rv:debug] " << msg << "\n";
}

}  // namespace fsmrv
