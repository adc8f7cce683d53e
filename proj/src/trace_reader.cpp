// SPDX-License-Identifier: Apache-2.0

#include "fsmrv/trace_reader.hpp"

#include <string>

#include "fsmrv/common.hpp"

namespace fsmrv {

std::optional<event> trace_reader::next() {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        event e;
        try {
            e = parse_event(line);
        } catch (const parse_error& ex) {
            throw parse_error(ex.what(), static_cast<int>(line_));
        }
        if (e.seq <= last_seq_)
            throw trace_error("seq " + std::to_string(e.seq) + " at line " +
                              std::to_string(line_) + " does not increase (previous " +
                              std::to_string(last_seq_) + ")");
        last_seq_ = e.seq;
        return e;
    }
    return std::nullopt;
}

}  // namespace fsmrv
