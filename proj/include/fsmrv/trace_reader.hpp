// SPDX-License-Identifier: Apache-2.0
//
// Line-oriented trace reading with strict seq monotonicity (offline mode:
// ordering violations and malformed records are hard errors; the online
// session applies its own lenient policy on top of parse_event directly).

#pragma once

#include <istream>
#include <optional>

#include "fsmrv/event.hpp"

namespace fsmrv {

class trace_reader {
  public:
    explicit trace_reader(std::istream& in) : in_(in) {}

    // Next event, or nullopt at end of stream. Blank lines are skipped.
    // Throws parse_error (with line number) on malformed records and
    // trace_error on non-increasing seq.
    std::optional<event> next();

    size_t line() const { return line_; }

  private:
    std::istream& in_;
    size_t line_ = 0;
    uint64_t last_seq_ = 0;
};

}  // namespace fsmrv
