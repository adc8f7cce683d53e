#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fsmrv {

// Configuration for one synthetic scenario run. The same configuration
// always yields byte-identical output.
struct scenario_config {
    std::string scenario;       // dining | readers_writers | elevator | oauth | drone
    std::uint64_t seed = 1;
    std::uint64_t events = 1000; // target number of key-attribute writes (+-5%)
    std::string bug;            // empty = correct behaviour, else a fault id
};

struct scenario_output {
    std::string trace_jsonl;    // newline-delimited event records
    std::string spec_text;      // companion spec ("scenario.spec")
    // additional property-pack variants, as {file name, contents}
    std::vector<std::pair<std::string, std::string>> extra_specs;
};

// All scenario ids, in canonical order.
std::vector<std::string> known_scenarios();

// Fault ids supported by a scenario (empty list if none). Throws
// config_error for an unknown scenario id.
std::vector<std::string> known_bugs(const std::string& scenario);

// Runs the simulation. Throws config_error on an unknown scenario or bug id
// or an out-of-range event target.
scenario_output generate_scenario(const scenario_config& cfg);

// Convenience wrapper: writes trace.jsonl, scenario.spec and any extra
// spec files into out_dir (which must already exist or be creatable).
void write_scenario_files(const scenario_config& cfg, const std::string& out_dir);

} // namespace fsmrv
