#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "trident/model.hpp"
#include "trident/planner.hpp"
#include "trident/schedule.hpp"

namespace trident {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SearchSettings {
    std::vector<std::int64_t> global_batch_candidates;  // defaulted in parse
    std::vector<std::int64_t> micro_batch_candidates;
    bool enforce_token_cap = true;
    bool enforce_tensor_within_node = true;
    std::optional<double> memory_budget_bytes;
    MemoryModel memory;
};

// Parsed run configuration. Sections are JSON objects; unknown keys are
// rejected, missing optional keys take the documented defaults, and the
// effective values (defaults included) are echoed into reports.
struct RunConfig {
    ModelShape model;
    ClusterShape cluster;
    bool has_cluster = false;
    SearchSettings search;
    std::optional<ScheduleSpec> schedule;
};

std::vector<std::int64_t> default_global_batch_candidates();
std::vector<std::int64_t> default_micro_batch_candidates();

// Throws ConfigError with a section/key diagnostic on malformed input.
RunConfig parse_config(std::istream& in);
RunConfig parse_config_file(const std::string& path);

PlanQuery plan_query(const RunConfig& config);  // requires the cluster section

// Single-line JSON echo of every effective value, keys sorted.
std::string effective_config_json(const RunConfig& config);

}  // namespace trident
