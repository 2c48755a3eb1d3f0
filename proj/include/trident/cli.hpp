#pragma once

#include <cstdint>
#include <iosfwd>

#include "trident/calib.hpp"
#include "trident/config.hpp"
#include "trident/pipesim.hpp"
#include "trident/schedule.hpp"

namespace trident {

// Command bodies behind the CLI front end. Each returns the process exit
// code: 0 success, 2 empty result; input errors are thrown and mapped to
// exit code 1 by the binary. All output is deterministic for identical
// inputs (6 significant digits, fixed column order).

// Ranked-plan report: human table to `report`, machine output to `tsv` when
// non-null (header always written, even for an empty result).
int run_plan(const RunConfig& config, std::ostream& report, std::ostream* tsv, int threads = 1);

// Side-by-side empirical and closed-form bubble fractions; trace CSV to
// `trace_csv` when non-null.
int run_simulate(PipeSchedule schedule, std::int64_t stages, std::int64_t micro_batches,
                 const StageTiming& timing, std::ostream& out, std::ostream* trace_csv = nullptr);

int run_budget(double tokens, double params, bool recompute, std::ostream& out);

int run_schedule(const ScheduleSpec& spec, int samples, std::ostream& out);

int run_calibrate(std::istream& tsv, Aggregation aggregation, std::ostream& out);

}  // namespace trident
