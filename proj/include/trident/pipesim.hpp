#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace trident {

// Event-level simulation of synchronous pipeline-parallel execution. Two
// disciplines are supported:
//
//   gpipe        fill-drain: each stage runs all m forward passes in
//                micro-batch order, then all m backward passes.
//   one_f_one_b  stage s (0-based, p stages) runs w = min(m, p-1-s) warmup
//                forwards, then alternates forward i / backward i-w for
//                i = w..m-1, then drains the remaining w backwards.
//
// Every operation starts as soon as its stage is free and its dependency has
// finished: forward(i, s) needs forward(i, s-1) plus the transfer latency,
// backward(i, s) needs backward(i, s+1) plus the transfer latency, and
// backward(i, last stage) needs forward(i, last stage). Transfer latency sits
// on the critical path; no overlap is modeled.
enum class PipeSchedule { gpipe, one_f_one_b };

struct StageTiming {
    double fwd = 1.0;   // forward time per micro-batch per stage
    double bwd = 1.0;   // backward time per micro-batch per stage
    double comm = 0.0;  // inter-stage transfer latency
};

enum class EventKind { fwd, bwd, idle };

struct StageEvent {
    EventKind kind = EventKind::idle;
    std::int64_t micro_batch = -1;  // -1 for idle gaps
    double start = 0.0;
    double end = 0.0;
};

struct PipelineTrace {
    std::int64_t stages = 1;
    std::int64_t micro_batches = 1;
    StageTiming timing;
    // One ordered, non-overlapping event list per stage, gaps materialized as
    // idle events so each stage covers [0, makespan].
    std::vector<std::vector<StageEvent>> events;
    double makespan = 0.0;
};

// Deterministic: identical inputs produce identical traces. stage_scale, when
// non-empty, must hold one positive multiplier per stage applied to that
// stage's fwd/bwd times.
PipelineTrace simulate(PipeSchedule schedule, std::int64_t stages, std::int64_t micro_batches,
                       const StageTiming& timing, std::span<const double> stage_scale = {});

// Idle time relative to ideal busy time, (p*makespan - busy)/busy summed over
// all stages; equals (makespan - m*(fwd+bwd)) / (m*(fwd+bwd)) for uniform
// stages. Throws std::domain_error on a trace with zero busy time.
double measured_bubble(const PipelineTrace& trace);

// Largest number of micro-batches any stage holds forward-complete but not
// yet backward-complete. m for gpipe, at most p for one_f_one_b.
std::int64_t peak_in_flight(const PipelineTrace& trace);

// Columns: stage,kind,microbatch,start,end. Idle rows use microbatch -1.
void write_trace_csv(const PipelineTrace& trace, std::ostream& out);

}  // namespace trident
