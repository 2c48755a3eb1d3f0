#include "trident/pipesim.hpp"

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <stdexcept>

#include "trident/format.hpp"

namespace trident {

namespace {

struct Op {
    EventKind kind;
    std::int64_t micro;
};

// The per-stage operation order fixed by the chosen discipline.
std::vector<Op> stage_program(PipeSchedule schedule, std::int64_t stage, std::int64_t stages,
                              std::int64_t micro_batches) {
    std::vector<Op> prog;
    prog.reserve(static_cast<std::size_t>(2 * micro_batches));
    if (schedule == PipeSchedule::gpipe) {
        for (std::int64_t i = 0; i < micro_batches; ++i) prog.push_back({EventKind::fwd, i});
        for (std::int64_t i = 0; i < micro_batches; ++i) prog.push_back({EventKind::bwd, i});
        return prog;
    }
    const std::int64_t warmup = std::min(micro_batches, stages - 1 - stage);
    for (std::int64_t i = 0; i < warmup; ++i) prog.push_back({EventKind::fwd, i});
    for (std::int64_t i = warmup; i < micro_batches; ++i) {
        prog.push_back({EventKind::fwd, i});
        prog.push_back({EventKind::bwd, i - warmup});
    }
    for (std::int64_t i = micro_batches - warmup; i < micro_batches; ++i)
        prog.push_back({EventKind::bwd, i});
    return prog;
}

}  // namespace

PipelineTrace simulate(PipeSchedule schedule, std::int64_t stages, std::int64_t micro_batches,
                       const StageTiming& timing, std::span<const double> stage_scale) {
    if (stages < 1) throw std::invalid_argument("simulate: stages must be >= 1");
    if (micro_batches < 1) throw std::invalid_argument("simulate: micro_batches must be >= 1");
    if (timing.fwd <= 0 || timing.bwd <= 0) throw std::invalid_argument("simulate: fwd and bwd times must be > 0");
    if (timing.comm < 0) throw std::invalid_argument("simulate: comm must be >= 0");
    if (!stage_scale.empty() && static_cast<std::int64_t>(stage_scale.size()) != stages)
        throw std::invalid_argument("simulate: stage_scale must have one entry per stage");
    for (double s : stage_scale)
        if (s <= 0) throw std::invalid_argument("simulate: stage_scale entries must be > 0");

    const auto p = static_cast<std::size_t>(stages);
    const auto m = static_cast<std::size_t>(micro_batches);
    auto scale = [&](std::size_t s) { return stage_scale.empty() ? 1.0 : stage_scale[s]; };

    std::vector<std::vector<Op>> programs(p);
    for (std::size_t s = 0; s < p; ++s)
        programs[s] = stage_program(schedule, static_cast<std::int64_t>(s), stages, micro_batches);

    constexpr double kUnscheduled = -1.0;
    std::vector<std::vector<double>> fwd_end(p, std::vector<double>(m, kUnscheduled));
    std::vector<std::vector<double>> bwd_end(p, std::vector<double>(m, kUnscheduled));
    std::vector<std::size_t> next(p, 0);
    std::vector<double> stage_free(p, 0.0);

    PipelineTrace trace;
    trace.stages = stages;
    trace.micro_batches = micro_batches;
    trace.timing = timing;
    trace.events.resize(p);

    // List scheduling over the fixed per-stage programs. Start times depend
    // only on dependency end times, so the sweep order does not affect the
    // result; sweeping stages in index order keeps the trace layout canonical.
    std::size_t remaining = p * 2 * m;
    while (remaining > 0) {
        bool progressed = false;
        for (std::size_t s = 0; s < p; ++s) {
            while (next[s] < programs[s].size()) {
                const Op op = programs[s][next[s]];
                const auto i = static_cast<std::size_t>(op.micro);
                double ready = 0.0;
                if (op.kind == EventKind::fwd) {
                    if (s > 0) {
                        if (fwd_end[s - 1][i] == kUnscheduled) break;
                        ready = fwd_end[s - 1][i] + timing.comm;
                    }
                } else {
                    if (s + 1 < p) {
                        if (bwd_end[s + 1][i] == kUnscheduled) break;
                        ready = bwd_end[s + 1][i] + timing.comm;
                    } else {
                        if (fwd_end[s][i] == kUnscheduled) break;
                        ready = fwd_end[s][i];
                    }
                }
                const double start = std::max(stage_free[s], ready);
                const double dur =
                    (op.kind == EventKind::fwd ? timing.fwd : timing.bwd) * scale(s);
                const double end = start + dur;
                (op.kind == EventKind::fwd ? fwd_end : bwd_end)[s][i] = end;
                trace.events[s].push_back({op.kind, op.micro, start, end});
                stage_free[s] = end;
                ++next[s];
                --remaining;
                progressed = true;
            }
        }
        if (!progressed) throw std::logic_error("simulate: dependency deadlock");
    }

    trace.makespan = 0.0;
    for (std::size_t s = 0; s < p; ++s)
        trace.makespan = std::max(trace.makespan, stage_free[s]);

    // Materialize idle gaps so every stage covers [0, makespan].
    for (std::size_t s = 0; s < p; ++s) {
        std::vector<StageEvent> filled;
        filled.reserve(trace.events[s].size() * 2 + 1);
        double cursor = 0.0;
        for (const StageEvent& ev : trace.events[s]) {
            if (ev.start > cursor) filled.push_back({EventKind::idle, -1, cursor, ev.start});
            filled.push_back(ev);
            cursor = ev.end;
        }
        if (cursor < trace.makespan)
            filled.push_back({EventKind::idle, -1, cursor, trace.makespan});
        trace.events[s] = std::move(filled);
    }
    return trace;
}

double measured_bubble(const PipelineTrace& trace) {
    double busy = 0.0;
    for (const auto& stage : trace.events)
        for (const StageEvent& ev : stage)
            if (ev.kind != EventKind::idle) busy += ev.end - ev.start;
    if (busy <= 0.0) throw std::domain_error("measured_bubble: trace has zero busy time");
    return (static_cast<double>(trace.stages) * trace.makespan - busy) / busy;
}

std::int64_t peak_in_flight(const PipelineTrace& trace) {
    std::int64_t peak = 0;
    for (const auto& stage : trace.events) {
        std::int64_t held = 0;
        for (const StageEvent& ev : stage) {
            if (ev.kind == EventKind::fwd) peak = std::max(peak, ++held);
            else if (ev.kind == EventKind::bwd) --held;
        }
    }
    return peak;
}

void write_trace_csv(const PipelineTrace& trace, std::ostream& out) {
    out << "stage,kind,microbatch,start,end\n";
    for (std::size_t s = 0; s < trace.events.size(); ++s) {
        for (const StageEvent& ev : trace.events[s]) {
            const char* kind = ev.kind == EventKind::fwd   ? "fwd"
                               : ev.kind == EventKind::bwd ? "bwd"
                                                           : "idle";
            out << s << ',' << kind << ',' << ev.micro_batch << ',' << fmt_sig(ev.start) << ','
                << fmt_sig(ev.end) << '\n';
        }
    }
}

}  // namespace trident
