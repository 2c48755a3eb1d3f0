#include "trident/cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "trident/analytic.hpp"
#include "trident/format.hpp"
#include "trident/planner.hpp"

namespace trident {

namespace {

void write_plan_table(const std::vector<RankedPlan>& plans, const ModelShape& shape,
                      std::ostream& out) {
    constexpr std::array<const char*, 14> header = {"rank", "t",    "p",    "d",    "b",
                                                    "B",    "m",    "l",    "f_tp", "f_pp",
                                                    "f_dp", "f_pb", "memory", "score"};
    std::vector<std::array<std::string, 14>> rows;
    rows.reserve(plans.size());
    for (const RankedPlan& plan : plans) {
        const ParallelConfig& c = plan.config;
        rows.push_back({std::to_string(plan.rank), std::to_string(c.tensor),
                        std::to_string(c.pipeline), std::to_string(c.data),
                        std::to_string(c.micro_batch), std::to_string(c.global_batch),
                        std::to_string(c.micro_batches()),
                        std::to_string(c.layers_per_stage(shape.layers)),
                        fmt_sig(plan.ratios.tensor), fmt_sig(plan.ratios.pipeline),
                        fmt_sig(plan.ratios.data), fmt_sig(plan.ratios.bubble),
                        fmt_sig(plan.memory_bytes), fmt_sig(plan.score)});
    }
    std::array<std::size_t, 14> width{};
    for (std::size_t col = 0; col < header.size(); ++col) {
        width[col] = std::string(header[col]).size();
        for (const auto& row : rows) width[col] = std::max(width[col], row[col].size());
    }
    auto write_row = [&](const auto& cells) {
        for (std::size_t col = 0; col < cells.size(); ++col) {
            const std::string cell = cells[col];
            out << (col ? "  " : "") << std::string(width[col] - cell.size(), ' ') << cell;
        }
        out << '\n';
    };
    write_row(header);
    for (const auto& row : rows) write_row(row);
}

}  // namespace

int run_plan(const RunConfig& config, std::ostream& report, std::ostream* tsv, int threads) {
    const PlanQuery query = plan_query(config);
    const auto plans = rank_plans(query, threads);

    report << "# config: " << effective_config_json(config) << '\n';
    report << "# feasible plans: " << plans.size() << '\n';
    if (!plans.empty()) write_plan_table(plans, config.model, report);
    if (tsv) write_plans_tsv(plans, config.model, *tsv);
    return plans.empty() ? 2 : 0;
}

int run_simulate(PipeSchedule schedule, std::int64_t stages, std::int64_t micro_batches,
                 const StageTiming& timing, std::ostream& out, std::ostream* trace_csv) {
    const PipelineTrace trace = simulate(schedule, stages, micro_batches, timing);
    const double measured = measured_bubble(trace);
    // (p-1)/m, stated as a one-layer-per-stage pipeline.
    const double analytic = bubble_fraction(stages, 1, micro_batches);

    out << "schedule: " << (schedule == PipeSchedule::gpipe ? "gpipe" : "1f1b") << '\n';
    out << "stages: " << stages << '\n';
    out << "micro_batches: " << micro_batches << '\n';
    out << "fwd: " << fmt_sig(timing.fwd) << '\n';
    out << "bwd: " << fmt_sig(timing.bwd) << '\n';
    out << "comm: " << fmt_sig(timing.comm) << '\n';
    out << "makespan: " << fmt_sig(trace.makespan) << '\n';
    out << "measured_bubble: " << fmt_sig(measured) << '\n';
    out << "analytic_bubble: " << fmt_sig(analytic) << '\n';
    out << "abs_diff: " << fmt_sig(std::fabs(measured - analytic)) << '\n';
    if (trace_csv) write_trace_csv(trace, *trace_csv);
    return 0;
}

int run_budget(double tokens, double params, bool recompute, std::ostream& out) {
    if (tokens < 0) throw std::invalid_argument("budget: tokens must be >= 0");
    if (params < 0) throw std::invalid_argument("budget: params must be >= 0");
    const TrainBudget budget = make_train_budget(tokens, params, recompute);
    out << "tokens: " << fmt_sig(budget.tokens) << '\n';
    out << "params: " << fmt_sig(budget.params) << '\n';
    out << "factor: " << budget.factor << '\n';
    out << "petaflops_days: " << fmt_sig(budget.petaflops_days) << '\n';
    return 0;
}

int run_schedule(const ScheduleSpec& spec, int samples, std::ostream& out) {
    write_schedule_csv(emit_schedule(spec, samples), out);
    return 0;
}

int run_calibrate(std::istream& tsv, Aggregation aggregation, std::ostream& out) {
    const auto [labels, table] = parse_calibration_tsv(tsv);
    const auto scores = label_scores(table, labels, aggregation);
    const std::size_t winner = predict(table, labels, aggregation);

    out << "label\tscore\n";
    for (std::size_t li = 0; li < labels.labels.size(); ++li)
        out << labels.labels[li] << '\t' << fmt_sig(scores[li]) << '\n';
    out << "prediction: " << labels.labels[winner] << '\n';
    return 0;
}

}  // namespace trident
