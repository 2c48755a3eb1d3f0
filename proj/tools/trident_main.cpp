#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "trident/cli.hpp"

namespace {

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw trident::ConfigError("cannot open output file '" + path + "'");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"3D-parallel training configuration planner and pipeline simulator"};
    app.require_subcommand(1);

    // plan
    std::string plan_config_path;
    std::string plan_tsv_path;
    int plan_threads = 1;
    CLI::App* plan = app.add_subcommand("plan", "rank feasible parallel configurations");
    plan->add_option("config", plan_config_path, "JSON run configuration")->required();
    plan->add_option("--tsv", plan_tsv_path, "write the ranked plans as TSV to this path");
    plan->add_option("--threads", plan_threads, "evaluation threads")->check(CLI::PositiveNumber);

    // simulate
    std::int64_t sim_stages = 1;
    std::int64_t sim_micro = 1;
    std::string sim_schedule = "gpipe";
    trident::StageTiming sim_timing;
    std::string sim_trace_path;
    CLI::App* sim = app.add_subcommand("simulate", "run the pipeline schedule simulator");
    sim->add_option("-p,--stages", sim_stages, "pipeline stages")->required();
    sim->add_option("-m,--micro-batches", sim_micro, "micro-batches per pipeline group")->required();
    sim->add_option("--schedule", sim_schedule, "gpipe or 1f1b")
        ->check(CLI::IsMember({"gpipe", "1f1b"}));
    sim->add_option("--fwd", sim_timing.fwd, "forward time per micro-batch");
    sim->add_option("--bwd", sim_timing.bwd, "backward time per micro-batch");
    sim->add_option("--comm", sim_timing.comm, "inter-stage transfer latency");
    sim->add_option("--trace", sim_trace_path, "write the event trace as CSV to this path");

    // budget
    double budget_tokens = 0.0;
    double budget_params = 0.0;
    bool budget_recompute = false;
    CLI::App* budget = app.add_subcommand("budget", "training compute budget in PetaFlops-days");
    budget->add_option("--tokens", budget_tokens, "training tokens")->required();
    budget->add_option("--params", budget_params, "model parameters")->required();
    budget->add_flag("--recompute", budget_recompute, "activations recomputed in backward");

    // schedule
    std::string sched_config_path;
    int sched_samples = 101;
    CLI::App* sched = app.add_subcommand("schedule", "emit the LR/batch schedule as CSV");
    sched->add_option("config", sched_config_path, "JSON run configuration")->required();
    sched->add_option("--samples", sched_samples, "number of sample points");

    // calibrate
    std::string calib_tsv_path;
    std::string calib_aggregation = "max";
    CLI::App* calib = app.add_subcommand("calibrate", "calibrated zero-shot label prediction");
    calib->add_option("tsv", calib_tsv_path, "TSV with label,synonym,logp_given,logp_void")
        ->required();
    calib->add_option("--aggregation", calib_aggregation, "synonym aggregation")
        ->check(CLI::IsMember({"max", "mean"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*plan) {
            const trident::RunConfig config = trident::parse_config_file(plan_config_path);
            if (!plan_tsv_path.empty()) {
                std::ofstream tsv = open_output(plan_tsv_path);
                return trident::run_plan(config, std::cout, &tsv, plan_threads);
            }
            return trident::run_plan(config, std::cout, nullptr, plan_threads);
        }
        if (*sim) {
            const auto kind = sim_schedule == "gpipe" ? trident::PipeSchedule::gpipe
                                                      : trident::PipeSchedule::one_f_one_b;
            if (!sim_trace_path.empty()) {
                std::ofstream trace = open_output(sim_trace_path);
                return trident::run_simulate(kind, sim_stages, sim_micro, sim_timing, std::cout,
                                             &trace);
            }
            return trident::run_simulate(kind, sim_stages, sim_micro, sim_timing, std::cout);
        }
        if (*budget)
            return trident::run_budget(budget_tokens, budget_params, budget_recompute, std::cout);
        if (*sched) {
            const trident::RunConfig config = trident::parse_config_file(sched_config_path);
            if (!config.schedule)
                throw trident::ConfigError("missing required section 'schedule'");
            return trident::run_schedule(*config.schedule, sched_samples, std::cout);
        }
        if (*calib) {
            std::ifstream tsv(calib_tsv_path);
            if (!tsv) throw trident::ConfigError("cannot open TSV file '" + calib_tsv_path + "'");
            const auto agg = calib_aggregation == "max" ? trident::Aggregation::max
                                                        : trident::Aggregation::mean;
            return trident::run_calibrate(tsv, agg, std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
