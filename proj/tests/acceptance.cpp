// Acceptance suite: runs every release criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion. Exit status is the failure count.

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "trident/analytic.hpp"
#include "trident/calib.hpp"
#include "trident/cli.hpp"
#include "trident/model.hpp"
#include "trident/pipesim.hpp"
#include "trident/planner.hpp"
#include "trident/schedule.hpp"

using namespace trident;

namespace {

struct Criterion {
    int failures = 0;

    void report(int index, const char* name, bool ok, const std::string& detail) {
        std::printf("%s  criterion %d: %s  (%s)\n", ok ? "PASS" : "FAIL", index, name,
                    detail.c_str());
        if (!ok) ++failures;
    }
};

bool within(double value, double reference, double rel_tol) {
    return std::fabs(value - reference) <= rel_tol * std::fabs(reference);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

// 1. Budget regression: both published compute budgets within 0.5%.
void criterion_budget(Criterion& c) {
    const double yuan = petaflops_days(180e9, 245.73e9, true);
    const double gpt3 = petaflops_days(300e9, 175e9, false);
    const bool ok = within(yuan, 4095.0, 0.005) && within(gpt3, 3640.0, 0.005);
    c.report(1, "budget regression", ok,
             "factor-8: " + fmt(yuan) + " vs 4095, factor-6: " + fmt(gpt3) + " vs 3640");
}

// 2. Parameter regression: the vocab-solving oracle agrees across rows and
// param_count reproduces both published totals within 0.2% at vocab 56000.
void criterion_params(Criterion& c) {
    auto solve_vocab = [](double params, const ModelShape& s) {
        const double h = static_cast<double>(s.hidden);
        return (params - 12.0 * static_cast<double>(s.layers) * h * h -
                static_cast<double>(s.seq_len) * h) /
               h;
    };
    // Solved once from the published totals and recorded here.
    const double solved_245b = solve_vocab(fixtures::kParams245b, fixtures::model_245b());
    const double solved_13b = solve_vocab(fixtures::kParams13b, fixtures::model_13b());
    const bool oracle_ok = within(solved_245b, 53912.9453125, 1e-9) &&
                           within(solved_13b, 54023.875, 1e-9) &&
                           std::fabs(solved_13b - solved_245b) / solved_245b < 0.02;
    const double p245 = param_count(fixtures::model_245b());
    const double p13 = param_count(fixtures::model_13b());
    const bool ok = oracle_ok && within(p245, fixtures::kParams245b, 0.002) &&
                    within(p13, fixtures::kParams13b, 0.002);
    c.report(2, "parameter regression", ok,
             "solved vocab " + fmt(solved_245b) + " / " + fmt(solved_13b) + ", params " +
                 fmt(p245) + " / " + fmt(p13));
}

// 3. Oracle equivalence: simulator bubble equals (p-1)/m within 1e-12 across
// the whole grid, both disciplines.
void criterion_oracle(Criterion& c) {
    double worst = 0.0;
    int cases = 0;
    for (std::int64_t p : {1, 2, 4, 8, 38}) {
        for (std::int64_t m : {1, 2, 6, 8, 64, 480}) {
            for (auto kind : {PipeSchedule::gpipe, PipeSchedule::one_f_one_b}) {
                const auto trace = simulate(kind, p, m, {1.0, 1.0, 0.0});
                const double diff =
                    std::fabs(measured_bubble(trace) - bubble_fraction(p, 1, m));
                worst = std::max(worst, diff);
                ++cases;
            }
        }
    }
    c.report(3, "pipeline oracle equivalence", worst <= 1e-12,
             std::to_string(cases) + " cases, worst |measured-analytic| = " + fmt(worst));
}

// 4. Published-layout feasibility: enumeration reproduces both rows exactly
// once and both pass validation including the token cap.
void criterion_feasibility(Criterion& c) {
    auto count_matches = [](const std::vector<ParallelConfig>& configs,
                            const ParallelConfig& want) {
        int n = 0;
        for (const auto& cfg : configs)
            if (cfg.tensor == want.tensor && cfg.pipeline == want.pipeline &&
                cfg.data == want.data && cfg.micro_batch == want.micro_batch &&
                cfg.global_batch == want.global_batch)
                ++n;
        return n;
    };
    PlanQuery q245;
    q245.shape = fixtures::model_245b();
    q245.cluster = fixtures::cluster_245b();
    q245.global_batch_candidates = {3360};
    q245.micro_batch_candidates = {1};
    PlanQuery q13;
    q13.shape = fixtures::model_13b();
    q13.cluster = fixtures::cluster_13b();
    q13.global_batch_candidates = {2688};
    q13.micro_batch_candidates = {4};

    const int hits_245b = count_matches(enumerate_configs(q245), fixtures::config_245b());
    const int hits_13b = count_matches(enumerate_configs(q13), fixtures::config_13b());
    const bool valid_245b =
        validate(fixtures::config_245b(), fixtures::model_245b(), fixtures::cluster_245b())
            .empty();
    const bool valid_13b =
        validate(fixtures::config_13b(), fixtures::model_13b(), fixtures::cluster_13b()).empty();
    const std::int64_t tokens_245b = 3360 * 2048;
    const std::int64_t tokens_13b = 2688 * 2048;
    const bool ok = hits_245b == 1 && hits_13b == 1 && valid_245b && valid_13b &&
                    tokens_245b == 6881280 && tokens_245b < kGlobalBatchTokenCap &&
                    tokens_13b == 5505024 && tokens_13b < kGlobalBatchTokenCap;
    c.report(4, "published-layout feasibility", ok,
             "matches " + std::to_string(hits_245b) + "/" + std::to_string(hits_13b) +
                 ", batch tokens " + std::to_string(tokens_245b) + " / " +
                 std::to_string(tokens_13b));
}

// 5. Analytic monotonicity suite over 1000 random valid inputs per property.
void criterion_monotonicity(Criterion& c) {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<std::int64_t> dim(1, 100000);
    std::uniform_int_distribution<std::int64_t> bump(1, 1000);
    std::uniform_int_distribution<std::int64_t> tp(2, 64);
    std::uniform_int_distribution<std::int64_t> small(1, 40);
    std::uniform_int_distribution<std::int64_t> batch(1, 5000);
    std::uniform_int_distribution<std::int64_t> seq(1, 4096);
    std::uniform_int_distribution<std::int64_t> dp(2, 1024);

    bool ok = true;
    for (int i = 0; i < 1000 && ok; ++i) {
        const std::int64_t h = dim(rng);
        const std::int64_t s = dim(rng);
        const std::int64_t t = tp(rng);
        ok = ok && tensor_parallel_ratio(t, h + bump(rng), s) > tensor_parallel_ratio(t, h, s);
        ok = ok && tensor_parallel_ratio(t, h, s + bump(rng)) > tensor_parallel_ratio(t, h, s);
        ok = ok && pipeline_parallel_ratio(12, 4, h + bump(rng), s) >
                       pipeline_parallel_ratio(12, 4, h, s);
        ok = ok && pipeline_parallel_ratio(12, 4, h, s + bump(rng)) >
                       pipeline_parallel_ratio(12, 4, h, s);

        const std::int64_t l = small(rng);
        const std::int64_t stages = 1 + small(rng);
        const std::int64_t m = small(rng);
        ok = ok && bubble_fraction(l * stages + l * small(rng), l, m) >
                       bubble_fraction(l * stages, l, m);
        ok = ok && bubble_fraction(l * stages, l, m + small(rng)) <
                       bubble_fraction(l * stages, l, m);

        const std::int64_t d = dp(rng);
        const auto ratio = data_parallel_ratio(batch(rng), seq(rng), d);
        const double expected = static_cast<double>(d) / static_cast<double>(d - 1);
        ok = ok && std::fabs(ratio.exact / ratio.approx - expected) <= 1e-15 * expected;
    }
    c.report(5, "analytic monotonicity suite", ok, "1000 random inputs per property");
}

// 6. Schedule endpoints: exact anchors, 1e-12 continuity, monotone batch.
void criterion_schedule(Criterion& c) {
    ScheduleSpec s;
    s.total_tokens = 180e9;
    s.peak_lr = 1.6e-4;
    s.full_batch = 3360;
    s.start_batch = 480;
    s.batch_granule = 480;
    s.seq_len = 2048;
    validate_schedule(s);

    const double warmup_end = s.warmup_fraction * s.total_tokens;
    const double ramp_end = s.batch_ramp_fraction * s.total_tokens;
    const bool peak_exact = lr_at(s, warmup_end) == s.peak_lr;
    const bool final_exact = lr_at(s, s.total_tokens) == 0.1 * s.peak_lr;
    const bool continuous =
        std::fabs(lr_at(s, std::nextafter(warmup_end, s.total_tokens)) - s.peak_lr) <=
        1e-12 * s.peak_lr;

    bool batch_ok = true;
    std::int64_t prev = 0;
    for (int step = 0; step <= 2000; ++step) {
        const double token = s.total_tokens * (static_cast<double>(step) / 2000.0);
        const std::int64_t b = batch_at(s, token);
        batch_ok = batch_ok && b >= prev;
        if (token >= ramp_end) batch_ok = batch_ok && b == s.full_batch;
        prev = b;
    }
    const bool ok = peak_exact && final_exact && continuous && batch_ok;
    c.report(6, "schedule endpoints", ok,
             "lr(warmup end) = " + fmt(lr_at(s, warmup_end)) + ", lr(total) = " +
                 fmt(lr_at(s, s.total_tokens)) + ", batch monotone to " +
                 std::to_string(prev));
}

// 7. Calibration: shift invariance over 1000 random tables, constant-void
// reduction, and the exact hand-derived flip.
void criterion_calibration(Criterion& c) {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> logp(-10.0, 0.0);
    std::uniform_real_distribution<double> shift(-5.0, 5.0);
    std::uniform_int_distribution<int> n_labels(2, 6);

    bool shift_ok = true;
    bool reduction_ok = true;
    for (int i = 0; i < 1000 && shift_ok && reduction_ok; ++i) {
        const int n = n_labels(rng);
        const double offset = shift(rng);
        LabelSet labels;
        ScoreTable base, moved, flat_void;
        for (int li = 0; li < n; ++li) {
            labels.labels.push_back("label" + std::to_string(li));
            labels.synonyms.push_back({"syn"});
            const double given = logp(rng);
            const double voided = logp(rng);
            base.candidates.push_back({li, 0});
            base.logp_given.push_back(given);
            base.logp_void.push_back(voided);
            moved.candidates.push_back({li, 0});
            moved.logp_given.push_back(given + offset);
            moved.logp_void.push_back(voided);
            flat_void.candidates.push_back({li, 0});
            flat_void.logp_given.push_back(given);
            flat_void.logp_void.push_back(-2.5);
        }
        shift_ok = shift_ok && predict(base, labels, Aggregation::max) ==
                                   predict(moved, labels, Aggregation::max);
        std::size_t raw_best = 0;
        for (std::size_t k = 1; k < flat_void.logp_given.size(); ++k)
            if (flat_void.logp_given[k] > flat_void.logp_given[raw_best]) raw_best = k;
        reduction_ok =
            reduction_ok && predict(flat_void, labels, Aggregation::max) == raw_best;
    }

    ScoreTable flip;
    flip.candidates = {{0, 0}, {1, 0}};
    flip.logp_given = {-1.0, -2.0};
    flip.logp_void = {-0.5, -3.0};
    const auto scores = calibrated_scores(flip);
    const bool flip_ok = scores.size() == 2 && scores[0] == -0.5 && scores[1] == 1.0 &&
                         predict(flip, {{"neg", "pos"}, {{"neg"}, {"pos"}}},
                                 Aggregation::max) == 1;
    const bool ok = shift_ok && reduction_ok && flip_ok;
    c.report(7, "calibration properties", ok,
             "shift invariance, constant-void reduction, flip scores (" + fmt(scores[0]) +
                 ", " + fmt(scores[1]) + ")");
}

// 8. Determinism: plan and simulate outputs byte-identical across repeated
// runs and across evaluation thread counts.
void criterion_determinism(Criterion& c) {
    RunConfig config;
    config.model = fixtures::model_245b();
    config.cluster = fixtures::cluster_245b();
    config.has_cluster = true;
    config.search.global_batch_candidates = {512, 1024, 2048, 3360};
    config.search.micro_batch_candidates = {1, 2, 4, 8};

    std::string plan_runs[3];
    for (int i = 0; i < 3; ++i) {
        std::ostringstream report, tsv;
        run_plan(config, report, &tsv, i == 2 ? 8 : 1);
        plan_runs[i] = report.str() + tsv.str();
    }
    const bool plan_ok = plan_runs[0] == plan_runs[1] && plan_runs[0] == plan_runs[2] &&
                         !plan_runs[0].empty();

    std::string sim_runs[2];
    for (auto& run : sim_runs) {
        std::ostringstream out, trace;
        run_simulate(PipeSchedule::one_f_one_b, 8, 64, {1.0, 1.0, 0.5}, out, &trace);
        run = out.str() + trace.str();
    }
    const bool sim_ok = sim_runs[0] == sim_runs[1] && !sim_runs[0].empty();
    c.report(8, "deterministic output", plan_ok && sim_ok,
             std::string("plan ") + (plan_ok ? "stable" : "UNSTABLE") + " across 2 runs + 8 threads, simulate " +
                 (sim_ok ? "stable" : "UNSTABLE"));
}

}  // namespace

int main() {
    Criterion c;
    criterion_budget(c);
    criterion_params(c);
    criterion_oracle(c);
    criterion_feasibility(c);
    criterion_monotonicity(c);
    criterion_schedule(c);
    criterion_calibration(c);
    criterion_determinism(c);
    if (c.failures == 0)
        std::printf("all 8 criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", c.failures);
    return c.failures;
}
