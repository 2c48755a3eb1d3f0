#include "trident/planner.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "trident/format.hpp"

namespace trident {

void validate_query(const PlanQuery& query) {
    validate_shape(query.shape);
    validate_cluster(query.cluster);
    if (query.global_batch_candidates.empty())
        throw std::invalid_argument("search.global_batch_candidates must be non-empty");
    if (query.micro_batch_candidates.empty())
        throw std::invalid_argument("search.micro_batch_candidates must be non-empty");
    for (auto b : query.global_batch_candidates)
        if (b < 1) throw std::invalid_argument("search.global_batch_candidates must be positive");
    for (auto b : query.micro_batch_candidates)
        if (b < 1) throw std::invalid_argument("search.micro_batch_candidates must be positive");
    if (query.memory_budget_bytes && *query.memory_budget_bytes < 0)
        throw std::invalid_argument("search.memory_budget_bytes must be >= 0");
}

namespace {

std::vector<std::int64_t> sorted_unique(std::vector<std::int64_t> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

std::vector<ParallelConfig> enumerate_configs(const PlanQuery& query) {
    validate_query(query);
    const std::int64_t n = query.cluster.n_gpus;
    const auto micro = sorted_unique(query.micro_batch_candidates);
    const auto global = sorted_unique(query.global_batch_candidates);

    std::vector<ParallelConfig> out;
    for (std::int64_t t = 1; t <= n; ++t) {
        if (n % t != 0 || query.shape.hidden % t != 0) continue;
        if (query.enforce_tensor_within_node && t > query.cluster.gpus_per_node) continue;
        const std::int64_t rest = n / t;
        for (std::int64_t p = 1; p <= rest; ++p) {
            if (rest % p != 0 || query.shape.layers % p != 0) continue;
            const std::int64_t d = rest / p;
            for (std::int64_t b : micro) {
                for (std::int64_t B : global) {
                    if (B % (d * b) != 0) continue;
                    if (query.enforce_token_cap &&
                        B * query.shape.seq_len >= kGlobalBatchTokenCap)
                        continue;
                    out.push_back({t, p, d, b, B});
                }
            }
        }
    }
    return out;
}

double utilization_score(const RatioSet& ratios) {
    auto busy = [](double f) { return std::isinf(f) ? 1.0 : f / (1.0 + f); };
    return busy(ratios.tensor) * busy(ratios.pipeline) * busy(ratios.data) /
           (1.0 + ratios.bubble);
}

std::vector<RankedPlan> rank_plans(const PlanQuery& query, int threads, const ScoreFn& score) {
    const auto configs = enumerate_configs(query);
    const ScoreFn& scorer = score ? score : utilization_score;

    std::vector<RankedPlan> evaluated(configs.size());
    auto evaluate_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            RankedPlan plan;
            plan.config = configs[i];
            plan.ratios = ratio_set(query.shape, configs[i], query.cluster);
            plan.memory_bytes = memory_per_gpu(query.shape, configs[i], query.memory);
            plan.score = scorer(plan.ratios);
            evaluated[i] = plan;
        }
    };

    if (threads <= 1 || configs.size() < 2) {
        evaluate_range(0, configs.size());
    } else {
        const std::size_t workers =
            std::min<std::size_t>(static_cast<std::size_t>(threads), configs.size());
        const std::size_t chunk = (configs.size() + workers - 1) / workers;
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(begin + chunk, configs.size());
            if (begin < end) pool.emplace_back(evaluate_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    std::vector<RankedPlan> out;
    out.reserve(evaluated.size());
    for (const RankedPlan& plan : evaluated)
        if (!query.memory_budget_bytes || plan.memory_bytes <= *query.memory_budget_bytes)
            out.push_back(plan);

    // Fewer pipeline stages win ties, then cheaper tensor groups.
    auto tie_key = [](const ParallelConfig& c) {
        return std::make_tuple(c.pipeline, c.tensor, c.data, c.micro_batch, c.global_batch);
    };
    std::sort(out.begin(), out.end(), [&](const RankedPlan& a, const RankedPlan& b) {
        if (a.score != b.score) return a.score > b.score;
        return tie_key(a.config) < tie_key(b.config);
    });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i + 1);
    return out;
}

void write_plans_tsv(const std::vector<RankedPlan>& plans, const ModelShape& shape,
                     std::ostream& out) {
    out << "rank\tt\tp\td\tb\tB\tm\tl\tf_tp\tf_pp\tf_dp\tf_pb\tmemory\tscore\n";
    for (const RankedPlan& plan : plans) {
        const ParallelConfig& c = plan.config;
        out << plan.rank << '\t' << c.tensor << '\t' << c.pipeline << '\t' << c.data << '\t'
            << c.micro_batch << '\t' << c.global_batch << '\t' << c.micro_batches() << '\t'
            << c.layers_per_stage(shape.layers) << '\t' << fmt_sig(plan.ratios.tensor) << '\t'
            << fmt_sig(plan.ratios.pipeline) << '\t' << fmt_sig(plan.ratios.data) << '\t'
            << fmt_sig(plan.ratios.bubble) << '\t' << fmt_sig(plan.memory_bytes) << '\t'
            << fmt_sig(plan.score) << '\n';
    }
}

}  // namespace trident
