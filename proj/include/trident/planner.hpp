#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "trident/analytic.hpp"
#include "trident/model.hpp"

namespace trident {

struct PlanQuery {
    ModelShape shape;
    ClusterShape cluster;
    std::vector<std::int64_t> global_batch_candidates;
    std::vector<std::int64_t> micro_batch_candidates;
    bool enforce_token_cap = true;
    bool enforce_tensor_within_node = true;
    // Plans whose memory estimate exceeds the budget are dropped when set.
    std::optional<double> memory_budget_bytes;
    MemoryModel memory;
};

struct RankedPlan {
    ParallelConfig config;
    RatioSet ratios;
    double memory_bytes = 0.0;
    double score = 0.0;
    int rank = 0;
};

void validate_query(const PlanQuery& query);

// Every (t,p,d,b,B) with t*p*d = n_gpus, t | h, p | L, d*b | B, plus the
// enabled toggles (t <= gpus_per_node, B*S below the token cap), ordered
// lexicographically in (t,p,d,b,B). Candidate lists are deduplicated and
// sorted first. An empty result is not an error.
std::vector<ParallelConfig> enumerate_configs(const PlanQuery& query);

// Busy-fraction proxy in (0,1]: product of f/(1+f) over the three ratios
// (1 for an infinite ratio) divided by 1+bubble. Strictly increasing in each
// ratio, strictly decreasing in the bubble.
double utilization_score(const RatioSet& ratios);

// Replacement hook for the scoring proxy. Must be pure.
using ScoreFn = std::function<double(const RatioSet&)>;

// Enumerate, evaluate, filter on the memory budget, sort by score descending
// with ties broken by ascending (p,t,d,b,B), and assign ranks 1..K. The
// result is independent of threads; candidates are only evaluated in
// parallel, never reordered.
std::vector<RankedPlan> rank_plans(const PlanQuery& query, int threads = 1,
                                   const ScoreFn& score = {});

// Tab-separated: rank t p d b B m l f_tp f_pp f_dp f_pb memory score.
void write_plans_tsv(const std::vector<RankedPlan>& plans, const ModelShape& shape,
                     std::ostream& out);

}  // namespace trident
