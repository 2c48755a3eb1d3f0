#pragma once

#include <cstdint>

#include "trident/model.hpp"

namespace trident {

// Closed-form compute-to-communication ratios for one parallel layout.
// Degenerate groups (t=1, d=1) carry +infinity: no communication happens, so
// the ratio is unbounded and the score treats it as perfect.
struct RatioSet {
    double tensor = 0.0;    // per-layer tensor-parallel ratio
    double pipeline = 0.0;  // per-node pipeline-parallel ratio
    double data = 0.0;      // data-parallel ratio, exact form
    double bubble = 0.0;    // pipeline bubble time / ideal compute time
};

// (96t / (8(t-1))) * (h + S/6). Requires t >= 2, throws std::domain_error
// otherwise; callers treat t=1 as +infinity.
double tensor_parallel_ratio(std::int64_t tensor, std::int64_t hidden, std::int64_t seq_len);

// (L/l - 1)/m, the bubble fraction of a pipeline with L/l stages and m
// micro-batches. Throws if l does not divide L or m < 1.
double bubble_fraction(std::int64_t layers, std::int64_t layers_per_stage,
                       std::int64_t micro_batches);

// 24 * (L/p) * (h + S/6). Throws if p does not divide L.
double pipeline_parallel_ratio(std::int64_t layers, std::int64_t pipeline, std::int64_t hidden,
                               std::int64_t seq_len);

struct DataParallelRatio {
    double exact = 0.0;   // 4*B*S*d/(d-1)
    double approx = 0.0;  // 4*B*S
};

// Requires d >= 2 for the exact form, throws std::domain_error otherwise;
// callers treat d=1 as +infinity.
DataParallelRatio data_parallel_ratio(std::int64_t global_batch, std::int64_t seq_len,
                                      std::int64_t data);

// Training compute budget: factor * tokens * params / 8.64e19, with factor 8
// under activation recomputation and 6 without.
double petaflops_days(double tokens, double params, bool recompute);

struct TrainBudget {
    double tokens = 0.0;
    double params = 0.0;
    int factor = 8;
    double petaflops_days = 0.0;
};

TrainBudget make_train_budget(double tokens, double params, bool recompute);

// Evaluates all four ratios for a validated config, with +infinity sentinels
// for t=1 and d=1 and the cluster's optional hardware multipliers applied.
// Throws std::invalid_argument listing the violations if the config fails
// validate().
RatioSet ratio_set(const ModelShape& shape, const ParallelConfig& cfg,
                   const ClusterShape& cluster);

}  // namespace trident
