#include "trident/analytic.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace trident {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFlopsPerPetaflopsDay = 8.64e19;
}  // namespace

double tensor_parallel_ratio(std::int64_t tensor, std::int64_t hidden, std::int64_t seq_len) {
    if (tensor <= 1) throw std::domain_error("tensor ratio undefined for t <= 1");
    const double t = static_cast<double>(tensor);
    return 96.0 * t / (8.0 * (t - 1.0)) *
           (static_cast<double>(hidden) + static_cast<double>(seq_len) / 6.0);
}

double bubble_fraction(std::int64_t layers, std::int64_t layers_per_stage,
                       std::int64_t micro_batches) {
    if (layers_per_stage < 1 || layers % layers_per_stage != 0)
        throw std::invalid_argument("bubble_fraction: l does not divide L");
    if (micro_batches < 1) throw std::domain_error("bubble_fraction: m must be >= 1");
    const double stages = static_cast<double>(layers / layers_per_stage);
    return (stages - 1.0) / static_cast<double>(micro_batches);
}

double pipeline_parallel_ratio(std::int64_t layers, std::int64_t pipeline, std::int64_t hidden,
                               std::int64_t seq_len) {
    if (pipeline < 1 || layers % pipeline != 0)
        throw std::invalid_argument("pipeline_parallel_ratio: p does not divide L");
    return 24.0 * static_cast<double>(layers / pipeline) *
           (static_cast<double>(hidden) + static_cast<double>(seq_len) / 6.0);
}

DataParallelRatio data_parallel_ratio(std::int64_t global_batch, std::int64_t seq_len,
                                      std::int64_t data) {
    if (data <= 1) throw std::domain_error("data ratio undefined for d <= 1");
    const double base =
        4.0 * static_cast<double>(global_batch) * static_cast<double>(seq_len);
    const double d = static_cast<double>(data);
    return DataParallelRatio{base * d / (d - 1.0), base};
}

double petaflops_days(double tokens, double params, bool recompute) {
    return (recompute ? 8.0 : 6.0) * tokens * params / kFlopsPerPetaflopsDay;
}

TrainBudget make_train_budget(double tokens, double params, bool recompute) {
    TrainBudget budget;
    budget.tokens = tokens;
    budget.params = params;
    budget.factor = recompute ? 8 : 6;
    budget.petaflops_days = petaflops_days(tokens, params, recompute);
    return budget;
}

RatioSet ratio_set(const ModelShape& shape, const ParallelConfig& cfg,
                   const ClusterShape& cluster) {
    const auto violations = validate(cfg, shape, cluster);
    if (!violations.empty()) {
        std::string msg = "ratio_set: invalid config:";
        for (auto v : violations) {
            msg += ' ';
            msg += to_string(v);
            msg += ';';
        }
        throw std::invalid_argument(msg);
    }

    RatioSet r;
    r.tensor = cfg.tensor >= 2
                   ? tensor_parallel_ratio(cfg.tensor, shape.hidden, shape.seq_len)
                   : kInf;
    r.pipeline = pipeline_parallel_ratio(shape.layers, cfg.pipeline, shape.hidden, shape.seq_len);
    r.data = cfg.data >= 2
                 ? data_parallel_ratio(cfg.global_batch, shape.seq_len, cfg.data).exact
                 : kInf;
    r.bubble = bubble_fraction(shape.layers, cfg.layers_per_stage(shape.layers),
                               cfg.micro_batches());

    if (cluster.intra_node_ratio) r.tensor *= *cluster.intra_node_ratio;
    if (cluster.inter_node_ratio) {
        r.pipeline *= *cluster.inter_node_ratio;
        r.data *= *cluster.inter_node_ratio;
    }
    return r;
}

}  // namespace trident
