#include "trident/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace trident {

void validate_shape(const ModelShape& shape) {
    if (shape.layers < 1) throw std::invalid_argument("model.layers must be >= 1");
    if (shape.hidden < 1) throw std::invalid_argument("model.hidden must be >= 1");
    if (shape.seq_len < 1) throw std::invalid_argument("model.seq_len must be >= 1");
    if (shape.vocab < 1) throw std::invalid_argument("model.vocab must be >= 1");
    if (shape.hidden % 2 != 0) throw std::invalid_argument("model.hidden must be even");
}

void validate_cluster(const ClusterShape& cluster) {
    if (cluster.n_gpus < 1) throw std::invalid_argument("cluster.n_gpus must be >= 1");
    if (cluster.gpus_per_node < 1) throw std::invalid_argument("cluster.gpus_per_node must be >= 1");
    if (cluster.n_gpus % cluster.gpus_per_node != 0)
        throw std::invalid_argument("cluster.gpus_per_node must divide cluster.n_gpus");
    if (cluster.peak_tflops_per_gpu && *cluster.peak_tflops_per_gpu <= 0)
        throw std::invalid_argument("cluster.peak_tflops_per_gpu must be > 0");
    if (cluster.intra_node_ratio && *cluster.intra_node_ratio <= 0)
        throw std::invalid_argument("cluster.intra_node_ratio must be > 0");
    if (cluster.inter_node_ratio && *cluster.inter_node_ratio <= 0)
        throw std::invalid_argument("cluster.inter_node_ratio must be > 0");
}

const char* to_string(ConfigViolation v) {
    switch (v) {
        case ConfigViolation::nonpositive_field: return "t, p, d, b, B must all be >= 1";
        case ConfigViolation::gpu_product: return "t*p*d != n_gpus";
        case ConfigViolation::pipeline_layers: return "p does not divide L";
        case ConfigViolation::tensor_hidden: return "t does not divide h";
        case ConfigViolation::batch_divisibility: return "d*b does not divide B";
        case ConfigViolation::tensor_node: return "t exceeds gpus_per_node";
        case ConfigViolation::token_cap: return "B*S is not below the 1e7 token cap";
    }
    return "unknown violation";
}

std::vector<ConfigViolation> validate(const ParallelConfig& cfg, const ModelShape& shape,
                                      const ClusterShape& cluster) {
    std::vector<ConfigViolation> out;
    if (cfg.tensor < 1 || cfg.pipeline < 1 || cfg.data < 1 || cfg.micro_batch < 1 ||
        cfg.global_batch < 1) {
        out.push_back(ConfigViolation::nonpositive_field);
        return out;
    }
    if (cfg.tensor * cfg.pipeline * cfg.data != cluster.n_gpus)
        out.push_back(ConfigViolation::gpu_product);
    if (shape.layers % cfg.pipeline != 0) out.push_back(ConfigViolation::pipeline_layers);
    if (shape.hidden % cfg.tensor != 0) out.push_back(ConfigViolation::tensor_hidden);
    if (cfg.global_batch % (cfg.data * cfg.micro_batch) != 0)
        out.push_back(ConfigViolation::batch_divisibility);
    if (cfg.tensor > cluster.gpus_per_node) out.push_back(ConfigViolation::tensor_node);
    if (cfg.global_batch * shape.seq_len >= kGlobalBatchTokenCap)
        out.push_back(ConfigViolation::token_cap);
    return out;
}

double param_count(const ModelShape& shape) {
    const double h = static_cast<double>(shape.hidden);
    return 12.0 * static_cast<double>(shape.layers) * h * h +
           static_cast<double>(shape.vocab) * h + static_cast<double>(shape.seq_len) * h;
}

double flops_per_token(const ModelShape& shape) {
    return (shape.recompute ? 8.0 : 6.0) * param_count(shape);
}

double weight_bytes(const ModelShape& shape, const ParallelConfig& cfg, const MemoryModel& mm) {
    return param_count(shape) / static_cast<double>(cfg.tensor * cfg.pipeline) *
           mm.bytes_per_param * mm.optimizer_multiplier;
}

double activation_bytes(const ModelShape& shape, const ParallelConfig& cfg,
                        const MemoryModel& mm) {
    if (shape.layers % cfg.pipeline != 0)
        throw std::invalid_argument("activation_bytes: p does not divide L");
    if (cfg.global_batch % (cfg.data * cfg.micro_batch) != 0)
        throw std::invalid_argument("activation_bytes: d*b does not divide B");
    const double in_flight =
        static_cast<double>(std::min(cfg.micro_batches(), cfg.pipeline));
    const double local_layers = static_cast<double>(cfg.layers_per_stage(shape.layers));
    const double b = static_cast<double>(cfg.micro_batch);
    const double s = static_cast<double>(shape.seq_len);
    const double h = static_cast<double>(shape.hidden);
    const double per_layer = shape.recompute
                                 ? 2.0 * mm.bytes_per_param * b * s * h
                                 : mm.act_hidden_bytes * b * s * h + mm.act_seq_bytes * b * s * s;
    return in_flight * local_layers * per_layer;
}

double memory_per_gpu(const ModelShape& shape, const ParallelConfig& cfg, const MemoryModel& mm) {
    return weight_bytes(shape, cfg, mm) + activation_bytes(shape, cfg, mm);
}

}  // namespace trident
