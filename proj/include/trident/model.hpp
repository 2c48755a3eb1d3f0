#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace trident {

// Structural parameters of a decoder-only transformer.
struct ModelShape {
    std::int64_t layers = 1;   // transformer layers
    std::int64_t hidden = 1;   // hidden width, must be even
    std::int64_t seq_len = 1;  // sequence length in tokens
    std::int64_t vocab = 1;    // vocabulary size in tokens
    bool recompute = true;     // recompute activations in the backward pass
};

struct ClusterShape {
    std::int64_t n_gpus = 1;
    std::int64_t gpus_per_node = 1;  // must divide n_gpus
    std::optional<double> peak_tflops_per_gpu;
    // Dimensionless hardware multipliers applied to the compute/communication
    // ratios; intra-node scales the tensor-parallel ratio, inter-node scales
    // the pipeline- and data-parallel ratios.
    std::optional<double> intra_node_ratio;
    std::optional<double> inter_node_ratio;
};

// One candidate 3D-parallel layout. Batch sizes are in sequences.
struct ParallelConfig {
    std::int64_t tensor = 1;        // tensor-parallel size (t)
    std::int64_t pipeline = 1;      // pipeline-parallel size (p)
    std::int64_t data = 1;          // data-parallel size (d)
    std::int64_t micro_batch = 1;   // micro-batch size (b)
    std::int64_t global_batch = 1;  // global batch size (B)

    // Micro-batches per pipeline group, B/(d*b). Caller guarantees divisibility.
    std::int64_t micro_batches() const { return global_batch / (data * micro_batch); }
    // Layers per pipeline stage, L/p.
    std::int64_t layers_per_stage(std::int64_t layers) const { return layers / pipeline; }
};

// Global batches are capped strictly below this many tokens (B*S < cap).
inline constexpr std::int64_t kGlobalBatchTokenCap = 10'000'000;

// Throw std::invalid_argument if the shape violates its invariants.
void validate_shape(const ModelShape& shape);
void validate_cluster(const ClusterShape& cluster);

enum class ConfigViolation {
    nonpositive_field,   // some field of the config is < 1
    gpu_product,         // t*p*d != n_gpus
    pipeline_layers,     // p does not divide L
    tensor_hidden,       // t does not divide h
    batch_divisibility,  // d*b does not divide B
    tensor_node,         // t > gpus_per_node
    token_cap,           // B*S >= token cap
};

const char* to_string(ConfigViolation v);

// Total checker: returns every violated constraint, never throws. An empty
// result means the config is feasible for the given shape and cluster.
// Nonpositive config fields short-circuit to {nonpositive_field} since the
// divisibility predicates are meaningless for them.
std::vector<ConfigViolation> validate(const ParallelConfig& cfg, const ModelShape& shape,
                                      const ClusterShape& cluster);

// Parameter total: 12*L*h^2 transformer blocks plus V*h token and S*h
// position embeddings.
double param_count(const ModelShape& shape);

// Training FLOPs per token: 8x parameters with activation recomputation,
// 6x without.
double flops_per_token(const ModelShape& shape);

// Per-GPU memory estimate knobs. Activation bytes per micro-batch per layer
// are act_hidden_bytes*b*S*h + act_seq_bytes*b*S^2 without recomputation;
// with recomputation only the stage boundary tensor is kept, at
// 2*bytes_per_param*b*S*h per layer.
struct MemoryModel {
    double bytes_per_param = 2.0;
    double optimizer_multiplier = 8.0;
    double act_hidden_bytes = 34.0;
    double act_seq_bytes = 5.0;
};

// Weight+optimizer bytes per GPU: param_count/(t*p) * bytes_per_param * optimizer_multiplier.
double weight_bytes(const ModelShape& shape, const ParallelConfig& cfg, const MemoryModel& mm);

// Activation bytes per GPU with min(m, p) micro-batches in flight.
// Throws std::invalid_argument naming the constraint if p does not divide L
// or d*b does not divide B.
double activation_bytes(const ModelShape& shape, const ParallelConfig& cfg, const MemoryModel& mm);

double memory_per_gpu(const ModelShape& shape, const ParallelConfig& cfg, const MemoryModel& mm);

}  // namespace trident
