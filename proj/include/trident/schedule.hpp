#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace trident {

// Training hyperparameter schedule: linear learning-rate warmup over the
// first warmup_fraction of tokens, half-cosine decay anchored at
// final_lr_fraction*peak_lr on the last token, and a linear global-batch ramp
// over the first batch_ramp_fraction of tokens.
struct ScheduleSpec {
    double total_tokens = 0.0;
    double peak_lr = 0.0;
    double final_lr_fraction = 0.1;
    double warmup_fraction = 0.01;
    double batch_ramp_fraction = 0.02;
    std::int64_t full_batch = 1;   // sequences
    std::int64_t start_batch = 1;  // sequences, ramp origin
    std::int64_t seq_len = 1;
    // Batch sizes are rounded to multiples of this granule (d*b of an attached
    // parallel config); start_batch and full_batch must be multiples of it.
    std::int64_t batch_granule = 1;
    bool enforce_token_cap = true;

    // Carried optimizer metadata, echoed into reports only.
    double weight_decay = 0.1;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.95;
};

void validate_schedule(const ScheduleSpec& spec);

struct SchedulePoint {
    double token = 0.0;
    double lr = 0.0;
    std::int64_t batch = 0;
};

// Learning rate at a token position in [0, total_tokens]; throws
// std::domain_error outside the range. Warmup starts at lr=0 on token 0 and
// both branches meet exactly at peak_lr on the warmup boundary.
double lr_at(const ScheduleSpec& spec, double token);

// Global batch at a token position, monotone non-decreasing, equal to
// full_batch from the ramp end onward, always a multiple of batch_granule.
std::int64_t batch_at(const ScheduleSpec& spec, double token);

// samples >= 2 evenly spaced points covering token 0 and total_tokens.
std::vector<SchedulePoint> emit_schedule(const ScheduleSpec& spec, int samples);

// Columns: token,lr,batch.
void write_schedule_csv(const std::vector<SchedulePoint>& points, std::ostream& out);

}  // namespace trident
