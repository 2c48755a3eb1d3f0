#include "trident/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "trident/format.hpp"
#include "trident/model.hpp"

namespace trident {

void validate_schedule(const ScheduleSpec& spec) {
    if (spec.total_tokens <= 0) throw std::invalid_argument("schedule.total_tokens must be > 0");
    if (spec.peak_lr <= 0) throw std::invalid_argument("schedule.peak_lr must be > 0");
    if (spec.final_lr_fraction <= 0 || spec.final_lr_fraction > 1)
        throw std::invalid_argument("schedule.final_lr_fraction must be in (0,1]");
    if (spec.warmup_fraction < 0 || spec.warmup_fraction >= 1)
        throw std::invalid_argument("schedule.warmup_fraction must be in [0,1)");
    if (spec.batch_ramp_fraction < 0 || spec.batch_ramp_fraction >= 1)
        throw std::invalid_argument("schedule.batch_ramp_fraction must be in [0,1)");
    if (spec.start_batch < 1 || spec.start_batch > spec.full_batch)
        throw std::invalid_argument("schedule.start_batch must satisfy 0 < start_batch <= full_batch");
    if (spec.seq_len < 1) throw std::invalid_argument("schedule.seq_len must be >= 1");
    if (spec.batch_granule < 1) throw std::invalid_argument("schedule.batch_granule must be >= 1");
    if (spec.start_batch % spec.batch_granule != 0)
        throw std::invalid_argument("schedule.start_batch must be a multiple of batch_granule");
    if (spec.full_batch % spec.batch_granule != 0)
        throw std::invalid_argument("schedule.full_batch must be a multiple of batch_granule");
    if (spec.enforce_token_cap && spec.full_batch * spec.seq_len >= kGlobalBatchTokenCap)
        throw std::invalid_argument("schedule.full_batch * seq_len is not below the 1e7 token cap");
}

namespace {

void check_token_range(const ScheduleSpec& spec, double token) {
    if (token < 0 || token > spec.total_tokens)
        throw std::domain_error("token position outside [0, total_tokens]");
}

}  // namespace

double lr_at(const ScheduleSpec& spec, double token) {
    check_token_range(spec, token);
    const double warmup_end = spec.warmup_fraction * spec.total_tokens;
    if (token <= warmup_end) {
        if (warmup_end == 0.0) return spec.peak_lr;
        return spec.peak_lr * (token / warmup_end);
    }
    const double final_lr = spec.final_lr_fraction * spec.peak_lr;
    const double x = (token - warmup_end) / (spec.total_tokens - warmup_end);
    return final_lr + 0.5 * (spec.peak_lr - final_lr) * (1.0 + std::cos(M_PI * x));
}

std::int64_t batch_at(const ScheduleSpec& spec, double token) {
    check_token_range(spec, token);
    const double ramp_end = spec.batch_ramp_fraction * spec.total_tokens;
    if (token >= ramp_end) return spec.full_batch;
    const double raw = static_cast<double>(spec.start_batch) +
                       static_cast<double>(spec.full_batch - spec.start_batch) * (token / ramp_end);
    const std::int64_t rounded =
        std::llround(raw / static_cast<double>(spec.batch_granule)) * spec.batch_granule;
    return std::clamp(rounded, spec.start_batch, spec.full_batch);
}

std::vector<SchedulePoint> emit_schedule(const ScheduleSpec& spec, int samples) {
    validate_schedule(spec);
    if (samples < 2) throw std::invalid_argument("emit_schedule: samples must be >= 2");
    std::vector<SchedulePoint> points;
    points.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const double token =
            spec.total_tokens * (static_cast<double>(i) / static_cast<double>(samples - 1));
        points.push_back({token, lr_at(spec, token), batch_at(spec, token)});
    }
    return points;
}

void write_schedule_csv(const std::vector<SchedulePoint>& points, std::ostream& out) {
    out << "token,lr,batch\n";
    for (const SchedulePoint& pt : points)
        out << fmt_sig(pt.token) << ',' << fmt_sig(pt.lr) << ',' << pt.batch << '\n';
}

}  // namespace trident
