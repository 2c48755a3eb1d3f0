#include "trident/config.hpp"

#include <fstream>
#include <istream>
#include <set>

#include "json.hpp"

namespace trident {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::string& section,
                         const std::set<std::string>& known) {
    for (const auto& item : obj.items())
        if (!known.count(item.key()))
            throw ConfigError("unknown key '" + item.key() + "' in section '" + section + "'");
}

const json* find(const json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
}

std::int64_t get_int(const json& obj, const std::string& section, const char* key,
                     std::int64_t fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_number_integer())
        throw ConfigError("key '" + std::string(key) + "' in section '" + section +
                          "' must be an integer");
    return v->get<std::int64_t>();
}

double get_real(const json& obj, const std::string& section, const char* key, double fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_number())
        throw ConfigError("key '" + std::string(key) + "' in section '" + section +
                          "' must be a number");
    return v->get<double>();
}

bool get_bool(const json& obj, const std::string& section, const char* key, bool fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_boolean())
        throw ConfigError("key '" + std::string(key) + "' in section '" + section +
                          "' must be a boolean");
    return v->get<bool>();
}

std::vector<std::int64_t> get_int_list(const json& obj, const std::string& section,
                                       const char* key, std::vector<std::int64_t> fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_array())
        throw ConfigError("key '" + std::string(key) + "' in section '" + section +
                          "' must be an array of integers");
    std::vector<std::int64_t> out;
    for (const auto& entry : *v) {
        if (!entry.is_number_integer())
            throw ConfigError("key '" + std::string(key) + "' in section '" + section +
                              "' must be an array of integers");
        out.push_back(entry.get<std::int64_t>());
    }
    return out;
}

ModelShape parse_model(const json& obj) {
    reject_unknown_keys(obj, "model", {"layers", "hidden", "seq_len", "vocab", "recompute"});
    ModelShape shape;
    shape.layers = get_int(obj, "model", "layers", shape.layers);
    shape.hidden = get_int(obj, "model", "hidden", shape.hidden);
    shape.seq_len = get_int(obj, "model", "seq_len", shape.seq_len);
    shape.vocab = get_int(obj, "model", "vocab", 56000);
    shape.recompute = get_bool(obj, "model", "recompute", shape.recompute);
    try {
        validate_shape(shape);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return shape;
}

ClusterShape parse_cluster(const json& obj) {
    reject_unknown_keys(obj, "cluster",
                        {"n_gpus", "gpus_per_node", "peak_tflops_per_gpu", "intra_node_ratio",
                         "inter_node_ratio"});
    ClusterShape cluster;
    cluster.n_gpus = get_int(obj, "cluster", "n_gpus", cluster.n_gpus);
    cluster.gpus_per_node = get_int(obj, "cluster", "gpus_per_node", cluster.gpus_per_node);
    if (find(obj, "peak_tflops_per_gpu"))
        cluster.peak_tflops_per_gpu = get_real(obj, "cluster", "peak_tflops_per_gpu", 0.0);
    if (find(obj, "intra_node_ratio"))
        cluster.intra_node_ratio = get_real(obj, "cluster", "intra_node_ratio", 0.0);
    if (find(obj, "inter_node_ratio"))
        cluster.inter_node_ratio = get_real(obj, "cluster", "inter_node_ratio", 0.0);
    try {
        validate_cluster(cluster);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cluster;
}

SearchSettings parse_search(const json& obj) {
    reject_unknown_keys(obj, "search",
                        {"global_batch_candidates", "micro_batch_candidates", "enforce_token_cap",
                         "enforce_tensor_within_node", "memory_budget_bytes", "bytes_per_param",
                         "optimizer_multiplier", "act_bytes_per_hidden", "act_bytes_per_seq_sq"});
    SearchSettings search;
    search.global_batch_candidates = get_int_list(obj, "search", "global_batch_candidates",
                                                  default_global_batch_candidates());
    search.micro_batch_candidates =
        get_int_list(obj, "search", "micro_batch_candidates", default_micro_batch_candidates());
    search.enforce_token_cap =
        get_bool(obj, "search", "enforce_token_cap", search.enforce_token_cap);
    search.enforce_tensor_within_node =
        get_bool(obj, "search", "enforce_tensor_within_node", search.enforce_tensor_within_node);
    if (find(obj, "memory_budget_bytes"))
        search.memory_budget_bytes = get_real(obj, "search", "memory_budget_bytes", 0.0);
    search.memory.bytes_per_param =
        get_real(obj, "search", "bytes_per_param", search.memory.bytes_per_param);
    search.memory.optimizer_multiplier =
        get_real(obj, "search", "optimizer_multiplier", search.memory.optimizer_multiplier);
    search.memory.act_hidden_bytes =
        get_real(obj, "search", "act_hidden_bytes", search.memory.act_hidden_bytes);
    search.memory.act_seq_bytes =
        get_real(obj, "search", "act_bytes_per_seq_sq", search.memory.act_seq_bytes);
    return search;
}

ScheduleSpec parse_schedule(const json& obj, const ModelShape& model) {
    reject_unknown_keys(obj, "schedule",
                        {"total_tokens", "peak_lr", "final_lr_fraction", "warmup_fraction",
                         "batch_ramp_fraction", "full_batch", "start_batch", "batch_granule",
                         "enforce_token_cap", "weight_decay", "adam_beta1", "adam_beta2"});
    ScheduleSpec spec;
    spec.total_tokens = get_real(obj, "schedule", "total_tokens", spec.total_tokens);
    spec.peak_lr = get_real(obj, "schedule", "peak_lr", spec.peak_lr);
    spec.final_lr_fraction = get_real(obj, "schedule", "final_lr_fraction", spec.final_lr_fraction);
    spec.warmup_fraction = get_real(obj, "schedule", "warmup_fraction", spec.warmup_fraction);
    spec.batch_ramp_fraction =
        get_real(obj, "schedule", "batch_ramp_fraction", spec.batch_ramp_fraction);
    spec.full_batch = get_int(obj, "schedule", "full_batch", spec.full_batch);
    spec.batch_granule = get_int(obj, "schedule", "batch_granule", spec.batch_granule);
    spec.start_batch = get_int(obj, "schedule", "start_batch", spec.batch_granule);
    spec.seq_len = model.seq_len;
    spec.enforce_token_cap = get_bool(obj, "schedule", "enforce_token_cap", spec.enforce_token_cap);
    spec.weight_decay = get_real(obj, "schedule", "weight_decay", spec.weight_decay);
    spec.adam_beta1 = get_real(obj, "schedule", "adam_beta1", spec.adam_beta1);
    spec.adam_beta2 = get_real(obj, "schedule", "adam_beta2", spec.adam_beta2);
    try {
        validate_schedule(spec);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return spec;
}

}  // namespace

std::vector<std::int64_t> default_global_batch_candidates() {
    return {32, 64, 128, 256, 512, 1024, 2048, 2688, 3360, 4096};
}

std::vector<std::int64_t> default_micro_batch_candidates() { return {1, 2, 4, 8}; }

RunConfig parse_config(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
    reject_unknown_keys(doc, "(root)", {"model", "cluster", "search", "schedule"});

    const json* model = find(doc, "model");
    if (!model) throw ConfigError("missing required section 'model'");
    if (!model->is_object()) throw ConfigError("section 'model' must be an object");

    RunConfig config;
    config.model = parse_model(*model);

    if (const json* cluster = find(doc, "cluster")) {
        if (!cluster->is_object()) throw ConfigError("section 'cluster' must be an object");
        config.cluster = parse_cluster(*cluster);
        config.has_cluster = true;
    }

    config.search = parse_search(find(doc, "search") ? *find(doc, "search") : json::object());

    if (const json* schedule = find(doc, "schedule")) {
        if (!schedule->is_object()) throw ConfigError("section 'schedule' must be an object");
        config.schedule = parse_schedule(*schedule, config.model);
    }
    return config;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

PlanQuery plan_query(const RunConfig& config) {
    if (!config.has_cluster) throw ConfigError("missing required section 'cluster'");
    PlanQuery query;
    query.shape = config.model;
    query.cluster = config.cluster;
    query.global_batch_candidates = config.search.global_batch_candidates;
    query.micro_batch_candidates = config.search.micro_batch_candidates;
    query.enforce_token_cap = config.search.enforce_token_cap;
    query.enforce_tensor_within_node = config.search.enforce_tensor_within_node;
    query.memory_budget_bytes = config.search.memory_budget_bytes;
    query.memory = config.search.memory;
    return query;
}

std::string effective_config_json(const RunConfig& config) {
    json doc;
    doc["model"] = {{"layers", config.model.layers},
                    {"hidden", config.model.hidden},
                    {"seq_len", config.model.seq_len},
                    {"vocab", config.model.vocab},
                    {"recompute", config.model.recompute}};
    if (config.has_cluster) {
        json cluster = {{"n_gpus", config.cluster.n_gpus},
                        {"gpus_per_node", config.cluster.gpus_per_node},
                        {"peak_tflops_per_gpu", nullptr},
                        {"intra_node_ratio", nullptr},
                        {"inter_node_ratio", nullptr}};
        if (config.cluster.peak_tflops_per_gpu)
            cluster["peak_tflops_per_gpu"] = *config.cluster.peak_tflops_per_gpu;
        if (config.cluster.intra_node_ratio)
            cluster["intra_node_ratio"] = *config.cluster.intra_node_ratio;
        if (config.cluster.inter_node_ratio)
            cluster["inter_node_ratio"] = *config.cluster.inter_node_ratio;
        doc["cluster"] = cluster;
    }
    json search = {{"global_batch_candidates", config.search.global_batch_candidates},
                   {"micro_batch_candidates", config.search.micro_batch_candidates},
                   {"enforce_token_cap", config.search.enforce_token_cap},
                   {"enforce_tensor_within_node", config.search.enforce_tensor_within_node},
                   {"memory_budget_bytes", nullptr},
                   {"bytes_per_param", config.search.memory.bytes_per_param},
                   {"optimizer_multiplier", config.search.memory.optimizer_multiplier},
                   {"act_bytes_per_hidden", config.search.memory.act_hidden_bytes},
                   {"act_bytes_per_seq_sq", config.search.memory.act_seq_bytes}};
    if (config.search.memory_budget_bytes)
        search["memory_budget_bytes"] = *config.search.memory_budget_bytes;
    doc["search"] = search;
    if (config.schedule) {
        const ScheduleSpec& s = *config.schedule;
        doc["schedule"] = {{"total_tokens", s.total_tokens},
                           {"peak_lr", s.peak_lr},
                           {"final_lr_fraction", s.final_lr_fraction},
                           {"warmup_fraction", s.warmup_fraction},
                           {"batch_ramp_fraction", s.batch_ramp_fraction},
                           {"full_batch", s.full_batch},
                           {"start_batch", s.start_batch},
                           {"batch_granule", s.batch_granule},
                           {"seq_len", s.seq_len},
                           {"enforce_token_cap", s.enforce_token_cap},
                           {"weight_decay", s.weight_decay},
                           {"adam_beta1", s.adam_beta1},
                           {"adam_beta2", s.adam_beta2}};
    }
    return doc.dump();
}

}  // namespace trident
