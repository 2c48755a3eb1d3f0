#include "trident/calib.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace trident {

void validate_labels(const LabelSet& labels) {
    if (labels.labels.empty()) throw std::invalid_argument("label set is empty");
    if (labels.synonyms.size() != labels.labels.size())
        throw std::invalid_argument("label set needs one synonym list per label");
    for (std::size_t i = 0; i < labels.labels.size(); ++i) {
        const auto& syns = labels.synonyms[i];
        if (syns.empty())
            throw std::invalid_argument("label '" + labels.labels[i] + "' has no synonyms");
        for (std::size_t a = 0; a < syns.size(); ++a)
            for (std::size_t b = a + 1; b < syns.size(); ++b)
                if (syns[a] == syns[b])
                    throw std::invalid_argument("label '" + labels.labels[i] +
                                                "' has duplicate synonym '" + syns[a] + "'");
    }
}

std::vector<double> calibrated_scores(const ScoreTable& table) {
    if (table.logp_given.size() != table.candidates.size() ||
        table.logp_void.size() != table.candidates.size())
        throw std::invalid_argument("score table columns must have one entry per candidate");
    std::vector<double> scores(table.candidates.size());
    for (std::size_t i = 0; i < scores.size(); ++i)
        scores[i] = table.logp_given[i] - table.logp_void[i];
    return scores;
}

std::vector<double> label_scores(const ScoreTable& table, const LabelSet& labels,
                                 Aggregation aggregation) {
    validate_labels(labels);
    const auto scores = calibrated_scores(table);

    const double minus_inf = -std::numeric_limits<double>::infinity();
    std::vector<double> acc(labels.labels.size(), aggregation == Aggregation::max ? minus_inf : 0.0);
    std::vector<std::size_t> counts(labels.labels.size(), 0);
    for (std::size_t i = 0; i < table.candidates.size(); ++i) {
        const auto& cand = table.candidates[i];
        if (cand.label < 0 || static_cast<std::size_t>(cand.label) >= labels.labels.size())
            throw std::invalid_argument("candidate refers to a label outside the label set");
        if (cand.synonym < 0 ||
            static_cast<std::size_t>(cand.synonym) >= labels.synonyms[cand.label].size())
            throw std::invalid_argument("candidate refers to a synonym outside its label");
        const auto li = static_cast<std::size_t>(cand.label);
        if (aggregation == Aggregation::max)
            acc[li] = std::max(acc[li], scores[i]);
        else
            acc[li] += scores[i];
        ++counts[li];
    }
    for (std::size_t li = 0; li < acc.size(); ++li) {
        if (counts[li] == 0)
            acc[li] = minus_inf;
        else if (aggregation == Aggregation::mean)
            acc[li] /= static_cast<double>(counts[li]);
    }
    return acc;
}

std::size_t predict(const ScoreTable& table, const LabelSet& labels, Aggregation aggregation) {
    const auto per_label = label_scores(table, labels, aggregation);
    std::size_t best = 0;
    for (std::size_t li = 1; li < per_label.size(); ++li)
        if (per_label[li] > per_label[best]) best = li;
    return best;
}

namespace {

double parse_double_field(const std::string& field, std::size_t row, const char* column) {
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(field, &consumed);
    } catch (const std::exception&) {
        throw std::invalid_argument("row " + std::to_string(row) + ": bad " + column + " value '" +
                                    field + "'");
    }
    if (consumed != field.size())
        throw std::invalid_argument("row " + std::to_string(row) + ": bad " + column + " value '" +
                                    field + "'");
    return value;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

}  // namespace

std::pair<LabelSet, ScoreTable> parse_calibration_tsv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("row 1: missing header 'label\tsynonym\tlogp_given\tlogp_void'");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "label\tsynonym\tlogp_given\tlogp_void")
        throw std::invalid_argument("row 1: header must be 'label\tsynonym\tlogp_given\tlogp_void'");

    LabelSet labels;
    ScoreTable table;
    std::unordered_map<std::string, std::size_t> label_index;

    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_tabs(line);
        if (fields.size() != 4)
            throw std::invalid_argument("row " + std::to_string(row) +
                                        ": expected 4 tab-separated fields, got " +
                                        std::to_string(fields.size()));
        const std::string& label = fields[0];
        const std::string& synonym = fields[1];
        if (label.empty())
            throw std::invalid_argument("row " + std::to_string(row) + ": empty label");
        if (synonym.empty())
            throw std::invalid_argument("row " + std::to_string(row) + ": empty synonym");

        auto [it, inserted] = label_index.try_emplace(label, labels.labels.size());
        if (inserted) {
            labels.labels.push_back(label);
            labels.synonyms.emplace_back();
        }
        const std::size_t li = it->second;
        auto& syns = labels.synonyms[li];
        if (std::find(syns.begin(), syns.end(), synonym) != syns.end())
            throw std::invalid_argument("row " + std::to_string(row) + ": duplicate synonym '" +
                                        synonym + "' for label '" + label + "'");
        syns.push_back(synonym);

        table.candidates.push_back({static_cast<std::int32_t>(li),
                                    static_cast<std::int32_t>(syns.size() - 1)});
        table.logp_given.push_back(parse_double_field(fields[2], row, "logp_given"));
        table.logp_void.push_back(parse_double_field(fields[3], row, "logp_void"));
    }
    if (table.candidates.empty()) throw std::invalid_argument("row 2: no candidate rows");
    return {std::move(labels), std::move(table)};
}

}  // namespace trident
