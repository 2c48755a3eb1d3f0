#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace trident {

// Labels with their synonym expansions, in presentation order. Order matters:
// prediction ties resolve to the earliest label.
struct LabelSet {
    std::vector<std::string> labels;
    std::vector<std::vector<std::string>> synonyms;  // one list per label, duplicate-free
};

void validate_labels(const LabelSet& labels);

// One scored candidate per (label, synonym) pair. Entries are log-scores;
// they need not be normalized log-probabilities since only differences enter
// the arithmetic.
struct ScoreTable {
    struct Candidate {
        std::int32_t label = 0;    // index into LabelSet::labels
        std::int32_t synonym = 0;  // index into the label's synonym list
    };
    std::vector<Candidate> candidates;
    std::vector<double> logp_given;  // log P(prediction | given sentence)
    std::vector<double> logp_void;   // log P(prediction | void prompt)
};

// score(c) = logp_given(c) - logp_void(c), the log of the calibrated ratio.
// Throws std::invalid_argument on mismatched column lengths.
std::vector<double> calibrated_scores(const ScoreTable& table);

enum class Aggregation { max, mean };

// Per-label aggregate of that label's synonym scores; labels with no
// candidates in the table score -infinity.
std::vector<double> label_scores(const ScoreTable& table, const LabelSet& labels,
                                 Aggregation aggregation);

// Index of the argmax label, ties broken by label order. Throws on a
// candidate that does not map into the label set.
std::size_t predict(const ScoreTable& table, const LabelSet& labels, Aggregation aggregation);

// Parses "label\tsynonym\tlogp_given\tlogp_void" rows; the header is
// mandatory. Labels and synonyms are registered in first-appearance order.
// Errors carry the offending 1-based row number.
std::pair<LabelSet, ScoreTable> parse_calibration_tsv(std::istream& in);

}  // namespace trident
