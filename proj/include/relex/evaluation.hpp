#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "relex/alias.hpp"
#include "relex/candidates.hpp"

namespace relex {

struct Counts {
    std::size_t tp = 0, fp = 0, fn = 0;
};

struct EvalReport {
    std::size_t tp = 0, fp = 0, fn = 0;
    double precision = 0.0, recall = 0.0, f1 = 0.0;
    std::optional<double> accuracy;            // mention level only
    std::map<std::string, Counts> per_document;  // RIGD level only
};

/// Precision/recall/F1 from counts; each is 0 when its denominator is 0.
EvalReport make_report(std::size_t tp, std::size_t fp, std::size_t fn);

/// Group-level scoring. Predictions and gold tuples are grouped per document
/// by alias-aware similarity; each predicted group is matched greedily, in
/// canonical group order, to the first unmatched similar gold group (TP) or
/// counted as FP; unmatched gold groups are FN.
EvalReport evaluate_rigd(const std::vector<Candidate>& predicted_positive, const std::vector<RelationAnnotation>& gold,
                         const std::unordered_map<std::string, AliasPartition>& aliases);

/// Per-candidate P/R/F over the positive class, plus accuracy.
EvalReport evaluate_mention(const std::vector<Label>& predicted, const std::vector<Label>& gold);

/// Averages precision, recall and F1 across folds; counts are summed.
EvalReport average_reports(const std::vector<EvalReport>& folds);

nlohmann::json report_to_json(const EvalReport& report, const std::string& level);
/// Fixed-width table with percentages to one decimal place.
std::string format_report(const EvalReport& report, const std::string& level);

}  // namespace relex
