#include "relex/evaluation.hpp"

#include <cstdio>
#include <set>

#include "relex/error.hpp"

namespace relex {

EvalReport make_report(std::size_t tp, std::size_t fp, std::size_t fn) {
    EvalReport r;
    r.tp = tp;
    r.fp = fp;
    r.fn = fn;
    r.precision = tp + fp ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    r.recall = tp + fn ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    r.f1 = r.precision + r.recall > 0 ? 2 * r.precision * r.recall / (r.precision + r.recall) : 0.0;
    return r;
}

EvalReport evaluate_rigd(const std::vector<Candidate>& predicted_positive, const std::vector<RelationAnnotation>& gold,
                         const std::unordered_map<std::string, AliasPartition>& aliases) {
    std::map<std::string, std::vector<Candidate>> pred_by_doc, gold_by_doc;
    for (const auto& c : predicted_positive) pred_by_doc[c.doc_id].push_back(c);
    for (const auto& g : gold) gold_by_doc[g.doc_id].push_back({g.doc_id, g.arg_entity_ids, Label::Positive});
    std::set<std::string> docs;
    for (const auto& [d, _] : pred_by_doc) docs.insert(d);
    for (const auto& [d, _] : gold_by_doc) docs.insert(d);

    std::size_t tp = 0, fp = 0, fn = 0;
    std::map<std::string, Counts> per_doc;
    for (const auto& doc : docs) {
        auto it = aliases.find(doc);
        if (it == aliases.end()) throw InvalidArgument("evaluate_rigd: no alias partition for document '" + doc + "'");
        const auto& part = it->second;
        const auto pred_groups = group_candidates(pred_by_doc[doc], part);
        const auto gold_groups = group_candidates(gold_by_doc[doc], part);
        std::vector<bool> matched(gold_groups.size(), false);
        Counts c;
        for (const auto& pg : pred_groups) {
            bool hit = false;
            for (std::size_t g = 0; g < gold_groups.size() && !hit; ++g) {
                if (matched[g]) continue;
                for (const auto& a : pg.members) {
                    for (const auto& b : gold_groups[g].members)
                        if (a.arg_entity_ids.size() == b.arg_entity_ids.size() && similar(a, b, part)) {
                            hit = true;
                            break;
                        }
                    if (hit) break;
                }
                if (hit) matched[g] = true;
            }
            ++(hit ? c.tp : c.fp);
        }
        for (bool m : matched) c.fn += !m;
        tp += c.tp;
        fp += c.fp;
        fn += c.fn;
        per_doc[doc] = c;
    }
    EvalReport r = make_report(tp, fp, fn);
    r.per_document = std::move(per_doc);
    return r;
}

EvalReport evaluate_mention(const std::vector<Label>& predicted, const std::vector<Label>& gold) {
    if (predicted.size() != gold.size()) throw InvalidArgument("evaluate_mention: size mismatch");
    std::size_t tp = 0, fp = 0, fn = 0, correct = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const bool p = predicted[i] == Label::Positive, g = gold[i] == Label::Positive;
        tp += p && g;
        fp += p && !g;
        fn += !p && g;
        correct += p == g;
    }
    EvalReport r = make_report(tp, fp, fn);
    r.accuracy = predicted.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(predicted.size());
    return r;
}

EvalReport average_reports(const std::vector<EvalReport>& folds) {
    EvalReport r;
    if (folds.empty()) return r;
    double acc = 0.0;
    bool has_acc = true;
    for (const auto& f : folds) {
        r.tp += f.tp;
        r.fp += f.fp;
        r.fn += f.fn;
        r.precision += f.precision;
        r.recall += f.recall;
        r.f1 += f.f1;
        has_acc = has_acc && f.accuracy.has_value();
        if (f.accuracy) acc += *f.accuracy;
    }
    const double k = static_cast<double>(folds.size());
    r.precision /= k;
    r.recall /= k;
    r.f1 /= k;
    if (has_acc) r.accuracy = acc / k;
    return r;
}

nlohmann::json report_to_json(const EvalReport& report, const std::string& level) {
    nlohmann::json j{{"schema", "relex-eval-report"},
                     {"version", 1},
                     {"level", level},
                     {"tp", report.tp},
                     {"fp", report.fp},
                     {"fn", report.fn},
                     {"precision", report.precision},
                     {"recall", report.recall},
                     {"f1", report.f1}};
    if (report.accuracy) j["accuracy"] = *report.accuracy;
    if (!report.per_document.empty()) {
        nlohmann::json docs = nlohmann::json::object();
        for (const auto& [doc, c] : report.per_document) docs[doc] = {{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}};
        j["per_document"] = docs;
    }
    return j;
}

std::string format_report(const EvalReport& report, const std::string& level) {
    char buf[512];
    std::string out;
    std::snprintf(buf, sizeof buf, "%-8s %6s %6s %6s %6s %6s %6s", "Level", "TP", "FP", "FN", "P", "R", "F");
    out += buf;
    if (report.accuracy) out += "    Acc";
    out += '\n';
    std::snprintf(buf, sizeof buf, "%-8s %6zu %6zu %6zu %6.1f %6.1f %6.1f", level.c_str(), report.tp, report.fp,
                  report.fn, 100 * report.precision, 100 * report.recall, 100 * report.f1);
    out += buf;
    if (report.accuracy) {
        std::snprintf(buf, sizeof buf, " %6.1f", 100 * *report.accuracy);
        out += buf;
    }
    out += '\n';
    return out;
}

}  // namespace relex
