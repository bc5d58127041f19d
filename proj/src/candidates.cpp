#include "relex/candidates.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "relex/error.hpp"

namespace relex {

std::vector<Candidate> generate_candidates(const Document& doc, const AliasPartition& aliases,
                                           const RelationSignature& signature) {
    const std::size_t n = signature.arity();
    std::vector<std::vector<std::string>> slots(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& e : doc.entities)
            if (e.entity_type == signature.arg_types[i]) slots[i].push_back(e.entity_id);
        std::sort(slots[i].begin(), slots[i].end());
        if (slots[i].empty()) return {};
    }

    std::vector<Candidate> out;
    std::vector<std::size_t> pick(n, 0);
    std::vector<std::string> tuple(n);
    while (true) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            tuple[i] = slots[i][pick[i]];
            for (std::size_t j = 0; j < i && ok; ++j) ok = !aliases.related(tuple[i], tuple[j]);
        }
        if (ok) out.push_back({doc.doc_id, tuple, std::nullopt});
        std::size_t k = n;
        while (k > 0) {
            --k;
            if (++pick[k] < slots[k].size()) break;
            pick[k] = 0;
            if (k == 0) return out;
        }
    }
}

std::vector<std::size_t> argument_sentences(const Document& doc, const AliasPartition& aliases,
                                            const std::string& entity_id) {
    std::vector<std::size_t> out;
    const auto& group = aliases.groups()[aliases.group_of(entity_id)];
    for (const auto& id : group)
        for (const auto* m : doc.mentions_of(id)) out.push_back(m->sentence_index);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

SentenceSpan span(const Candidate& c, const Document& doc, const AliasPartition& aliases) {
    SentenceSpan s{std::numeric_limits<std::size_t>::max(), 0};
    for (const auto& id : c.arg_entity_ids) {
        auto sents = argument_sentences(doc, aliases, id);
        s.first = std::min(s.first, sents.front());
        s.last = std::max(s.last, sents.back());
    }
    return s;
}

namespace {

// Both inputs sorted.
std::size_t min_distance(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        std::size_t d = a[i] > b[j] ? a[i] - b[j] : b[j] - a[i];
        best = std::min(best, d);
        if (a[i] < b[j]) ++i;
        else ++j;
    }
    return best;
}

}  // namespace

std::size_t minimal_span(const Candidate& c, const Document& doc, const AliasPartition& aliases) {
    std::vector<std::vector<std::size_t>> sents;
    for (const auto& id : c.arg_entity_ids) sents.push_back(argument_sentences(doc, aliases, id));
    std::size_t worst = 0;
    for (std::size_t i = 0; i < sents.size(); ++i)
        for (std::size_t j = i + 1; j < sents.size(); ++j) worst = std::max(worst, min_distance(sents[i], sents[j]));
    return worst;
}

std::size_t FilterResult::removed_positives() const {
    return static_cast<std::size_t>(std::count_if(removed.begin(), removed.end(), [](const Candidate& c) {
        return c.label == Label::Positive;
    }));
}

FilterResult filter_candidates(const std::vector<Candidate>& cands, const Document& doc,
                               const AliasPartition& aliases, std::size_t threshold) {
    FilterResult r;
    for (const auto& c : cands) (minimal_span(c, doc, aliases) <= threshold ? r.retained : r.removed).push_back(c);
    return r;
}

bool similar(const Candidate& a, const Candidate& b, const AliasPartition& aliases) {
    if (a.arg_entity_ids.size() != b.arg_entity_ids.size())
        throw InvalidArgument("similar: arity mismatch (" + std::to_string(a.arg_entity_ids.size()) + " vs " +
                              std::to_string(b.arg_entity_ids.size()) + ")");
    if (a.doc_id != b.doc_id) return false;
    for (std::size_t i = 0; i < a.arg_entity_ids.size(); ++i)
        if (!aliases.related(a.arg_entity_ids[i], b.arg_entity_ids[i])) return false;
    return true;
}

std::vector<CandidateGroup> group_candidates(const std::vector<Candidate>& cands, const AliasPartition& aliases) {
    // `similar` is slot-wise membership in the same alias group, so the tuple of
    // group indices is a complete invariant of its equivalence classes.
    std::map<std::pair<std::string, std::vector<std::size_t>>, std::vector<Candidate>> classes;
    for (const auto& c : cands) {
        std::vector<std::size_t> key;
        key.reserve(c.arg_entity_ids.size());
        for (const auto& id : c.arg_entity_ids) key.push_back(aliases.group_of(id));
        classes[{c.doc_id, std::move(key)}].push_back(c);
    }
    std::vector<CandidateGroup> out;
    for (auto& [key, members] : classes) {
        std::sort(members.begin(), members.end(),
                  [](const Candidate& a, const Candidate& b) { return a.arg_entity_ids < b.arg_entity_ids; });
        out.push_back({key.first, std::move(members)});
    }
    return out;
}

std::vector<Candidate> label_candidates(const std::vector<Candidate>& cands,
                                        const std::vector<RelationAnnotation>& gold,
                                        const AliasPartition& aliases) {
    std::vector<Candidate> out = cands;
    for (auto& c : out) {
        bool positive = false;
        for (const auto& g : gold) {
            if (g.doc_id != c.doc_id || g.arg_entity_ids.size() != c.arg_entity_ids.size()) continue;
            if (similar(c, Candidate{g.doc_id, g.arg_entity_ids, std::nullopt}, aliases)) {
                positive = true;
                break;
            }
        }
        c.label = positive ? Label::Positive : Label::Negative;
    }
    return out;
}

}  // namespace relex
