#include "relex/features.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace relex {

FeatureVector extract_features(const Candidate& candidate, const Document& doc, const SequenceRepresentation& seq,
                               const AliasPartition& aliases, const RelationSignature& signature) {
    FeatureVector fv;
    fv["TupleSpan"] = static_cast<double>(minimal_span(candidate, doc, aliases));

    const auto& toks = seq.tokens;
    const std::size_t n = seq.arity;
    // Sentence index of each token position within the sequence.
    std::vector<std::size_t> sent(toks.size(), 0);
    std::vector<std::vector<std::size_t>> where(n + 1);
    for (std::size_t p = 0, s = 0; p < toks.size(); ++p) {
        if (toks[p].kind == TokenKind::SentenceBreak) ++s;
        sent[p] = s;
        if (toks[p].kind == TokenKind::Argument && toks[p].arg >= 1 && static_cast<std::size_t>(toks[p].arg) <= n)
            where[static_cast<std::size_t>(toks[p].arg)].push_back(p);
    }

    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j) {
            const std::string pair = std::to_string(i) + "_" + std::to_string(j);
            std::size_t best = std::numeric_limits<std::size_t>::max();
            for (auto p : where[i])
                for (auto q : where[j]) best = std::min(best, sent[p] > sent[q] ? sent[p] - sent[q] : sent[q] - sent[p]);
            if (best == std::numeric_limits<std::size_t>::max()) continue;
            fv["SentDiff_" + pair] = static_cast<double>(best);
            fv["SameLine_" + pair] = best == 0 ? 1.0 : 0.0;

            std::vector<std::string> types{signature.arg_types[i - 1]};
            if (signature.arg_types[j - 1] != types.front()) types.push_back(signature.arg_types[j - 1]);
            const std::string prefix = "E" + std::to_string(i) + "E" + std::to_string(j);
            for (const auto& type : types) {
                bool between = false;
                for (auto p : where[i])
                    for (auto q : where[j]) {
                        const auto lo = std::min(p, q), hi = std::max(p, q);
                        for (auto k = lo + 1; k < hi && !between; ++k)
                            between = toks[k].kind == TokenKind::OtherEntity && toks[k].text == type;
                    }
                fv[prefix + (between ? "OE_" : "NoOE_") + type] = 1.0;
            }
        }

    for (const auto& t : toks) {
        if (t.kind != TokenKind::Word) continue;
        fv["W=" + t.text] = 1.0;
        if (t.cluster) fv["C=" + *t.cluster] = 1.0;
    }
    return fv;
}

}  // namespace relex
