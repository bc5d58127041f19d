#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "relex/alias.hpp"
#include "relex/corpus.hpp"

namespace relex {

enum class Label { Negative = 0, Positive = 1 };

inline int sign(Label l) { return l == Label::Positive ? 1 : -1; }

struct CandidateRelationInstance {
    std::string doc_id;
    std::vector<std::string> arg_entity_ids;  // E_1..E_N
    std::optional<Label> label;

    bool operator==(const CandidateRelationInstance&) const = default;
};

using Candidate = CandidateRelationInstance;

struct CandidateGroup {
    std::string doc_id;
    std::vector<Candidate> members;
};

/// Inclusive range of sentence indices.
struct SentenceSpan {
    std::size_t first = 0;
    std::size_t last = 0;
    std::size_t sentence_count() const noexcept { return last - first + 1; }
    std::size_t width() const noexcept { return last - first; }
};

/// Every ordered tuple of entities type-matching the signature whose slots
/// hold pairwise distinct, non-alias entities. Tuples are ordered
/// lexicographically by entity_id per slot.
std::vector<Candidate> generate_candidates(const Document& doc, const AliasPartition& aliases,
                                           const RelationSignature& signature);

/// Sorted, de-duplicated sentence indices of all mentions of an entity and
/// of every entity in its alias group.
std::vector<std::size_t> argument_sentences(const Document& doc, const AliasPartition& aliases,
                                            const std::string& entity_id);

SentenceSpan span(const Candidate& c, const Document& doc, const AliasPartition& aliases);

/// Max over argument pairs of the min sentence distance between their mentions.
std::size_t minimal_span(const Candidate& c, const Document& doc, const AliasPartition& aliases);

struct FilterResult {
    std::vector<Candidate> retained;
    std::vector<Candidate> removed;
    std::size_t removed_positives() const;
};

/// Keeps candidates whose minimal span is at most `threshold` sentences.
FilterResult filter_candidates(const std::vector<Candidate>& cands, const Document& doc,
                               const AliasPartition& aliases, std::size_t threshold);

/// Slot-wise identical-or-alias. Throws InvalidArgument on arity mismatch;
/// candidates from different documents are never similar.
bool similar(const Candidate& a, const Candidate& b, const AliasPartition& aliases);

/// Equivalence classes of `similar` among candidates of one document,
/// ordered by the alias-group indices of their slots.
std::vector<CandidateGroup> group_candidates(const std::vector<Candidate>& cands, const AliasPartition& aliases);

/// Positive iff similar to some gold annotation of the same document.
std::vector<Candidate> label_candidates(const std::vector<Candidate>& cands,
                                        const std::vector<RelationAnnotation>& gold,
                                        const AliasPartition& aliases);

}  // namespace relex
