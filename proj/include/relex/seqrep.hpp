#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "relex/alias.hpp"
#include "relex/candidates.hpp"
#include "relex/corpus.hpp"
#include "relex/stopwords.hpp"

namespace relex {

enum class TokenKind : std::uint8_t { Argument, SentenceBreak, OtherEntity, Word };

/// One position of a sequence representation: a small set of symbols from
/// disjoint namespaces. Argument, SentenceBreak and OtherEntity tokens are
/// singletons; a Word token holds the word and optionally its cluster id.
struct GeneralizedToken {
    TokenKind kind = TokenKind::Word;
    int arg = 0;                         // 1-based, Argument only
    std::string text;                    // entity type (OtherEntity) or lowercased word (Word)
    std::optional<std::string> cluster;  // Word only

    static GeneralizedToken argument(int index) { return {TokenKind::Argument, index, {}, std::nullopt}; }
    static GeneralizedToken sentence_break() { return {TokenKind::SentenceBreak, 0, {}, std::nullopt}; }
    static GeneralizedToken other_entity(std::string type) {
        return {TokenKind::OtherEntity, 0, std::move(type), std::nullopt};
    }
    static GeneralizedToken word(std::string w, std::optional<std::string> cluster = std::nullopt) {
        return {TokenKind::Word, 0, std::move(w), std::move(cluster)};
    }

    std::size_t symbol_count() const noexcept { return kind == TokenKind::Word && cluster ? 2 : 1; }
    /// Short human-readable form: E1, SB, OE_ORG, word, {c12, word}.
    std::string str() const;

    bool operator==(const GeneralizedToken&) const = default;
};

using TokenSequence = std::vector<GeneralizedToken>;

struct SequenceRepresentation {
    std::string doc_id;
    std::vector<std::string> arg_entity_ids;
    std::size_t arity = 0;
    TokenSequence tokens;
};

using ClusterMap = std::unordered_map<std::string, std::string>;  // word -> cluster id

/// Builds the representation of `candidate` over its span. Mentions of the
/// candidate's arguments (or their aliases) become E_i; mentions of other
/// entities whose type occurs in the signature become OE_type; remaining
/// non-stopword words become word tokens; sentence boundaries become SB.
SequenceRepresentation build_sequence(const Document& doc, const Candidate& candidate,
                                      const AliasPartition& aliases, const RelationSignature& signature,
                                      const ClusterMap& clusters, const StopwordSet& stopwords);

/// Throws InvariantError when a structural invariant does not hold.
void validate_sequence(const SequenceRepresentation& seq);

std::string to_string(const TokenSequence& tokens, std::string_view sep = "; ");

nlohmann::json token_to_json(const GeneralizedToken& token);
GeneralizedToken token_from_json(const nlohmann::json& j);
nlohmann::json sequence_to_json(const SequenceRepresentation& seq);
SequenceRepresentation sequence_from_json(const nlohmann::json& j);

}  // namespace relex
