#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace relex {

struct Token {
    std::string text;
    std::size_t char_begin = 0;  // offsets into the space-joined document text
    std::size_t char_end = 0;
};

/// Half-open range of document-level token indices.
struct Sentence {
    std::size_t token_begin = 0;
    std::size_t token_end = 0;
};

struct EntityMention {
    std::string mention_id;
    std::string entity_id;
    std::string entity_type;
    std::size_t sentence_index = 0;
    std::size_t token_begin = 0;  // document-level, half-open
    std::size_t token_end = 0;
    std::string surface;          // spanned tokens joined by single spaces
};

struct Entity {
    std::string entity_id;
    std::string entity_type;
    std::string canonical_surface;  // surface of the first mention
    std::vector<std::string> mention_ids;
};

struct RelationSignature {
    std::string relation_name;
    std::vector<std::string> arg_types;

    std::size_t arity() const noexcept { return arg_types.size(); }
    /// Distinct argument types in first-occurrence order.
    std::vector<std::string> distinct_types() const;
    bool has_type(const std::string& type) const;
    /// Throws InvariantError unless arity >= 2 and every type is nonempty.
    void validate() const;
};

struct RelationAnnotation {
    std::string doc_id;
    std::string relation_name;
    std::vector<std::string> arg_entity_ids;
};

class Document {
public:
    std::string doc_id;
    std::vector<Token> tokens;
    std::vector<Sentence> sentences;
    std::vector<EntityMention> mentions;  // sorted by (token_begin, token_end)
    std::vector<Entity> entities;         // in declaration order

    const Entity* find_entity(const std::string& entity_id) const;
    const Entity& entity(const std::string& entity_id) const;
    const EntityMention& mention(const std::string& mention_id) const;
    std::vector<const EntityMention*> mentions_of(const std::string& entity_id) const;
    std::size_t sentence_of_token(std::size_t token) const;

    /// Rebuilds lookup indices and derived fields (offsets, surfaces,
    /// canonical surfaces). Call after mutating the public members.
    void reindex();

private:
    std::unordered_map<std::string, std::size_t> entity_index_;
    std::unordered_map<std::string, std::size_t> mention_index_;
};

struct Corpus {
    std::vector<Document> documents;
    std::vector<RelationAnnotation> relations;  // gold annotations for the loaded signature

    const Document* find(const std::string& doc_id) const;
    std::vector<RelationAnnotation> relations_for(const std::string& doc_id) const;
};

/// One problem found while validating a corpus.
struct CorpusIssue {
    std::size_t line = 0;  // 0 when not tied to a specific input line
    std::string doc_id;
    std::string message;
};

struct CorpusValidation {
    Corpus corpus;  // everything that could be assembled
    std::vector<CorpusIssue> issues;
    std::size_t skipped_relations = 0;  // annotations of other relation types
    bool ok() const noexcept { return issues.empty(); }
};

/// Parses canonical JSONL and checks every invariant, collecting issues
/// instead of throwing. When `signature` is given, relation records of that
/// relation are type-checked and kept; records of other relations are skipped.
CorpusValidation validate_corpus(std::istream& in, const std::optional<RelationSignature>& signature);

/// Strict loader: throws ParseError / InvariantError on the first issue.
Corpus load_corpus(std::istream& in, const RelationSignature& signature);
Corpus load_corpus(const std::string& path, const RelationSignature& signature);

/// Writes the corpus back in canonical JSONL form.
void write_corpus(std::ostream& out, const Corpus& corpus);

}  // namespace relex
