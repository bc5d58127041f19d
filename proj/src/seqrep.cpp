#include "relex/seqrep.hpp"

#include <algorithm>

#include "relex/error.hpp"

namespace relex {

using nlohmann::json;

std::string GeneralizedToken::str() const {
    switch (kind) {
        case TokenKind::Argument: return "E" + std::to_string(arg);
        case TokenKind::SentenceBreak: return "SB";
        case TokenKind::OtherEntity: return "OE_" + text;
        case TokenKind::Word: return cluster ? "{" + *cluster + ", " + text + "}" : text;
    }
    return text;
}

std::string to_string(const TokenSequence& tokens, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += sep;
        out += tokens[i].str();
    }
    return out;
}

SequenceRepresentation build_sequence(const Document& doc, const Candidate& candidate,
                                      const AliasPartition& aliases, const RelationSignature& signature,
                                      const ClusterMap& clusters, const StopwordSet& stopwords) {
    const SentenceSpan sp = span(candidate, doc, aliases);
    const std::size_t tok_begin = doc.sentences[sp.first].token_begin;
    const std::size_t tok_end = doc.sentences[sp.last].token_end;

    std::vector<std::size_t> arg_group;
    for (const auto& id : candidate.arg_entity_ids) arg_group.push_back(aliases.group_of(id));

    // Only mentions of signature types consume their words. Among those,
    // overlaps resolve longest-first, then leftmost.
    std::vector<const EntityMention*> pool;
    for (const auto& m : doc.mentions)
        if (m.token_begin >= tok_begin && m.token_end <= tok_end && signature.has_type(m.entity_type))
            pool.push_back(&m);
    std::stable_sort(pool.begin(), pool.end(), [](const EntityMention* a, const EntityMention* b) {
        std::size_t la = a->token_end - a->token_begin, lb = b->token_end - b->token_begin;
        if (la != lb) return la > lb;
        return a->token_begin < b->token_begin;
    });
    std::vector<const EntityMention*> owner(tok_end - tok_begin, nullptr);
    for (const auto* m : pool) {
        bool free = std::all_of(owner.begin() + (m->token_begin - tok_begin), owner.begin() + (m->token_end - tok_begin),
                                [](const EntityMention* o) { return o == nullptr; });
        if (!free) continue;
        std::fill(owner.begin() + (m->token_begin - tok_begin), owner.begin() + (m->token_end - tok_begin), m);
    }

    SequenceRepresentation seq{candidate.doc_id, candidate.arg_entity_ids, candidate.arg_entity_ids.size(), {}};
    for (std::size_t s = sp.first; s <= sp.last; ++s) {
        if (s > sp.first && !seq.tokens.empty() && seq.tokens.back().kind != TokenKind::SentenceBreak)
            seq.tokens.push_back(GeneralizedToken::sentence_break());
        const Sentence& sent = doc.sentences[s];
        for (std::size_t t = sent.token_begin; t < sent.token_end; ++t) {
            if (const EntityMention* m = owner[t - tok_begin]) {
                if (t != m->token_begin) continue;
                std::size_t g = aliases.group_of(m->entity_id);
                auto it = std::find(arg_group.begin(), arg_group.end(), g);
                if (it != arg_group.end())
                    seq.tokens.push_back(GeneralizedToken::argument(static_cast<int>(it - arg_group.begin()) + 1));
                else
                    seq.tokens.push_back(GeneralizedToken::other_entity(m->entity_type));
                continue;
            }
            const std::string& raw = doc.tokens[t].text;
            if (!is_word_like(raw)) continue;
            std::string w = to_lower(raw);
            if (stopwords.contains(w)) continue;
            auto c = clusters.find(w);
            seq.tokens.push_back(GeneralizedToken::word(
                std::move(w), c == clusters.end() ? std::nullopt : std::optional<std::string>(c->second)));
        }
    }
    while (!seq.tokens.empty() && seq.tokens.back().kind == TokenKind::SentenceBreak) seq.tokens.pop_back();
    return seq;
}

void validate_sequence(const SequenceRepresentation& seq) {
    const auto& t = seq.tokens;
    if (!t.empty() && (t.front().kind == TokenKind::SentenceBreak || t.back().kind == TokenKind::SentenceBreak))
        throw InvariantError("sequence starts or ends with a sentence break");
    std::vector<bool> seen(seq.arity + 1, false);
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i && t[i].kind == TokenKind::SentenceBreak && t[i - 1].kind == TokenKind::SentenceBreak)
            throw InvariantError("adjacent sentence breaks at position " + std::to_string(i));
        if (t[i].kind == TokenKind::Argument) {
            if (t[i].arg < 1 || static_cast<std::size_t>(t[i].arg) > seq.arity)
                throw InvariantError("argument token E" + std::to_string(t[i].arg) + " out of range");
            seen[t[i].arg] = true;
        }
        if (t[i].kind == TokenKind::Word && t[i].text.empty()) throw InvariantError("empty word token");
        if (t[i].kind != TokenKind::Word && t[i].cluster) throw InvariantError("cluster id on a non-word token");
    }
    for (std::size_t a = 1; a <= seq.arity; ++a)
        if (!seen[a]) throw InvariantError("sequence lacks argument token E" + std::to_string(a));
}

json token_to_json(const GeneralizedToken& token) {
    switch (token.kind) {
        case TokenKind::Argument: return json::array({"E", token.arg});
        case TokenKind::SentenceBreak: return json::array({"SB"});
        case TokenKind::OtherEntity: return json::array({"OE", token.text});
        case TokenKind::Word:
            if (token.cluster) return json::array({"W", token.text, "C", *token.cluster});
            return json::array({"W", token.text});
    }
    return json::array();
}

GeneralizedToken token_from_json(const json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_string()) throw ParseError("token must be a tagged array");
    const auto tag = j[0].get<std::string>();
    if (tag == "E" && j.size() == 2 && j[1].is_number_integer()) return GeneralizedToken::argument(j[1].get<int>());
    if (tag == "SB" && j.size() == 1) return GeneralizedToken::sentence_break();
    if (tag == "OE" && j.size() == 2 && j[1].is_string()) return GeneralizedToken::other_entity(j[1].get<std::string>());
    if (tag == "W" && j.size() == 2 && j[1].is_string()) return GeneralizedToken::word(j[1].get<std::string>());
    if (tag == "W" && j.size() == 4 && j[1].is_string() && j[2] == "C" && j[3].is_string())
        return GeneralizedToken::word(j[1].get<std::string>(), j[3].get<std::string>());
    throw ParseError("malformed token " + j.dump());
}

json sequence_to_json(const SequenceRepresentation& seq) {
    json toks = json::array();
    for (const auto& t : seq.tokens) toks.push_back(token_to_json(t));
    return {{"doc_id", seq.doc_id}, {"arg_entity_ids", seq.arg_entity_ids}, {"arity", seq.arity}, {"tokens", toks}};
}

SequenceRepresentation sequence_from_json(const json& j) {
    SequenceRepresentation seq;
    try {
        seq.doc_id = j.at("doc_id").get<std::string>();
        seq.arg_entity_ids = j.at("arg_entity_ids").get<std::vector<std::string>>();
        seq.arity = j.at("arity").get<std::size_t>();
        for (const auto& t : j.at("tokens")) seq.tokens.push_back(token_from_json(t));
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed sequence: ") + e.what());
    }
    return seq;
}

}  // namespace relex
