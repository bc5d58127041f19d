#include "relex/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include <json.hpp>

#include "relex/error.hpp"

namespace relex {

using nlohmann::json;

std::vector<std::string> RelationSignature::distinct_types() const {
    std::vector<std::string> out;
    for (const auto& t : arg_types)
        if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    return out;
}

bool RelationSignature::has_type(const std::string& type) const {
    return std::find(arg_types.begin(), arg_types.end(), type) != arg_types.end();
}

void RelationSignature::validate() const {
    if (arg_types.size() < 2)
        throw InvariantError("relation '" + relation_name + "' must have at least 2 arguments");
    for (const auto& t : arg_types)
        if (t.empty()) throw InvariantError("relation '" + relation_name + "' has an empty argument type");
}

const Entity* Document::find_entity(const std::string& entity_id) const {
    auto it = entity_index_.find(entity_id);
    return it == entity_index_.end() ? nullptr : &entities[it->second];
}

const Entity& Document::entity(const std::string& entity_id) const {
    const Entity* e = find_entity(entity_id);
    if (!e) throw InvalidArgument("document '" + doc_id + "' has no entity '" + entity_id + "'");
    return *e;
}

const EntityMention& Document::mention(const std::string& mention_id) const {
    auto it = mention_index_.find(mention_id);
    if (it == mention_index_.end())
        throw InvalidArgument("document '" + doc_id + "' has no mention '" + mention_id + "'");
    return mentions[it->second];
}

std::vector<const EntityMention*> Document::mentions_of(const std::string& entity_id) const {
    std::vector<const EntityMention*> out;
    for (const auto& id : entity(entity_id).mention_ids) out.push_back(&mention(id));
    return out;
}

std::size_t Document::sentence_of_token(std::size_t token) const {
    auto it = std::upper_bound(sentences.begin(), sentences.end(), token,
                               [](std::size_t t, const Sentence& s) { return t < s.token_end; });
    if (it == sentences.end()) throw InvalidArgument("token index out of range");
    return static_cast<std::size_t>(it - sentences.begin());
}

void Document::reindex() {
    std::size_t offset = 0;
    for (auto& tok : tokens) {
        tok.char_begin = offset;
        tok.char_end = offset + tok.text.size();
        offset = tok.char_end + 1;
    }
    std::stable_sort(mentions.begin(), mentions.end(), [](const EntityMention& a, const EntityMention& b) {
        return std::tie(a.token_begin, a.token_end) < std::tie(b.token_begin, b.token_end);
    });
    mention_index_.clear();
    for (std::size_t i = 0; i < mentions.size(); ++i) {
        auto& m = mentions[i];
        m.surface.clear();
        for (std::size_t t = m.token_begin; t < m.token_end && t < tokens.size(); ++t) {
            if (t > m.token_begin) m.surface += ' ';
            m.surface += tokens[t].text;
        }
        mention_index_[m.mention_id] = i;
    }
    entity_index_.clear();
    for (std::size_t i = 0; i < entities.size(); ++i) {
        auto& e = entities[i];
        entity_index_[e.entity_id] = i;
        if (!e.mention_ids.empty()) {
            auto it = mention_index_.find(e.mention_ids.front());
            if (it != mention_index_.end()) e.canonical_surface = mentions[it->second].surface;
        }
    }
}

const Document* Corpus::find(const std::string& doc_id) const {
    for (const auto& d : documents)
        if (d.doc_id == doc_id) return &d;
    return nullptr;
}

std::vector<RelationAnnotation> Corpus::relations_for(const std::string& doc_id) const {
    std::vector<RelationAnnotation> out;
    for (const auto& r : relations)
        if (r.doc_id == doc_id) out.push_back(r);
    return out;
}

namespace {

struct MentionRecord {
    std::size_t sentence_index, token_start, token_end;
};

struct EntityRecord {
    std::size_t line;
    std::string doc_id, entity_id, entity_type;
    std::vector<MentionRecord> mentions;
};

struct RelationRecord {
    std::size_t line;
    RelationAnnotation annotation;
};

struct DocumentRecord {
    std::size_t line;
    std::string doc_id;
    std::vector<std::vector<std::string>> sentences;
};

std::string require_string(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        throw ParseError(std::string("missing or non-string field '") + key + "'");
    auto s = j[key].get<std::string>();
    if (s.empty()) throw ParseError(std::string("empty field '") + key + "'");
    return s;
}

std::size_t require_index(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0)
        throw ParseError(std::string("missing or invalid non-negative integer field '") + key + "'");
    return j[key].get<std::size_t>();
}

}  // namespace

CorpusValidation validate_corpus(std::istream& in, const std::optional<RelationSignature>& signature) {
    CorpusValidation result;
    auto issue = [&](std::size_t line, std::string doc, std::string msg) {
        result.issues.push_back({line, std::move(doc), std::move(msg)});
    };

    if (signature) {
        try {
            signature->validate();
        } catch (const InvariantError& e) {
            issue(0, "", e.what());
        }
    }

    std::vector<DocumentRecord> docs;
    std::vector<EntityRecord> ents;
    std::vector<RelationRecord> rels;

    std::string text;
    std::size_t line_no = 0;
    while (std::getline(in, text)) {
        ++line_no;
        if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            json j = json::parse(text);
            if (!j.is_object()) throw ParseError("record is not a JSON object");
            std::string kind = require_string(j, "kind");
            if (kind == "document") {
                DocumentRecord d{line_no, require_string(j, "doc_id"), {}};
                if (!j.contains("sentences") || !j["sentences"].is_array())
                    throw ParseError("document field 'sentences' must be an array");
                for (const auto& s : j["sentences"]) {
                    if (!s.is_array()) throw ParseError("each sentence must be an array of token strings");
                    std::vector<std::string> toks;
                    for (const auto& t : s) {
                        if (!t.is_string() || t.get<std::string>().empty())
                            throw ParseError("tokens must be nonempty strings");
                        toks.push_back(t.get<std::string>());
                    }
                    d.sentences.push_back(std::move(toks));
                }
                docs.push_back(std::move(d));
            } else if (kind == "entity") {
                EntityRecord e{line_no, require_string(j, "doc_id"), require_string(j, "entity_id"),
                               require_string(j, "entity_type"), {}};
                if (!j.contains("mentions") || !j["mentions"].is_array())
                    throw ParseError("entity field 'mentions' must be an array");
                for (const auto& m : j["mentions"]) {
                    if (!m.is_object()) throw ParseError("mention must be an object");
                    e.mentions.push_back({require_index(m, "sentence_index"), require_index(m, "token_start"),
                                          require_index(m, "token_end")});
                }
                ents.push_back(std::move(e));
            } else if (kind == "relation") {
                RelationRecord r{line_no, {require_string(j, "doc_id"), require_string(j, "relation_name"), {}}};
                if (!j.contains("arg_entity_ids") || !j["arg_entity_ids"].is_array())
                    throw ParseError("relation field 'arg_entity_ids' must be an array");
                for (const auto& a : j["arg_entity_ids"]) {
                    if (!a.is_string()) throw ParseError("arg_entity_ids must hold strings");
                    r.annotation.arg_entity_ids.push_back(a.get<std::string>());
                }
                rels.push_back(std::move(r));
            } else {
                throw ParseError("unknown record kind '" + kind + "'");
            }
        } catch (const json::exception& e) {
            issue(line_no, "", std::string("JSON parse error: ") + e.what());
        } catch (const ParseError& e) {
            issue(line_no, "", e.what());
        }
    }

    std::map<std::string, std::size_t> doc_pos;
    for (auto& d : docs) {
        if (doc_pos.count(d.doc_id)) {
            issue(d.line, d.doc_id, "duplicate document '" + d.doc_id + "'");
            continue;
        }
        Document doc;
        doc.doc_id = d.doc_id;
        for (std::size_t s = 0; s < d.sentences.size(); ++s) {
            if (d.sentences[s].empty())
                issue(d.line, d.doc_id, "sentence " + std::to_string(s) + " is empty");
            Sentence sent{doc.tokens.size(), doc.tokens.size() + d.sentences[s].size()};
            for (auto& t : d.sentences[s]) doc.tokens.push_back({std::move(t), 0, 0});
            doc.sentences.push_back(sent);
        }
        doc_pos[doc.doc_id] = result.corpus.documents.size();
        result.corpus.documents.push_back(std::move(doc));
    }

    std::vector<std::set<std::string>> seen_entities(result.corpus.documents.size());
    for (auto& e : ents) {
        auto it = doc_pos.find(e.doc_id);
        if (it == doc_pos.end()) {
            issue(e.line, e.doc_id, "entity '" + e.entity_id + "' references unknown document");
            continue;
        }
        Document& doc = result.corpus.documents[it->second];
        if (!seen_entities[it->second].insert(e.entity_id).second) {
            issue(e.line, e.doc_id, "duplicate entity_id '" + e.entity_id + "'");
            continue;
        }
        if (e.mentions.empty()) {
            issue(e.line, e.doc_id, "entity '" + e.entity_id + "' has no mentions");
            continue;
        }
        Entity entity{e.entity_id, e.entity_type, "", {}};
        std::vector<EntityMention> accepted;
        bool bad = false;
        for (std::size_t k = 0; k < e.mentions.size(); ++k) {
            const auto& m = e.mentions[k];
            std::string mid = e.entity_id + "#" + std::to_string(k);
            if (m.sentence_index >= doc.sentences.size()) {
                issue(e.line, e.doc_id, "mention '" + mid + "': sentence_index out of range");
                bad = true;
                continue;
            }
            const Sentence& s = doc.sentences[m.sentence_index];
            std::size_t len = s.token_end - s.token_begin;
            if (m.token_end <= m.token_start) {
                issue(e.line, e.doc_id, "mention '" + mid + "': token_end must exceed token_start");
                bad = true;
                continue;
            }
            if (m.token_end > len) {
                issue(e.line, e.doc_id,
                      "mention '" + mid + "': token span crosses the end of sentence " +
                          std::to_string(m.sentence_index));
                bad = true;
                continue;
            }
            accepted.push_back({mid, e.entity_id, e.entity_type, m.sentence_index, s.token_begin + m.token_start,
                                s.token_begin + m.token_end, ""});
            entity.mention_ids.push_back(mid);
        }
        if (bad) continue;
        doc.mentions.insert(doc.mentions.end(), accepted.begin(), accepted.end());
        doc.entities.push_back(std::move(entity));
    }
    for (auto& doc : result.corpus.documents) doc.reindex();

    for (auto& r : rels) {
        const auto& a = r.annotation;
        if (signature && a.relation_name != signature->relation_name) {
            ++result.skipped_relations;
            continue;
        }
        auto it = doc_pos.find(a.doc_id);
        if (it == doc_pos.end()) {
            issue(r.line, a.doc_id, "relation references unknown document");
            continue;
        }
        const Document& doc = result.corpus.documents[it->second];
        bool bad = false;
        if (signature && a.arg_entity_ids.size() != signature->arity()) {
            issue(r.line, a.doc_id,
                  "relation has " + std::to_string(a.arg_entity_ids.size()) + " arguments, signature expects " +
                      std::to_string(signature->arity()));
            bad = true;
        }
        for (std::size_t i = 0; i < a.arg_entity_ids.size(); ++i) {
            const Entity* e = doc.find_entity(a.arg_entity_ids[i]);
            if (!e) {
                issue(r.line, a.doc_id, "relation references unknown entity_id '" + a.arg_entity_ids[i] + "'");
                bad = true;
            } else if (signature && i < signature->arity() && e->entity_type != signature->arg_types[i]) {
                issue(r.line, a.doc_id,
                      "relation argument " + std::to_string(i + 1) + " ('" + e->entity_id + "') has type " +
                          e->entity_type + ", signature expects " + signature->arg_types[i]);
                bad = true;
            }
        }
        if (!bad) result.corpus.relations.push_back(a);
    }
    return result;
}

Corpus load_corpus(std::istream& in, const RelationSignature& signature) {
    auto v = validate_corpus(in, signature);
    if (!v.ok()) {
        const auto& first = v.issues.front();
        std::string msg = first.doc_id.empty() ? first.message : "document '" + first.doc_id + "': " + first.message;
        if (first.line) throw ParseError(msg, first.line);
        throw InvariantError(msg);
    }
    return std::move(v.corpus);
}

Corpus load_corpus(const std::string& path, const RelationSignature& signature) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open corpus file '" + path + "'");
    return load_corpus(in, signature);
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
    for (const auto& doc : corpus.documents) {
        json sents = json::array();
        for (const auto& s : doc.sentences) {
            json toks = json::array();
            for (std::size_t t = s.token_begin; t < s.token_end; ++t) toks.push_back(doc.tokens[t].text);
            sents.push_back(std::move(toks));
        }
        out << json{{"kind", "document"}, {"doc_id", doc.doc_id}, {"sentences", sents}}.dump() << '\n';
        for (const auto& e : doc.entities) {
            json ms = json::array();
            for (const auto& mid : e.mention_ids) {
                const auto& m = doc.mention(mid);
                std::size_t base = doc.sentences[m.sentence_index].token_begin;
                ms.push_back({{"sentence_index", m.sentence_index},
                              {"token_start", m.token_begin - base},
                              {"token_end", m.token_end - base}});
            }
            out << json{{"kind", "entity"},
                        {"doc_id", doc.doc_id},
                        {"entity_id", e.entity_id},
                        {"entity_type", e.entity_type},
                        {"mentions", ms}}
                       .dump()
                << '\n';
        }
        for (const auto& r : corpus.relations) {
            if (r.doc_id != doc.doc_id) continue;
            out << json{{"kind", "relation"},
                        {"doc_id", r.doc_id},
                        {"relation_name", r.relation_name},
                        {"arg_entity_ids", r.arg_entity_ids}}
                       .dump()
                << '\n';
        }
    }
}

}  // namespace relex
