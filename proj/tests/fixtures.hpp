#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "relex/alias.hpp"
#include "relex/config.hpp"
#include "relex/corpus.hpp"
#include "relex/seqrep.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) { return std::string(RELEX_TEST_DATA) + "/" + name; }

inline relex::RelationSignature succession() { return {"Succession", {"ORG", "POST", "PER", "PER"}}; }

inline relex::Corpus news_corpus() { return relex::load_corpus(data_path("news_1.jsonl"), succession()); }

/// "E3" -> argument, "SB", "OE_ORG", "{c1,word}", anything else a word.
inline relex::GeneralizedToken parse_token(const std::string& s) {
    using relex::GeneralizedToken;
    if (s == "SB") return GeneralizedToken::sentence_break();
    if (s.size() >= 2 && s[0] == 'E' && std::isdigit(static_cast<unsigned char>(s[1])))
        return GeneralizedToken::argument(std::stoi(s.substr(1)));
    if (s.rfind("OE_", 0) == 0) return GeneralizedToken::other_entity(s.substr(3));
    if (s.front() == '{') {
        const auto comma = s.find(',');
        return GeneralizedToken::word(s.substr(comma + 1, s.size() - comma - 2), s.substr(1, comma - 1));
    }
    return GeneralizedToken::word(s);
}

/// Whitespace- or semicolon-separated tokens.
inline relex::TokenSequence seq(const std::string& text) {
    std::string t = text;
    for (auto& ch : t)
        if (ch == ';') ch = ' ';
    std::istringstream in(t);
    relex::TokenSequence out;
    for (std::string w; in >> w;) out.push_back(parse_token(w));
    return out;
}

// Expected sequence representations of the two example tuples, lowercased.
inline const char* kT1 =
    "extraordinary; shareholders; meeting; of; E1; in; gothenburg; sweden; elected; E4; E2; of; swedish; "
    "automotive; group; in; line; with; earlier; proposal; SB; E4; OE_POST; of; OE_ORG; engineering; concern; "
    "jointly; owned; by; OE_ORG; OE_ORG; of; switzerland; SB; E4; succeeds; E3; resigned; in; december; after; "
    "collapse; of; plan; to; merge; E1; vehicle; operations; with; of; french; partner; OE_ORG";
inline const char* kT2 =
    "extraordinary; shareholders; meeting; of; OE_ORG; in; gothenburg; sweden; elected; E3; OE_POST; of; swedish; "
    "automotive; group; in; line; with; earlier; proposal; SB; E3; E2; of; E1; engineering; concern; jointly; "
    "owned; by; OE_ORG; OE_ORG; of; switzerland; SB; E3; succeeds; E4; resigned; in; december; after; collapse; "
    "of; plan; to; merge; OE_ORG; vehicle; operations; with; of; french; partner; OE_ORG";

/// Random news-style document with person/organization/post entities and
/// alias variants under the general rules (prefix, suffix, Mr./Ms., CEO).
inline relex::Document random_news_document(std::mt19937_64& rng, const std::string& doc_id) {
    static const std::vector<std::pair<std::string, std::string>> people = {
        {"John", "Carter"}, {"Maria", "Lopez"}, {"Anna", "Berg"}, {"Peter", "Holm"}, {"Linda", "Shaw"}};
    static const std::vector<std::string> orgs = {"Acme Corp", "Globex", "Initech Systems", "Umbrella Group"};
    static const std::vector<std::string> posts = {"chairman", "president", "chief executive officer", "director"};
    static const std::vector<std::string> words = {"said",   "today",  "board",    "announced", "former",
                                                   "named",  "the",    "company", "succeeds",  "in",
                                                   "of",     "a",      "meeting", "replaces",  "earlier"};
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
    relex::Document doc;
    doc.doc_id = doc_id;
    struct Planned {
        std::string type;
        std::vector<std::string> surfaces;  // one entity per surface
    };
    std::vector<Planned> planned;
    std::vector<std::size_t> idx;
    auto distinct = [&](std::size_t n, std::size_t k) {
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = i;
        for (std::size_t i = n; i > 1; --i) std::swap(all[i - 1], all[pick(i)]);
        all.resize(k);
        return all;
    };
    for (auto p : distinct(people.size(), 1 + pick(2))) {
        const auto& [first, last] = people[p];
        Planned e{"PER", {first + " " + last}};
        if (rng() % 2) e.surfaces.push_back((rng() % 2 ? "Mr. " : "Ms. ") + last);
        if (rng() % 2) e.surfaces.push_back(last);
        planned.push_back(e);
    }
    for (auto o : distinct(orgs.size(), 1 + pick(2))) {
        Planned e{"ORG", {orgs[o]}};
        const auto sp = orgs[o].find(' ');
        if (sp != std::string::npos && rng() % 2) e.surfaces.push_back(orgs[o].substr(0, sp));
        planned.push_back(e);
    }
    for (auto p : distinct(posts.size(), 1)) {
        Planned e{"POST", {posts[p]}};
        if (posts[p] == "chief executive officer" && rng() % 2) e.surfaces.push_back("CEO");
        planned.push_back(e);
    }

    // Entities in planned order; each surface is mentioned once or twice.
    std::vector<std::pair<std::size_t, std::string>> mentions;  // entity index, surface
    for (const auto& p : planned)
        for (const auto& s : p.surfaces) {
            relex::Entity ent;
            ent.entity_id = "T" + std::to_string(doc.entities.size() + 1);
            ent.entity_type = p.type;
            doc.entities.push_back(ent);
            const std::size_t reps = 1 + pick(2);
            for (std::size_t r = 0; r < reps; ++r) mentions.push_back({doc.entities.size() - 1, s});
        }
    for (std::size_t i = mentions.size(); i > 1; --i) std::swap(mentions[i - 1], mentions[pick(i)]);

    std::size_t m = 0;
    const std::size_t sentences = 2 + pick(3);
    for (std::size_t s = 0; s < sentences; ++s) {
        relex::Sentence sent;
        sent.token_begin = doc.tokens.size();
        const std::size_t per = s + 1 == sentences ? mentions.size() - m : pick(3);
        for (std::size_t k = 0; k < per && m < mentions.size(); ++k, ++m) {
            for (std::size_t w = pick(3); w > 0; --w) doc.tokens.push_back({words[pick(words.size())], 0, 0});
            auto& ent = doc.entities[mentions[m].first];
            relex::EntityMention em;
            em.entity_id = ent.entity_id;
            em.entity_type = ent.entity_type;
            em.mention_id = ent.entity_id + "#" + std::to_string(ent.mention_ids.size());
            em.sentence_index = s;
            em.token_begin = doc.tokens.size();
            std::istringstream parts(mentions[m].second);
            for (std::string w; parts >> w;) doc.tokens.push_back({w, 0, 0});
            em.token_end = doc.tokens.size();
            ent.mention_ids.push_back(em.mention_id);
            doc.mentions.push_back(em);
        }
        for (std::size_t w = 1 + pick(3); w > 0; --w) doc.tokens.push_back({words[pick(words.size())], 0, 0});
        doc.tokens.push_back({".", 0, 0});
        sent.token_end = doc.tokens.size();
        doc.sentences.push_back(sent);
    }
    // Entities whose mentions were all swallowed cannot happen: every
    // planned mention is placed, the last sentence takes the remainder.
    doc.reindex();
    return doc;
}

}  // namespace fixtures
