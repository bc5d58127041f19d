#include "relex/synth.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "relex/error.hpp"

namespace relex {

namespace {

using Words = std::vector<std::string>;

const Words kDrugs = {"gefitinib", "erlotinib", "afatinib",  "osimertinib", "crizotinib", "vemurafenib",
                      "dabrafenib", "trametinib", "imatinib", "sorafenib",   "sunitinib",  "lapatinib",
                      "cetuximab",  "nivolumab",  "olaparib", "palbociclib"};
const Words kGenes = {"EGFR", "BRAF", "KRAS",  "ALK",  "MET",    "ERBB2", "ROS1", "PIK3CA",
                      "NRAS", "KIT",  "FGFR1", "CDK4", "PDGFRA", "MTOR",  "JAK2", "BRCA1"};
const Words kDrugSuffixes = {"hydrochloride", "mesylate", "tablets"};
const Words kGeneSuffixes = {"gene", "protein", "kinase"};
const std::vector<Words> kDiseases = {{"melanoma"}, {"lung", "cancer"}, {"leukemia"}, {"glioma"}};
const std::vector<Words> kCues = {{"inhibits"},           {"blocks"}, {"suppresses"}, {"potently", "inhibits"},
                                  {"selectively", "targets"}};
const std::vector<Words> kNeutral = {{"was", "compared", "with"}, {"and"}, {"alongside"},
                                     {"did", "not", "alter"},     {"was", "measured", "with"}};
const Words kFiller = {"patients", "treatment", "cells",    "response", "study",      "clinical",    "trial",
                       "expression", "levels",  "tumor",    "samples",  "analysis",   "observed",    "significant",
                       "results",  "therapy",   "dose",     "activity", "pathway",    "signaling",   "growth",
                       "increased", "reduced",  "cohort",   "median",   "survival",   "months",      "baseline",
                       "efficacy", "toxicity",  "resistance", "sensitivity", "biopsy", "lesions",    "progression",
                       "assay",    "binding",   "phase",    "daily",    "oral"};

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
    bool chance(double p) { return static_cast<double>(gen_() >> 11) * 0x1.0p-53 < p; }
    template <typename T>
    const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 gen_;
};

struct Piece {
    Words words;
    int entity = -1;  // index into the document's entity list, -1 for plain words
};

using Clause = std::vector<Piece>;

struct SynthEntity {
    std::string type;
    Words surface;
    int alias_of = -1;
};

class DocBuilder {
public:
    explicit DocBuilder(Rng& rng) : rng_(rng) {}

    int add_entity(std::string type, Words surface, int alias_of = -1) {
        entities_.push_back({std::move(type), std::move(surface), alias_of});
        return static_cast<int>(entities_.size()) - 1;
    }
    const SynthEntity& entity(int e) const { return entities_[static_cast<std::size_t>(e)]; }

    void fillers(Clause& c, std::size_t lo, std::size_t hi) {
        const std::size_t n = lo + rng_.below(hi - lo + 1);
        for (std::size_t i = 0; i < n; ++i) c.push_back({{rng_.pick(kFiller)}, -1});
    }
    Clause mention_clause(int e) {
        Clause c;
        fillers(c, 1, 3);
        c.push_back({entity(e).surface, e});
        fillers(c, 1, 3);
        return c;
    }
    Clause pair_clause(int a, const Words& link, int b) {
        Clause c;
        fillers(c, 0, 2);
        c.push_back({entity(a).surface, a});
        c.push_back({link, -1});
        if (rng_.chance(0.3)) fillers(c, 1, 1);
        c.push_back({entity(b).surface, b});
        fillers(c, 0, 2);
        return c;
    }
    Clause filler_clause() {
        Clause c;
        fillers(c, 4, 8);
        return c;
    }

    Document build(const std::string& doc_id, const std::vector<Clause>& sentences) const {
        Document doc;
        doc.doc_id = doc_id;
        for (std::size_t e = 0; e < entities_.size(); ++e)
            doc.entities.push_back({"T" + std::to_string(e + 1), entities_[e].type, {}, {}});
        for (std::size_t s = 0; s < sentences.size(); ++s) {
            Sentence sent;
            sent.token_begin = doc.tokens.size();
            for (const auto& piece : sentences[s]) {
                const std::size_t begin = doc.tokens.size();
                for (const auto& w : piece.words) doc.tokens.push_back({w, 0, 0});
                if (piece.entity < 0) continue;
                Entity& ent = doc.entities[static_cast<std::size_t>(piece.entity)];
                EntityMention m;
                m.mention_id = ent.entity_id + "#" + std::to_string(ent.mention_ids.size());
                m.entity_id = ent.entity_id;
                m.entity_type = ent.entity_type;
                m.sentence_index = s;
                m.token_begin = begin;
                m.token_end = doc.tokens.size();
                ent.mention_ids.push_back(m.mention_id);
                doc.mentions.push_back(std::move(m));
            }
            doc.tokens.push_back({".", 0, 0});
            sent.token_end = doc.tokens.size();
            doc.sentences.push_back(sent);
        }
        doc.reindex();
        return doc;
    }

private:
    Rng& rng_;
    std::vector<SynthEntity> entities_;
};

Words with_suffix(const std::string& head, const Words& suffixes, Rng& rng) { return {head, rng.pick(suffixes)}; }

}  // namespace

SynthResult synth_corpus(const SynthSpec& spec) {
    SynthResult out;
    out.signature = {"Inhibits", {"Drug", "Gene"}};
    Rng rng(spec.seed);
    const std::size_t width = std::to_string(spec.docs).size();

    for (std::size_t d = 0; d < spec.docs; ++d) {
        std::string num = std::to_string(d + 1);
        const std::string doc_id = "synth-" + std::string(width > num.size() ? width - num.size() : 0, '0') + num;
        DocBuilder b(rng);

        const std::size_t nd = 1 + rng.below(2), ng = 1 + rng.below(2);
        std::vector<int> drugs, genes;
        std::vector<std::string> used;
        auto fresh = [&](const Words& lexicon) {
            for (;;) {
                const std::string& w = rng.pick(lexicon);
                if (std::find(used.begin(), used.end(), w) == used.end()) {
                    used.push_back(w);
                    return w;
                }
            }
        };
        for (std::size_t i = 0; i < nd; ++i) drugs.push_back(b.add_entity("Drug", {fresh(kDrugs)}));
        for (std::size_t i = 0; i < ng; ++i) genes.push_back(b.add_entity("Gene", {fresh(kGenes)}));

        std::vector<std::pair<std::size_t, std::size_t>> planted;
        if (rng.chance(spec.positive_rate)) {
            planted.push_back({0, 0});
            if (nd == 2 && ng == 2 && rng.chance(0.3)) planted.push_back({1, 1});
        }

        // Ordered blocks of sentences; block order is shuffled, sentence order
        // inside a block is kept so that cue windows stay intact.
        std::vector<std::vector<Clause>> blocks;
        std::vector<bool> mentioned(nd + ng, false);
        for (auto [di, gi] : planted) {
            const int drug = drugs[di], gene = genes[gi];
            const std::size_t gap = spec.cue_window ? rng.below(spec.cue_window + 1) : 0;
            if (gap == 0) {
                blocks.push_back({b.pair_clause(drug, rng.pick(kCues), gene)});
            } else {
                std::vector<Clause> block{b.mention_clause(drug)};
                for (std::size_t g = 1; g < gap; ++g) block.push_back(b.filler_clause());
                Clause c;
                b.fillers(c, 0, 1);
                c.push_back({{"it"}, -1});
                c.push_back({rng.pick(kCues), -1});
                c.push_back({b.entity(gene).surface, gene});
                b.fillers(c, 0, 2);
                block.push_back(std::move(c));
                blocks.push_back(std::move(block));
            }
            mentioned[di] = mentioned[nd + gi] = true;
        }
        for (std::size_t di = 0; di < nd; ++di)
            for (std::size_t gi = 0; gi < ng; ++gi) {
                bool is_planted = false;
                for (auto p : planted) is_planted = is_planted || (p.first == di && p.second == gi);
                if (is_planted || !rng.chance(0.5)) continue;
                const bool drug_first = rng.chance(0.5);
                const int x = drug_first ? drugs[di] : genes[gi], y = drug_first ? genes[gi] : drugs[di];
                blocks.push_back({b.pair_clause(x, rng.pick(kNeutral), y)});
                mentioned[di] = mentioned[nd + gi] = true;
            }
        for (std::size_t i = 0; i < nd + ng; ++i)
            if (!mentioned[i]) blocks.push_back({b.mention_clause(i < nd ? drugs[i] : genes[i - nd])});

        std::vector<int> alias_entities;
        for (std::size_t i = 0; i < nd + ng; ++i) {
            if (!rng.chance(spec.alias_rate)) continue;
            const bool is_drug = i < nd;
            const int base = is_drug ? drugs[i] : genes[i - nd];
            const int alias = b.add_entity(b.entity(base).type,
                                           with_suffix(b.entity(base).surface.front(),
                                                       is_drug ? kDrugSuffixes : kGeneSuffixes, rng),
                                           base);
            alias_entities.push_back(alias);
            blocks.push_back({b.mention_clause(alias)});
        }
        if (rng.chance(spec.other_entity_rate)) {
            const int disease = b.add_entity("Disease", rng.pick(kDiseases));
            blocks.push_back({b.mention_clause(disease)});
        }
        for (std::size_t f = rng.below(2); f > 0; --f) blocks.push_back({b.filler_clause()});
        rng.shuffle(blocks);

        std::vector<Clause> sentences;
        for (auto& block : blocks)
            for (auto& c : block) sentences.push_back(std::move(c));
        Document doc = b.build(doc_id, sentences);

        // The alias rules must group exactly the intended pairs.
        const AliasPartition part = alias_closure(doc.entities, out.alias_rules);
        std::size_t expected_groups = doc.entities.size() - alias_entities.size();
        if (part.groups().size() != expected_groups)
            throw InvariantError("synth: unintended alias grouping in " + doc_id);
        for (int a : alias_entities) {
            const int base = b.entity(a).alias_of;
            if (!part.related(doc.entities[static_cast<std::size_t>(a)].entity_id,
                              doc.entities[static_cast<std::size_t>(base)].entity_id))
                throw InvariantError("synth: alias variant not grouped in " + doc_id);
        }

        out.candidate_groups += nd * ng;
        out.positive_groups += planted.size();
        for (auto [di, gi] : planted) {
            // Representative: the canonical entity or, when present, sometimes its variant.
            auto representative = [&](int base) {
                for (int a : alias_entities)
                    if (b.entity(a).alias_of == base && rng.chance(0.5)) return a;
                return base;
            };
            const int drug = representative(drugs[di]), gene = representative(genes[gi]);
            out.corpus.relations.push_back({doc_id,
                                            out.signature.relation_name,
                                            {doc.entities[static_cast<std::size_t>(drug)].entity_id,
                                             doc.entities[static_cast<std::size_t>(gene)].entity_id}});
        }
        out.corpus.documents.push_back(std::move(doc));
    }
    return out;
}

}  // namespace relex
