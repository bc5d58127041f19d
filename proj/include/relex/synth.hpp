#pragma once

#include <cstddef>
#include <cstdint>

#include "relex/alias.hpp"
#include "relex/corpus.hpp"

namespace relex {

/// Planted-pattern generator. Each document mentions one or two drugs and
/// one or two genes; in positive documents a drug and a gene share a
/// sentence around a cue verb ("inhibits", "blocks", ...). Other drug-gene
/// pairs co-occur through neutral phrasing or not at all. Entities may get a
/// second entity whose surface extends the first ("EGFR protein"), which the
/// biomedical-prefix rules group with it.
struct SynthSpec {
    std::size_t docs = 200;
    std::uint64_t seed = 7;
    double positive_rate = 0.75;      // share of documents with a planted pair
    std::size_t cue_window = 0;       // up to this many sentences between drug and cue clause
    double alias_rate = 0.5;          // per argument entity
    double other_entity_rate = 0.3;   // per document, an out-of-signature Disease mention
};

struct SynthResult {
    Corpus corpus;
    RelationSignature signature;  // Inhibits(Drug, Gene)
    AliasRuleSet alias_rules = AliasRuleSet::BiomedicalPrefix;
    std::size_t candidate_groups = 0;
    std::size_t positive_groups = 0;
};

/// Deterministic for a given spec. Gold annotations hold one representative
/// tuple per positive group.
SynthResult synth_corpus(const SynthSpec& spec);

}  // namespace relex
