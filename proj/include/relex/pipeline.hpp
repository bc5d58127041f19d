#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "relex/alias.hpp"
#include "relex/candidates.hpp"
#include "relex/config.hpp"
#include "relex/corpus.hpp"
#include "relex/features.hpp"
#include "relex/maxent.hpp"
#include "relex/seqrep.hpp"
#include "relex/stopwords.hpp"
#include "relex/svm.hpp"

namespace relex {

/// Everything that turns a document into candidate sequences.
struct Preprocessing {
    RelationSignature signature;
    std::size_t max_minimal_span = kDefaultMaxMinimalSpan;
    AliasRuleSet alias_rules = AliasRuleSet::General;
    StopwordSet stopwords;
    ClusterMap clusters;
};

/// Reads the stopword and cluster files named by the config (built-in
/// stopwords and no clusters when unset).
Preprocessing make_preprocessing(const PipelineConfig& cfg);

struct Instance {
    Candidate candidate;  // label from the corpus annotations
    SentenceSpan span;
    std::size_t minimal_span = 0;
    SequenceRepresentation seq;
};

struct PreparedCorpus {
    std::unordered_map<std::string, AliasPartition> aliases;
    std::vector<Instance> instances;  // retained candidates, document order
    std::size_t generated = 0;
    std::size_t removed = 0;
    std::size_t removed_positives = 0;
};

/// Aliases, candidate generation, span filtering, labeling and sequence
/// building for every document. Documents are processed on `threads` workers.
PreparedCorpus prepare_corpus(const Corpus& corpus, const Preprocessing& pre, unsigned threads = 1);

std::vector<Label> labels_of(const std::vector<Instance>& instances);
std::vector<FeatureVector> features_of(const std::vector<Instance>& instances, const Corpus& corpus,
                                       const PreparedCorpus& prepared, const RelationSignature& signature);

struct TrainedModel {
    std::string classifier;  // svm | maxent
    Preprocessing pre;
    SvmModel svm;
    MaxEntModel maxent;
    std::size_t training_instances = 0;
    std::size_t training_positives = 0;
    std::size_t iterations = 0;
    bool converged = true;
};

/// Throws InvalidArgument when the training data lacks one of the classes.
TrainedModel train_model(const Corpus& corpus, const PipelineConfig& cfg, Preprocessing pre);

struct ScoredInstance {
    Candidate candidate;  // label = prediction
    double score = 0.0;   // SVM decision value or MaxEnt probability
};

std::vector<ScoredInstance> predict_model(const TrainedModel& model, const Corpus& corpus, unsigned threads = 1);

/// Round-robin document folds: fold i of k holds documents at positions
/// p with p mod k == i. `complement` selects all other documents.
Corpus select_fold(const Corpus& corpus, std::size_t fold, std::size_t folds, bool complement);
/// Parses "I/K" with I < K.
std::pair<std::size_t, std::size_t> parse_fold(const std::string& spec);

}  // namespace relex
