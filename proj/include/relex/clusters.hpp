#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "relex/corpus.hpp"
#include "relex/seqrep.hpp"

namespace relex {

class EmbeddingTable {
public:
    std::size_t size() const noexcept { return vectors_.size(); }
    std::size_t dimension() const noexcept { return dim_; }
    bool contains(const std::string& word) const { return vectors_.count(word) > 0; }
    const std::vector<double>& at(const std::string& word) const;
    /// Throws InvalidArgument on dimension mismatch, duplicates or non-finite values.
    void add(const std::string& word, std::vector<double> vec);

private:
    std::size_t dim_ = 0;
    std::unordered_map<std::string, std::vector<double>> vectors_;
};

/// Text format: one "word v1 ... vd" entry per line. Blank lines are skipped.
/// Throws ParseError (with line number) on ragged rows, non-numeric fields
/// or duplicate words.
EmbeddingTable load_embeddings(std::istream& in);
EmbeddingTable load_embeddings(const std::string& path);

struct Merge {
    std::string left, right;  // smallest word of each merged cluster
    double distance = 0.0;
};

struct ClusterAssignment {
    ClusterMap word_to_cluster;
    std::size_t cluster_count = 0;
    std::vector<std::string> skipped;  // absent or zero-norm words
    std::vector<Merge> merges;         // in merge order
    std::size_t min_freq = 0;
    double threshold = 0.0;
};

inline constexpr std::size_t kDefaultMinFreq = 5;
inline constexpr double kDefaultClusterThreshold = 0.4;

/// 1 - cosine similarity.
double cosine_distance(const std::vector<double>& a, const std::vector<double>& b);

/// Complete-linkage agglomerative clustering under cosine distance. Merging
/// stops once the closest pair of clusters is farther than `threshold`. The
/// vocabulary is sorted first and ties go to the lexicographically smallest
/// pair, so the result does not depend on input order. Cluster ids c0, c1, ...
/// follow the order of each cluster's smallest word; singletons get ids too.
ClusterAssignment cluster_words(const EmbeddingTable& table, std::vector<std::string> vocabulary,
                                double threshold);

/// Lowercased word-like token counts over all documents.
std::map<std::string, std::size_t> word_frequencies(const Corpus& corpus);
std::vector<std::string> frequent_words(const Corpus& corpus, std::size_t min_freq);

nlohmann::json clusters_to_json(const ClusterMap& clusters);
ClusterMap clusters_from_json(const nlohmann::json& j);
ClusterMap load_clusters(const std::string& path);

}  // namespace relex
