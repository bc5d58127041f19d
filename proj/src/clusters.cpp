#include "relex/clusters.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "relex/error.hpp"
#include "relex/stopwords.hpp"

namespace relex {

const std::vector<double>& EmbeddingTable::at(const std::string& word) const {
    auto it = vectors_.find(word);
    if (it == vectors_.end()) throw InvalidArgument("no embedding for '" + word + "'");
    return it->second;
}

void EmbeddingTable::add(const std::string& word, std::vector<double> vec) {
    if (vec.empty()) throw InvalidArgument("empty vector for '" + word + "'");
    if (!vectors_.empty() && vec.size() != dim_)
        throw InvalidArgument("expected " + std::to_string(dim_) + " values for '" + word + "', got " +
                              std::to_string(vec.size()));
    if (vectors_.count(word)) throw InvalidArgument("duplicate word '" + word + "'");
    for (double v : vec)
        if (!std::isfinite(v)) throw InvalidArgument("non-finite value for '" + word + "'");
    dim_ = vec.size();
    vectors_.emplace(word, std::move(vec));
}

EmbeddingTable load_embeddings(std::istream& in) {
    EmbeddingTable table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string word, field;
        if (!(ss >> word)) continue;
        std::vector<double> vec;
        while (ss >> field) {
            double v = 0;
            auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
            if (ec != std::errc() || p != field.data() + field.size())
                throw ParseError("non-numeric field '" + field + "'", lineno);
            vec.push_back(v);
        }
        try {
            table.add(word, std::move(vec));
        } catch (const InvalidArgument& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    return table;
}

EmbeddingTable load_embeddings(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open embeddings file: " + path);
    return load_embeddings(in);
}

double cosine_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    return 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
}

ClusterAssignment cluster_words(const EmbeddingTable& table, std::vector<std::string> vocabulary, double threshold) {
    ClusterAssignment out;
    out.threshold = threshold;
    std::sort(vocabulary.begin(), vocabulary.end());
    vocabulary.erase(std::unique(vocabulary.begin(), vocabulary.end()), vocabulary.end());

    std::vector<std::string> words;
    for (const auto& w : vocabulary) {
        if (!table.contains(w)) {
            out.skipped.push_back(w);
            continue;
        }
        double norm = 0;
        for (double v : table.at(w)) norm += v * v;
        if (norm == 0.0) {
            out.skipped.push_back(w);
            continue;
        }
        words.push_back(w);
    }

    const std::size_t n = words.size();
    // Cluster k is identified by its smallest member index; dist is kept for
    // live representatives only and updated with the complete-linkage rule.
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            dist[i][j] = dist[j][i] = cosine_distance(table.at(words[i]), table.at(words[j]));
    std::vector<std::size_t> owner(n);
    std::vector<bool> live(n, true);
    for (std::size_t i = 0; i < n; ++i) owner[i] = i;

    for (;;) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = n, bj = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (!live[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j)
                if (live[j] && dist[i][j] < best) {
                    best = dist[i][j];
                    bi = i;
                    bj = j;
                }
        }
        if (bi == n || best > threshold) break;
        out.merges.push_back({words[bi], words[bj], best});
        live[bj] = false;
        for (std::size_t k = 0; k < n; ++k) {
            if (owner[k] == bj) owner[k] = bi;
            if (live[k] && k != bi) dist[bi][k] = dist[k][bi] = std::max(dist[bi][k], dist[bj][k]);
        }
    }

    std::vector<std::size_t> id(n, n);
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (id[owner[i]] == n) id[owner[i]] = next++;
        out.word_to_cluster[words[i]] = "c" + std::to_string(id[owner[i]]);
    }
    out.cluster_count = next;
    return out;
}

std::map<std::string, std::size_t> word_frequencies(const Corpus& corpus) {
    std::map<std::string, std::size_t> freq;
    for (const auto& doc : corpus.documents)
        for (const auto& tok : doc.tokens)
            if (is_word_like(tok.text)) ++freq[to_lower(tok.text)];
    return freq;
}

std::vector<std::string> frequent_words(const Corpus& corpus, std::size_t min_freq) {
    std::vector<std::string> out;
    for (const auto& [w, c] : word_frequencies(corpus))
        if (c >= min_freq) out.push_back(w);
    return out;
}

nlohmann::json clusters_to_json(const ClusterMap& clusters) {
    std::map<std::string, std::string> ordered(clusters.begin(), clusters.end());
    return nlohmann::json(ordered);
}

ClusterMap clusters_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidArgument("cluster file must be a JSON object mapping word to cluster id");
    ClusterMap out;
    for (const auto& [word, id] : j.items()) {
        if (!id.is_string()) throw InvalidArgument("cluster id of '" + word + "' is not a string");
        out[word] = id.get<std::string>();
    }
    return out;
}

ClusterMap load_clusters(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open cluster file: " + path);
    try {
        return clusters_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw Error("malformed cluster file " + path + ": " + e.what());
    }
}

}  // namespace relex
