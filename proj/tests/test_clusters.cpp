#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "relex/clusters.hpp"
#include "relex/error.hpp"

using namespace relex;

namespace {

EmbeddingTable parse(const std::string& text) {
    std::istringstream in(text);
    return load_embeddings(in);
}

// Recomputes every complete-linkage distance from the member sets at each step.
std::vector<Merge> reference_merges(const EmbeddingTable& table, std::vector<std::string> words, double threshold) {
    std::sort(words.begin(), words.end());
    std::vector<std::set<std::string>> clusters;
    for (const auto& w : words) clusters.push_back({w});
    std::vector<Merge> merges;
    while (clusters.size() > 1) {
        double best = INFINITY;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < clusters.size(); ++i)
            for (std::size_t j = i + 1; j < clusters.size(); ++j) {
                double d = 0;
                for (const auto& a : clusters[i])
                    for (const auto& b : clusters[j]) d = std::max(d, cosine_distance(table.at(a), table.at(b)));
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        if (best > threshold) break;
        auto l = *clusters[bi].begin(), r = *clusters[bj].begin();
        if (r < l) std::swap(l, r);
        merges.push_back({l, r, best});
        clusters[bi].insert(clusters[bj].begin(), clusters[bj].end());
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
        std::sort(clusters.begin(), clusters.end(), [](auto& x, auto& y) { return *x.begin() < *y.begin(); });
    }
    return merges;
}

EmbeddingTable random_table(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
    std::normal_distribution<double> nd(0.0, 1.0);
    EmbeddingTable t;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> v(dim);
        for (auto& x : v) x = nd(rng);
        t.add("w" + std::to_string(i), v);
    }
    return t;
}

std::vector<std::string> words_of(std::size_t n) {
    std::vector<std::string> w;
    for (std::size_t i = 0; i < n; ++i) w.push_back("w" + std::to_string(i));
    return w;
}

}  // namespace

TEST_CASE("embedding loading") {
    const auto t = parse("a 1 0 0 0\nb 0 1 0 0\n\nc 0.5 0.5 0 1e-3\n");
    CHECK(t.size() == 3);
    CHECK(t.dimension() == 4);
    CHECK(t.at("c")[3] == 1e-3);
    CHECK(parse("").size() == 0);
    CHECK(cluster_words(parse(""), {}, 0.4).cluster_count == 0);
    auto line_of = [](const std::string& text) {
        try {
            parse(text);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(line_of("a 1 2 3\nb 1 2\n").find("line 2") != std::string::npos);
    CHECK(line_of("a 1 2\nb 1 x\n").find("line 2") != std::string::npos);
    CHECK(line_of("a 1 2\n\na 3 4\n").find("line 3") != std::string::npos);
}

TEST_CASE("semantic cluster from close vectors") {
    const auto t = parse(
        "radiotherapy 0.90 0.10 0.05\n"
        "chemotherapy 0.88 0.12 0.02\n"
        "adjuvant 0.85 0.15 0.10\n"
        "immunotherapy 0.92 0.05 0.08\n"
        "protein 0.05 0.90 0.30\n"
        "gene 0.02 0.95 0.25\n"
        "weather 0.10 0.00 -0.99\n");
    const auto a = cluster_words(t, {"radiotherapy", "chemotherapy", "adjuvant", "immunotherapy", "protein", "gene",
                                     "weather", "absent"},
                                 kDefaultClusterThreshold);
    const auto& m = a.word_to_cluster;
    CHECK(m.at("radiotherapy") == m.at("chemotherapy"));
    CHECK(m.at("radiotherapy") == m.at("adjuvant"));
    CHECK(m.at("radiotherapy") == m.at("immunotherapy"));
    CHECK(m.at("protein") == m.at("gene"));
    CHECK(m.at("protein") != m.at("radiotherapy"));
    CHECK(m.at("weather") != m.at("gene"));
    CHECK(a.cluster_count == 3);
    CHECK(a.skipped == std::vector<std::string>{"absent"});
    // Ids follow each cluster's smallest word: adjuvant < gene < weather.
    CHECK(m.at("adjuvant") == "c0");
    CHECK(m.at("gene") == "c1");
    CHECK(m.at("weather") == "c2");
    CHECK(clusters_from_json(clusters_to_json(m)) == m);
}

TEST_CASE("degenerate geometries") {
    const auto same = parse("a 1 2 3\nb 2 4 6\nc 0.5 1 1.5\nz 0 0 0\n");
    for (double th : {1e-9, 0.01, 0.4}) {
        const auto a = cluster_words(same, {"a", "b", "c", "z"}, th);
        CHECK(a.cluster_count == 1);
        CHECK(a.skipped == std::vector<std::string>{"z"});
    }
    const auto ortho = parse("a 1 0 0\nb 0 1 0\nc 0 0 1\n");
    CHECK(cluster_words(ortho, {"a", "b", "c"}, 0.5).cluster_count == 3);
    CHECK(cluster_words(ortho, {"a", "b", "c"}, 0.5).merges.empty());
}

TEST_CASE("matches the exhaustive reference on small inputs") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + rng() % 7;
        const auto table = random_table(rng, n, 2 + rng() % 3);
        const double th = 0.2 + 0.2 * static_cast<double>(rng() % 6);
        const auto got = cluster_words(table, words_of(n), th);
        const auto ref = reference_merges(table, words_of(n), th);
        REQUIRE(got.merges.size() == ref.size());
        for (std::size_t k = 0; k < ref.size(); ++k) {
            CHECK(got.merges[k].left == ref[k].left);
            CHECK(got.merges[k].right == ref[k].right);
            CHECK(got.merges[k].distance == doctest::Approx(ref[k].distance).epsilon(1e-12));
        }
        CHECK(got.cluster_count == n - ref.size());
        // Complete linkage at the cut: every cluster is tight.
        for (const auto& [a, ca] : got.word_to_cluster)
            for (const auto& [b, cb] : got.word_to_cluster)
                if (ca == cb) CHECK(cosine_distance(table.at(a), table.at(b)) <= th + 1e-12);
    }
}

TEST_CASE("input order does not matter") {
    std::mt19937_64 rng(29);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 5 + rng() % 30;
        const auto table = random_table(rng, n, 3);
        auto words = words_of(n);
        const auto base = cluster_words(table, words, 0.5);
        std::shuffle(words.begin(), words.end(), rng);
        words.push_back(words.front());  // duplicates are ignored
        const auto again = cluster_words(table, words, 0.5);
        CHECK(again.word_to_cluster == base.word_to_cluster);
        CHECK(again.merges.size() == base.merges.size());
    }
}
