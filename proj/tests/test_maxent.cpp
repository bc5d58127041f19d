#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "relex/error.hpp"
#include "relex/maxent.hpp"

using namespace relex;

namespace {

struct Dataset {
    std::vector<FeatureVector> x;
    std::vector<Label> y;
    std::vector<double> w;
};

Dataset random_dataset(std::mt19937_64& rng, std::size_t n, std::size_t features) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Dataset d;
    for (std::size_t i = 0; i < n; ++i) {
        FeatureVector fv;
        for (std::size_t f = 0; f < features; ++f)
            if (u(rng) < 0.4) fv["f" + std::to_string(f)] = f % 3 == 0 ? 1.0 : u(rng) * 2 - 1;
        d.x.push_back(fv);
        d.y.push_back(i % 2 ? Label::Positive : Label::Negative);
        d.w.push_back(0.5 + u(rng));
    }
    return d;
}

std::unordered_map<std::string, std::size_t> dictionary_of(const std::vector<FeatureVector>& x) {
    std::unordered_map<std::string, std::size_t> dict{{kBiasFeature, 0}};
    for (const auto& fv : x)
        for (const auto& [name, v] : fv) dict.emplace(name, dict.size());
    return dict;
}

// Plain gradient descent on the same objective, computed independently.
std::vector<double> gd_reference(const std::vector<SparseRow>& rows, const std::vector<Label>& y,
                                 const std::vector<double>& inst, double l2, std::size_t dim) {
    std::vector<double> w(dim, 0.0);
    for (int it = 0; it < 200000; ++it) {
        std::vector<double> g(dim, 0.0);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            double z = 0;
            for (auto [f, v] : rows[i]) z += w[f] * v;
            const double p = 1.0 / (1.0 + std::exp(-z));
            const double r = inst[i] * (p - (y[i] == Label::Positive ? 1.0 : 0.0));
            for (auto [f, v] : rows[i]) g[f] += r * v;
        }
        double gmax = 0;
        for (std::size_t f = 0; f < dim; ++f) {
            g[f] += l2 * w[f];
            gmax = std::max(gmax, std::abs(g[f]));
        }
        if (gmax < 1e-9) break;
        for (std::size_t f = 0; f < dim; ++f) w[f] -= 0.05 * g[f];
    }
    return w;
}

double norm(const std::vector<double>& w) {
    double s = 0;
    for (double v : w) s += v * v;
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("analytic gradient matches central differences") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> nd(0.0, 1.0);
    double worst = 0.0;
    for (int set = 0; set < 100; ++set) {
        const auto d = random_dataset(rng, 5 + rng() % 20, 2 + rng() % 6);
        const auto dict = dictionary_of(d.x);
        const auto rows = to_sparse(d.x, dict);
        std::vector<double> w(dict.size());
        for (auto& v : w) v = nd(rng);
        const double l2 = set % 2 ? 1.0 : 0.1;
        std::vector<double> g;
        maxent_objective(rows, d.y, d.w, l2, w, &g);
        REQUIRE(g.size() == w.size());
        for (std::size_t k = 0; k < w.size(); ++k) {
            const double h = 1e-5;
            auto wp = w, wm = w;
            wp[k] += h;
            wm[k] -= h;
            const double fd = (maxent_objective(rows, d.y, d.w, l2, wp, nullptr) -
                               maxent_objective(rows, d.y, d.w, l2, wm, nullptr)) /
                              (2 * h);
            const double rel = std::abs(fd - g[k]) / std::max(1.0, std::abs(g[k]));
            worst = std::max(worst, rel);
        }
    }
    CHECK(worst < 1e-5);
}

TEST_CASE("objective is convex along random segments") {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> nd(0.0, 2.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto d = random_dataset(rng, 30, 6);
    const auto dict = dictionary_of(d.x);
    const auto rows = to_sparse(d.x, dict);
    std::size_t violations = 0;
    for (int t = 0; t < 1000; ++t) {
        std::vector<double> a(dict.size()), b(dict.size()), m(dict.size());
        for (auto& v : a) v = nd(rng);
        for (auto& v : b) v = nd(rng);
        const double s = u(rng);
        for (std::size_t k = 0; k < m.size(); ++k) m[k] = s * a[k] + (1 - s) * b[k];
        const double fa = maxent_objective(rows, d.y, d.w, 0.5, a, nullptr);
        const double fb = maxent_objective(rows, d.y, d.w, 0.5, b, nullptr);
        const double fm = maxent_objective(rows, d.y, d.w, 0.5, m, nullptr);
        if (fm > s * fa + (1 - s) * fb + 1e-9 * (1 + std::abs(fa) + std::abs(fb))) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("correlated feature and the gradient-descent reference") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Dataset d;
    for (int i = 0; i < 40; ++i) {
        FeatureVector fv;
        const bool pos = i % 2 == 0;
        if (pos) fv["cue"] = 1.0;
        if (u(rng) < 0.5) fv["noise1"] = 1.0;
        if (u(rng) < 0.5) fv["noise2"] = 1.0;
        d.x.push_back(fv);
        d.y.push_back(pos ? Label::Positive : Label::Negative);
        d.w.push_back(1.0);
    }
    MaxEntParams p;
    p.l2 = 0.1;
    const auto model = train_maxent(d.x, d.y, d.w, p);
    CHECK(model.converged);
    const double cue = model.weights.at(model.dictionary.at("cue"));
    CHECK(cue > 0.0);
    for (const auto& [name, idx] : model.dictionary)
        if (name != "cue") CHECK(std::abs(model.weights[idx]) < cue);
    for (std::size_t i = 0; i < d.x.size(); ++i) CHECK(predict_maxent(model, d.x[i]).label == d.y[i]);

    // Reference solution in the model's own feature order.
    const auto rows = to_sparse(d.x, model.dictionary);
    const auto ref = gd_reference(rows, d.y, d.w, p.l2, model.dictionary.size());
    for (std::size_t k = 0; k < ref.size(); ++k) CHECK(model.weights[k] == doctest::Approx(ref[k]).epsilon(1e-4));
    for (std::size_t i = 0; i < d.x.size(); ++i) {
        double z = 0;
        for (auto [f, v] : rows[i]) z += ref[f] * v;
        CHECK(predict_maxent(model, d.x[i]).probability == doctest::Approx(1 / (1 + std::exp(-z))).epsilon(1e-4));
    }
}

TEST_CASE("stronger regularization shrinks the weights") {
    std::mt19937_64 rng(14);
    for (int set = 0; set < 10; ++set) {
        const auto d = random_dataset(rng, 30, 5);
        double prev = INFINITY;
        for (double l2 : {0.1, 1.0, 10.0}) {
            MaxEntParams p;
            p.l2 = l2;
            const auto m = train_maxent(d.x, d.y, d.w, p);
            CHECK(m.converged);
            const double n = norm(m.weights);
            CHECK(n <= prev);
            prev = n;
            for (double v : m.weights) CHECK(std::isfinite(v));
            // Dense dictionary with the bias first.
            CHECK(m.dictionary.at(kBiasFeature) == 0);
            for (const auto& [name, idx] : m.dictionary) CHECK(idx < m.weights.size());
        }
    }
}

TEST_CASE("maxent prediction conventions and errors") {
    MaxEntModel zero;
    zero.dictionary = {{kBiasFeature, 0}, {"a", 1}};
    zero.weights = {0.0, 0.0};
    CHECK(predict_maxent(zero, {{"a", 1.0}}).probability == 0.5);
    CHECK(predict_maxent(zero, {{"a", 1.0}}).label == Label::Positive);
    MaxEntModel biased = zero;
    biased.weights = {-1.0, 3.0};
    CHECK(predict_maxent(biased, {}).probability == doctest::Approx(1 / (1 + std::exp(1.0))));
    CHECK(predict_maxent(biased, {{"unseen", 5.0}}).probability == doctest::Approx(1 / (1 + std::exp(1.0))));
    CHECK(predict_maxent(biased, {}).label == Label::Negative);

    const std::vector<FeatureVector> x = {{{"a", 1.0}}, {{"b", 1.0}}};
    CHECK_THROWS_AS(train_maxent(x, {Label::Positive, Label::Positive}, {1, 1}, MaxEntParams{}), InvalidArgument);
    CHECK_THROWS_AS(train_maxent({}, {}, {}, MaxEntParams{}), InvalidArgument);
    CHECK_THROWS_AS(train_maxent(x, {Label::Positive}, {1, 1}, MaxEntParams{}), InvalidArgument);
    // Deterministic from the zero start.
    const std::vector<Label> y = {Label::Positive, Label::Negative};
    CHECK(train_maxent(x, y, {1, 1}, MaxEntParams{}).weights == train_maxent(x, y, {1, 1}, MaxEntParams{}).weights);
}
