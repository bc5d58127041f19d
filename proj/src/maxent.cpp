#include "relex/maxent.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "relex/error.hpp"

namespace relex {

namespace {

// log(1 + e^z) without overflow.
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double dot(const SparseRow& row, const std::vector<double>& w) {
    double s = 0.0;
    for (const auto& [k, v] : row) s += w[k] * v;
    return s;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

std::vector<SparseRow> to_sparse(const std::vector<FeatureVector>& data,
                                 const std::unordered_map<std::string, std::size_t>& dictionary) {
    std::vector<SparseRow> rows;
    rows.reserve(data.size());
    const auto bias = dictionary.find(kBiasFeature);
    for (const auto& fv : data) {
        SparseRow row;
        if (bias != dictionary.end()) row.emplace_back(bias->second, 1.0);
        for (const auto& [name, value] : fv) {
            auto it = dictionary.find(name);
            if (it != dictionary.end() && it->second != (bias == dictionary.end() ? SIZE_MAX : bias->second))
                row.emplace_back(it->second, value);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

double maxent_objective(const std::vector<SparseRow>& rows, const std::vector<Label>& labels,
                        const std::vector<double>& weights, double l2, const std::vector<double>& w,
                        std::vector<double>* gradient) {
    double loss = 0.0;
    if (gradient) gradient->assign(w.size(), 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double z = dot(rows[i], w);
        const double y = labels[i] == Label::Positive ? 1.0 : 0.0;
        loss += weights[i] * (softplus(z) - y * z);
        if (gradient) {
            const double r = weights[i] * (sigmoid(z) - y);
            for (const auto& [k, v] : rows[i]) (*gradient)[k] += r * v;
        }
    }
    loss += 0.5 * l2 * dot(w, w);
    if (gradient)
        for (std::size_t k = 0; k < w.size(); ++k) (*gradient)[k] += l2 * w[k];
    return loss;
}

MaxEntModel train_maxent(const std::vector<FeatureVector>& data, const std::vector<Label>& labels,
                         const std::vector<double>& weights, const MaxEntParams& params) {
    if (data.empty()) throw InvalidArgument("train_maxent: empty training set");
    if (labels.size() != data.size() || weights.size() != data.size())
        throw InvalidArgument("train_maxent: labels/weights size mismatch");
    const auto pos = std::count(labels.begin(), labels.end(), Label::Positive);
    if (pos == 0 || pos == static_cast<std::ptrdiff_t>(labels.size()))
        throw InvalidArgument("train_maxent: both classes must be present");
    if (params.l2 < 0) throw InvalidArgument("train_maxent: l2 must be non-negative");

    MaxEntModel model;
    model.l2 = params.l2;
    std::vector<std::string> names;
    for (const auto& fv : data)
        for (const auto& [name, value] : fv) names.push_back(name);
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    names.erase(std::remove(names.begin(), names.end(), kBiasFeature), names.end());
    model.dictionary.emplace(kBiasFeature, 0);
    for (const auto& name : names) model.dictionary.emplace(name, model.dictionary.size());

    const auto rows = to_sparse(data, model.dictionary);
    const std::size_t F = model.dictionary.size();
    std::vector<double> w(F, 0.0), g, w_new(F), g_new;
    double f = maxent_objective(rows, labels, weights, params.l2, w, &g);

    std::deque<std::vector<double>> S, Y;
    std::deque<double> rho;
    std::vector<double> dir(F), alpha_hist;
    while (inf_norm(g) >= params.tolerance && model.iterations < params.max_iterations) {
        ++model.iterations;
        // Two-loop recursion.
        dir = g;
        alpha_hist.assign(S.size(), 0.0);
        for (std::size_t k = S.size(); k-- > 0;) {
            alpha_hist[k] = rho[k] * dot(S[k], dir);
            for (std::size_t d = 0; d < F; ++d) dir[d] -= alpha_hist[k] * Y[k][d];
        }
        if (!S.empty()) {
            const double gamma = dot(S.back(), Y.back()) / dot(Y.back(), Y.back());
            for (double& d : dir) d *= gamma;
        }
        for (std::size_t k = 0; k < S.size(); ++k) {
            const double beta = rho[k] * dot(Y[k], dir);
            for (std::size_t d = 0; d < F; ++d) dir[d] += S[k][d] * (alpha_hist[k] - beta);
        }
        for (double& d : dir) d = -d;
        double slope = dot(g, dir);
        if (slope >= 0) {  // not a descent direction: restart from steepest descent
            S.clear();
            Y.clear();
            rho.clear();
            for (std::size_t d = 0; d < F; ++d) dir[d] = -g[d];
            slope = dot(g, dir);
        }

        double step = S.empty() ? 1.0 / std::max(1.0, inf_norm(g)) : 1.0;
        double f_new = 0.0;
        bool accepted = false;
        for (int tries = 0; tries < 60; ++tries) {
            for (std::size_t d = 0; d < F; ++d) w_new[d] = w[d] + step * dir[d];
            f_new = maxent_objective(rows, labels, weights, params.l2, w_new, &g_new);
            if (f_new <= f + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;

        std::vector<double> s(F), y(F);
        for (std::size_t d = 0; d < F; ++d) {
            s[d] = w_new[d] - w[d];
            y[d] = g_new[d] - g[d];
        }
        const double sy = dot(s, y);
        if (sy > 1e-12) {
            S.push_back(std::move(s));
            Y.push_back(std::move(y));
            rho.push_back(1.0 / sy);
            if (S.size() > params.history) {
                S.pop_front();
                Y.pop_front();
                rho.pop_front();
            }
        }
        w.swap(w_new);
        g.swap(g_new);
        f = f_new;
    }
    model.converged = inf_norm(g) < params.tolerance;
    model.weights = std::move(w);
    return model;
}

ProbabilityPrediction predict_maxent(const MaxEntModel& model, const FeatureVector& fv) {
    const auto rows = to_sparse({fv}, model.dictionary);
    const double p = sigmoid(dot(rows.front(), model.weights));
    return {p, p >= 0.5 ? Label::Positive : Label::Negative};
}

}  // namespace relex
