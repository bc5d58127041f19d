#include "relex/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "relex/error.hpp"

namespace relex {

std::vector<double> class_balance_weights(const std::vector<Label>& labels) {
    const auto pos = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), Label::Positive));
    const std::size_t neg = labels.size() - pos;
    if (pos == 0 || neg == 0) throw InvalidArgument("class_balance_weights: both classes must be present");
    const double wpos = static_cast<double>(neg) / static_cast<double>(pos);
    std::vector<double> w(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) w[i] = labels[i] == Label::Positive ? wpos : 1.0;
    return w;
}

namespace {

constexpr double kTau = 1e-12;

void check_problem(const Matrix& gram, const std::vector<Label>& labels, const std::vector<double>& weights) {
    const std::size_t n = gram.size();
    if (labels.size() != n || weights.size() != n)
        throw InvalidArgument("train_svm: labels/weights size does not match the Gram matrix");
    if (n == 0) throw InvalidArgument("train_svm: empty training set");
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (gram(i, j) != gram(j, i)) throw InvalidArgument("train_svm: Gram matrix is not symmetric");
            nonzero = nonzero || gram(i, j) != 0.0;
        }
    if (!nonzero) throw InvalidArgument("train_svm: degenerate Gram matrix (all zeros)");
    for (double w : weights)
        if (!(w > 0.0) || !std::isfinite(w)) throw InvalidArgument("train_svm: instance weights must be positive");
}

bool in_up(int y, double a, double c) { return (y > 0 && a < c) || (y < 0 && a > 0); }
bool in_low(int y, double a, double c) { return (y > 0 && a > 0) || (y < 0 && a < c); }

}  // namespace

double svm_dual_objective(const Matrix& gram, const std::vector<Label>& labels, const std::vector<double>& alpha) {
    double lin = 0.0, quad = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        lin += alpha[i];
        if (alpha[i] == 0.0) continue;
        for (std::size_t j = 0; j < alpha.size(); ++j)
            quad += alpha[i] * alpha[j] * sign(labels[i]) * sign(labels[j]) * gram(i, j);
    }
    return lin - 0.5 * quad;
}

double svm_kkt_violation(const Matrix& gram, const std::vector<Label>& labels, const std::vector<double>& weights,
                         double C, const std::vector<double>& alpha) {
    const std::size_t n = alpha.size();
    double m = -std::numeric_limits<double>::infinity(), M = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
        double g = -1.0;
        for (std::size_t k = 0; k < n; ++k) g += sign(labels[t]) * sign(labels[k]) * gram(t, k) * alpha[k];
        const int y = sign(labels[t]);
        const double v = -y * g, c = C * weights[t];
        if (in_up(y, alpha[t], c)) m = std::max(m, v);
        if (in_low(y, alpha[t], c)) M = std::min(M, v);
    }
    if (!std::isfinite(m) || !std::isfinite(M)) return 0.0;
    return std::max(0.0, m - M);
}

SvmSolution train_svm(const Matrix& gram, const std::vector<Label>& labels, const std::vector<double>& weights,
                      const SvmParams& params) {
    check_problem(gram, labels, weights);
    const std::size_t n = gram.size();
    std::vector<int> y(n);
    std::vector<double> box(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = sign(labels[i]);
        box[i] = params.C * weights[i];
    }
    auto Q = [&](std::size_t i, std::size_t j) { return y[i] * y[j] * gram(i, j); };

    SvmSolution sol;
    sol.alpha.assign(n, 0.0);
    auto& alpha = sol.alpha;
    std::vector<double> G(n, -1.0);  // gradient of ½αᵀQα - eᵀα
    auto objective = [&] {
        double f = 0.0;
        for (std::size_t i = 0; i < n; ++i) f += alpha[i] * (G[i] - 1.0);
        return -0.5 * f;
    };

    while (true) {
        std::size_t i = n, j = n;
        double gmax = -std::numeric_limits<double>::infinity(), gmin = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < n; ++t) {
            const double v = -y[t] * G[t];
            if (in_up(y[t], alpha[t], box[t]) && v > gmax) {
                gmax = v;
                i = t;
            }
            if (in_low(y[t], alpha[t], box[t]) && v < gmin) {
                gmin = v;
                j = t;
            }
        }
        sol.max_violation = (i == n || j == n) ? 0.0 : gmax - gmin;
        if (sol.max_violation < params.tolerance) {
            sol.converged = true;
            break;
        }
        if (sol.iterations >= params.max_iterations) break;
        ++sol.iterations;

        const double Ci = box[i], Cj = box[j];
        const double old_i = alpha[i], old_j = alpha[j];
        if (y[i] != y[j]) {
            double quad = Q(i, i) + Q(j, j) + 2.0 * Q(i, j);
            if (quad <= 0) quad = kTau;
            const double delta = (-G[i] - G[j]) / quad;
            const double diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if (diff > 0) {
                if (alpha[j] < 0) {
                    alpha[j] = 0;
                    alpha[i] = diff;
                }
            } else if (alpha[i] < 0) {
                alpha[i] = 0;
                alpha[j] = -diff;
            }
            if (diff > Ci - Cj) {
                if (alpha[i] > Ci) {
                    alpha[i] = Ci;
                    alpha[j] = Ci - diff;
                }
            } else if (alpha[j] > Cj) {
                alpha[j] = Cj;
                alpha[i] = Cj + diff;
            }
        } else {
            double quad = Q(i, i) + Q(j, j) - 2.0 * Q(i, j);
            if (quad <= 0) quad = kTau;
            const double delta = (G[i] - G[j]) / quad;
            const double sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if (sum > Ci) {
                if (alpha[i] > Ci) {
                    alpha[i] = Ci;
                    alpha[j] = sum - Ci;
                }
            } else if (alpha[j] < 0) {
                alpha[j] = 0;
                alpha[i] = sum;
            }
            if (sum > Cj) {
                if (alpha[j] > Cj) {
                    alpha[j] = Cj;
                    alpha[i] = sum - Cj;
                }
            } else if (alpha[i] < 0) {
                alpha[i] = 0;
                alpha[j] = sum;
            }
        }
        const double di = alpha[i] - old_i, dj = alpha[j] - old_j;
        for (std::size_t k = 0; k < n; ++k) G[k] += Q(i, k) * di + Q(j, k) * dj;
        if (params.record_objective) sol.objective_trace.push_back(objective());
    }

    // Bias from free vectors, or the midpoint of the feasible interval.
    double ub = std::numeric_limits<double>::infinity(), lb = -std::numeric_limits<double>::infinity();
    double free_sum = 0.0;
    std::size_t free_count = 0;
    for (std::size_t t = 0; t < n; ++t) {
        const double yg = y[t] * G[t];
        if (alpha[t] >= box[t]) {
            if (y[t] < 0) ub = std::min(ub, yg);
            else lb = std::max(lb, yg);
        } else if (alpha[t] <= 0) {
            if (y[t] > 0) ub = std::min(ub, yg);
            else lb = std::max(lb, yg);
        } else {
            ++free_count;
            free_sum += yg;
        }
    }
    double rho;
    if (free_count > 0) rho = free_sum / static_cast<double>(free_count);
    else if (std::isfinite(ub) && std::isfinite(lb)) rho = 0.5 * (ub + lb);
    else rho = std::isfinite(ub) ? ub : (std::isfinite(lb) ? lb : 0.0);
    sol.bias = -rho;
    sol.dual_objective = objective();
    return sol;
}

SvmModel make_svm_model(const SvmSolution& solution, const std::vector<Label>& labels,
                        const std::vector<SequenceRepresentation>& training, const KernelParams& kernel,
                        double C) {
    if (solution.alpha.size() != training.size() || labels.size() != training.size())
        throw InvalidArgument("make_svm_model: solution does not match the training set");
    SvmModel m;
    m.kernel = kernel;
    m.C = C;
    m.bias = solution.bias;
    m.converged = solution.converged;
    m.arity = training.empty() ? 0 : training.front().arity;
    for (std::size_t i = 0; i < training.size(); ++i) {
        if (solution.alpha[i] <= 0.0) continue;
        m.support_indices.push_back(i);
        m.coefficients.push_back(solution.alpha[i] * sign(labels[i]));
        m.supports.push_back(training[i]);
    }
    return m;
}

SvmPredictor::SvmPredictor(const SvmModel& model) : model_(model), supports_(model.supports, model.kernel) {}

Prediction SvmPredictor::predict(const SequenceRepresentation& seq) const {
    if (seq.arity != model_.arity)
        throw InvalidArgument("predict_svm: sequence arity " + std::to_string(seq.arity) + " does not match model arity " +
                              std::to_string(model_.arity));
    const auto row = supports_.kernel_row(seq);
    double score = model_.bias;
    for (std::size_t i = 0; i < row.size(); ++i) score += model_.coefficients[i] * row[i];
    return {score, score > 0.0 ? Label::Positive : Label::Negative};
}

Prediction predict_svm(const SvmModel& model, const SequenceRepresentation& seq) {
    return SvmPredictor(model).predict(seq);
}

}  // namespace relex
