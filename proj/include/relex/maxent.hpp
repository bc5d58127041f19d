#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "relex/candidates.hpp"
#include "relex/features.hpp"

namespace relex {

inline constexpr const char* kBiasFeature = "<bias>";

struct MaxEntParams {
    double l2 = 1.0;
    double tolerance = 1e-5;  // on the gradient ∞-norm
    std::size_t max_iterations = 1000;
    std::size_t history = 10;  // L-BFGS memory
};

/// Binary logistic model over named sparse features. The bias is the
/// always-on feature kBiasFeature at index 0.
struct MaxEntModel {
    std::unordered_map<std::string, std::size_t> dictionary;  // dense 0..F-1
    std::vector<double> weights;
    double l2 = 1.0;
    bool converged = false;
    std::size_t iterations = 0;
};

using SparseRow = std::vector<std::pair<std::size_t, double>>;

/// Rows include the bias column; features absent from the dictionary are dropped.
std::vector<SparseRow> to_sparse(const std::vector<FeatureVector>& data,
                                 const std::unordered_map<std::string, std::size_t>& dictionary);

/// Weighted negative log-likelihood plus (l2/2)‖w‖², and its gradient.
double maxent_objective(const std::vector<SparseRow>& rows, const std::vector<Label>& labels,
                        const std::vector<double>& weights, double l2, const std::vector<double>& w,
                        std::vector<double>* gradient);

/// L-BFGS from w = 0 with Armijo backtracking. Throws InvalidArgument on
/// empty input, size mismatch or a single class.
MaxEntModel train_maxent(const std::vector<FeatureVector>& data, const std::vector<Label>& labels,
                         const std::vector<double>& weights, const MaxEntParams& params);

struct ProbabilityPrediction {
    double probability = 0.5;
    Label label = Label::Positive;
};

/// σ(w·x); positive iff probability >= 0.5. Unseen features are ignored.
ProbabilityPrediction predict_maxent(const MaxEntModel& model, const FeatureVector& fv);

}  // namespace relex
