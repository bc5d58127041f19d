#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "relex/candidates.hpp"
#include "relex/gram.hpp"
#include "relex/kernel.hpp"
#include "relex/seqrep.hpp"

namespace relex {

/// Weight 1 for negatives and #neg/#pos for positives, so that both classes
/// carry the same total weight. Throws InvalidArgument unless both classes occur.
std::vector<double> class_balance_weights(const std::vector<Label>& labels);

struct SvmParams {
    double C = 1.0;
    double tolerance = 1e-3;              // stop when the maximal KKT violation drops below
    std::size_t max_iterations = 100000;
    bool record_objective = false;        // keep the dual objective after every update
};

/// Dual solution of the weighted soft-margin problem
///   max Σα - ½ ΣΣ α_i α_j y_i y_j K_ij,  0 <= α_i <= C·w_i,  Σ α_i y_i = 0.
struct SvmSolution {
    std::vector<double> alpha;
    double bias = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
    double max_violation = 0.0;
    double dual_objective = 0.0;
    std::vector<double> objective_trace;
};

/// SMO with maximal-violating-pair working-set selection, no shrinking.
/// Throws InvalidArgument on size mismatch, asymmetric or all-zero Gram.
SvmSolution train_svm(const Matrix& gram, const std::vector<Label>& labels, const std::vector<double>& weights,
                      const SvmParams& params);

/// Σα - ½ αᵀQα for an arbitrary α.
double svm_dual_objective(const Matrix& gram, const std::vector<Label>& labels, const std::vector<double>& alpha);

/// Largest KKT violation m(α) - M(α), computed from scratch.
double svm_kkt_violation(const Matrix& gram, const std::vector<Label>& labels, const std::vector<double>& weights,
                         double C, const std::vector<double>& alpha);

struct Prediction {
    double score = 0.0;
    Label label = Label::Negative;
};

struct SvmModel {
    KernelParams kernel;
    double C = 1.0;
    double bias = 0.0;
    std::size_t arity = 0;
    bool converged = true;
    std::vector<std::size_t> support_indices;  // into the training sequence list
    std::vector<double> coefficients;          // α_i y_i
    std::vector<SequenceRepresentation> supports;
};

SvmModel make_svm_model(const SvmSolution& solution, const std::vector<Label>& labels,
                        const std::vector<SequenceRepresentation>& training, const KernelParams& kernel,
                        double C);

/// Caches the encoded support vectors of a model for repeated scoring.
class SvmPredictor {
public:
    explicit SvmPredictor(const SvmModel& model);
    /// score = Σ coef_i · csk_final(sv_i, seq) + bias; positive iff score > 0.
    Prediction predict(const SequenceRepresentation& seq) const;

private:
    const SvmModel& model_;
    EncodedCorpus supports_;
};

Prediction predict_svm(const SvmModel& model, const SequenceRepresentation& seq);

}  // namespace relex
