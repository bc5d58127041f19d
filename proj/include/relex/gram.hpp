#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "relex/kernel.hpp"
#include "relex/seqrep.hpp"

namespace relex {

/// Dense row-major square matrix.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), v_(n * n, fill) {}

    std::size_t size() const noexcept { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return v_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return v_[i * n_ + j]; }
    const std::vector<double>& data() const noexcept { return v_; }

private:
    std::size_t n_ = 0;
    std::vector<double> v_;
};

/// Sequences encoded against one symbol table, with cached self-kernels.
class EncodedCorpus {
public:
    EncodedCorpus(const std::vector<SequenceRepresentation>& seqs, const KernelParams& params);

    std::size_t size() const noexcept { return encoded_.size(); }
    std::size_t arity() const noexcept { return arity_; }
    const KernelParams& params() const noexcept { return params_; }
    double kernel(std::size_t i, std::size_t j) const;
    /// Encodes an outside sequence against the same table and evaluates
    /// csk_final against every member.
    std::vector<double> kernel_row(const SequenceRepresentation& seq) const;

private:
    KernelParams params_;
    std::size_t arity_ = 0;
    SymbolTable table_;
    std::vector<EncodedSequence> encoded_;
    std::vector<std::vector<double>> self_;
};

/// M[i][j] = csk_final(seqs[i], seqs[j]); upper triangle computed and mirrored.
/// `threads` = 0 uses the hardware concurrency. Throws InvalidArgument on
/// arity mismatch.
Matrix gram_matrix(const std::vector<SequenceRepresentation>& seqs, const KernelParams& params,
                   unsigned threads = 1);

/// Runs `job(i)` for i in [0, count) on a pool of worker threads.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& job);

}  // namespace relex
