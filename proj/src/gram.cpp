#include "relex/gram.hpp"

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "relex/error.hpp"

namespace relex {

EncodedCorpus::EncodedCorpus(const std::vector<SequenceRepresentation>& seqs, const KernelParams& params)
    : params_(params) {
    params_.validate();
    if (!seqs.empty()) arity_ = seqs.front().arity;
    for (const auto& s : seqs) {
        if (s.arity != arity_)
            throw InvalidArgument("gram_matrix: arity mismatch (" + std::to_string(s.arity) + " vs " +
                                  std::to_string(arity_) + ")");
        encoded_.push_back(encode(s.tokens, s.arity, table_));
        self_.push_back(self_pairsums(encoded_.back(), params_));
    }
}

double EncodedCorpus::kernel(std::size_t i, std::size_t j) const {
    return csk_final(encoded_[i], encoded_[j], self_[i], self_[j], params_);
}

std::vector<double> EncodedCorpus::kernel_row(const SequenceRepresentation& seq) const {
    if (seq.arity != arity_ && !encoded_.empty())
        throw InvalidArgument("kernel_row: arity mismatch (" + std::to_string(seq.arity) + " vs " +
                              std::to_string(arity_) + ")");
    const EncodedSequence e = encode_frozen(seq.tokens, seq.arity, table_);
    const auto self = self_pairsums(e, params_);
    std::vector<double> row(encoded_.size());
    for (std::size_t i = 0; i < encoded_.size(); ++i) row[i] = csk_final(encoded_[i], e, self_[i], self, params_);
    return row;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& job) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    if (threads == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) {
                try {
                    job(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

Matrix gram_matrix(const std::vector<SequenceRepresentation>& seqs, const KernelParams& params, unsigned threads) {
    const EncodedCorpus enc(seqs, params);
    const std::size_t n = enc.size();
    Matrix m(n);
    // Row i writes cells (i, j>=i) only; mirrored afterwards.
    parallel_for(n, threads, [&](std::size_t i) {
        for (std::size_t j = i; j < n; ++j) m(i, j) = enc.kernel(i, j);
    });
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) m(j, i) = m(i, j);
    return m;
}

}  // namespace relex
