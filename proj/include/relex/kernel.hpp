#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "relex/seqrep.hpp"

namespace relex {

struct KernelParams {
    double lambda = 0.9;
    int n_prime = 4;  // subsequence lengths 3..n_prime are combined

    /// Throws InvalidArgument unless lambda in (0,1] and n_prime >= 3.
    void validate() const;
};

/// |symbols(x) ∩ symbols(y)|.
std::size_t common_count(const GeneralizedToken& x, const GeneralizedToken& y);

/// Interns token symbols so that sequences can be compared by integer ids.
class SymbolTable {
public:
    std::uint32_t intern(const std::string& key);
    /// 0 when the key was never interned.
    std::uint32_t find(const std::string& key) const;
    std::size_t size() const noexcept { return ids_.size(); }

private:
    std::unordered_map<std::string, std::uint32_t> ids_;
};

/// Integer form of a token sequence used by the dynamic programs.
struct EncodedSequence {
    std::vector<std::uint32_t> primary;  // kind + text; never 0
    std::vector<std::uint32_t> cluster;  // 0 when absent
    std::vector<int> arg;                // 1-based argument index, 0 for other kinds
    std::size_t arity = 0;
    std::uint64_t fingerprint = 0;       // FNV-1a of the token strings; orders kernel arguments

    std::size_t size() const noexcept { return primary.size(); }
    bool operator==(const EncodedSequence&) const = default;
    auto operator<=>(const EncodedSequence&) const = default;
};

EncodedSequence encode(const TokenSequence& tokens, std::size_t arity, SymbolTable& table);
/// Encodes against a frozen table; symbols unknown to it get fresh ids local
/// to this call, so the table is never written.
EncodedSequence encode_frozen(const TokenSequence& tokens, std::size_t arity, const SymbolTable& table);

/// Dynamic-programming tables for one (s, t, a, b) evaluation. Index
/// [i][p][q] is subsequence length i over prefixes s[1..p], t[1..q].
struct CskDpState {
    using Table = std::vector<std::vector<double>>;
    std::vector<Table> kp, kpp, a_kp, b_kp, ab_kp, a_kpp, b_kpp, ab_kpp;
};

/// Generalized subsequence kernel: λ-weighted count of common subsequences
/// of length n, each weighted by λ^(spread in s + spread in t). n >= 1.
double gsk(const TokenSequence& s, const TokenSequence& t, int n, double lambda);

/// Constrained subsequence kernel: the part of gsk whose subsequences match
/// argument token E_a and argument token E_b. Requires n >= 3 and a != b.
double csk(const TokenSequence& s, const TokenSequence& t, int n, double lambda, int a, int b);

/// Full DP tables up to length n (testing and diagnostics).
CskDpState csk_state(const TokenSequence& s, const TokenSequence& t, int n, double lambda, int a, int b);

/// Sum of csk over all argument pairs 1 <= i < j <= arity.
double csk_pairsum(const TokenSequence& s, const TokenSequence& t, int n, double lambda, std::size_t arity);

/// csk_pairsum normalized by the geometric mean of the self-kernels; 0 when
/// either self-kernel is 0.
double ncsk(const TokenSequence& s, const TokenSequence& t, int n, double lambda, std::size_t arity);

/// Weighted mean of ncsk over n = 3..n_prime with weights 2^(n_prime - n).
double csk_final(const TokenSequence& s, const TokenSequence& t, const KernelParams& params, std::size_t arity);

/// Batch evaluator over pre-encoded sequences. csk values for every length
/// 1..n_max are produced by one pass of the recursion.
class CskEngine {
public:
    CskEngine(const EncodedSequence& s, const EncodedSequence& t, double lambda, int n_max);

    /// result[n] = gsk of length n, for n in 1..n_max (result[0] unused).
    std::vector<double> gsk_all() const;
    /// result[n] = csk(a, b) of length n, for n in 1..n_max (lengths < 3 included
    /// for completeness; only n >= 3 satisfy the length constraint).
    std::vector<double> csk_all(int a, int b) const;
    /// result[n] = sum over argument pairs of csk_all.
    std::vector<double> pairsum_all(std::size_t arity) const;

private:
    const EncodedSequence& s_;
    const EncodedSequence& t_;
    double lambda_;
    int n_max_;
    std::size_t rows_, cols_;
    std::vector<std::uint8_t> common_;      // rows_ x cols_, 1-based positions stored at [p-1][q-1]
    std::vector<std::vector<double>> kp_;  // K'_i for i in 0..n_max-1, (rows_+1) x (cols_+1)

    std::uint8_t c(std::size_t p, std::size_t q) const { return common_[(p - 1) * cols_ + (q - 1)]; }
    std::size_t at(std::size_t p, std::size_t q) const { return p * (cols_ + 1) + q; }
};

/// Per-sequence cache of self pair-sums for n = 3..n_prime.
std::vector<double> self_pairsums(const EncodedSequence& s, const KernelParams& params);

/// csk_final over encoded sequences with precomputed self pair-sums.
double csk_final(const EncodedSequence& s, const EncodedSequence& t, const std::vector<double>& self_s,
                 const std::vector<double>& self_t, const KernelParams& params);

}  // namespace relex
