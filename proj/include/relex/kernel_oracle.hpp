#pragma once

#include <functional>

#include "relex/seqrep.hpp"

namespace relex {

/// Reference kernels by direct enumeration of all strictly increasing index
/// tuples. Exponential; inputs are limited to 12 tokens each.
inline constexpr std::size_t kOracleMaxLength = 12;

/// Decides whether a matched pair of index tuples contributes to the sum.
using SubsequenceFilter =
    std::function<bool(const TokenSequence& s, const TokenSequence& t, const std::vector<std::size_t>& i,
                       const std::vector<std::size_t>& j)>;

/// Σ over accepted index-tuple pairs of λ^(spread_s + spread_t) · Π c(s[i_k], t[j_k]).
double oracle_subsequence_sum(const TokenSequence& s, const TokenSequence& t, int n, double lambda,
                              const SubsequenceFilter& accept);

double oracle_gsk(const TokenSequence& s, const TokenSequence& t, int n, double lambda);

/// Restricts oracle_gsk to tuple pairs that align E_a with E_a and E_b with E_b.
double oracle_csk(const TokenSequence& s, const TokenSequence& t, int n, double lambda, int a, int b);

}  // namespace relex
