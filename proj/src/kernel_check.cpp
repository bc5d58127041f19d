#include "relex/kernel_check.hpp"

#include <algorithm>
#include <cmath>

#include "relex/error.hpp"
#include "relex/kernel.hpp"
#include "relex/kernel_oracle.hpp"

namespace relex {

TokenSequence random_token_sequence(std::mt19937_64& rng, std::size_t length) {
    TokenSequence seq;
    for (std::size_t i = 0; i < length; ++i) {
        switch (rng() % 6) {
            case 0: seq.push_back(GeneralizedToken::argument(1)); break;
            case 1: seq.push_back(GeneralizedToken::argument(2)); break;
            case 2: seq.push_back(GeneralizedToken::sentence_break()); break;
            case 3: seq.push_back(GeneralizedToken::other_entity("Gene")); break;
            default: {
                std::string w = rng() % 2 ? "alpha" : "beta";
                std::optional<std::string> c;
                if (rng() % 2) c = rng() % 2 ? "c0" : "c1";
                seq.push_back(GeneralizedToken::word(std::move(w), std::move(c)));
            }
        }
    }
    return seq;
}

KernelCheckReport run_kernel_check(const KernelCheckParams& params) {
    if (params.max_len > kOracleMaxLength)
        throw InvalidArgument("max_len above " + std::to_string(kOracleMaxLength) + " makes the oracle too slow");
    if (params.max_len == 0) throw InvalidArgument("max_len must be positive");
    std::mt19937_64 rng(params.seed);
    KernelCheckReport r;
    auto compare = [&](double fast, double slow, double& max_abs, double& max_rel) {
        const double diff = std::abs(fast - slow);
        max_abs = std::max(max_abs, diff);
        max_rel = std::max(max_rel, diff / std::max(1.0, std::abs(slow)));
        ++r.comparisons;
        if (!(diff <= params.tolerance * std::max(1.0, std::abs(slow)))) ++r.failures;
    };
    for (std::size_t trial = 0; trial < params.trials; ++trial) {
        const TokenSequence s = random_token_sequence(rng, 1 + rng() % params.max_len);
        const TokenSequence t = random_token_sequence(rng, 1 + rng() % params.max_len);
        for (int n = 1; n <= 4; ++n)
            compare(gsk(s, t, n, params.lambda), oracle_gsk(s, t, n, params.lambda), r.max_abs_gsk, r.max_rel_gsk);
        for (int n = 3; n <= 4; ++n)
            compare(csk(s, t, n, params.lambda, 1, 2), oracle_csk(s, t, n, params.lambda, 1, 2), r.max_abs_csk,
                    r.max_rel_csk);
    }
    return r;
}

}  // namespace relex
