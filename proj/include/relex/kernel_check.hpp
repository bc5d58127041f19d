#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "relex/seqrep.hpp"

namespace relex {

/// Random sequence over a six-symbol alphabet: E1, E2, SB, OE_Gene and two
/// words; each word carries one of two cluster ids half of the time.
TokenSequence random_token_sequence(std::mt19937_64& rng, std::size_t length);

struct KernelCheckParams {
    std::size_t trials = 1000;
    std::size_t max_len = 8;
    double lambda = 0.9;
    std::uint64_t seed = 1;
    double tolerance = 1e-9;  // relative to max(1, oracle)
};

struct KernelCheckReport {
    std::size_t comparisons = 0;
    std::size_t failures = 0;
    double max_abs_gsk = 0.0, max_rel_gsk = 0.0;
    double max_abs_csk = 0.0, max_rel_csk = 0.0;
    bool ok() const noexcept { return failures == 0; }
};

/// Compares the dynamic programs against the enumeration oracle on random
/// pairs: gsk for n = 1..4 and csk(1, 2) for n = 3, 4.
KernelCheckReport run_kernel_check(const KernelCheckParams& params);

}  // namespace relex
