#include "relex/kernel_oracle.hpp"

#include <cmath>

#include "relex/error.hpp"

namespace relex {

namespace {

std::size_t symbol_overlap(const GeneralizedToken& x, const GeneralizedToken& y) {
    // Written out independently of common_count().
    std::size_t shared = 0;
    if (x.kind == y.kind) {
        if (x.kind == TokenKind::Argument) shared += x.arg == y.arg;
        else if (x.kind == TokenKind::SentenceBreak) shared += 1;
        else shared += x.text == y.text;
    }
    if (x.cluster.has_value() && y.cluster.has_value() && x.cluster.value() == y.cluster.value()) shared += 1;
    return shared;
}

void tuples(std::size_t len, std::size_t n, std::size_t start, std::vector<std::size_t>& cur,
            std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == n) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < len; ++i) {
        cur.push_back(i);
        tuples(len, n, i + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<std::size_t>> all_tuples(std::size_t len, std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    tuples(len, n, 0, cur, out);
    return out;
}

bool aligned_argument(const TokenSequence& s, const TokenSequence& t, const std::vector<std::size_t>& i,
                      const std::vector<std::size_t>& j, int a) {
    for (std::size_t k = 0; k < i.size(); ++k) {
        const auto& x = s[i[k]];
        const auto& y = t[j[k]];
        if (x.kind == TokenKind::Argument && y.kind == TokenKind::Argument && x.arg == a && y.arg == a) return true;
    }
    return false;
}

}  // namespace

double oracle_subsequence_sum(const TokenSequence& s, const TokenSequence& t, int n, double lambda,
                              const SubsequenceFilter& accept) {
    if (n < 1) throw InvalidArgument("oracle: n must be at least 1");
    if (s.size() > kOracleMaxLength || t.size() > kOracleMaxLength)
        throw InvalidArgument("oracle: inputs longer than " + std::to_string(kOracleMaxLength) + " tokens");
    const auto un = static_cast<std::size_t>(n);
    if (s.size() < un || t.size() < un) return 0.0;
    const auto ts = all_tuples(s.size(), un);
    const auto tt = all_tuples(t.size(), un);
    double total = 0.0;
    for (const auto& i : ts)
        for (const auto& j : tt) {
            double prod = 1.0;
            for (std::size_t k = 0; k < un && prod != 0.0; ++k) prod *= static_cast<double>(symbol_overlap(s[i[k]], t[j[k]]));
            if (prod == 0.0 || !accept(s, t, i, j)) continue;
            const double spread = static_cast<double>((i.back() - i.front() + 1) + (j.back() - j.front() + 1));
            total += std::pow(lambda, spread) * prod;
        }
    return total;
}

double oracle_gsk(const TokenSequence& s, const TokenSequence& t, int n, double lambda) {
    return oracle_subsequence_sum(s, t, n, lambda, [](auto&&...) { return true; });
}

double oracle_csk(const TokenSequence& s, const TokenSequence& t, int n, double lambda, int a, int b) {
    return oracle_subsequence_sum(s, t, n, lambda, [a, b](const auto& s_, const auto& t_, const auto& i, const auto& j) {
        return aligned_argument(s_, t_, i, j, a) && aligned_argument(s_, t_, i, j, b);
    });
}

}  // namespace relex
