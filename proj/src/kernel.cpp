#include "relex/kernel.hpp"

#include <cmath>
#include <utility>

#include "relex/error.hpp"

namespace relex {

void KernelParams::validate() const {
    if (!(lambda > 0.0 && lambda <= 1.0)) throw InvalidArgument("lambda must lie in (0, 1]");
    if (n_prime < 3) throw InvalidArgument("n_prime must be at least 3");
}

std::size_t common_count(const GeneralizedToken& x, const GeneralizedToken& y) {
    if (x.kind != y.kind) return 0;
    switch (x.kind) {
        case TokenKind::Argument: return x.arg == y.arg ? 1 : 0;
        case TokenKind::SentenceBreak: return 1;
        case TokenKind::OtherEntity: return x.text == y.text ? 1 : 0;
        case TokenKind::Word:
            return (x.text == y.text ? 1 : 0) + (x.cluster && y.cluster && *x.cluster == *y.cluster ? 1 : 0);
    }
    return 0;
}

std::uint32_t SymbolTable::intern(const std::string& key) {
    auto [it, inserted] = ids_.emplace(key, static_cast<std::uint32_t>(ids_.size() + 1));
    return it->second;
}

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void fnv(std::uint64_t& h, const std::string& s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= kFnvPrime;
    }
    h ^= 0xff;
    h *= kFnvPrime;
}

// Fixed orientation for an unordered pair so that k(s,t) and k(t,s) run the
// same floating-point operations.
bool swapped(const EncodedSequence& s, const EncodedSequence& t) {
    if (s.size() != t.size()) return s.size() > t.size();
    return s.fingerprint > t.fingerprint;
}

}  // namespace

std::uint32_t SymbolTable::find(const std::string& key) const {
    auto it = ids_.find(key);
    return it == ids_.end() ? 0 : it->second;
}

namespace {

EncodedSequence encode_with(const TokenSequence& tokens, std::size_t arity,
                            const std::function<std::uint32_t(const std::string&)>& intern) {
    EncodedSequence e;
    e.arity = arity;
    e.fingerprint = kFnvOffset;
    for (const auto& tok : tokens) {
        std::string key;
        switch (tok.kind) {
            case TokenKind::Argument: key = "E\x1f" + std::to_string(tok.arg); break;
            case TokenKind::SentenceBreak: key = "SB"; break;
            case TokenKind::OtherEntity: key = "OE\x1f" + tok.text; break;
            case TokenKind::Word: key = "W\x1f" + tok.text; break;
        }
        e.primary.push_back(intern(key));
        e.cluster.push_back(tok.cluster ? intern("C\x1f" + *tok.cluster) : 0);
        e.arg.push_back(tok.kind == TokenKind::Argument ? tok.arg : 0);
        fnv(e.fingerprint, key);
        if (tok.cluster) fnv(e.fingerprint, *tok.cluster);
    }
    return e;
}

}  // namespace

EncodedSequence encode(const TokenSequence& tokens, std::size_t arity, SymbolTable& table) {
    return encode_with(tokens, arity, [&](const std::string& k) { return table.intern(k); });
}

EncodedSequence encode_frozen(const TokenSequence& tokens, std::size_t arity, const SymbolTable& table) {
    std::unordered_map<std::string, std::uint32_t> local;
    const auto base = static_cast<std::uint32_t>(table.size());
    return encode_with(tokens, arity, [&](const std::string& k) {
        if (auto id = table.find(k)) return id;
        return local.emplace(k, base + 1 + static_cast<std::uint32_t>(local.size())).first->second;
    });
}

CskEngine::CskEngine(const EncodedSequence& s, const EncodedSequence& t, double lambda, int n_max)
    : s_(swapped(s, t) ? t : s),
      t_(swapped(s, t) ? s : t),
      lambda_(lambda),
      n_max_(n_max),
      rows_(s_.size()),
      cols_(t_.size()) {
    if (n_max < 1) throw InvalidArgument("subsequence length must be at least 1");
    common_.assign(rows_ * cols_, 0);
    for (std::size_t p = 0; p < rows_; ++p)
        for (std::size_t q = 0; q < cols_; ++q)
            common_[p * cols_ + q] = static_cast<std::uint8_t>(
                (s_.primary[p] == t_.primary[q]) + (s_.cluster[p] != 0 && s_.cluster[p] == t_.cluster[q]));

    // K'_0 = 1 everywhere; K'_i for i >= 1 is zero on empty prefixes.
    const double l2 = lambda_ * lambda_;
    kp_.assign(static_cast<std::size_t>(n_max_), std::vector<double>((rows_ + 1) * (cols_ + 1), 0.0));
    std::fill(kp_[0].begin(), kp_[0].end(), 1.0);
    std::vector<double> kpp(cols_ + 1);
    for (int i = 1; i < n_max_; ++i) {
        const auto& prev = kp_[i - 1];
        auto& cur = kp_[i];
        for (std::size_t p = 1; p <= rows_; ++p) {
            kpp[0] = 0.0;
            for (std::size_t q = 1; q <= cols_; ++q) {
                kpp[q] = lambda_ * kpp[q - 1] + l2 * prev[at(p - 1, q - 1)] * c(p, q);
                cur[at(p, q)] = lambda_ * cur[at(p - 1, q)] + kpp[q];
            }
        }
    }
}

std::vector<double> CskEngine::gsk_all() const {
    const double l2 = lambda_ * lambda_;
    std::vector<double> out(static_cast<std::size_t>(n_max_) + 1, 0.0);
    for (int n = 1; n <= n_max_; ++n) {
        const auto& k = kp_[n - 1];
        double sum = 0.0;
        for (std::size_t p = 1; p <= rows_; ++p)
            for (std::size_t q = 1; q <= cols_; ++q)
                if (c(p, q)) sum += l2 * k[at(p - 1, q - 1)] * c(p, q);
        out[n] = sum;
    }
    return out;
}

std::vector<double> CskEngine::csk_all(int a, int b) const {
    if (a == b) throw InvalidArgument("csk requires two distinct argument tokens");
    const double l = lambda_, l2 = lambda_ * lambda_;
    const std::size_t cells = (rows_ + 1) * (cols_ + 1);
    // Rolling levels i-1 and i of aK', bK', abK'; all zero at i = 0.
    std::vector<double> a_prev(cells, 0.0), b_prev(cells, 0.0), ab_prev(cells, 0.0);
    std::vector<double> a_cur(cells), b_cur(cells), ab_cur(cells);
    std::vector<double> a_pp(cols_ + 1), b_pp(cols_ + 1), ab_pp(cols_ + 1);
    std::vector<double> out(static_cast<std::size_t>(n_max_) + 1, 0.0);

    for (int i = 0; i < n_max_; ++i) {
        // Final sums for length n = i + 1 use the level-i tables.
        double sum = 0.0;
        for (std::size_t p = 1; p <= rows_; ++p) {
            const int xs = s_.arg[p - 1];
            for (std::size_t q = 1; q <= cols_; ++q) {
                const std::uint8_t cc = c(p, q);
                if (!cc) continue;
                const std::size_t d = at(p - 1, q - 1);
                if (xs == a && t_.arg[q - 1] == a) sum += l2 * b_prev[d];
                else if (xs == b && t_.arg[q - 1] == b) sum += l2 * a_prev[d];
                else sum += l2 * ab_prev[d] * cc;
            }
        }
        out[static_cast<std::size_t>(i) + 1] = sum;
        if (i + 1 == n_max_) break;

        // Level i + 1.
        const auto& k_prev = kp_[i];
        std::fill(a_cur.begin(), a_cur.begin() + static_cast<std::ptrdiff_t>(cols_ + 1), 0.0);
        std::fill(b_cur.begin(), b_cur.begin() + static_cast<std::ptrdiff_t>(cols_ + 1), 0.0);
        std::fill(ab_cur.begin(), ab_cur.begin() + static_cast<std::ptrdiff_t>(cols_ + 1), 0.0);
        for (std::size_t p = 1; p <= rows_; ++p) {
            const int xs = s_.arg[p - 1];
            a_pp[0] = b_pp[0] = ab_pp[0] = 0.0;
            a_cur[at(p, 0)] = b_cur[at(p, 0)] = ab_cur[at(p, 0)] = 0.0;
            for (std::size_t q = 1; q <= cols_; ++q) {
                const std::uint8_t cc = c(p, q);
                const std::size_t d = at(p - 1, q - 1);
                double av = l * a_pp[q - 1], bv = l * b_pp[q - 1], abv = l * ab_pp[q - 1];
                if (cc) {
                    const int yt = t_.arg[q - 1];
                    if (xs == a && yt == a) {
                        av += l2 * k_prev[d];
                        bv += l2 * b_prev[d];
                        abv += l2 * b_prev[d];
                    } else if (xs == b && yt == b) {
                        bv += l2 * k_prev[d];
                        av += l2 * a_prev[d];
                        abv += l2 * a_prev[d];
                    } else {
                        av += l2 * a_prev[d] * cc;
                        bv += l2 * b_prev[d] * cc;
                        abv += l2 * ab_prev[d] * cc;
                    }
                }
                a_pp[q] = av;
                b_pp[q] = bv;
                ab_pp[q] = abv;
                const std::size_t h = at(p, q), up = at(p - 1, q);
                a_cur[h] = l * a_cur[up] + av;
                b_cur[h] = l * b_cur[up] + bv;
                ab_cur[h] = l * ab_cur[up] + abv;
            }
        }
        std::swap(a_prev, a_cur);
        std::swap(b_prev, b_cur);
        std::swap(ab_prev, ab_cur);
    }
    return out;
}

std::vector<double> CskEngine::pairsum_all(std::size_t arity) const {
    std::vector<double> out(static_cast<std::size_t>(n_max_) + 1, 0.0);
    for (std::size_t i = 1; i < arity; ++i)
        for (std::size_t j = i + 1; j <= arity; ++j) {
            auto v = csk_all(static_cast<int>(i), static_cast<int>(j));
            for (std::size_t n = 1; n < out.size(); ++n) out[n] += v[n];
        }
    return out;
}

namespace {

struct EncodedPair {
    SymbolTable table;
    EncodedSequence s, t;
};

EncodedPair encode_pair(const TokenSequence& s, const TokenSequence& t, std::size_t arity = 0) {
    EncodedPair e;
    e.s = encode(s, arity, e.table);
    e.t = encode(t, arity, e.table);
    return e;
}

}  // namespace

double gsk(const TokenSequence& s, const TokenSequence& t, int n, double lambda) {
    if (n < 1) throw InvalidArgument("gsk: n must be at least 1");
    auto e = encode_pair(s, t);
    return CskEngine(e.s, e.t, lambda, n).gsk_all()[static_cast<std::size_t>(n)];
}

double csk(const TokenSequence& s, const TokenSequence& t, int n, double lambda, int a, int b) {
    if (n < 3) throw InvalidArgument("csk: n must be at least 3");
    if (a == b) throw InvalidArgument("csk: argument tokens must differ");
    auto e = encode_pair(s, t);
    return CskEngine(e.s, e.t, lambda, n).csk_all(a, b)[static_cast<std::size_t>(n)];
}

double csk_pairsum(const TokenSequence& s, const TokenSequence& t, int n, double lambda, std::size_t arity) {
    if (n < 3) throw InvalidArgument("csk_pairsum: n must be at least 3");
    auto e = encode_pair(s, t, arity);
    return CskEngine(e.s, e.t, lambda, n).pairsum_all(arity)[static_cast<std::size_t>(n)];
}

namespace {

double normalize(double st, double ss, double tt) {
    if (ss <= 0.0 || tt <= 0.0) return 0.0;
    return st / std::sqrt(ss * tt);
}

}  // namespace

double ncsk(const TokenSequence& s, const TokenSequence& t, int n, double lambda, std::size_t arity) {
    return normalize(csk_pairsum(s, t, n, lambda, arity), csk_pairsum(s, s, n, lambda, arity),
                     csk_pairsum(t, t, n, lambda, arity));
}

std::vector<double> self_pairsums(const EncodedSequence& s, const KernelParams& params) {
    return CskEngine(s, s, params.lambda, params.n_prime).pairsum_all(s.arity);
}

double csk_final(const EncodedSequence& s, const EncodedSequence& t, const std::vector<double>& self_s,
                 const std::vector<double>& self_t, const KernelParams& params) {
    if (s.arity != t.arity) throw InvalidArgument("csk_final: arity mismatch");
    const auto cross = CskEngine(s, t, params.lambda, params.n_prime).pairsum_all(s.arity);
    double num = 0.0, den = 0.0;
    for (int k = 3; k <= params.n_prime; ++k) {
        const double w = std::ldexp(1.0, params.n_prime - k);
        const auto idx = static_cast<std::size_t>(k);
        num += w * normalize(cross[idx], self_s[idx], self_t[idx]);
        den += w;
    }
    return num / den;
}

double csk_final(const TokenSequence& s, const TokenSequence& t, const KernelParams& params, std::size_t arity) {
    params.validate();
    auto e = encode_pair(s, t, arity);
    return csk_final(e.s, e.t, self_pairsums(e.s, params), self_pairsums(e.t, params), params);
}

CskDpState csk_state(const TokenSequence& s, const TokenSequence& t, int n, double lambda, int a, int b) {
    if (n < 1) throw InvalidArgument("csk_state: n must be at least 1");
    if (a == b) throw InvalidArgument("csk_state: argument tokens must differ");
    const std::size_t R = s.size(), C = t.size();
    const double l = lambda, l2 = lambda * lambda;
    auto blank = [&] { return CskDpState::Table(R + 1, std::vector<double>(C + 1, 0.0)); };
    CskDpState st;
    for (auto* v : {&st.kp, &st.kpp, &st.a_kp, &st.b_kp, &st.ab_kp, &st.a_kpp, &st.b_kpp, &st.ab_kpp})
        v->assign(static_cast<std::size_t>(n) + 1, blank());
    for (auto& row : st.kp[0]) std::fill(row.begin(), row.end(), 1.0);
    auto is_arg = [](const GeneralizedToken& x, int k) { return x.kind == TokenKind::Argument && x.arg == k; };
    for (int i = 1; i <= n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        for (std::size_t p = 1; p <= R; ++p)
            for (std::size_t q = 1; q <= C; ++q) {
                const auto& x = s[p - 1];
                const auto& y = t[q - 1];
                const double cc = static_cast<double>(common_count(x, y));
                st.kpp[ui][p][q] = l * st.kpp[ui][p][q - 1] + l2 * st.kp[ui - 1][p - 1][q - 1] * cc;
                double av = l * st.a_kpp[ui][p][q - 1], bv = l * st.b_kpp[ui][p][q - 1],
                       abv = l * st.ab_kpp[ui][p][q - 1];
                if (is_arg(x, a) && is_arg(y, a)) {
                    av += l2 * st.kp[ui - 1][p - 1][q - 1];
                    bv += l2 * st.b_kp[ui - 1][p - 1][q - 1];
                    abv += l2 * st.b_kp[ui - 1][p - 1][q - 1];
                } else if (is_arg(x, b) && is_arg(y, b)) {
                    bv += l2 * st.kp[ui - 1][p - 1][q - 1];
                    av += l2 * st.a_kp[ui - 1][p - 1][q - 1];
                    abv += l2 * st.a_kp[ui - 1][p - 1][q - 1];
                } else if (cc > 0) {
                    av += l2 * st.a_kp[ui - 1][p - 1][q - 1] * cc;
                    bv += l2 * st.b_kp[ui - 1][p - 1][q - 1] * cc;
                    abv += l2 * st.ab_kp[ui - 1][p - 1][q - 1] * cc;
                }
                st.a_kpp[ui][p][q] = av;
                st.b_kpp[ui][p][q] = bv;
                st.ab_kpp[ui][p][q] = abv;
                st.kp[ui][p][q] = l * st.kp[ui][p - 1][q] + st.kpp[ui][p][q];
                st.a_kp[ui][p][q] = l * st.a_kp[ui][p - 1][q] + av;
                st.b_kp[ui][p][q] = l * st.b_kp[ui][p - 1][q] + bv;
                st.ab_kp[ui][p][q] = l * st.ab_kp[ui][p - 1][q] + abv;
            }
    }
    return st;
}

}  // namespace relex
