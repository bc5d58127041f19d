#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "relex/candidates.hpp"
#include "relex/evaluation.hpp"

using namespace relex;

namespace {

struct News {
    Corpus corpus = fixtures::news_corpus();
    std::unordered_map<std::string, AliasPartition> aliases = alias_closure(corpus, AliasRuleSet::General);
    const std::string id = corpus.documents[0].doc_id;
    Candidate cand(std::vector<std::string> ids) const { return {id, std::move(ids), Label::Positive}; }
    RelationAnnotation gold(std::vector<std::string> ids) const { return {id, "Succession", std::move(ids)}; }
};

}  // namespace

TEST_CASE("report arithmetic") {
    const auto r = make_report(1, 1, 0);
    CHECK(r.precision == 0.5);
    CHECK(r.recall == 1.0);
    CHECK(r.f1 == doctest::Approx(2.0 / 3.0));
    const auto z = make_report(0, 0, 3);
    CHECK(z.precision == 0.0);
    CHECK(z.recall == 0.0);
    CHECK(z.f1 == 0.0);
    const auto avg = average_reports({make_report(1, 0, 0), make_report(1, 1, 2)});
    CHECK(avg.precision == doctest::Approx(0.75));
    CHECK(avg.recall == doctest::Approx((1.0 + 1.0 / 3.0) / 2));
    CHECK(avg.tp == 2);
    CHECK(avg.fn == 2);
}

TEST_CASE("hand-counted RIGD scenario") {
    const News n;
    // The first prediction names Volvo and Mr. Svanholm, aliases of the gold arguments.
    const std::vector<Candidate> pred = {n.cand({"T10", "T3", "T9", "T4"}), n.cand({"T6", "T5", "T2", "T9"})};
    const auto r = evaluate_rigd(pred, {n.gold({"T1", "T3", "T9", "T2"})}, n.aliases);
    CHECK(r.tp == 1);
    CHECK(r.fp == 1);
    CHECK(r.fn == 0);
    CHECK(r.precision == 0.5);
    CHECK(r.recall == 1.0);
    CHECK(r.f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(r.per_document.at(n.id).tp == 1);

    SUBCASE("exact predictions") {
        const auto e = evaluate_rigd({n.cand({"T1", "T3", "T9", "T2"})}, {n.gold({"T1", "T3", "T9", "T2"})}, n.aliases);
        CHECK(e.precision == 1.0);
        CHECK(e.recall == 1.0);
        CHECK(e.f1 == 1.0);
    }
    SUBCASE("two members of one group count once") {
        const auto e = evaluate_rigd({n.cand({"T1", "T3", "T9", "T2"}), n.cand({"T10", "T3", "T9", "T4"})},
                                     {n.gold({"T1", "T3", "T9", "T2"})}, n.aliases);
        CHECK(e.tp == 1);
        CHECK(e.fp == 0);
    }
    SUBCASE("no predictions") {
        const auto e = evaluate_rigd({}, {n.gold({"T1", "T3", "T9", "T2"})}, n.aliases);
        CHECK(e.precision == 0.0);
        CHECK(e.recall == 0.0);
        CHECK(e.fn == 1);
    }
    SUBCASE("missing alias partition") {
        CHECK_THROWS(evaluate_rigd({n.cand({"T1", "T3", "T9", "T2"})}, {}, {}));
    }
    const auto j = report_to_json(r, "rigd");
    CHECK(j.at("schema") == "relex-eval-report");
    CHECK(j.at("tp") == 1);
    const auto table = format_report(r, "rigd");
    CHECK(table.find("50.0") != std::string::npos);
    CHECK(table.find("100.0") != std::string::npos);
    CHECK(table.find("66.7") != std::string::npos);
}

TEST_CASE("hand-counted mention scenario") {
    using L = Label;
    // 4 tp, 2 fp, 1 fn, 3 tn.
    const std::vector<L> gold = {L::Positive, L::Positive, L::Positive, L::Positive, L::Positive,
                                 L::Negative, L::Negative, L::Negative, L::Negative, L::Negative};
    const std::vector<L> pred = {L::Positive, L::Positive, L::Positive, L::Positive, L::Negative,
                                 L::Positive, L::Positive, L::Negative, L::Negative, L::Negative};
    const auto r = evaluate_mention(pred, gold);
    CHECK(r.tp == 4);
    CHECK(r.fp == 2);
    CHECK(r.fn == 1);
    CHECK(r.precision == 4.0 / 6.0);
    CHECK(r.recall == 4.0 / 5.0);
    CHECK(*r.accuracy == 0.7);
    CHECK(*evaluate_mention(gold, gold).accuracy == 1.0);
    std::vector<L> flipped;
    for (auto l : gold) flipped.push_back(l == L::Positive ? L::Negative : L::Positive);
    const auto f = evaluate_mention(flipped, gold);
    CHECK(*f.accuracy == 0.0);
    CHECK(f.f1 == 0.0);
}

TEST_CASE("RIGD invariances on random predictions") {
    const News n;
    const auto& doc = n.corpus.documents[0];
    const auto& part = n.aliases.at(n.id);
    const auto all = generate_candidates(doc, part, fixtures::succession());
    REQUIRE(all.size() > 20);
    std::mt19937_64 rng(9);
    const auto groups_of = [&](const std::vector<Candidate>& v) { return group_candidates(v, part).size(); };
    for (int t = 0; t < 200; ++t) {
        std::vector<Candidate> pred;
        std::vector<RelationAnnotation> gold;
        std::vector<Candidate> gold_c;
        for (const auto& c : all) {
            if (rng() % 8 == 0) pred.push_back(c);
            if (rng() % 12 == 0) {
                gold.push_back({c.doc_id, "Succession", c.arg_entity_ids});
                gold_c.push_back(c);
            }
        }
        const auto base = evaluate_rigd(pred, gold, n.aliases);
        CHECK(base.tp + base.fn == groups_of(gold_c));
        CHECK(base.tp + base.fp == groups_of(pred));

        // Swap each predicted argument for a random member of its alias group.
        auto subst = pred;
        for (auto& c : subst)
            for (auto& id : c.arg_entity_ids) {
                const auto& g = part.groups()[part.group_of(id)];
                id = g[rng() % g.size()];
            }
        const auto s = evaluate_rigd(subst, gold, n.aliases);
        CHECK(s.tp == base.tp);
        CHECK(s.fp == base.fp);
        CHECK(s.fn == base.fn);

        auto shuffled = pred;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        auto gold_shuffled = gold;
        std::shuffle(gold_shuffled.begin(), gold_shuffled.end(), rng);
        const auto p = evaluate_rigd(shuffled, gold_shuffled, n.aliases);
        CHECK(p.tp == base.tp);
        CHECK(p.fp == base.fp);
        CHECK(p.fn == base.fn);
    }
}
