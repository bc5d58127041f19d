// relex: cross-sentence n-ary relation extraction from the command line.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "relex/clusters.hpp"
#include "relex/config.hpp"
#include "relex/error.hpp"
#include "relex/evaluation.hpp"
#include "relex/kernel_check.hpp"
#include "relex/model_io.hpp"
#include "relex/pipeline.hpp"
#include "relex/synth.hpp"

using namespace relex;
using nlohmann::json;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Thrown for bad flag combinations detected after parsing.
struct UsageError : Error {
    using Error::Error;
};

struct Common {
    std::string config_path;
    std::string relation;
    std::vector<std::string> arg_types;
    std::string alias_rules;
    std::optional<std::size_t> max_minimal_span;
    std::optional<double> lambda;
    std::optional<int> n_prime;
    std::string classifier;
    std::optional<double> C;
    std::optional<double> l2;
    std::string stopwords;
    std::string clusters;
    std::optional<unsigned> threads;
    std::string fold;
    std::string exclude_fold;
};

void add_relation_flags(CLI::App* app, Common& c) {
    app->add_option("--config", c.config_path, "JSON config file (flags override it)");
    app->add_option("--relation", c.relation, "Relation name (Succession, Lives_In, Interact or custom)");
    app->add_option("--arg-types", c.arg_types, "Argument types, required for custom relations")->delimiter(',');
    app->add_option("--alias-rules", c.alias_rules, "general | biomedical-bacteria | biomedical-prefix");
    app->add_option("--max-minimal-span", c.max_minimal_span, "Drop candidates with a larger minimal span");
    app->add_option("--stopwords", c.stopwords, "Stopword file, one word per line");
    app->add_option("--clusters", c.clusters, "Word-to-cluster JSON written by 'cluster'");
    app->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
}

void add_fold_flags(CLI::App* app, Common& c) {
    app->add_option("--fold", c.fold, "Use only documents of fold I of K (round-robin), e.g. 0/2");
    app->add_option("--exclude-fold", c.exclude_fold, "Use all documents except fold I of K");
}

void add_model_flags(CLI::App* app, Common& c) {
    app->add_option("--classifier", c.classifier, "svm | maxent");
    app->add_option("--lambda", c.lambda, "Kernel decay");
    app->add_option("--n-prime", c.n_prime, "Longest subsequence length combined by the kernel");
    app->add_option("--C", c.C, "SVM regularization");
    app->add_option("--l2", c.l2, "MaxEnt L2 strength");
}

PipelineConfig make_config(const Common& c) {
    PipelineConfig cfg;
    if (!c.config_path.empty()) cfg = load_config(c.config_path, cfg);
    if (!c.relation.empty()) set_relation(cfg, c.relation, c.arg_types);
    else if (!c.arg_types.empty()) cfg.signature.arg_types = c.arg_types;
    if (!c.alias_rules.empty()) {
        auto rules = parse_alias_ruleset(c.alias_rules);
        if (!rules) throw UsageError("unknown alias rule set '" + c.alias_rules + "'");
        cfg.alias_rules = *rules;
    }
    if (c.max_minimal_span) cfg.max_minimal_span = *c.max_minimal_span;
    if (c.lambda) cfg.kernel.lambda = *c.lambda;
    if (c.n_prime) cfg.kernel.n_prime = *c.n_prime;
    if (!c.classifier.empty()) cfg.classifier = c.classifier;
    if (c.C) cfg.C = *c.C;
    if (c.l2) cfg.l2 = *c.l2;
    if (!c.stopwords.empty()) cfg.stopwords_path = c.stopwords;
    if (!c.clusters.empty()) cfg.clusters_path = c.clusters;
    if (c.threads) cfg.threads = *c.threads;
    try {
        cfg.validate();
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

std::pair<std::size_t, std::size_t> fold_arg(const std::string& spec) {
    try {
        return parse_fold(spec);
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
}

Corpus apply_folds(Corpus corpus, const Common& c) {
    if (!c.fold.empty() && !c.exclude_fold.empty()) throw UsageError("--fold and --exclude-fold are exclusive");
    if (!c.fold.empty()) {
        auto [i, k] = fold_arg(c.fold);
        return select_fold(corpus, i, k, false);
    }
    if (!c.exclude_fold.empty()) {
        auto [i, k] = fold_arg(c.exclude_fold);
        return select_fold(corpus, i, k, true);
    }
    return corpus;
}

Corpus read_corpus(const std::string& path, const RelationSignature& sig, const Common& c) {
    return apply_folds(load_corpus(path, sig), c);
}

// Output sink: a file when a path is given, stdout otherwise.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw Error("cannot write " + path);
        }
    }
    std::ostream& operator*() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::string label_name(const std::optional<Label>& l) {
    if (!l) return "unknown";
    return *l == Label::Positive ? "positive" : "negative";
}

int cmd_validate(const Common& c, const std::string& corpus_path) {
    std::optional<RelationSignature> sig;
    if (!c.relation.empty() || !c.config_path.empty()) {
        PipelineConfig cfg = make_config(c);
        if (!cfg.signature.relation_name.empty()) sig = cfg.signature;
    }
    std::ifstream in(corpus_path);
    if (!in) throw Error("cannot open corpus file: " + corpus_path);
    const CorpusValidation v = validate_corpus(in, sig);
    std::map<std::string, std::size_t> issues_per_doc;
    for (const auto& issue : v.issues) ++issues_per_doc[issue.doc_id];
    std::printf("%-24s %9s %7s %8s %8s %9s %6s\n", "document", "sentences", "tokens", "entities", "mentions",
                "relations", "issues");
    for (const auto& doc : v.corpus.documents) {
        std::printf("%-24s %9zu %7zu %8zu %8zu %9zu %6zu\n", doc.doc_id.c_str(), doc.sentences.size(),
                    doc.tokens.size(), doc.entities.size(), doc.mentions.size(),
                    v.corpus.relations_for(doc.doc_id).size(), issues_per_doc[doc.doc_id]);
    }
    for (const auto& issue : v.issues) {
        std::printf("issue: ");
        if (issue.line) std::printf("line %zu: ", issue.line);
        if (!issue.doc_id.empty()) std::printf("[%s] ", issue.doc_id.c_str());
        std::printf("%s\n", issue.message.c_str());
    }
    std::printf("%zu documents, %zu relations kept, %zu skipped, %zu issues: %s\n", v.corpus.documents.size(),
                v.corpus.relations.size(), v.skipped_relations, v.issues.size(), v.ok() ? "OK" : "INVALID");
    return v.ok() ? 0 : kExitFailure;
}

int cmd_gen_candidates(const Common& c, const std::string& corpus_path, const std::string& out_path) {
    const PipelineConfig cfg = make_config(c);
    cfg.require_relation();
    const Corpus corpus = read_corpus(corpus_path, cfg.signature, c);
    const auto aliases = alias_closure(corpus, cfg.alias_rules);
    Output out(out_path);
    std::size_t total = 0, kept = 0, lost_pos = 0;
    for (const auto& doc : corpus.documents) {
        const auto& part = aliases.at(doc.doc_id);
        const auto cands =
            label_candidates(generate_candidates(doc, part, cfg.signature), corpus.relations_for(doc.doc_id), part);
        for (const auto& cand : cands) {
            const auto sp = span(cand, doc, part);
            const auto ms = minimal_span(cand, doc, part);
            const bool retained = ms <= cfg.max_minimal_span;
            ++total;
            kept += retained;
            lost_pos += !retained && cand.label == Label::Positive;
            *out << json{{"doc_id", cand.doc_id},
                         {"arg_entity_ids", cand.arg_entity_ids},
                         {"span", {sp.first, sp.last}},
                         {"span_sentences", sp.sentence_count()},
                         {"minimal_span", ms},
                         {"label", label_name(cand.label)},
                         {"retained", retained}}
                        .dump()
                 << '\n';
        }
    }
    std::fprintf(stderr, "%zu candidates, %zu retained (max minimal span %zu), %zu positives filtered out\n", total,
                 kept, cfg.max_minimal_span, lost_pos);
    return 0;
}

int cmd_cluster(const Common& c, const std::string& embeddings, const std::string& corpus_path, std::size_t min_freq,
                double threshold, const std::string& out_path) {
    std::ifstream in(corpus_path);
    if (!in) throw Error("cannot open corpus file: " + corpus_path);
    CorpusValidation v = validate_corpus(in, std::nullopt);
    if (!v.ok()) {
        const auto& first = v.issues.front();
        throw ParseError(first.message, first.line);
    }
    const Corpus corpus = apply_folds(std::move(v.corpus), c);
    const EmbeddingTable table = load_embeddings(embeddings);
    ClusterAssignment a = cluster_words(table, frequent_words(corpus, min_freq), threshold);
    a.min_freq = min_freq;
    for (const auto& w : a.skipped) std::fprintf(stderr, "warning: skipped '%s' (no embedding or zero vector)\n", w.c_str());
    Output out(out_path);
    *out << clusters_to_json(a.word_to_cluster).dump(1) << '\n';
    std::fprintf(stderr, "%zu words in %zu clusters (min freq %zu, threshold %g), %zu skipped\n",
                 a.word_to_cluster.size(), a.cluster_count, min_freq, threshold, a.skipped.size());
    return 0;
}

int cmd_build_seqs(const Common& c, const std::string& corpus_path, const std::string& out_path) {
    const PipelineConfig cfg = make_config(c);
    const Preprocessing pre = make_preprocessing(cfg);
    const Corpus corpus = read_corpus(corpus_path, cfg.signature, c);
    const PreparedCorpus prepared = prepare_corpus(corpus, pre, cfg.threads);
    Output out(out_path);
    for (const auto& inst : prepared.instances) {
        json j = sequence_to_json(inst.seq);
        j["label"] = label_name(inst.candidate.label);
        j["minimal_span"] = inst.minimal_span;
        *out << j.dump() << '\n';
    }
    std::fprintf(stderr, "%zu sequences (%zu candidates, %zu filtered)\n", prepared.instances.size(),
                 prepared.generated, prepared.removed);
    return 0;
}

int cmd_train(const Common& c, const std::string& corpus_path, const std::string& model_path) {
    const PipelineConfig cfg = make_config(c);
    Preprocessing pre = make_preprocessing(cfg);
    const Corpus corpus = read_corpus(corpus_path, cfg.signature, c);
    const TrainedModel model = train_model(corpus, cfg, std::move(pre));
    save_model(model, model_path);
    std::fprintf(stderr, "trained %s on %zu documents: %zu instances (%zu positive), %zu iterations, %s\n",
                 model.classifier.c_str(), corpus.documents.size(), model.training_instances,
                 model.training_positives, model.iterations, model.converged ? "converged" : "NOT converged");
    if (model.classifier == "svm") std::fprintf(stderr, "%zu support vectors\n", model.svm.supports.size());
    return 0;
}

int cmd_predict(const Common& c, const std::string& model_path, const std::string& corpus_path,
                const std::string& out_path) {
    const TrainedModel model = load_model(model_path);
    unsigned threads = c.threads.value_or(1);
    const Corpus corpus = read_corpus(corpus_path, model.pre.signature, c);
    const auto scored = predict_model(model, corpus, threads);
    Output out(out_path);
    std::size_t positives = 0;
    for (const auto& s : scored) {
        positives += s.candidate.label == Label::Positive;
        *out << json{{"doc_id", s.candidate.doc_id},
                     {"arg_entity_ids", s.candidate.arg_entity_ids},
                     {"label", label_name(s.candidate.label)},
                     {"score", s.score}}
                    .dump()
             << '\n';
    }
    std::fprintf(stderr, "%zu candidates scored, %zu predicted positive\n", scored.size(), positives);
    return 0;
}

std::vector<Candidate> read_predictions(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open predictions file: " + path);
    std::vector<Candidate> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const json j = json::parse(line);
            Candidate cand{j.at("doc_id").get<std::string>(), j.at("arg_entity_ids").get<std::vector<std::string>>(),
                           std::nullopt};
            const auto label = j.at("label").get<std::string>();
            if (label != "positive" && label != "negative") throw ParseError("label must be positive or negative", lineno);
            cand.label = label == "positive" ? Label::Positive : Label::Negative;
            out.push_back(std::move(cand));
        } catch (const json::exception& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    return out;
}

int cmd_eval(const Common& c, const std::string& corpus_path, const std::vector<std::string>& predictions,
             const std::vector<std::string>& folds, const std::string& level, const std::string& model_path,
             const std::string& json_path) {
    if (level != "rigd" && level != "mention") throw UsageError("--level must be rigd or mention");
    if (!folds.empty() && folds.size() != predictions.size())
        throw UsageError("give one --eval-fold per --predictions file, or none");
    RelationSignature sig;
    AliasRuleSet rules;
    if (!model_path.empty()) {
        const TrainedModel model = load_model(model_path);
        sig = model.pre.signature;
        rules = model.pre.alias_rules;
    } else {
        const PipelineConfig cfg = make_config(c);
        cfg.require_relation();
        sig = cfg.signature;
        rules = cfg.alias_rules;
    }
    const Corpus full = load_corpus(corpus_path, sig);
    std::vector<EvalReport> reports;
    for (std::size_t p = 0; p < predictions.size(); ++p) {
        Corpus corpus = full;
        if (!folds.empty()) {
            auto [i, k] = fold_arg(folds[p]);
            corpus = select_fold(full, i, k, false);
        } else {
            corpus = apply_folds(full, c);
        }
        const auto aliases = alias_closure(corpus, rules);
        const auto preds = read_predictions(predictions[p]);
        for (const auto& pr : preds)
            if (!aliases.count(pr.doc_id)) throw Error("prediction for unknown document '" + pr.doc_id + "'");
        if (level == "rigd") {
            std::vector<Candidate> positives;
            for (const auto& pr : preds)
                if (pr.label == Label::Positive) positives.push_back(pr);
            reports.push_back(evaluate_rigd(positives, corpus.relations, aliases));
        } else {
            std::vector<Label> predicted, gold;
            for (const auto& pr : preds) {
                Candidate unlabeled{pr.doc_id, pr.arg_entity_ids, std::nullopt};
                const auto labeled =
                    label_candidates({unlabeled}, corpus.relations_for(pr.doc_id), aliases.at(pr.doc_id));
                predicted.push_back(*pr.label);
                gold.push_back(labeled.front().label.value_or(Label::Negative));
            }
            reports.push_back(evaluate_mention(predicted, gold));
        }
    }
    const EvalReport report = reports.size() == 1 ? reports.front() : average_reports(reports);
    std::cout << format_report(report, level == "rigd" ? "RIGD" : "Mention");
    if (reports.size() > 1) std::cout << "(average of " << reports.size() << " folds)\n";
    if (!json_path.empty()) {
        json j = report_to_json(report, level);
        if (reports.size() > 1) {
            j["folds"] = json::array();
            for (const auto& r : reports) j["folds"].push_back(report_to_json(r, level));
        }
        Output out(json_path);
        *out << j.dump(1) << '\n';
    }
    return 0;
}

int cmd_kernel_check(const KernelCheckParams& params) {
    const KernelCheckReport r = run_kernel_check(params);
    std::printf("comparisons %zu  failures %zu\n", r.comparisons, r.failures);
    std::printf("gsk  max abs %.3e  max rel %.3e\n", r.max_abs_gsk, r.max_rel_gsk);
    std::printf("csk  max abs %.3e  max rel %.3e\n", r.max_abs_csk, r.max_rel_csk);
    std::printf("%s\n", r.ok() ? "OK" : "FAILED");
    return r.ok() ? 0 : kExitFailure;
}

int cmd_synth(const SynthSpec& spec, const std::string& out_path, const std::string& config_out) {
    if (!(spec.positive_rate >= 0 && spec.positive_rate <= 1) || !(spec.alias_rate >= 0 && spec.alias_rate <= 1) ||
        !(spec.other_entity_rate >= 0 && spec.other_entity_rate <= 1))
        throw UsageError("rates must lie in [0, 1]");
    const SynthResult r = synth_corpus(spec);
    {
        Output out(out_path);
        write_corpus(*out, r.corpus);
    }
    if (!config_out.empty()) {
        Output cfg(config_out);
        *cfg << json{{"relation", r.signature.relation_name},
                     {"arg_types", r.signature.arg_types},
                     {"alias_rules", to_string(r.alias_rules)}}
                    .dump(1)
             << '\n';
    }
    std::fprintf(stderr, "%zu documents, %zu candidate groups, %zu positive (%.1f%%)\n", r.corpus.documents.size(),
                 r.candidate_groups, r.positive_groups,
                 r.candidate_groups ? 100.0 * static_cast<double>(r.positive_groups) / static_cast<double>(r.candidate_groups)
                                    : 0.0);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relex: cross-sentence n-ary relation extraction"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    Common common;
    std::string corpus_path, out_path, model_path, json_path, level = "rigd", embeddings;
    std::vector<std::string> predictions, eval_folds;
    std::size_t min_freq = kDefaultMinFreq;
    double threshold = kDefaultClusterThreshold;
    KernelCheckParams kc;
    SynthSpec spec;
    std::string config_out;

    auto* validate = app.add_subcommand("validate-corpus", "Check a JSONL corpus and print a per-document report");
    validate->add_option("--corpus", corpus_path, "Corpus JSONL")->required();
    add_relation_flags(validate, common);

    auto* gen = app.add_subcommand("gen-candidates", "Emit candidate tuples with span, minimal span and label");
    gen->add_option("--corpus", corpus_path, "Corpus JSONL")->required();
    gen->add_option("--out", out_path, "Output JSONL (default stdout)");
    add_relation_flags(gen, common);
    add_fold_flags(gen, common);

    auto* cluster = app.add_subcommand("cluster", "Cluster frequent corpus words by their embeddings");
    cluster->add_option("--embeddings", embeddings, "Text embeddings: word v1 ... vd")->required();
    cluster->add_option("--corpus", corpus_path, "Corpus JSONL (use the training part)")->required();
    cluster->add_option("--min-freq", min_freq, "Minimum corpus frequency")->capture_default_str();
    cluster->add_option("--threshold", threshold, "Complete-linkage cosine distance cut")->capture_default_str();
    cluster->add_option("--out", out_path, "Output JSON (default stdout)");
    add_fold_flags(cluster, common);

    auto* seqs = app.add_subcommand("build-seqs", "Emit the sequence representation of every retained candidate");
    seqs->add_option("--corpus", corpus_path, "Corpus JSONL")->required();
    seqs->add_option("--out", out_path, "Output JSONL (default stdout)");
    add_relation_flags(seqs, common);
    add_fold_flags(seqs, common);

    auto* train = app.add_subcommand("train", "Train a classifier and write a model file");
    train->add_option("--corpus", corpus_path, "Corpus JSONL")->required();
    train->add_option("--out", model_path, "Model JSON")->required();
    add_relation_flags(train, common);
    add_fold_flags(train, common);
    add_model_flags(train, common);

    auto* predict = app.add_subcommand("predict", "Score candidates of a corpus with a trained model");
    predict->add_option("--model", model_path, "Model JSON")->required();
    predict->add_option("--corpus", corpus_path, "Corpus JSONL")->required();
    predict->add_option("--out", out_path, "Output JSONL (default stdout)");
    predict->add_option("--threads", common.threads, "Worker threads (0 = all cores)");
    add_fold_flags(predict, common);

    auto* eval = app.add_subcommand("eval", "Score predictions against the corpus annotations");
    eval->add_option("--corpus", corpus_path, "Corpus JSONL with gold relations")->required();
    eval->add_option("--predictions", predictions, "Predictions JSONL; repeat to average folds")->required();
    eval->add_option("--eval-fold", eval_folds, "Fold I/K of each predictions file");
    eval->add_option("--level", level, "rigd | mention")->capture_default_str();
    eval->add_option("--model", model_path, "Take relation and alias rules from this model");
    eval->add_option("--json", json_path, "Also write the report as JSON");
    add_relation_flags(eval, common);
    add_fold_flags(eval, common);

    auto* check = app.add_subcommand("kernel-check", "Compare the kernel recursions with brute-force enumeration");
    check->add_option("--trials", kc.trials, "Random sequence pairs")->capture_default_str();
    check->add_option("--max-len", kc.max_len, "Maximum sequence length")->capture_default_str();
    check->add_option("--lambda", kc.lambda, "Decay")->capture_default_str();
    check->add_option("--seed", kc.seed, "Random seed")->capture_default_str();

    auto* synth = app.add_subcommand("synth", "Generate a planted-pattern corpus");
    synth->add_option("--docs", spec.docs, "Number of documents")->capture_default_str();
    synth->add_option("--seed", spec.seed, "Random seed")->capture_default_str();
    synth->add_option("--positive-rate", spec.positive_rate, "Share of documents with a planted pair")
        ->capture_default_str();
    synth->add_option("--cue-window", spec.cue_window, "Max sentences between drug and cue")->capture_default_str();
    synth->add_option("--alias-rate", spec.alias_rate, "Chance of an alias variant per argument")
        ->capture_default_str();
    synth->add_option("--out", out_path, "Output JSONL (default stdout)");
    synth->add_option("--config-out", config_out, "Write a config for the generated relation");

    auto* config = app.add_subcommand("config", "Print the effective configuration and built-in defaults");
    add_relation_flags(config, common);
    add_model_flags(config, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*validate) return cmd_validate(common, corpus_path);
        if (*gen) return cmd_gen_candidates(common, corpus_path, out_path);
        if (*cluster) return cmd_cluster(common, embeddings, corpus_path, min_freq, threshold, out_path);
        if (*seqs) return cmd_build_seqs(common, corpus_path, out_path);
        if (*train) return cmd_train(common, corpus_path, model_path);
        if (*predict) return cmd_predict(common, model_path, corpus_path, out_path);
        if (*eval) return cmd_eval(common, corpus_path, predictions, eval_folds, level, model_path, json_path);
        if (*check) return cmd_kernel_check(kc);
        if (*synth) return cmd_synth(spec, out_path, config_out);
        if (*config) {
            std::cout << config_to_json(make_config(common)).dump(2) << '\n';
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
