#include "relex/pipeline.hpp"

#include <algorithm>
#include <unordered_set>

#include "relex/clusters.hpp"
#include "relex/error.hpp"
#include "relex/gram.hpp"

namespace relex {

Preprocessing make_preprocessing(const PipelineConfig& cfg) {
    cfg.require_relation();
    Preprocessing pre;
    pre.signature = cfg.signature;
    pre.max_minimal_span = cfg.max_minimal_span;
    pre.alias_rules = cfg.alias_rules;
    pre.stopwords = cfg.stopwords_path.empty() ? default_stopwords() : load_stopwords(cfg.stopwords_path);
    if (!cfg.clusters_path.empty()) pre.clusters = load_clusters(cfg.clusters_path);
    return pre;
}

PreparedCorpus prepare_corpus(const Corpus& corpus, const Preprocessing& pre, unsigned threads) {
    PreparedCorpus out;
    out.aliases = alias_closure(corpus, pre.alias_rules);

    struct DocResult {
        std::vector<Instance> instances;
        std::size_t generated = 0, removed = 0, removed_positives = 0;
    };
    std::vector<DocResult> results(corpus.documents.size());
    parallel_for(corpus.documents.size(), threads, [&](std::size_t d) {
        const Document& doc = corpus.documents[d];
        const AliasPartition& aliases = out.aliases.at(doc.doc_id);
        const auto gold = corpus.relations_for(doc.doc_id);
        auto cands = label_candidates(generate_candidates(doc, aliases, pre.signature), gold, aliases);
        auto filtered = filter_candidates(cands, doc, aliases, pre.max_minimal_span);
        DocResult& r = results[d];
        r.generated = cands.size();
        r.removed = filtered.removed.size();
        r.removed_positives = filtered.removed_positives();
        for (auto& c : filtered.retained) {
            Instance inst;
            inst.span = span(c, doc, aliases);
            inst.minimal_span = minimal_span(c, doc, aliases);
            inst.seq = build_sequence(doc, c, aliases, pre.signature, pre.clusters, pre.stopwords);
            inst.candidate = std::move(c);
            r.instances.push_back(std::move(inst));
        }
    });
    for (auto& r : results) {
        out.generated += r.generated;
        out.removed += r.removed;
        out.removed_positives += r.removed_positives;
        for (auto& inst : r.instances) out.instances.push_back(std::move(inst));
    }
    return out;
}

std::vector<Label> labels_of(const std::vector<Instance>& instances) {
    std::vector<Label> labels;
    labels.reserve(instances.size());
    for (const auto& inst : instances) labels.push_back(inst.candidate.label.value_or(Label::Negative));
    return labels;
}

std::vector<FeatureVector> features_of(const std::vector<Instance>& instances, const Corpus& corpus,
                                       const PreparedCorpus& prepared, const RelationSignature& signature) {
    std::vector<FeatureVector> out;
    out.reserve(instances.size());
    for (const auto& inst : instances) {
        const Document* doc = corpus.find(inst.candidate.doc_id);
        if (!doc) throw InvalidArgument("unknown document '" + inst.candidate.doc_id + "'");
        out.push_back(extract_features(inst.candidate, *doc, inst.seq, prepared.aliases.at(doc->doc_id), signature));
    }
    return out;
}

TrainedModel train_model(const Corpus& corpus, const PipelineConfig& cfg, Preprocessing pre) {
    cfg.validate();
    TrainedModel model;
    model.classifier = cfg.classifier;
    const PreparedCorpus prepared = prepare_corpus(corpus, pre, cfg.threads);
    const auto labels = labels_of(prepared.instances);
    model.training_instances = labels.size();
    model.training_positives = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), Label::Positive));
    if (model.training_positives == 0 || model.training_positives == labels.size())
        throw InvalidArgument("training data must contain positive and negative candidates (" +
                              std::to_string(model.training_positives) + " of " + std::to_string(labels.size()) +
                              " positive)");
    const std::vector<double> weights =
        cfg.instance_weights ? class_balance_weights(labels) : std::vector<double>(labels.size(), 1.0);

    if (cfg.classifier == "svm") {
        std::vector<SequenceRepresentation> seqs;
        seqs.reserve(prepared.instances.size());
        for (const auto& inst : prepared.instances) seqs.push_back(inst.seq);
        const Matrix gram = gram_matrix(seqs, cfg.kernel, cfg.threads);
        SvmParams params;
        params.C = cfg.C;
        params.tolerance = cfg.svm_tolerance;
        params.max_iterations = cfg.svm_max_iterations;
        const SvmSolution sol = train_svm(gram, labels, weights, params);
        model.svm = make_svm_model(sol, labels, seqs, cfg.kernel, cfg.C);
        model.iterations = sol.iterations;
        model.converged = sol.converged;
    } else {
        const auto features = features_of(prepared.instances, corpus, prepared, pre.signature);
        MaxEntParams params;
        params.l2 = cfg.l2;
        model.maxent = train_maxent(features, labels, weights, params);
        model.iterations = model.maxent.iterations;
        model.converged = model.maxent.converged;
    }
    model.pre = std::move(pre);
    return model;
}

std::vector<ScoredInstance> predict_model(const TrainedModel& model, const Corpus& corpus, unsigned threads) {
    const PreparedCorpus prepared = prepare_corpus(corpus, model.pre, threads);
    std::vector<ScoredInstance> out(prepared.instances.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i].candidate = prepared.instances[i].candidate;

    if (model.classifier == "svm") {
        if (model.svm.arity != model.pre.signature.arity())
            throw InvalidArgument("model arity does not match its relation signature");
        const SvmPredictor predictor(model.svm);
        parallel_for(out.size(), threads, [&](std::size_t i) {
            const Prediction p = predictor.predict(prepared.instances[i].seq);
            out[i].score = p.score;
            out[i].candidate.label = p.label;
        });
    } else {
        const auto features = features_of(prepared.instances, corpus, prepared, model.pre.signature);
        for (std::size_t i = 0; i < out.size(); ++i) {
            const ProbabilityPrediction p = predict_maxent(model.maxent, features[i]);
            out[i].score = p.probability;
            out[i].candidate.label = p.label;
        }
    }
    return out;
}

Corpus select_fold(const Corpus& corpus, std::size_t fold, std::size_t folds, bool complement) {
    if (folds == 0 || fold >= folds) throw InvalidArgument("fold index must be below the fold count");
    Corpus out;
    std::unordered_set<std::string> kept;
    for (std::size_t p = 0; p < corpus.documents.size(); ++p)
        if ((p % folds == fold) != complement) {
            out.documents.push_back(corpus.documents[p]);
            kept.insert(corpus.documents[p].doc_id);
        }
    for (const auto& r : corpus.relations)
        if (kept.count(r.doc_id)) out.relations.push_back(r);
    return out;
}

std::pair<std::size_t, std::size_t> parse_fold(const std::string& spec) {
    const auto slash = spec.find('/');
    try {
        if (slash == std::string::npos) throw InvalidArgument("");
        std::size_t pos1 = 0, pos2 = 0;
        const auto i = std::stoul(spec.substr(0, slash), &pos1);
        const auto k = std::stoul(spec.substr(slash + 1), &pos2);
        if (pos1 != slash || pos2 != spec.size() - slash - 1 || k == 0 || i >= k) throw InvalidArgument("");
        return {i, k};
    } catch (const std::exception&) {
        throw InvalidArgument("fold must look like I/K with I < K, got '" + spec + "'");
    }
}

}  // namespace relex
