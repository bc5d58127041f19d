#include "relex/model_io.hpp"

#include <algorithm>
#include <fstream>

#include "relex/clusters.hpp"
#include "relex/error.hpp"

namespace relex {

nlohmann::json model_to_json(const TrainedModel& model) {
    std::vector<std::string> stopwords(model.pre.stopwords.words().begin(), model.pre.stopwords.words().end());
    std::sort(stopwords.begin(), stopwords.end());
    nlohmann::json j{{"format", kModelFormat},
                     {"version", kModelVersion},
                     {"classifier", model.classifier},
                     {"relation", model.pre.signature.relation_name},
                     {"arg_types", model.pre.signature.arg_types},
                     {"max_minimal_span", model.pre.max_minimal_span},
                     {"alias_rules", to_string(model.pre.alias_rules)},
                     {"stopwords", stopwords},
                     {"clusters", clusters_to_json(model.pre.clusters)},
                     {"training_instances", model.training_instances},
                     {"training_positives", model.training_positives},
                     {"iterations", model.iterations},
                     {"converged", model.converged}};
    if (model.classifier == "svm") {
        const SvmModel& m = model.svm;
        nlohmann::json supports = nlohmann::json::array();
        for (const auto& s : m.supports) supports.push_back(sequence_to_json(s));
        j["svm"] = {{"lambda", m.kernel.lambda}, {"n_prime", m.kernel.n_prime}, {"C", m.C},
                    {"bias", m.bias},            {"arity", m.arity},            {"support_indices", m.support_indices},
                    {"coefficients", m.coefficients}, {"supports", supports}};
    } else {
        const MaxEntModel& m = model.maxent;
        std::vector<std::string> names(m.dictionary.size());
        for (const auto& [name, index] : m.dictionary) names.at(index) = name;
        j["maxent"] = {{"l2", m.l2}, {"features", names}, {"weights", m.weights}};
    }
    return j;
}

TrainedModel model_from_json(const nlohmann::json& j) {
    try {
        if (j.value("format", std::string()) != kModelFormat) throw ParseError("not a relex model file");
        if (j.at("version").get<int>() != kModelVersion)
            throw ParseError("unsupported model version " + j.at("version").dump());
        TrainedModel model;
        model.classifier = j.at("classifier").get<std::string>();
        model.pre.signature = {j.at("relation").get<std::string>(), j.at("arg_types").get<std::vector<std::string>>()};
        model.pre.signature.validate();
        model.pre.max_minimal_span = j.at("max_minimal_span").get<std::size_t>();
        const auto rules = parse_alias_ruleset(j.at("alias_rules").get<std::string>());
        if (!rules) throw ParseError("unknown alias rule set in model");
        model.pre.alias_rules = *rules;
        const auto stop = j.at("stopwords").get<std::vector<std::string>>();
        model.pre.stopwords = StopwordSet({stop.begin(), stop.end()});
        model.pre.clusters = clusters_from_json(j.at("clusters"));
        model.training_instances = j.value("training_instances", std::size_t{0});
        model.training_positives = j.value("training_positives", std::size_t{0});
        model.iterations = j.value("iterations", std::size_t{0});
        model.converged = j.value("converged", true);
        if (model.classifier == "svm") {
            const auto& s = j.at("svm");
            SvmModel& m = model.svm;
            m.kernel.lambda = s.at("lambda").get<double>();
            m.kernel.n_prime = s.at("n_prime").get<int>();
            m.kernel.validate();
            m.C = s.at("C").get<double>();
            m.bias = s.at("bias").get<double>();
            m.arity = s.at("arity").get<std::size_t>();
            m.converged = model.converged;
            m.support_indices = s.at("support_indices").get<std::vector<std::size_t>>();
            m.coefficients = s.at("coefficients").get<std::vector<double>>();
            for (const auto& sj : s.at("supports")) m.supports.push_back(sequence_from_json(sj));
            if (m.coefficients.size() != m.supports.size() || m.support_indices.size() != m.supports.size())
                throw ParseError("support vector counts disagree");
            for (const auto& sv : m.supports)
                if (sv.arity != m.arity) throw ParseError("support vector arity disagrees with the model");
        } else if (model.classifier == "maxent") {
            const auto& s = j.at("maxent");
            MaxEntModel& m = model.maxent;
            m.l2 = s.at("l2").get<double>();
            const auto names = s.at("features").get<std::vector<std::string>>();
            m.weights = s.at("weights").get<std::vector<double>>();
            if (names.size() != m.weights.size()) throw ParseError("feature and weight counts disagree");
            for (std::size_t i = 0; i < names.size(); ++i)
                if (!m.dictionary.emplace(names[i], i).second) throw ParseError("duplicate feature '" + names[i] + "'");
            m.converged = model.converged;
            m.iterations = model.iterations;
        } else {
            throw ParseError("unknown classifier '" + model.classifier + "'");
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed model: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("malformed model: ") + e.what());
    } catch (const InvariantError& e) {
        throw ParseError(std::string("malformed model: ") + e.what());
    }
}

void save_model(const TrainedModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write model file: " + path);
    out << model_to_json(model).dump(1) << '\n';
}

TrainedModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open model file: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed model: ") + e.what());
    }
    return model_from_json(j);
}

}  // namespace relex
