#include "relex/config.hpp"

#include <fstream>
#include <set>

#include "relex/error.hpp"

namespace relex {

const std::vector<RelationPreset>& relation_presets() {
    static const std::vector<RelationPreset> presets = {
        {"Succession", {"ORG", "POST", "PER", "PER"}, 2, AliasRuleSet::General},
        {"Lives_In", {"Bacteria", "Location"}, 4, AliasRuleSet::BiomedicalBacteria},
        {"Interact", {"Drug", "Gene", "Mutation"}, 2, AliasRuleSet::BiomedicalPrefix},
    };
    return presets;
}

const RelationPreset* find_preset(const std::string& name) {
    for (const auto& p : relation_presets())
        if (p.name == name) return &p;
    return nullptr;
}

void PipelineConfig::validate() const {
    kernel.validate();
    if (classifier != "svm" && classifier != "maxent")
        throw InvalidArgument("classifier must be 'svm' or 'maxent', got '" + classifier + "'");
    if (!(C > 0)) throw InvalidArgument("C must be positive");
    if (!(svm_tolerance > 0)) throw InvalidArgument("svm_tolerance must be positive");
    if (svm_max_iterations == 0) throw InvalidArgument("svm_max_iterations must be positive");
    if (!(l2 >= 0)) throw InvalidArgument("l2 must be non-negative");
    if (!(cluster_threshold >= 0 && cluster_threshold <= 2)) throw InvalidArgument("cluster_threshold must be in [0, 2]");
    if (!signature.relation_name.empty()) signature.validate();
}

void PipelineConfig::require_relation() const {
    if (signature.relation_name.empty())
        throw InvalidArgument("no relation configured (use --relation or a config file)");
    signature.validate();
}

void set_relation(PipelineConfig& cfg, const std::string& name, const std::vector<std::string>& arg_types) {
    if (const auto* p = find_preset(name)) {
        cfg.signature = {p->name, arg_types.empty() ? p->arg_types : arg_types};
        cfg.max_minimal_span = p->max_minimal_span;
        cfg.alias_rules = p->alias_rules;
        return;
    }
    if (arg_types.empty()) throw InvalidArgument("relation '" + name + "' is not built in; argument types are required");
    cfg.signature = {name, arg_types};
}

namespace {

template <typename T>
T get_as(const nlohmann::json& j, const std::string& key) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw InvalidArgument("config key '" + key + "' has the wrong type");
    }
}

}  // namespace

void apply_config_json(PipelineConfig& cfg, const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
    static const std::set<std::string> known = {
        "relation", "arg_types", "max_minimal_span", "alias_rules", "lambda", "n_prime",
        "classifier", "C", "svm_tolerance", "svm_max_iterations", "l2", "instance_weights",
        "stopwords", "clusters", "min_freq", "cluster_threshold", "seed", "threads"};
    for (const auto& [key, _] : j.items())
        if (!known.count(key)) throw InvalidArgument("unknown config key '" + key + "'");

    if (j.contains("relation")) {
        std::vector<std::string> types;
        if (j.contains("arg_types")) types = get_as<std::vector<std::string>>(j, "arg_types");
        set_relation(cfg, get_as<std::string>(j, "relation"), types);
    } else if (j.contains("arg_types")) {
        cfg.signature.arg_types = get_as<std::vector<std::string>>(j, "arg_types");
    }
    if (j.contains("max_minimal_span")) cfg.max_minimal_span = get_as<std::size_t>(j, "max_minimal_span");
    if (j.contains("alias_rules")) {
        auto name = get_as<std::string>(j, "alias_rules");
        auto rules = parse_alias_ruleset(name);
        if (!rules) throw InvalidArgument("unknown alias rule set '" + name + "'");
        cfg.alias_rules = *rules;
    }
    if (j.contains("lambda")) cfg.kernel.lambda = get_as<double>(j, "lambda");
    if (j.contains("n_prime")) cfg.kernel.n_prime = get_as<int>(j, "n_prime");
    if (j.contains("classifier")) cfg.classifier = get_as<std::string>(j, "classifier");
    if (j.contains("C")) cfg.C = get_as<double>(j, "C");
    if (j.contains("svm_tolerance")) cfg.svm_tolerance = get_as<double>(j, "svm_tolerance");
    if (j.contains("svm_max_iterations")) cfg.svm_max_iterations = get_as<std::size_t>(j, "svm_max_iterations");
    if (j.contains("l2")) cfg.l2 = get_as<double>(j, "l2");
    if (j.contains("instance_weights")) cfg.instance_weights = get_as<bool>(j, "instance_weights");
    if (j.contains("stopwords")) cfg.stopwords_path = get_as<std::string>(j, "stopwords");
    if (j.contains("clusters")) cfg.clusters_path = get_as<std::string>(j, "clusters");
    if (j.contains("min_freq")) cfg.min_freq = get_as<std::size_t>(j, "min_freq");
    if (j.contains("cluster_threshold")) cfg.cluster_threshold = get_as<double>(j, "cluster_threshold");
    if (j.contains("seed")) cfg.seed = get_as<std::uint64_t>(j, "seed");
    if (j.contains("threads")) cfg.threads = get_as<unsigned>(j, "threads");
    cfg.validate();
}

PipelineConfig load_config(const std::string& path, PipelineConfig base) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed config: ") + e.what());
    }
    apply_config_json(base, j);
    return base;
}

nlohmann::json config_to_json(const PipelineConfig& cfg) {
    nlohmann::json presets = nlohmann::json::object();
    for (const auto& p : relation_presets())
        presets[p.name] = {{"arg_types", p.arg_types},
                           {"max_minimal_span", p.max_minimal_span},
                           {"alias_rules", to_string(p.alias_rules)}};
    nlohmann::json j{{"relation", cfg.signature.relation_name.empty() ? nlohmann::json(nullptr)
                                                                      : nlohmann::json(cfg.signature.relation_name)},
                     {"arg_types", cfg.signature.arg_types},
                     {"max_minimal_span", cfg.max_minimal_span},
                     {"alias_rules", to_string(cfg.alias_rules)},
                     {"lambda", cfg.kernel.lambda},
                     {"n_prime", cfg.kernel.n_prime},
                     {"classifier", cfg.classifier},
                     {"C", cfg.C},
                     {"svm_tolerance", cfg.svm_tolerance},
                     {"svm_max_iterations", cfg.svm_max_iterations},
                     {"l2", cfg.l2},
                     {"instance_weights", cfg.instance_weights},
                     {"stopwords", cfg.stopwords_path},
                     {"clusters", cfg.clusters_path},
                     {"min_freq", cfg.min_freq},
                     {"cluster_threshold", cfg.cluster_threshold},
                     {"seed", cfg.seed},
                     {"threads", cfg.threads}};
    j["relation_presets"] = presets;
    return j;
}

}  // namespace relex
