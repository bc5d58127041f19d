#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "relex/alias.hpp"
#include "relex/corpus.hpp"
#include "relex/kernel.hpp"

namespace relex {

/// Built-in relation with its argument types, minimal-span threshold and
/// alias rules.
struct RelationPreset {
    std::string name;
    std::vector<std::string> arg_types;
    std::size_t max_minimal_span;
    AliasRuleSet alias_rules;
};

const std::vector<RelationPreset>& relation_presets();
const RelationPreset* find_preset(const std::string& name);

inline constexpr std::size_t kDefaultMaxMinimalSpan = 2;

struct PipelineConfig {
    RelationSignature signature;  // empty name until configured
    std::size_t max_minimal_span = kDefaultMaxMinimalSpan;
    AliasRuleSet alias_rules = AliasRuleSet::General;
    KernelParams kernel;

    std::string classifier = "svm";  // svm | maxent
    double C = 1.0;
    double svm_tolerance = 1e-3;
    std::size_t svm_max_iterations = 100000;
    double l2 = 1.0;
    bool instance_weights = true;

    std::string stopwords_path;  // empty: built-in list
    std::string clusters_path;   // empty: no word generalization
    std::size_t min_freq = 5;
    double cluster_threshold = 0.4;

    std::uint64_t seed = 7;
    unsigned threads = 1;

    /// Throws InvalidArgument on out-of-range values.
    void validate() const;
    /// Throws InvalidArgument when no relation is configured.
    void require_relation() const;
};

/// Selects a relation. Presets fill in argument types, threshold and alias
/// rules; other names need `arg_types`.
void set_relation(PipelineConfig& cfg, const std::string& name, const std::vector<std::string>& arg_types = {});

/// Applies a JSON object on top of `cfg`. Unknown keys are rejected. When
/// "relation" is given its preset is applied before the other keys.
void apply_config_json(PipelineConfig& cfg, const nlohmann::json& j);
PipelineConfig load_config(const std::string& path, PipelineConfig base = {});

/// Effective configuration plus the preset table.
nlohmann::json config_to_json(const PipelineConfig& cfg);

}  // namespace relex
