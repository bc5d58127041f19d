#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "relex/corpus.hpp"

namespace relex {

/// High-precision alias rule families.
///  - BiomedicalBacteria: identical; abbreviated genus ("S. Typhimurium");
///    prefix longer than half the other surface.
///  - BiomedicalPrefix: one surface is a prefix of the other.
///  - General: identical; prefix; "chief executive..." vs "ceo";
///    Mr./Ms./Mrs. whose last word ends the other surface; suffix (not for POST).
enum class AliasRuleSet { BiomedicalBacteria, BiomedicalPrefix, General };

std::optional<AliasRuleSet> parse_alias_ruleset(std::string_view name);
std::string to_string(AliasRuleSet rules);

/// Lowercases ASCII letters, collapses whitespace runs, trims.
std::string normalize_surface(std::string_view surface);

/// Symmetric. `entity_type` is the shared type of both surfaces when known;
/// it only affects the General suffix rule, which is disabled for POST.
bool are_aliases(std::string_view a, std::string_view b, AliasRuleSet rules, std::string_view entity_type = {});

/// Partition of one document's entities into alias groups.
class AliasPartition {
public:
    AliasPartition() = default;
    explicit AliasPartition(std::vector<std::vector<std::string>> groups);

    const std::vector<std::vector<std::string>>& groups() const noexcept { return groups_; }
    /// Group index of an entity; throws InvalidArgument for unknown ids.
    std::size_t group_of(const std::string& entity_id) const;
    bool contains(const std::string& entity_id) const { return index_.count(entity_id) > 0; }
    /// Identical or in the same group.
    bool related(const std::string& a, const std::string& b) const;

private:
    std::vector<std::vector<std::string>> groups_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Transitive closure of `are_aliases` over canonical surfaces; entities of
/// different types are never grouped. Groups are ordered by their first
/// member's position in `entities`.
AliasPartition alias_closure(const std::vector<Entity>& entities, AliasRuleSet rules);

/// Alias partitions for every document of a corpus, keyed by doc_id.
std::unordered_map<std::string, AliasPartition> alias_closure(const Corpus& corpus, AliasRuleSet rules);

}  // namespace relex
