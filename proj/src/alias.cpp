#include "relex/alias.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "relex/error.hpp"

namespace relex {

std::optional<AliasRuleSet> parse_alias_ruleset(std::string_view name) {
    if (name == "biomedical-bacteria") return AliasRuleSet::BiomedicalBacteria;
    if (name == "biomedical-prefix") return AliasRuleSet::BiomedicalPrefix;
    if (name == "general") return AliasRuleSet::General;
    return std::nullopt;
}

std::string to_string(AliasRuleSet rules) {
    switch (rules) {
        case AliasRuleSet::BiomedicalBacteria: return "biomedical-bacteria";
        case AliasRuleSet::BiomedicalPrefix: return "biomedical-prefix";
        case AliasRuleSet::General: return "general";
    }
    return "general";
}

std::string normalize_surface(std::string_view surface) {
    std::string out;
    out.reserve(surface.size());
    bool pending_space = false;
    for (unsigned char c : surface) {
        if (std::isspace(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out += ' ';
        pending_space = false;
        out += static_cast<char>(std::tolower(c));
    }
    return out;
}

namespace {

std::vector<std::string> words(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

bool starts_with(const std::string& s, const std::string& p) { return s.size() >= p.size() && s.compare(0, p.size(), p) == 0; }
bool ends_with(const std::string& s, const std::string& p) {
    return s.size() >= p.size() && s.compare(s.size() - p.size(), p.size(), p) == 0;
}

bool prefix_either(const std::string& a, const std::string& b) { return starts_with(a, b) || starts_with(b, a); }

// "s." abbreviates "salmonella"
bool is_short_form(const std::string& shortw, const std::string& longw) {
    return shortw.size() == 2 && shortw[1] == '.' && longw.size() > 2 && longw[0] == shortw[0] && longw.back() != '.';
}

bool abbreviated_first_word(const std::string& a, const std::string& b) {
    auto wa = words(a), wb = words(b);
    if (wa.size() != wb.size() || wa.size() < 2) return false;
    if (!std::equal(wa.begin() + 1, wa.end(), wb.begin() + 1)) return false;
    return is_short_form(wa[0], wb[0]) || is_short_form(wb[0], wa[0]);
}

bool long_prefix(const std::string& a, const std::string& b) {
    const std::string& shorter = a.size() <= b.size() ? a : b;
    const std::string& longer = a.size() <= b.size() ? b : a;
    return starts_with(longer, shorter) && 2 * shorter.size() > longer.size();
}

bool is_honorific(const std::string& w) { return w == "mr." || w == "ms." || w == "mrs." || w == "mr" || w == "ms" || w == "mrs"; }

bool honorific_one_way(const std::string& titled, const std::string& other) {
    auto w = words(titled);
    return w.size() >= 2 && is_honorific(w.front()) && ends_with(other, w.back());
}

bool ceo_one_way(const std::string& a, const std::string& b) { return starts_with(a, "chief executive") && b == "ceo"; }

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](unsigned char x, unsigned char y) {
               return std::tolower(x) == std::tolower(y);
           });
}

}  // namespace

bool are_aliases(std::string_view a_raw, std::string_view b_raw, AliasRuleSet rules, std::string_view entity_type) {
    const std::string a = normalize_surface(a_raw);
    const std::string b = normalize_surface(b_raw);
    if (a == b) return true;
    if (a.empty() || b.empty()) return false;
    switch (rules) {
        case AliasRuleSet::BiomedicalBacteria:
            return abbreviated_first_word(a, b) || long_prefix(a, b);
        case AliasRuleSet::BiomedicalPrefix:
            return prefix_either(a, b);
        case AliasRuleSet::General:
            if (prefix_either(a, b)) return true;
            if (ceo_one_way(a, b) || ceo_one_way(b, a)) return true;
            if (honorific_one_way(a, b) || honorific_one_way(b, a)) return true;
            if (!iequals(entity_type, "POST") && (ends_with(a, b) || ends_with(b, a))) return true;
            return false;
    }
    return false;
}

AliasPartition::AliasPartition(std::vector<std::vector<std::string>> groups) : groups_(std::move(groups)) {
    for (std::size_t g = 0; g < groups_.size(); ++g)
        for (const auto& id : groups_[g])
            if (!index_.emplace(id, g).second) throw InvariantError("entity '" + id + "' appears in two alias groups");
}

std::size_t AliasPartition::group_of(const std::string& entity_id) const {
    auto it = index_.find(entity_id);
    if (it == index_.end()) throw InvalidArgument("entity '" + entity_id + "' is not in the alias partition");
    return it->second;
}

bool AliasPartition::related(const std::string& a, const std::string& b) const {
    if (a == b) return true;
    auto ia = index_.find(a), ib = index_.find(b);
    return ia != index_.end() && ib != index_.end() && ia->second == ib->second;
}

AliasPartition alias_closure(const std::vector<Entity>& entities, AliasRuleSet rules) {
    const std::size_t n = entities.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (entities[i].entity_type != entities[j].entity_type) continue;
            if (!are_aliases(entities[i].canonical_surface, entities[j].canonical_surface, rules,
                             entities[i].entity_type))
                continue;
            std::size_t ri = find(i), rj = find(j);
            if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
        }
    std::vector<std::vector<std::string>> groups;
    std::vector<std::size_t> slot(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = find(i);
        if (slot[r] == n) {
            slot[r] = groups.size();
            groups.emplace_back();
        }
        groups[slot[r]].push_back(entities[i].entity_id);
    }
    return AliasPartition(std::move(groups));
}

std::unordered_map<std::string, AliasPartition> alias_closure(const Corpus& corpus, AliasRuleSet rules) {
    std::unordered_map<std::string, AliasPartition> out;
    for (const auto& doc : corpus.documents) out.emplace(doc.doc_id, alias_closure(doc.entities, rules));
    return out;
}

}  // namespace relex
