#pragma once

#include <string>
#include <string_view>
#include <unordered_set>

namespace relex {

/// Lowercased stopword set. Words are compared after ASCII lowercasing.
class StopwordSet {
public:
    StopwordSet() = default;
    explicit StopwordSet(std::unordered_set<std::string> words) : words_(std::move(words)) {}

    bool contains(std::string_view lowered) const { return words_.count(std::string(lowered)) > 0; }
    const std::unordered_set<std::string>& words() const noexcept { return words_; }
    std::size_t size() const noexcept { return words_.size(); }

private:
    std::unordered_set<std::string> words_;
};

/// Built-in English function-word list: articles, pronouns, auxiliaries,
/// conjunctions and quantifiers. Prepositions and negations are kept as words.
const StopwordSet& default_stopwords();

/// One word per line; blank lines and lines starting with '#' are ignored.
StopwordSet load_stopwords(const std::string& path);

std::string to_lower(std::string_view s);

/// True when the token has at least one alphanumeric character.
bool is_word_like(std::string_view token);

}  // namespace relex
