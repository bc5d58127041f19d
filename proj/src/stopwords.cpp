#include "relex/stopwords.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "relex/error.hpp"

namespace relex {

const StopwordSet& default_stopwords() {
    static const StopwordSet set({
        // articles and demonstratives
        "a", "an", "the", "this", "that", "these", "those",
        // pronouns
        "i", "me", "my", "mine", "myself", "we", "us", "our", "ours", "ourselves", "you", "your", "yours",
        "yourself", "yourselves", "he", "him", "his", "himself", "she", "her", "hers", "herself", "it", "its",
        "itself", "they", "them", "their", "theirs", "themselves", "one", "ones",
        // relative / interrogative
        "who", "whom", "whose", "which", "what", "whatever", "whoever", "whichever", "where", "when", "why",
        "how", "wherever", "whenever",
        // auxiliaries and copulas
        "is", "am", "are", "was", "were", "be", "been", "being", "has", "have", "had", "having", "do", "does",
        "did", "doing", "will", "would", "shall", "should", "can", "could", "may", "might", "must", "ought",
        "'s", "'re", "'ve", "'d", "'ll", "'m",
        // conjunctions
        "and", "or", "but", "nor", "yet", "so", "either", "neither", "both", "if", "then", "than", "because",
        "while", "whereas", "although", "though", "unless", "whether", "however", "thus", "therefore",
        "moreover", "furthermore", "hence",
        // quantifiers and degree words
        "some", "any", "each", "every", "all", "most", "more", "many", "much", "few", "several", "such",
        "same", "other", "another", "own", "also", "very", "too", "just", "only", "even", "still", "quite",
        "rather", "almost", "already", "here", "there", "again", "ever", "else", "etc",
    });
    return set;
}

StopwordSet load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open stopword file '" + path + "'");
    std::unordered_set<std::string> words;
    for (std::string line; std::getline(in, line);) {
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        auto e = line.find_last_not_of(" \t\r");
        words.insert(to_lower(line.substr(b, e - b + 1)));
    }
    return StopwordSet(std::move(words));
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

bool is_word_like(std::string_view token) {
    return std::any_of(token.begin(), token.end(), [](unsigned char c) { return std::isalnum(c) || c >= 0x80; });
}

}  // namespace relex
