#ifndef TOM_TEXT_HPP
#define TOM_TEXT_HPP

#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "tom/errors.hpp"
#include "tom/stemmer.hpp"
#include "tom/strings.hpp"

namespace tom {

/// Which record fields feed the descriptor stream.
enum class DescriptorSource { AuthorKeywords, Title, ReferenceTitles };

struct DescriptorSources {
    bool author_keywords = true;
    bool title = true;
    bool reference_titles = true;

    bool any() const { return author_keywords || title || reference_titles; }
};

class StopwordSet {
public:
    StopwordSet() = default;
    explicit StopwordSet(std::unordered_set<std::string> words) : words_(std::move(words)) {}

    bool contains(const std::string& w) const { return words_.count(w) > 0; }
    size_t size() const { return words_.size(); }

    /// Built-in English list; overridable by file (one word per line).
    static const StopwordSet& builtin();

    static StopwordSet from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot read stopword file: " + path);
        std::unordered_set<std::string> words;
        std::string line;
        while (std::getline(in, line)) {
            std::string w = detail::to_lower(detail::trim(line));
            if (!w.empty() && w[0] != '#') words.insert(w);
        }
        return StopwordSet(std::move(words));
    }

private:
    std::unordered_set<std::string> words_;
};

inline const StopwordSet& StopwordSet::builtin() {
    static const StopwordSet set{[] {
        static const char* kWords[] = {
            "a", "about", "above", "after", "again", "against", "all", "also", "although",
            "always", "am", "among", "an", "and", "any", "are", "around", "as", "at",
            "be", "became", "because", "become", "becomes", "been", "before", "being",
            "below", "besides", "between", "beyond", "both", "but", "by", "came", "can",
            "cannot", "come", "could", "did", "do", "does", "doing", "down", "during",
            "each", "either", "else", "ever", "every", "few", "for", "from", "further",
            "get", "gets", "give", "goes", "got", "had", "has", "have", "having", "he",
            "her", "here", "hers", "herself", "him", "himself", "his", "how", "however",
            "i", "if", "in", "indeed", "instead", "into", "is", "it", "its", "itself",
            "just", "least", "less", "like", "made", "make", "many", "may", "maybe", "me",
            "might", "more", "most", "much", "must", "my", "myself", "neither", "never",
            "no", "nor", "not", "now", "of", "off", "often", "on", "once", "one", "only",
            "onto", "or", "other", "ought", "our", "ours", "ourselves", "out", "over",
            "own", "per", "perhaps", "rather", "said", "same", "say", "says", "seem",
            "seemed", "seems", "several", "shall", "she", "should", "since", "so", "some",
            "still", "such", "take", "taken", "than", "that", "the", "their", "theirs",
            "them", "themselves", "then", "there", "these", "they", "this", "those",
            "though", "through", "thus", "to", "together", "too", "toward", "towards",
            "under", "until", "up", "upon", "us", "used", "using", "very", "via", "was",
            "we", "well", "were", "what", "when", "where", "whether", "which", "while",
            "who", "whom", "why", "with", "within", "without", "would", "yet", "you",
            "your", "yours", "yourself", "yourselves",
        };
        std::unordered_set<std::string> words;
        for (const char* w : kWords) words.insert(w);
        return words;
    }()};
    return set;
}

namespace detail {

// ASCII case folding and punctuation stripping; bytes >= 0x80 pass through.
inline std::string fold_token(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (unsigned char c : raw) {
        if (c >= 0x80) {
            out.push_back(static_cast<char>(c));
        } else if (std::isalnum(c)) {
            out.push_back(static_cast<char>(std::tolower(c)));
        }
    }
    return out;
}

// descriptor words split on whitespace and on '_', so canonical phrase
// forms re-enter normalization as their constituent words
inline std::vector<std::string> split_words(std::string_view raw) {
    std::string spaced(raw);
    for (char& c : spaced)
        if (c == '_') c = ' ';
    return split_ws(spaced);
}

inline bool digits_only(std::string_view s) {
    if (s.empty()) return false;
    for (unsigned char c : s)
        if (!std::isdigit(c)) return false;
    return true;
}

// Porter stemming iterated to a fixed point so that canonical forms are
// stable under re-normalization.
inline std::string stem_fixpoint(std::string word) {
    for (int pass = 0; pass < 8; ++pass) {
        std::string next = porter_stem(word);
        if (next == word) break;
        word = std::move(next);
    }
    return word;
}

} // namespace detail

/// Normalizes one raw descriptor into its canonical term form.
///
/// Per whitespace-separated word: lowercase, strip punctuation, drop
/// digits-only tokens, stopwords and tokens shorter than min_len, then
/// stem. The stopword and length filters run again on the stemmed form so
/// canonical forms are fixed points of re-normalization. Surviving words
/// of a multi-word phrase are rejoined with '_'. Returns nothing when
/// every word is dropped.
inline std::optional<std::string> normalize_term(std::string_view raw,
                                                 const StopwordSet& stopwords,
                                                 int min_len = 2) {
    const size_t floor_len = static_cast<size_t>(std::max(min_len, 2));
    std::string canonical;
    for (const std::string& word : detail::split_words(raw)) {
        std::string folded = detail::fold_token(word);
        if (folded.empty()) continue;
        if (detail::digits_only(folded)) continue;
        if (stopwords.contains(folded)) continue;
        if (static_cast<int>(folded.size()) < min_len) continue;
        std::string stemmed = detail::stem_fixpoint(std::move(folded));
        if (stemmed.size() < floor_len) continue;
        if (stopwords.contains(stemmed)) continue;
        if (!canonical.empty()) canonical.push_back('_');
        canonical += stemmed;
    }
    if (canonical.empty()) return std::nullopt;
    return canonical;
}

} // namespace tom

#endif
