#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace codemap {

struct WordToken {
    std::string surface;   // as written, original case
    std::string lemma;     // lowercase base form
    bool is_stopword = false;
};

struct TokenizedText {
    std::vector<WordToken> tokens;

    bool empty() const { return tokens.empty(); }
    std::size_t size() const { return tokens.size(); }
    bool contains_lemma(std::string_view lemma) const;
    std::vector<std::string> lemmas() const;
};

// Ordered suffix-rule lemmatizer (plural -s/-es/-ies, gerund -ing, past -ed)
// with an irregular-form exception table. Input must be lowercase.
std::string lemmatize(const std::string& word);

// The bundled stop list (~120 words). Overridable per corpus run.
const std::unordered_set<std::string>& default_stopwords();

class Preprocessor {
public:
    Preprocessor() : stopwords_(&default_stopwords()) {}
    explicit Preprocessor(std::unordered_set<std::string> stopwords)
        : owned_stopwords_(std::move(stopwords)), stopwords_(&owned_stopwords_) {}

    static Preprocessor from_stopword_file(const std::string& path);

    // Splits on non-alphanumeric boundaries (intra-word apostrophes removed),
    // lowercases, lemmatizes, flags stop words.
    TokenizedText preprocess(std::string_view text) const;

    bool is_stopword(const std::string& lemma) const { return stopwords_->count(lemma) > 0; }

private:
    std::unordered_set<std::string> owned_stopwords_;
    const std::unordered_set<std::string>* stopwords_;
};

}  // namespace codemap
