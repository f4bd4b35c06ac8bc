#include "codemap/text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <stdexcept>

#include "codemap/util.hpp"

namespace codemap {

bool TokenizedText::contains_lemma(std::string_view lemma) const {
    return std::any_of(tokens.begin(), tokens.end(),
                       [&](const WordToken& t) { return t.lemma == lemma; });
}

std::vector<std::string> TokenizedText::lemmas() const {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(t.lemma);
    return out;
}

namespace {

// Irregular forms plus -ing/-ed words whose base restores a silent 'e'
// (the suffix rules cannot recover those).
const std::unordered_map<std::string, std::string>& lemma_exceptions() {
    static const std::unordered_map<std::string, std::string> table = {
        {"thrown", "throw"},   {"threw", "throw"},    {"caught", "catch"},
        {"ran", "run"},        {"built", "build"},    {"wrote", "write"},
        {"written", "write"},  {"made", "make"},      {"found", "find"},
        {"got", "get"},        {"gotten", "get"},     {"gave", "give"},
        {"given", "give"},     {"took", "take"},      {"taken", "take"},
        {"saw", "see"},        {"seen", "see"},       {"went", "go"},
        {"gone", "go"},        {"came", "come"},      {"kept", "keep"},
        {"left", "leave"},     {"meant", "mean"},     {"said", "say"},
        {"children", "child"}, {"indices", "index"},  {"matrices", "matrix"},
        {"vertices", "vertex"},{"data", "data"},
        // silent-e restorations
        {"using", "use"},      {"used", "use"},       {"having", "have"},
        {"making", "make"},    {"writing", "write"},  {"coming", "come"},
        {"creating", "create"},{"created", "create"}, {"parsing", "parse"},
        {"parsed", "parse"},   {"typing", "type"},    {"typed", "type"},
        {"storing", "store"},  {"stored", "store"},   {"comparing", "compare"},
        {"compared", "compare"},{"removing", "remove"},{"removed", "remove"},
        {"declaring", "declare"},{"declared", "declare"},{"encoding", "encode"},
        {"decoding", "decode"},{"naming", "name"},    {"named", "name"},
        // -ing words that are not gerunds
        {"string", "string"},  {"thing", "thing"},    {"something", "something"},
        {"anything", "anything"},{"everything", "everything"},{"nothing", "nothing"},
        {"king", "king"},      {"ring", "ring"},      {"spring", "spring"},
        {"swing", "swing"},    {"during", "during"},
    };
    return table;
}

bool ends_with(const std::string& s, std::string_view suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

// Undo consonant doubling after stripping -ing/-ed (stopped -> stop), but
// leave ll/ss/zz alone (calling -> call).
std::string undo_double(std::string stem) {
    if (stem.size() >= 3) {
        char a = stem[stem.size() - 1], b = stem[stem.size() - 2];
        if (a == b && !is_vowel(a) && a != 'l' && a != 's' && a != 'z') stem.pop_back();
    }
    return stem;
}

}  // namespace

std::string lemmatize(const std::string& word) {
    auto exc = lemma_exceptions().find(word);
    if (exc != lemma_exceptions().end()) return exc->second;

    const std::size_t n = word.size();
    if (ends_with(word, "ies") && n >= 5) return word.substr(0, n - 3) + "y";
    if (ends_with(word, "sses")) return word.substr(0, n - 2);
    if ((ends_with(word, "xes") || ends_with(word, "zes") || ends_with(word, "ches") ||
         ends_with(word, "shes")) && n >= 5)
        return word.substr(0, n - 2);
    if (ends_with(word, "s") && n >= 3 && !ends_with(word, "ss") && !ends_with(word, "us") &&
        !ends_with(word, "is"))
        return word.substr(0, n - 1);
    if (ends_with(word, "ing") && n >= 6) {
        std::string stem = word.substr(0, n - 3);
        if (stem.size() >= 3) return undo_double(std::move(stem));
        return word;
    }
    if (ends_with(word, "eed")) {
        if (n >= 6) return word.substr(0, n - 1);
        return word;
    }
    if (ends_with(word, "ied") && n >= 5) return word.substr(0, n - 3) + "y";
    if (ends_with(word, "ed") && n >= 5) {
        std::string stem = word.substr(0, n - 2);
        if (stem.size() >= 3) return undo_double(std::move(stem));
        return word;
    }
    return word;
}

const std::unordered_set<std::string>& default_stopwords() {
    static const std::unordered_set<std::string> words = {
        "the", "a", "an", "is", "are", "was", "were", "be", "been", "being", "am",
        "have", "has", "had", "having", "do", "does", "did", "doing", "done",
        "will", "would", "shall", "should", "can", "could", "may", "might", "must",
        "i", "you", "he", "she", "it", "we", "they", "me", "him", "her", "us", "them",
        "my", "your", "his", "its", "our", "their", "mine", "yours", "hers", "theirs",
        "this", "that", "these", "those", "there", "here",
        "what", "which", "who", "whom", "whose", "when", "where", "why", "how",
        "and", "or", "but", "nor", "so", "yet", "if", "while", "because", "although",
        "of", "in", "on", "at", "by", "for", "with", "from", "to", "into", "onto",
        "upon", "about", "over", "under", "between", "among", "through", "during",
        "before", "after", "above", "below", "up", "down", "out", "off", "again",
        "further", "then", "once", "as", "than", "too", "very", "just", "also",
        "not", "no", "only", "own", "same", "all", "any", "both", "each", "few",
        "more", "most", "other", "some", "such",
    };
    return words;
}

Preprocessor Preprocessor::from_stopword_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open stop word file: " + path);
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        auto w = trim(line);
        if (!w.empty() && w.front() != '#') words.insert(lowercase(w));
    }
    return Preprocessor(std::move(words));
}

TokenizedText Preprocessor::preprocess(std::string_view text) const {
    TokenizedText out;
    std::string run;
    auto flush = [&]() {
        if (run.empty()) return;
        WordToken tok;
        tok.surface = run;
        tok.lemma = lemmatize(lowercase(run));
        tok.is_stopword = is_stopword(tok.lemma);
        out.tokens.push_back(std::move(tok));
        run.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (std::isalnum(c)) {
            run.push_back(static_cast<char>(c));
        } else if (c == '\'' && !run.empty() && i + 1 < text.size() &&
                   std::isalnum(static_cast<unsigned char>(text[i + 1]))) {
            // intra-word apostrophe: "don't" -> "dont"
            continue;
        } else {
            flush();
        }
    }
    flush();
    return out;
}

}  // namespace codemap
