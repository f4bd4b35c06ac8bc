#include "codemap/pos_tag.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <stdexcept>

#include "codemap/util.hpp"

namespace codemap {

bool TaggedTitle::contains_lemma(std::string_view lemma) const {
    return std::any_of(tokens.begin(), tokens.end(),
                       [&](const TaggedToken& t) { return t.lemma == lemma; });
}

const std::unordered_set<std::string>& pos_tag_inventory() {
    static const std::unordered_set<std::string> tags = {
        "CC", "CD", "DT", "EX", "FW", "IN", "JJ", "JJR", "JJS", "LS", "MD",
        "NN", "NNS", "NNP", "NNPS", "PDT", "POS", "PRP", "PRP$", "RB", "RBR",
        "RBS", "RP", "SYM", "TO", "UH", "VB", "VBD", "VBG", "VBN", "VBP",
        "VBZ", "WDT", "WP", "WP$", "WRB",
    };
    return tags;
}

namespace {

// Closed-class lexicon. Content words deliberately stay out: they go through
// the suffix heuristics and default to NN, which suits noun-dominant titles.
const std::unordered_map<std::string, std::string>& base_lexicon() {
    static const std::unordered_map<std::string, std::string> words = {
        // determiners
        {"the", "DT"}, {"a", "DT"}, {"an", "DT"}, {"this", "DT"}, {"that", "DT"},
        {"these", "DT"}, {"those", "DT"}, {"each", "DT"}, {"every", "DT"},
        {"either", "DT"}, {"neither", "DT"}, {"some", "DT"}, {"any", "DT"},
        {"no", "DT"}, {"all", "DT"}, {"both", "DT"}, {"another", "DT"}, {"such", "DT"},
        // prepositions
        {"in", "IN"}, {"of", "IN"}, {"on", "IN"}, {"at", "IN"}, {"by", "IN"},
        {"for", "IN"}, {"with", "IN"}, {"from", "IN"}, {"about", "IN"},
        {"above", "IN"}, {"across", "IN"}, {"after", "IN"}, {"against", "IN"},
        {"along", "IN"}, {"among", "IN"}, {"around", "IN"}, {"as", "IN"},
        {"before", "IN"}, {"behind", "IN"}, {"below", "IN"}, {"beneath", "IN"},
        {"beside", "IN"}, {"between", "IN"}, {"beyond", "IN"}, {"during", "IN"},
        {"except", "IN"}, {"inside", "IN"}, {"into", "IN"}, {"like", "IN"},
        {"near", "IN"}, {"onto", "IN"}, {"outside", "IN"}, {"over", "IN"},
        {"past", "IN"}, {"per", "IN"}, {"since", "IN"}, {"through", "IN"},
        {"throughout", "IN"}, {"toward", "IN"}, {"under", "IN"}, {"underneath", "IN"},
        {"until", "IN"}, {"upon", "IN"}, {"via", "IN"}, {"within", "IN"},
        {"without", "IN"}, {"if", "IN"}, {"while", "IN"}, {"because", "IN"},
        {"although", "IN"}, {"though", "IN"}, {"unless", "IN"}, {"whether", "IN"},
        // conjunctions
        {"and", "CC"}, {"or", "CC"}, {"but", "CC"}, {"nor", "CC"}, {"plus", "CC"},
        {"yet", "CC"}, {"so", "CC"},
        // pronouns
        {"i", "PRP"}, {"you", "PRP"}, {"he", "PRP"}, {"she", "PRP"}, {"it", "PRP"},
        {"we", "PRP"}, {"they", "PRP"}, {"me", "PRP"}, {"him", "PRP"}, {"her", "PRP"},
        {"us", "PRP"}, {"them", "PRP"}, {"myself", "PRP"}, {"itself", "PRP"},
        {"themselves", "PRP"}, {"my", "PRP$"}, {"your", "PRP$"}, {"his", "PRP$"},
        {"its", "PRP$"}, {"our", "PRP$"}, {"their", "PRP$"},
        // modals
        {"can", "MD"}, {"could", "MD"}, {"may", "MD"}, {"might", "MD"},
        {"must", "MD"}, {"shall", "MD"}, {"should", "MD"}, {"will", "MD"},
        {"would", "MD"}, {"cannot", "MD"},
        // wh-words
        {"how", "WRB"}, {"when", "WRB"}, {"where", "WRB"}, {"why", "WRB"},
        {"whenever", "WRB"}, {"wherever", "WRB"}, {"what", "WP"}, {"who", "WP"},
        {"whom", "WP"}, {"whoever", "WP"}, {"which", "WDT"}, {"whatever", "WDT"},
        {"whichever", "WDT"}, {"whose", "WP$"},
        // existential / to / negation / common adverbs
        {"there", "EX"}, {"to", "TO"}, {"not", "RB"}, {"nt", "RB"}, {"never", "RB"},
        {"always", "RB"}, {"often", "RB"}, {"also", "RB"}, {"too", "RB"},
        {"very", "RB"}, {"just", "RB"}, {"then", "RB"}, {"once", "RB"},
        {"again", "RB"}, {"here", "RB"}, {"now", "RB"}, {"still", "RB"},
        {"already", "RB"}, {"instead", "RB"}, {"back", "RB"}, {"away", "RB"},
        // auxiliaries and common verbs
        {"be", "VB"}, {"is", "VBZ"}, {"are", "VBP"}, {"was", "VBD"}, {"were", "VBD"},
        {"been", "VBN"}, {"being", "VBG"}, {"am", "VBP"}, {"do", "VB"},
        {"does", "VBZ"}, {"did", "VBD"}, {"done", "VBN"}, {"have", "VB"},
        {"has", "VBZ"}, {"had", "VBD"}, {"get", "VB"}, {"got", "VBD"},
        {"make", "VB"}, {"made", "VBD"}, {"use", "VB"}, {"go", "VB"},
        {"went", "VBD"}, {"know", "VB"}, {"take", "VB"}, {"took", "VBD"},
        {"see", "VB"}, {"saw", "VBD"}, {"come", "VB"}, {"came", "VBD"},
        {"want", "VB"}, {"give", "VB"}, {"gave", "VBD"}, {"find", "VB"},
        {"found", "VBD"}, {"tell", "VB"}, {"told", "VBD"}, {"ask", "VB"},
        {"work", "VB"}, {"call", "VB"}, {"try", "VB"}, {"need", "VB"},
        {"run", "VB"}, {"set", "VB"}, {"put", "VB"}, {"mean", "VB"},
        {"keep", "VB"}, {"kept", "VBD"}, {"let", "VB"}, {"read", "VB"},
        {"write", "VB"}, {"wrote", "VBD"}, {"avoid", "VB"}, {"throw", "VB"},
        {"threw", "VBD"}, {"thrown", "VBN"}, {"catch", "VB"}, {"fix", "VB"},
        {"add", "VB"}, {"remove", "VB"}, {"check", "VB"}, {"convert", "VB"},
        {"create", "VB"}, {"delete", "VB"}, {"pass", "VB"}, {"print", "VB"},
        {"return", "VB"}, {"store", "VB"}, {"parse", "VB"}, {"sort", "VB"},
        {"split", "VB"}, {"compare", "VB"}, {"declare", "VB"}, {"implement", "VB"},
        {"explain", "VB"}, {"suggest", "VB"}, {"debug", "VB"},
        // numbers written out
        {"zero", "CD"}, {"one", "CD"}, {"two", "CD"}, {"three", "CD"},
        {"four", "CD"}, {"five", "CD"}, {"six", "CD"}, {"seven", "CD"},
        {"eight", "CD"}, {"nine", "CD"}, {"ten", "CD"},
        // frequent adjectives whose suffix shape misleads
        {"good", "JJ"}, {"best", "JJS"}, {"better", "JJR"}, {"bad", "JJ"},
        {"worst", "JJS"}, {"worse", "JJR"}, {"new", "JJ"}, {"old", "JJ"},
        {"first", "JJ"}, {"last", "JJ"}, {"next", "JJ"}, {"same", "JJ"},
        {"different", "JJ"}, {"own", "JJ"}, {"right", "JJ"}, {"wrong", "JJ"},
        {"big", "JJ"}, {"small", "JJ"}, {"large", "JJ"}, {"long", "JJ"},
        {"short", "JJ"}, {"high", "JJ"}, {"low", "JJ"}, {"fast", "JJ"},
        {"slow", "JJ"}, {"easy", "JJ"}, {"hard", "JJ"}, {"simple", "JJ"},
        {"common", "JJ"}, {"possible", "JJ"}, {"empty", "JJ"}, {"full", "JJ"},
        {"safe", "JJ"}, {"proper", "JJ"}, {"easier", "JJR"}, {"faster", "JJR"},
        {"simpler", "JJR"}, {"cheaper", "JJR"}, {"slower", "JJR"},
        {"many", "JJ"}, {"much", "JJ"}, {"more", "JJR"}, {"most", "JJS"},
        {"few", "JJ"}, {"several", "JJ"}, {"other", "JJ"}, {"second", "JJ"},
        // -ing forms that are plain nouns; mirrors the lemmatizer exceptions
        {"string", "NN"}, {"thing", "NN"}, {"something", "NN"}, {"anything", "NN"},
        {"everything", "NN"}, {"nothing", "NN"}, {"king", "NN"}, {"ring", "NN"},
        {"spring", "NN"}, {"swing", "NN"}, {"warning", "NN"}, {"encoding", "NN"},
    };
    return words;
}

bool ends_with(const std::string& s, std::string_view suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool all_digit_shape(const std::string& s) {
    bool digit = false;
    for (char c : s) {
        if (std::isdigit(static_cast<unsigned char>(c))) digit = true;
        else if (c != '.' && c != ',' && c != '-') return false;
    }
    return digit;
}

}  // namespace

PosTagger::PosTagger() : lexicon_(base_lexicon()) {}

void PosTagger::load_lexicon_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open lexicon file: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty() || line[0] == '#') continue;
        auto fields = split(line, '\t');
        if (fields.size() != 2) throw std::runtime_error("bad lexicon line " + std::to_string(lineno) + " in " + path);
        std::string tag(trim(fields[1]));
        if (!pos_tag_inventory().count(tag))
            throw std::runtime_error("unknown tag '" + tag + "' at line " + std::to_string(lineno) + " in " + path);
        lexicon_[lowercase(trim(fields[0]))] = tag;
    }
}

std::string PosTagger::tag_word(const std::string& w) const {
    auto hit = lexicon_.find(w);
    if (hit != lexicon_.end()) return hit->second;

    const std::size_t n = w.size();
    if (all_digit_shape(w)) return "CD";
    if (ends_with(w, "ing") && n > 4) return "VBG";
    if (ends_with(w, "ed") && n > 3) return "VBD";
    if (ends_with(w, "ly") && n > 3) return "RB";
    if (ends_with(w, "est") && n > 4) return "JJS";
    if ((ends_with(w, "ous") || ends_with(w, "ful") || ends_with(w, "able") ||
         ends_with(w, "ible") || ends_with(w, "ive") || ends_with(w, "less") ||
         ends_with(w, "al")) && n > 4)
        return "JJ";
    if (ends_with(w, "s") && n > 2 && !ends_with(w, "ss") && !ends_with(w, "us") &&
        !ends_with(w, "is"))
        return "NNS";
    return "NN";
}

TaggedTitle PosTagger::tag_title(const TokenizedText& title, std::int64_t post_id) const {
    if (title.empty()) throw std::invalid_argument("cannot tag an empty title");
    TaggedTitle out;
    out.post_id = post_id;
    out.tokens.reserve(title.size());
    for (const auto& tok : title.tokens) {
        TaggedToken t;
        t.surface = tok.surface;
        t.lemma = tok.lemma;
        t.tag = tag_word(lowercase(tok.surface));
        out.tokens.push_back(std::move(t));
    }
    return out;
}

std::vector<TaggedTitle> load_pretagged(std::istream& source, RejectsReport& rejects) {
    std::vector<TaggedTitle> out;
    std::string line;
    std::size_t ordinal = 0;
    while (std::getline(source, line)) {
        ++ordinal;
        if (trim(line).empty()) continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            rejects.add(ordinal, "missing tab separator");
            continue;
        }
        TaggedTitle title;
        title.post_id = std::strtoll(line.substr(0, tab).c_str(), nullptr, 10);
        if (title.post_id <= 0) {
            rejects.add(ordinal, "invalid post id");
            continue;
        }
        bool ok = true;
        for (const auto& piece : split_ws(std::string_view(line).substr(tab + 1))) {
            std::size_t slash = piece.rfind('/');
            if (slash == std::string::npos || slash == 0 || slash + 1 >= piece.size()) {
                rejects.add(ordinal, "token without /TAG: " + piece);
                ok = false;
                break;
            }
            TaggedToken tok;
            tok.surface = piece.substr(0, slash);
            tok.tag = piece.substr(slash + 1);
            tok.lemma = lemmatize(lowercase(tok.surface));
            if (!pos_tag_inventory().count(tok.tag)) {
                rejects.add(ordinal, "unknown tag: " + tok.tag);
                ok = false;
                break;
            }
            title.tokens.push_back(std::move(tok));
        }
        if (ok && !title.tokens.empty()) out.push_back(std::move(title));
    }
    return out;
}

}  // namespace codemap
