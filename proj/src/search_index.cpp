#include "codemap/search_index.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>
#include <stdexcept>

#include "codemap/linker.hpp"
#include "codemap/util.hpp"

namespace codemap {

bool IndexFile::operator==(const IndexFile& other) const {
    if (docs.size() != other.docs.size() || dictionary.size() != other.dictionary.size())
        return false;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (docs[i].path != other.docs[i].path || docs[i].content_hash != other.docs[i].content_hash)
            return false;
    }
    for (auto it = dictionary.begin(), jt = other.dictionary.begin(); it != dictionary.end();
         ++it, ++jt) {
        if (it->first != jt->first || it->second.doc_frequency != jt->second.doc_frequency)
            return false;
        if (it->second.postings.size() != jt->second.postings.size()) return false;
        for (std::size_t k = 0; k < it->second.postings.size(); ++k) {
            if (it->second.postings[k].doc_id != jt->second.postings[k].doc_id ||
                it->second.postings[k].positions != jt->second.postings[k].positions)
                return false;
        }
    }
    return true;
}

namespace {

// term -> line -> concept flag, for one document
using DocTerms = std::map<std::string, std::map<int, bool>>;

DocTerms extract_terms(const std::string& content, const CodeLexer& lexer,
                       const Preprocessor& pre) {
    DocTerms terms;

    // Marker comments carry the concept terms; peel them off per line first.
    std::string stripped;
    stripped.reserve(content.size());
    int line_no = 0;
    for (const auto& raw_line : split(content, '\n')) {
        ++line_no;
        std::string line = raw_line;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string bare = strip_marker(line);
        if (bare.size() < line.size()) {
            std::string_view names =
                std::string_view(line).substr(bare.size() + std::string_view(kMarkerPrefix).size());
            for (auto& name : split(std::string(names), ',')) {
                std::string n(trim(name));
                if (!n.empty()) terms[n][line_no] = true;
            }
        }
        stripped += bare;
        stripped += '\n';
    }

    for (const auto& tok : lexer.lex(stripped)) {
        if (tok.kind != TokenKind::Identifier && tok.kind != TokenKind::Keyword) continue;
        std::string lemma = lemmatize(lowercase(tok.text));
        if (lemma.empty() || pre.is_stopword(lemma)) continue;
        auto& lines = terms[lemma];
        lines.emplace(tok.line_no, false);  // concept flag wins if already set
    }
    return terms;
}

}  // namespace

IndexFile build_index(const std::vector<std::pair<std::string, std::string>>& files,
                      const CodeLexer& lexer, const Preprocessor& pre) {
    std::vector<std::pair<std::string, std::string>> sorted = files;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i].first == sorted[i - 1].first)
            throw std::invalid_argument("duplicate document path: " + sorted[i].first);

    IndexFile index;
    for (std::size_t doc_id = 0; doc_id < sorted.size(); ++doc_id) {
        const auto& [path, content] = sorted[doc_id];
        index.docs.push_back({path, fnv1a(content)});
        for (const auto& [term, lines] : extract_terms(content, lexer, pre)) {
            Posting posting;
            posting.doc_id = static_cast<int>(doc_id);
            posting.positions.assign(lines.begin(), lines.end());
            auto& entry = index.dictionary[term];
            entry.postings.push_back(std::move(posting));
            entry.doc_frequency = entry.postings.size();
        }
    }
    return index;
}

std::vector<QueryHit> query(const IndexFile& index, const std::vector<std::string>& terms,
                            const Preprocessor& pre) {
    std::vector<std::string> lemmas;
    for (const auto& raw : terms) {
        for (const auto& tok : pre.preprocess(raw).tokens) {
            if (!tok.is_stopword) lemmas.push_back(tok.lemma);
        }
    }
    if (lemmas.empty())
        throw std::invalid_argument("query is empty after stop-word removal");
    std::sort(lemmas.begin(), lemmas.end());
    lemmas.erase(std::unique(lemmas.begin(), lemmas.end()), lemmas.end());

    // Document set intersection across terms.
    std::map<int, std::map<int, bool>> per_doc;  // doc -> line -> concept
    bool first = true;
    for (const auto& lemma : lemmas) {
        auto it = index.dictionary.find(lemma);
        if (it == index.dictionary.end()) return {};
        std::map<int, std::map<int, bool>> next;
        for (const auto& posting : it->second.postings) {
            if (!first && !per_doc.count(posting.doc_id)) continue;
            auto& lines = next[posting.doc_id];
            if (!first) lines = per_doc[posting.doc_id];
            for (const auto& [line, concept] : posting.positions) {
                auto [pos, inserted] = lines.emplace(line, concept);
                if (!inserted) pos->second = pos->second || concept;
            }
        }
        per_doc = std::move(next);
        first = false;
    }

    std::vector<QueryHit> hits;
    for (const auto& [doc_id, lines] : per_doc) {
        QueryHit hit;
        hit.doc_id = doc_id;
        hit.lines.assign(lines.begin(), lines.end());
        hits.push_back(std::move(hit));
    }
    return hits;
}

std::string serialize_index(const IndexFile& index, const std::string& config_hash) {
    std::uint64_t corpus_hash = fnv1a("");
    for (const auto& doc : index.docs) {
        corpus_hash = fnv1a(doc.path, corpus_hash);
        corpus_hash = fnv1a(to_hex(doc.content_hash), corpus_hash);
    }

    std::ostringstream out;
    out << "#codemap index v1\n";
    out << "#config " << config_hash << "\n";
    out << "#corpus " << to_hex(corpus_hash) << "\n";
    out << "docs " << index.docs.size() << "\n";
    for (std::size_t i = 0; i < index.docs.size(); ++i)
        out << "d " << i << ' ' << to_hex(index.docs[i].content_hash) << ' '
            << index.docs[i].path << "\n";
    out << "terms " << index.dictionary.size() << "\n";
    for (const auto& [term, entry] : index.dictionary) {
        out << "t " << term << ' ' << entry.doc_frequency << "\n";
        for (const auto& posting : entry.postings) {
            out << "p " << posting.doc_id;
            for (const auto& [line, concept] : posting.positions)
                out << ' ' << line << (concept ? "*" : "");
            out << "\n";
        }
    }
    return out.str();
}

IndexFile parse_index(const std::string& text, std::string* config_hash) {
    IndexFile index;
    std::istringstream in(text);
    std::string line;
    TermEntry* current = nullptr;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (config_hash && line.rfind("#config ", 0) == 0)
                *config_hash = line.substr(8);
            continue;
        }
        auto fields = split_ws(line);
        if (fields[0] == "docs" || fields[0] == "terms") continue;
        if (fields[0] == "d") {
            if (fields.size() < 4) throw std::runtime_error("bad doc record: " + line);
            IndexDoc doc;
            doc.content_hash = std::strtoull(fields[2].c_str(), nullptr, 16);
            // path may contain spaces: take everything after the third field
            std::size_t pos = line.find(fields[2]);
            doc.path = line.substr(pos + fields[2].size() + 1);
            index.docs.push_back(std::move(doc));
        } else if (fields[0] == "t") {
            if (fields.size() != 3) throw std::runtime_error("bad term record: " + line);
            current = &index.dictionary[fields[1]];
            current->doc_frequency = std::strtoull(fields[2].c_str(), nullptr, 10);
        } else if (fields[0] == "p") {
            if (!current || fields.size() < 3)
                throw std::runtime_error("bad posting record: " + line);
            Posting posting;
            posting.doc_id = std::atoi(fields[1].c_str());
            for (std::size_t i = 2; i < fields.size(); ++i) {
                bool concept = !fields[i].empty() && fields[i].back() == '*';
                posting.positions.emplace_back(std::atoi(fields[i].c_str()), concept);
            }
            current->postings.push_back(std::move(posting));
        } else {
            throw std::runtime_error("unknown index record: " + line);
        }
    }
    for (auto& [term, entry] : index.dictionary) {
        (void)term;
        if (entry.doc_frequency != entry.postings.size())
            throw std::runtime_error("index corrupt: doc_frequency mismatch");
    }
    return index;
}

}  // namespace codemap
