#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "codemap/code_lexer.hpp"
#include "codemap/text.hpp"

namespace codemap {

struct Posting {
    int doc_id = 0;
    // line number -> concept flag (true when the term came from a marker
    // comment on that line). Strictly increasing lines, never empty.
    std::vector<std::pair<int, bool>> positions;
};

struct TermEntry {
    std::size_t doc_frequency = 0;  // always == postings.size()
    std::vector<Posting> postings;  // doc_id ascending
};

struct IndexDoc {
    std::string path;
    std::uint64_t content_hash = 0;
};

struct IndexFile {
    std::vector<IndexDoc> docs;               // doc_id is the position here
    std::map<std::string, TermEntry> dictionary;  // lowercase-lemmatized terms

    bool operator==(const IndexFile& other) const;
};

// Indexes entity names from marker comments (at their line numbers) plus
// lemmatized identifier/keyword words from code lines. Files are sorted by
// path so doc ids do not depend on argument order.
// Throws std::invalid_argument on duplicate paths.
IndexFile build_index(const std::vector<std::pair<std::string, std::string>>& files,
                      const CodeLexer& lexer, const Preprocessor& pre);

struct QueryHit {
    int doc_id = 0;
    std::vector<std::pair<int, bool>> lines;  // matched lines, concept flag
};

// Single term: its postings. Multiple terms: documents present for every
// term, each reporting the union of matching lines. Ordered by doc_id.
// Query terms are preprocessed exactly like indexing; terms that vanish
// entirely (all stop words) raise std::invalid_argument.
std::vector<QueryHit> query(const IndexFile& index, const std::vector<std::string>& terms,
                            const Preprocessor& pre);

// Versioned line-delimited text format; serialize(parse(x)) == x.
std::string serialize_index(const IndexFile& index, const std::string& config_hash);
IndexFile parse_index(const std::string& text, std::string* config_hash = nullptr);

}  // namespace codemap
