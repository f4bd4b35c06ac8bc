#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "codemap/post.hpp"
#include "codemap/text.hpp"

namespace codemap {

struct TaggedToken {
    std::string surface;
    std::string lemma;
    std::string tag;  // Penn Treebank symbol from the bundled inventory
};

struct TaggedTitle {
    std::int64_t post_id = 0;
    std::vector<TaggedToken> tokens;

    bool contains_lemma(std::string_view lemma) const;
};

// The bundled Penn tag inventory.
const std::unordered_set<std::string>& pos_tag_inventory();

// Lexicon plus ordered suffix/shape heuristics; unknown words default to NN.
class PosTagger {
public:
    PosTagger();

    // Adds/overrides entries from a `word<TAB>TAG` file.
    void load_lexicon_file(const std::string& path);

    // Every token receives exactly one tag; deterministic.
    // Throws std::invalid_argument on an empty title.
    TaggedTitle tag_title(const TokenizedText& title, std::int64_t post_id = 0) const;

    std::string tag_word(const std::string& surface_lower) const;

private:
    std::unordered_map<std::string, std::string> lexicon_;
};

// Lines formatted `post_id<TAB>word/TAG word/TAG ...`. Records with a tag
// outside the inventory are rejected with a reason.
std::vector<TaggedTitle> load_pretagged(std::istream& source, RejectsReport& rejects);

}  // namespace codemap
