#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "codemap/code_lexer.hpp"
#include "codemap/post.hpp"

namespace codemap {

// A skeleton n-gram. Tokens contain no identifiers or literals.
using SyntacticPattern = std::vector<std::string>;

struct NGramRange {
    int min = 1;
    int max = 7;
};

// Document frequencies over the IDF universe (the filtered corpus).
struct CorpusStats {
    std::size_t total_posts = 0;
    std::map<SyntacticPattern, std::size_t> df;

    std::size_t df_of(const SyntacticPattern& g) const {
        auto it = df.find(g);
        return it == df.end() ? 0 : it->second;
    }
};

struct ProfileEntry {
    SyntacticPattern pattern;
    std::size_t tf = 0;
    double weight = 0.0;
    double normalized_weight = 0.0;
};

struct EntityProfile {
    std::string entity;
    std::vector<ProfileEntry> entries;  // weight descending; ties shorter-first then lexicographic
};

// ln(total_posts / df_g). Throws std::invalid_argument when df_g is zero or
// exceeds total_posts: a pattern absent from the IDF universe must never be
// weighted.
double idf(std::size_t total_posts, std::size_t df_g);

// All contiguous n-grams of every line, for n in range; n-grams never cross
// line boundaries. Multiplicities preserved.
std::vector<SyntacticPattern> collect_ngrams(const std::vector<SkeletonLine>& lines,
                                             NGramRange range);

// Skeleton lines of every snippet of a post, concatenated.
std::vector<SkeletonLine> post_skeleton(const CodeLexer& lexer, const Post& post);

// Parallel map over posts with an ordered associative merge.
CorpusStats build_corpus_stats(const CodeLexer& lexer, const std::vector<Post>& posts,
                               NGramRange range, unsigned threads = 0);

struct ProfileOptions {
    NGramRange range;
    std::size_t top_k = 50;
    std::size_t min_post_df = 2;  // entity-post noise suppression
};

// tf over all snippets of entity_posts, weight = tf * idf, top_k entries with
// weights normalized by the maximum. entity_posts must be the posts whose
// preprocessed title contains the entity lemma.
// Throws std::invalid_argument when entity_posts is empty.
EntityProfile build_profile(const std::string& entity, const std::vector<Post>& entity_posts,
                            const CorpusStats& stats, const CodeLexer& lexer,
                            const ProfileOptions& options);

// Profile store: one entry per line,
//   entity <TAB> tf <TAB> weight <TAB> normalized_weight <TAB> token token...
std::string serialize_profiles(const std::vector<EntityProfile>& profiles);
std::vector<EntityProfile> parse_profiles(const std::string& text);

}  // namespace codemap
