#include "codemap/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "codemap/util.hpp"

namespace codemap {

double idf(std::size_t total_posts, std::size_t df_g) {
    if (df_g == 0)
        throw std::invalid_argument("idf undefined for df = 0: pattern outside the IDF universe");
    if (df_g > total_posts)
        throw std::invalid_argument("df exceeds corpus size");
    return std::log(static_cast<double>(total_posts) / static_cast<double>(df_g));
}

std::vector<SyntacticPattern> collect_ngrams(const std::vector<SkeletonLine>& lines,
                                             NGramRange range) {
    std::vector<SyntacticPattern> out;
    for (const auto& line : lines) {
        const auto& toks = line.tokens;
        for (int n = range.min; n <= range.max; ++n) {
            if (n < 1 || static_cast<std::size_t>(n) > toks.size()) continue;
            for (std::size_t i = 0; i + n <= toks.size(); ++i)
                out.emplace_back(toks.begin() + i, toks.begin() + i + n);
        }
    }
    return out;
}

std::vector<SkeletonLine> post_skeleton(const CodeLexer& lexer, const Post& post) {
    std::vector<SkeletonLine> lines;
    for (const auto& snippet : post.snippets) {
        auto sk = skeletonize(lexer, snippet.raw_text);
        lines.insert(lines.end(), sk.begin(), sk.end());
    }
    return lines;
}

CorpusStats build_corpus_stats(const CodeLexer& lexer, const std::vector<Post>& posts,
                               NGramRange range, unsigned threads) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, 16);
    if (posts.size() < 64) threads = 1;

    using PatternSet = std::set<SyntacticPattern>;
    std::vector<std::vector<PatternSet>> chunk_sets(threads);

    auto work = [&](unsigned t) {
        for (std::size_t i = t; i < posts.size(); i += threads) {
            PatternSet per_post;
            for (auto& g : collect_ngrams(post_skeleton(lexer, posts[i]), range))
                per_post.insert(std::move(g));
            chunk_sets[t].push_back(std::move(per_post));
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }

    // Merge in a fixed order; the result is independent of thread timing.
    CorpusStats stats;
    stats.total_posts = posts.size();
    for (const auto& sets : chunk_sets)
        for (const auto& per_post : sets)
            for (const auto& g : per_post) stats.df[g]++;
    return stats;
}

EntityProfile build_profile(const std::string& entity, const std::vector<Post>& entity_posts,
                            const CorpusStats& stats, const CodeLexer& lexer,
                            const ProfileOptions& options) {
    if (entity_posts.empty())
        throw std::invalid_argument("entity '" + entity + "' has no posts to profile");

    std::map<SyntacticPattern, std::size_t> tf;
    std::map<SyntacticPattern, std::size_t> post_df;
    for (const auto& post : entity_posts) {
        auto grams = collect_ngrams(post_skeleton(lexer, post), options.range);
        std::set<SyntacticPattern> seen;
        for (auto& g : grams) {
            tf[g]++;
            seen.insert(std::move(g));
        }
        for (const auto& g : seen) post_df[g]++;
    }

    EntityProfile profile;
    profile.entity = entity;
    for (const auto& [g, count] : tf) {
        if (post_df[g] < options.min_post_df) continue;
        ProfileEntry e;
        e.pattern = g;
        e.tf = count;
        e.weight = static_cast<double>(count) * idf(stats.total_posts, stats.df_of(g));
        profile.entries.push_back(std::move(e));
    }
    std::sort(profile.entries.begin(), profile.entries.end(),
              [](const ProfileEntry& a, const ProfileEntry& b) {
                  if (a.weight != b.weight) return a.weight > b.weight;
                  if (a.pattern.size() != b.pattern.size())
                      return a.pattern.size() < b.pattern.size();
                  return a.pattern < b.pattern;
              });
    if (profile.entries.size() > options.top_k) profile.entries.resize(options.top_k);

    if (!profile.entries.empty()) {
        double max_w = profile.entries.front().weight;
        for (auto& e : profile.entries)
            e.normalized_weight = max_w > 0.0 ? e.weight / max_w : 1.0;
    }
    return profile;
}

std::string serialize_profiles(const std::vector<EntityProfile>& profiles) {
    std::ostringstream out;
    for (const auto& p : profiles) {
        for (const auto& e : p.entries) {
            out << p.entity << '\t' << e.tf << '\t' << format_double(e.weight) << '\t'
                << format_double(e.normalized_weight) << '\t' << join(e.pattern, " ") << '\n';
        }
    }
    return out.str();
}

std::vector<EntityProfile> parse_profiles(const std::string& text) {
    std::vector<EntityProfile> out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty() || line[0] == '#') continue;
        auto fields = split(line, '\t');
        if (fields.size() != 5)
            throw std::runtime_error("bad profile record at line " + std::to_string(lineno));
        if (out.empty() || out.back().entity != fields[0]) {
            out.push_back({fields[0], {}});
        }
        ProfileEntry e;
        e.tf = std::strtoull(fields[1].c_str(), nullptr, 10);
        e.weight = std::strtod(fields[2].c_str(), nullptr);
        e.normalized_weight = std::strtod(fields[3].c_str(), nullptr);
        e.pattern = split_ws(fields[4]);
        if (e.pattern.empty())
            throw std::runtime_error("empty pattern at line " + std::to_string(lineno));
        out.back().entries.push_back(std::move(e));
    }
    return out;
}

}  // namespace codemap
