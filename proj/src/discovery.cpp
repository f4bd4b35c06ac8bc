#include "codemap/discovery.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>

#include "codemap/util.hpp"

namespace codemap {

std::vector<std::string> PosPattern::key_sequence() const {
    std::vector<std::string> seq = before;
    seq.push_back("ENTITY");
    seq.insert(seq.end(), after.begin(), after.end());
    return seq;
}

std::string PosPattern::key_string() const { return join(key_sequence(), " "); }

bool in_train_split(std::int64_t post_id, double split_ratio) {
    std::uint32_t h = static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(post_id) * 2654435761ull) & 0xffffffffull);
    return (h % 100) < static_cast<std::uint32_t>(100.0 * split_ratio);
}

std::optional<PosPattern> extract_pattern(const TaggedTitle& title, const std::string& entity,
                                          PatternWindow window) {
    if (window.before < 0 || window.after < 0 || window.before + window.after < 1)
        throw std::invalid_argument("pattern window must cover at least one context token");
    for (std::size_t i = 0; i < title.tokens.size(); ++i) {
        if (title.tokens[i].lemma != entity) continue;
        PosPattern p;
        std::size_t start = i >= static_cast<std::size_t>(window.before)
                                ? i - static_cast<std::size_t>(window.before)
                                : 0;
        for (std::size_t k = start; k < i; ++k) p.before.push_back(title.tokens[k].tag);
        for (std::size_t k = i + 1;
             k < title.tokens.size() && k <= i + static_cast<std::size_t>(window.after); ++k)
            p.after.push_back(title.tokens[k].tag);
        if (p.before.empty() && p.after.empty()) return std::nullopt;
        return p;
    }
    return std::nullopt;
}

std::vector<PosPattern> mine_patterns(const std::vector<TaggedTitle>& titles,
                                      const std::string& entity, double split_ratio,
                                      double min_support, PatternWindow window) {
    if (titles.size() < 5)
        throw std::invalid_argument("insufficient evidence for entity '" + entity + "': " +
                                    std::to_string(titles.size()) + " titles (need 5)");
    if (split_ratio <= 0.0 || split_ratio >= 1.0)
        throw std::invalid_argument("split ratio must be inside (0,1)");

    std::map<std::vector<std::string>, PosPattern> counts;  // key: before+ENTITY+after
    std::size_t train_count = 0;
    std::set<std::vector<std::string>> holdout_shapes;
    for (const auto& title : titles) {
        auto occ = extract_pattern(title, entity, window);
        if (in_train_split(title.post_id, split_ratio)) {
            ++train_count;
            if (!occ) continue;
            auto key = occ->key_sequence();
            auto it = counts.find(key);
            if (it == counts.end()) {
                occ->support_count = 1;
                counts.emplace(std::move(key), std::move(*occ));
            } else {
                ++it->second.support_count;
            }
        } else if (occ) {
            holdout_shapes.insert(occ->key_sequence());
        }
    }

    std::vector<PosPattern> kept;
    for (auto& [key, pat] : counts) {
        pat.normalized_support =
            train_count ? static_cast<double>(pat.support_count) / train_count : 0.0;
        if (pat.normalized_support < min_support) continue;
        pat.validated = holdout_shapes.count(key) > 0;
        kept.push_back(pat);
    }
    std::sort(kept.begin(), kept.end(), [](const PosPattern& a, const PosPattern& b) {
        if (a.support_count != b.support_count) return a.support_count > b.support_count;
        return a.key_sequence() < b.key_sequence();
    });
    return kept;
}

namespace {

bool is_alpha_word(const std::string& s) {
    if (s.size() < 2) return false;
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isalpha(c) != 0; });
}

// Does the tag context around position i match the pattern exactly?
bool context_matches(const TaggedTitle& title, std::size_t i, const PosPattern& p) {
    if (i < p.before.size()) return false;
    if (i + p.after.size() >= title.tokens.size()) return false;
    for (std::size_t k = 0; k < p.before.size(); ++k) {
        if (title.tokens[i - p.before.size() + k].tag != p.before[k]) return false;
    }
    for (std::size_t k = 0; k < p.after.size(); ++k) {
        if (title.tokens[i + 1 + k].tag != p.after[k]) return false;
    }
    return true;
}

}  // namespace

std::vector<HarvestedPattern> harvest_entities(
    const std::vector<std::pair<PosPattern, std::string>>& patterns_with_source,
    const std::vector<TaggedTitle>& all_titles, std::vector<std::string>& known,
    const Preprocessor& pre, std::size_t per_pattern_cap) {
    std::set<std::string> known_set(known.begin(), known.end());
    std::vector<HarvestedPattern> out;

    for (const auto& [pattern, source] : patterns_with_source) {
        HarvestedPattern record;
        record.pattern = pattern;
        record.source_entity = source;

        std::map<std::string, std::size_t> counts;
        for (const auto& title : all_titles) {
            for (std::size_t i = 0; i < title.tokens.size(); ++i) {
                if (!context_matches(title, i, pattern)) continue;
                counts[title.tokens[i].lemma]++;
            }
        }
        record.candidates.assign(counts.begin(), counts.end());
        std::sort(record.candidates.begin(), record.candidates.end(),
                  [](const auto& a, const auto& b) {
                      if (a.second != b.second) return a.second > b.second;
                      return a.first < b.first;
                  });

        for (const auto& [lemma, count] : record.candidates) {
            (void)count;
            if (record.accepted.size() >= per_pattern_cap) break;
            if (known_set.count(lemma)) continue;  // distinct rule: no slot consumed
            if (!is_alpha_word(lemma) || pre.is_stopword(lemma)) continue;
            record.accepted.push_back(lemma);
            known_set.insert(lemma);
            known.push_back(lemma);
        }
        out.push_back(std::move(record));
    }
    return out;
}

DiscoveryReport run_discovery(const std::vector<TaggedTitle>& titles,
                              const std::vector<std::string>& seeds,
                              const DiscoveryConfig& config, const Preprocessor& pre) {
    DiscoveryReport report;
    std::vector<std::string> known = seeds;

    std::vector<std::string> frontier = seeds;
    for (int round = 1; round <= config.rounds && !frontier.empty(); ++round) {
        std::vector<std::pair<PosPattern, std::string>> merged;
        for (const auto& entity : frontier) {
            MinedSeed mined;
            mined.entity = entity;

            std::vector<TaggedTitle> entity_titles;
            for (const auto& t : titles)
                if (t.contains_lemma(entity)) entity_titles.push_back(t);
            mined.title_count = entity_titles.size();
            for (const auto& t : entity_titles) {
                if (in_train_split(t.post_id, config.split_ratio)) ++mined.train_count;
                else ++mined.holdout_count;
            }

            try {
                mined.patterns = mine_patterns(entity_titles, entity, config.split_ratio,
                                               config.min_support, config.window);
            } catch (const std::invalid_argument& e) {
                mined.skipped_reason = e.what();
            }
            for (const auto& p : mined.patterns)
                if (p.validated) merged.emplace_back(p, entity);
            report.seeds.push_back(std::move(mined));
        }

        // Merge across seeds: order by support then shape, drop duplicate
        // shapes (first, i.e. strongest, occurrence wins).
        std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) {
            if (a.first.support_count != b.first.support_count)
                return a.first.support_count > b.first.support_count;
            auto ka = a.first.key_sequence(), kb = b.first.key_sequence();
            if (ka != kb) return ka < kb;
            return a.second < b.second;
        });
        std::set<std::vector<std::string>> seen_shapes;
        std::vector<std::pair<PosPattern, std::string>> unique;
        for (auto& item : merged) {
            if (seen_shapes.insert(item.first.key_sequence()).second)
                unique.push_back(std::move(item));
        }

        auto harvested = harvest_entities(unique, titles, known, pre, config.per_pattern_cap);
        frontier.clear();
        for (auto& h : harvested) {
            for (const auto& name : h.accepted) {
                Entity e;
                e.name = name;
                e.origin.seed = false;
                e.origin.round = round;
                e.origin.via_pattern = h.pattern.key_string();
                report.discovered.push_back(e);
                frontier.push_back(name);
            }
            report.harvest.push_back(std::move(h));
        }
    }
    return report;
}

}  // namespace codemap
