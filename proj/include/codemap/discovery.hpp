#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "codemap/pos_tag.hpp"

namespace codemap {

struct EntityOrigin {
    bool seed = true;
    int round = 0;               // discovery round, 1-based (discovered only)
    std::string via_pattern;     // serialized pattern key (discovered only)
};

struct Entity {
    std::string name;  // lowercase lemma, no whitespace
    EntityOrigin origin;
};

struct PatternWindow {
    int before = 3;
    int after = 2;
};

// A POS context around one ENTITY slot. `before`/`after` hold tag symbols.
struct PosPattern {
    std::vector<std::string> before;
    std::vector<std::string> after;
    std::size_t support_count = 0;
    double normalized_support = 0.0;
    bool validated = false;

    // before + ENTITY + after, the canonical ordering/reporting key.
    std::vector<std::string> key_sequence() const;
    std::string key_string() const;  // space-joined key_sequence
    bool same_shape(const PosPattern& other) const {
        return before == other.before && after == other.after;
    }
};

struct HarvestedPattern {
    PosPattern pattern;
    std::string source_entity;
    // candidate lemma -> occurrence count over all titles
    std::vector<std::pair<std::string, std::size_t>> candidates;
    std::vector<std::string> accepted;  // <= per-pattern cap, order of acceptance
};

struct MinedSeed {
    std::string entity;
    std::size_t title_count = 0;
    std::size_t train_count = 0;
    std::size_t holdout_count = 0;
    std::vector<PosPattern> patterns;  // support-kept, sorted; includes non-validated
    std::string skipped_reason;        // nonempty when the seed was skipped
};

struct DiscoveryReport {
    std::vector<MinedSeed> seeds;
    std::vector<HarvestedPattern> harvest;
    std::vector<Entity> discovered;
};

// Deterministic 80/20 split: hash(post_id) = post_id * 2654435761 mod 2^32,
// mod 100; train iff bucket < 100 * split_ratio.
bool in_train_split(std::int64_t post_id, double split_ratio);

// Context of the first token whose lemma equals the entity name, up to
// `window.before` tags on the left and `window.after` on the right. Returns
// nothing when the entity is absent or has no context tokens at all.
std::optional<PosPattern> extract_pattern(const TaggedTitle& title, const std::string& entity,
                                          PatternWindow window);

// Mines patterns over the train split of `titles` (all of which must
// contain the entity lemma). Kept iff normalized support >= min_support;
// validated iff the pattern also occurs in a held-out title. Sorted by
// support descending, ties by tag-sequence order.
// Throws std::invalid_argument when fewer than 5 titles are given.
std::vector<PosPattern> mine_patterns(const std::vector<TaggedTitle>& titles,
                                      const std::string& entity, double split_ratio,
                                      double min_support, PatternWindow window);

// Scans patterns in order; each title position whose context matches
// contributes its lemma. Per pattern the top `per_pattern_cap` distinct new
// lemmas (by count, ties lexicographic) are accepted and immediately added to
// the known set. Candidates must be alphabetic, length >= 2, not stop words.
std::vector<HarvestedPattern> harvest_entities(
    const std::vector<std::pair<PosPattern, std::string>>& patterns_with_source,
    const std::vector<TaggedTitle>& all_titles, std::vector<std::string>& known,
    const Preprocessor& pre, std::size_t per_pattern_cap = 5);

struct DiscoveryConfig {
    PatternWindow window;
    double split_ratio = 0.8;
    double min_support = 0.1;
    std::size_t per_pattern_cap = 5;
    int rounds = 1;
};

// Full discovery driver: per-seed mining, cross-seed pattern merge (validated
// only, deduplicated by shape keeping the strongest), then harvesting.
DiscoveryReport run_discovery(const std::vector<TaggedTitle>& titles,
                              const std::vector<std::string>& seeds,
                              const DiscoveryConfig& config, const Preprocessor& pre);

}  // namespace codemap
