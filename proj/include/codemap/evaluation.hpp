#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "codemap/profile.hpp"

namespace codemap {

// entity -> relevant skeleton patterns, stored as canonical token sequences so
// "for ( ;; )" and "for ( ; ; )" compare equal.
struct GoldJudgments {
    std::map<std::string, std::set<SyntacticPattern>> relevant;

    bool judged(const std::string& entity) const { return relevant.count(entity) > 0; }
};

// Re-lexes a pattern string into its token sequence (whitespace-insensitive).
SyntacticPattern canonical_pattern(const std::string& text, const CodeLexer& lexer);

// Gold file: `entity<TAB>token token token...`, one relevant pattern per line.
GoldJudgments load_gold(const std::string& path, const CodeLexer& lexer);

// |relevant among the top k entries| / k. Entries past the end of a short
// profile count as non-relevant. Throws std::invalid_argument for an
// unjudged entity or k < 1.
double precision_at_k(const EntityProfile& profile, const GoldJudgments& gold, int k);

// Per-entity p@k plus the most relevant pattern, p@k descending then name.
std::string report(const std::vector<EntityProfile>& profiles, const GoldJudgments& gold, int k);

}  // namespace codemap
