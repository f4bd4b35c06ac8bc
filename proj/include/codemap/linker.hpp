#pragma once

#include <string>
#include <vector>

#include "codemap/code_lexer.hpp"
#include "codemap/profile.hpp"

namespace codemap {

struct LinkConfig {
    double min_normalized_weight = 0.25;
    std::size_t profile_depth = 20;
    std::size_t max_entities_per_line = 4;
};

struct AnnotatedLine {
    int line_no = 1;
    std::string original_text;          // verbatim, marker stripped
    std::vector<std::string> entities;  // <= 4, distinct, best first
    std::vector<double> match_scores;   // parallel, non-increasing
};

// Trailing annotation marker appended to linked lines.
inline constexpr const char* kMarkerPrefix = " // @concepts: ";

// Removes a trailing well-formed marker from one line, if present.
std::string strip_marker(std::string_view line);

// Matches the line's n-grams against each entity's strongest patterns.
// Entity score = max normalized weight over matched patterns; ties between
// entities go to the longer matched pattern, then the lexicographically
// smaller name. At most config.max_entities_per_line entities survive.
AnnotatedLine link_line(const SkeletonLine& line, const std::vector<EntityProfile>& profiles,
                        const LinkConfig& config);

struct AnnotationResult {
    std::string text;                 // input with marker comments appended
    std::vector<AnnotatedLine> lines; // only lines with at least one entity
};

// Strips pre-existing markers first (annotate is idempotent), then links
// every skeleton line. All other bytes are preserved.
AnnotationResult annotate_file(std::string_view source,
                               const std::vector<EntityProfile>& profiles,
                               const LinkConfig& config, const CodeLexer& lexer);

// Sidecar: `line_no<TAB>entity<TAB>score`, one row per linked entity.
std::string serialize_sidecar(const std::vector<AnnotatedLine>& lines);

}  // namespace codemap
