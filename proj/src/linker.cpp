#include "codemap/linker.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "codemap/util.hpp"

namespace codemap {

namespace {

// Lone separators that match nearly every line; never sufficient evidence on
// their own.
bool ineligible_alone(const SyntacticPattern& p) {
    if (p.size() != 1) return false;
    const std::string& t = p[0];
    return t == "(" || t == ")" || t == ";" || t == ",";
}

bool valid_marker_names(std::string_view names) {
    if (names.empty()) return false;
    for (auto& name : split(std::string(names), ',')) {
        auto n = trim(name);
        if (n.empty()) return false;
        for (unsigned char c : n)
            if (!std::islower(c) && !std::isdigit(c)) return false;
    }
    return true;
}

}  // namespace

std::string strip_marker(std::string_view line) {
    std::size_t pos = line.rfind(kMarkerPrefix);
    if (pos == std::string_view::npos) return std::string(line);
    std::string_view tail = line.substr(pos + std::string_view(kMarkerPrefix).size());
    if (!valid_marker_names(tail)) return std::string(line);
    return std::string(line.substr(0, pos));
}

AnnotatedLine link_line(const SkeletonLine& line, const std::vector<EntityProfile>& profiles,
                        const LinkConfig& config) {
    AnnotatedLine out;
    out.line_no = line.line_no;
    if (line.tokens.empty()) return out;

    std::size_t max_n = 1;
    for (const auto& p : profiles)
        for (const auto& e : p.entries) max_n = std::max(max_n, e.pattern.size());

    std::set<SyntacticPattern> line_grams;
    for (std::size_t n = 1; n <= std::min(max_n, line.tokens.size()); ++n)
        for (std::size_t i = 0; i + n <= line.tokens.size(); ++i)
            line_grams.insert(SyntacticPattern(line.tokens.begin() + i,
                                               line.tokens.begin() + i + n));

    struct Scored {
        std::string entity;
        double score = 0.0;
        std::size_t best_len = 0;  // longest pattern attaining the score
    };
    std::vector<Scored> scored;
    for (const auto& profile : profiles) {
        double best = -1.0;
        std::size_t best_len = 0;
        bool has_real_evidence = false;
        std::size_t depth = 0;
        for (const auto& entry : profile.entries) {
            if (depth++ >= config.profile_depth) break;
            if (entry.normalized_weight < config.min_normalized_weight) continue;
            if (!line_grams.count(entry.pattern)) continue;
            if (!ineligible_alone(entry.pattern)) has_real_evidence = true;
            if (entry.normalized_weight > best ||
                (entry.normalized_weight == best && entry.pattern.size() > best_len)) {
                best = entry.normalized_weight;
                best_len = entry.pattern.size();
            }
        }
        if (best >= 0.0 && has_real_evidence)
            scored.push_back({profile.entity, best, best_len});
    }

    std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.best_len != b.best_len) return a.best_len > b.best_len;
        return a.entity < b.entity;
    });
    if (scored.size() > config.max_entities_per_line)
        scored.resize(config.max_entities_per_line);
    for (auto& s : scored) {
        out.entities.push_back(std::move(s.entity));
        out.match_scores.push_back(s.score);
    }
    return out;
}

AnnotationResult annotate_file(std::string_view source,
                               const std::vector<EntityProfile>& profiles,
                               const LinkConfig& config, const CodeLexer& lexer) {
    // Split into (content, terminator) pairs, byte-preserving.
    std::vector<std::pair<std::string, std::string>> lines;
    std::size_t start = 0;
    while (start <= source.size()) {
        std::size_t nl = source.find('\n', start);
        if (nl == std::string_view::npos) {
            if (start < source.size())
                lines.emplace_back(std::string(source.substr(start)), "");
            break;
        }
        std::size_t content_end = nl;
        std::string term = "\n";
        if (content_end > start && source[content_end - 1] == '\r') {
            --content_end;
            term = "\r\n";
        }
        lines.emplace_back(std::string(source.substr(start, content_end - start)), term);
        start = nl + 1;
    }

    std::string stripped;
    for (auto& [content, term] : lines) {
        content = strip_marker(content);
        stripped += content;
        stripped += term;
    }

    auto skeleton = skeletonize(lexer, stripped);

    AnnotationResult result;
    std::size_t next_skel = 0;
    for (std::size_t idx = 0; idx < lines.size(); ++idx) {
        const int line_no = static_cast<int>(idx) + 1;
        while (next_skel < skeleton.size() && skeleton[next_skel].line_no < line_no) ++next_skel;

        result.text += lines[idx].first;
        if (next_skel < skeleton.size() && skeleton[next_skel].line_no == line_no) {
            AnnotatedLine linked = link_line(skeleton[next_skel], profiles, config);
            if (!linked.entities.empty()) {
                linked.original_text = lines[idx].first;
                result.text += kMarkerPrefix;
                result.text += join(linked.entities, ", ");
                result.lines.push_back(std::move(linked));
            }
        }
        result.text += lines[idx].second;
    }
    return result;
}

std::string serialize_sidecar(const std::vector<AnnotatedLine>& lines) {
    std::ostringstream out;
    for (const auto& line : lines) {
        for (std::size_t i = 0; i < line.entities.size(); ++i) {
            out << line.line_no << '\t' << line.entities[i] << '\t'
                << format_double(line.match_scores[i]) << '\n';
        }
    }
    return out.str();
}

}  // namespace codemap
