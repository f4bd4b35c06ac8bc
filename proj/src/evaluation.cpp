#include "codemap/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "codemap/util.hpp"

namespace codemap {

SyntacticPattern canonical_pattern(const std::string& text, const CodeLexer& lexer) {
    SyntacticPattern out;
    for (const auto& tok : lexer.lex(text)) {
        if (tok.kind == TokenKind::Whitespace) continue;
        out.push_back(tok.text);
    }
    return out;
}

GoldJudgments load_gold(const std::string& path, const CodeLexer& lexer) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open gold file: " + path);
    GoldJudgments gold;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty() || line[0] == '#') continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw std::runtime_error("missing tab at line " + std::to_string(lineno) + " in " + path);
        std::string entity(trim(line.substr(0, tab)));
        auto pattern = canonical_pattern(line.substr(tab + 1), lexer);
        if (entity.empty() || pattern.empty())
            throw std::runtime_error("empty gold record at line " + std::to_string(lineno));
        gold.relevant[entity].insert(std::move(pattern));
    }
    return gold;
}

double precision_at_k(const EntityProfile& profile, const GoldJudgments& gold, int k) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    auto it = gold.relevant.find(profile.entity);
    if (it == gold.relevant.end())
        throw std::invalid_argument("entity has no relevance judgments: " + profile.entity);
    int hits = 0;
    for (int i = 0; i < k && i < static_cast<int>(profile.entries.size()); ++i) {
        if (it->second.count(profile.entries[i].pattern)) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(k);
}

std::string report(const std::vector<EntityProfile>& profiles, const GoldJudgments& gold,
                   int k) {
    struct Row {
        std::string entity;
        double p = 0.0;
        std::string top_pattern;
    };
    std::vector<Row> rows;
    for (const auto& profile : profiles) {
        if (!gold.judged(profile.entity)) continue;
        Row row;
        row.entity = profile.entity;
        row.p = precision_at_k(profile, gold, k);
        row.top_pattern = "-";
        const auto& relevant = gold.relevant.at(profile.entity);
        for (const auto& entry : profile.entries) {
            if (relevant.count(entry.pattern)) {
                row.top_pattern = join(entry.pattern, " ");
                break;
            }
        }
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.p != b.p) return a.p > b.p;
        return a.entity < b.entity;
    });

    std::size_t name_width = std::string("entity").size();
    for (const auto& r : rows) name_width = std::max(name_width, r.entity.size());

    std::ostringstream out;
    char pk[16];
    std::snprintf(pk, sizeof(pk), "p@%d", k);
    out << "entity";
    out << std::string(name_width - 6 + 2, ' ') << pk << "   most relevant pattern\n";
    for (const auto& r : rows) {
        char val[16];
        std::snprintf(val, sizeof(val), "%.2f", r.p);
        out << r.entity << std::string(name_width - r.entity.size() + 2, ' ') << val << "   "
            << r.top_pattern << "\n";
    }
    return out.str();
}

}  // namespace codemap
