#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace codemap {

enum class PostType { Question, Answer };

struct CodeSnippet {
    std::int64_t post_id = 0;
    int ordinal = 0;         // 0-based, document order
    std::string raw_text;    // verbatim code block contents
};

struct Post {
    std::int64_t id = 0;
    PostType post_type = PostType::Question;
    std::optional<std::int64_t> parent_id;  // answers only
    std::optional<std::string> title;       // questions only
    std::string body_text;                  // markup stripped
    std::set<std::string> tags;             // lowercase
    std::vector<CodeSnippet> snippets;

    bool is_question() const { return post_type == PostType::Question; }
};

struct Reject {
    std::size_t row_ordinal = 0;  // 1-based position in the dump
    std::string reason;
};

struct RejectsReport {
    std::vector<Reject> rejects;

    void add(std::size_t ordinal, std::string reason) {
        rejects.push_back({ordinal, std::move(reason)});
    }
    bool empty() const { return rejects.empty(); }
};

}  // namespace codemap
