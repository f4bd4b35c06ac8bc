#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace codemap {

enum class TokenKind {
    Keyword,
    Operator,
    Separator,
    Identifier,
    NumberLiteral,
    StringLiteral,
    CharLiteral,
    Comment,
    Whitespace,  // kept so that token texts concatenate back to the source
};

struct CodeToken {
    TokenKind kind;
    std::string text;  // verbatim lexeme
    int line_no = 1;   // 1-based line of the first byte
};

struct LexWarning {
    int line_no = 0;
    std::string message;
};

struct SkeletonLine {
    int line_no = 1;
    std::vector<std::string> tokens;  // keyword/operator/separator lexemes only
};

// The 50 Java reserved words plus true/false/null.
const std::unordered_set<std::string>& java_keywords();

class CodeLexer {
public:
    CodeLexer();
    CodeLexer(std::unordered_set<std::string> keywords, std::vector<std::string> operators);

    static CodeLexer from_files(const std::string& keywords_path,
                                const std::string& operators_path);

    // Maximal-munch lexing. Never fails: unknown bytes become single-char
    // operators; unterminated strings/comments close at end of input with a
    // warning (snippets are frequently truncated).
    std::vector<CodeToken> lex(std::string_view source,
                               std::vector<LexWarning>* warnings = nullptr) const;

private:
    std::unordered_set<std::string> keywords_;
    std::vector<std::string> operators_;  // sorted longest-first
};

// Drops identifiers, literals, comments and whitespace; groups what is left
// by line. Empty lines are omitted.
std::vector<SkeletonLine> clean(const std::vector<CodeToken>& tokens);

// Convenience: lex + clean.
std::vector<SkeletonLine> skeletonize(const CodeLexer& lexer, std::string_view source);

}  // namespace codemap
