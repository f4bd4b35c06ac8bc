#include "codemap/code_lexer.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "codemap/util.hpp"

namespace codemap {

const std::unordered_set<std::string>& java_keywords() {
    static const std::unordered_set<std::string> words = {
        "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char",
        "class", "const", "continue", "default", "do", "double", "else", "enum",
        "extends", "final", "finally", "float", "for", "goto", "if", "implements",
        "import", "instanceof", "int", "interface", "long", "native", "new",
        "package", "private", "protected", "public", "return", "short", "static",
        "strictfp", "super", "switch", "synchronized", "this", "throw", "throws",
        "transient", "try", "void", "volatile", "while",
        "true", "false", "null",
    };
    return words;
}

namespace {

const char* kSeparators = "(){}[];,.";

std::vector<std::string> default_operators() {
    return {
        ">>>=",
        ">>>", "<<=", ">>=",
        "==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=", "-=", "*=", "/=",
        "%=", "&=", "|=", "^=", "<<", ">>", "->", "::",
        "=", "<", ">", "!", "~", "?", ":", "+", "-", "*", "/", "&", "|", "^", "%", "@",
    };
}

bool is_ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c == '$'; }
bool is_ident_part(unsigned char c) { return std::isalnum(c) || c == '_' || c == '$'; }
bool is_space(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

}  // namespace

CodeLexer::CodeLexer() : keywords_(java_keywords()), operators_(default_operators()) {}

CodeLexer::CodeLexer(std::unordered_set<std::string> keywords,
                     std::vector<std::string> operators)
    : keywords_(std::move(keywords)), operators_(std::move(operators)) {
    std::sort(operators_.begin(), operators_.end(),
              [](const std::string& a, const std::string& b) {
                  if (a.size() != b.size()) return a.size() > b.size();
                  return a < b;
              });
}

CodeLexer CodeLexer::from_files(const std::string& keywords_path,
                                const std::string& operators_path) {
    auto load_lines = [](const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open token table: " + path);
        std::vector<std::string> out;
        std::string line;
        while (std::getline(in, line)) {
            auto t = trim(line);
            if (!t.empty() && t.front() != '#') out.emplace_back(t);
        }
        return out;
    };
    auto kw = load_lines(keywords_path);
    return CodeLexer(std::unordered_set<std::string>(kw.begin(), kw.end()),
                     load_lines(operators_path));
}

std::vector<CodeToken> CodeLexer::lex(std::string_view src,
                                      std::vector<LexWarning>* warnings) const {
    std::vector<CodeToken> out;
    std::size_t i = 0;
    int line = 1;

    auto emit = [&](TokenKind kind, std::size_t start, std::size_t end, int start_line) {
        out.push_back({kind, std::string(src.substr(start, end - start)), start_line});
    };
    auto count_lines = [&](std::size_t start, std::size_t end) {
        for (std::size_t k = start; k < end; ++k)
            if (src[k] == '\n') ++line;
    };
    auto warn = [&](int at_line, const char* msg) {
        if (warnings) warnings->push_back({at_line, msg});
    };

    while (i < src.size()) {
        const std::size_t start = i;
        const int start_line = line;
        unsigned char c = static_cast<unsigned char>(src[i]);

        if (is_space(c)) {
            while (i < src.size() && is_space(static_cast<unsigned char>(src[i]))) ++i;
            count_lines(start, i);
            emit(TokenKind::Whitespace, start, i, start_line);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') ++i;
            emit(TokenKind::Comment, start, i, start_line);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
            std::size_t close = src.find("*/", i + 2);
            if (close == std::string_view::npos) {
                warn(start_line, "unterminated block comment, closed at end of input");
                i = src.size();
            } else {
                i = close + 2;
            }
            count_lines(start, i);
            emit(TokenKind::Comment, start, i, start_line);
            continue;
        }
        if (c == '"' || c == '\'') {
            const char quote = static_cast<char>(c);
            ++i;
            bool closed = false;
            while (i < src.size()) {
                if (src[i] == '\\' && i + 1 < src.size()) {
                    i += 2;
                    continue;
                }
                if (src[i] == quote) {
                    ++i;
                    closed = true;
                    break;
                }
                ++i;
            }
            if (!closed)
                warn(start_line, quote == '"' ? "unterminated string literal, closed at end of input"
                                              : "unterminated char literal, closed at end of input");
            count_lines(start, i);
            emit(quote == '"' ? TokenKind::StringLiteral : TokenKind::CharLiteral, start, i,
                 start_line);
            continue;
        }
        if (std::isdigit(c)) {
            bool hex = i + 1 < src.size() && src[i] == '0' &&
                       (src[i + 1] == 'x' || src[i + 1] == 'X');
            ++i;
            while (i < src.size()) {
                unsigned char d = static_cast<unsigned char>(src[i]);
                if (std::isalnum(d) || d == '_' || d == '.') {
                    ++i;
                } else if (!hex && (d == '+' || d == '-') && i > start &&
                           (src[i - 1] == 'e' || src[i - 1] == 'E')) {
                    ++i;  // exponent sign
                } else {
                    break;
                }
            }
            emit(TokenKind::NumberLiteral, start, i, start_line);
            continue;
        }
        if (is_ident_start(c)) {
            while (i < src.size() && is_ident_part(static_cast<unsigned char>(src[i]))) ++i;
            std::string word(src.substr(start, i - start));
            emit(keywords_.count(word) ? TokenKind::Keyword : TokenKind::Identifier, start, i,
                 start_line);
            continue;
        }
        if (std::strchr(kSeparators, static_cast<char>(c)) && c != 0) {
            ++i;
            emit(TokenKind::Separator, start, i, start_line);
            continue;
        }
        // operators, longest first
        bool matched = false;
        for (const auto& op : operators_) {
            if (src.substr(i, op.size()) == op) {
                i += op.size();
                emit(TokenKind::Operator, start, i, start_line);
                matched = true;
                break;
            }
        }
        if (!matched) {
            ++i;  // unknown byte: single-character operator
            emit(TokenKind::Operator, start, i, start_line);
        }
    }
    return out;
}

std::vector<SkeletonLine> clean(const std::vector<CodeToken>& tokens) {
    std::vector<SkeletonLine> out;
    for (const auto& tok : tokens) {
        if (tok.kind != TokenKind::Keyword && tok.kind != TokenKind::Operator &&
            tok.kind != TokenKind::Separator)
            continue;
        if (out.empty() || out.back().line_no != tok.line_no)
            out.push_back({tok.line_no, {}});
        out.back().tokens.push_back(tok.text);
    }
    return out;
}

std::vector<SkeletonLine> skeletonize(const CodeLexer& lexer, std::string_view source) {
    return clean(lexer.lex(source));
}

}  // namespace codemap
