#include "codemap/dump_parser.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "codemap/util.hpp"

namespace codemap {

std::string decode_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out.push_back(s[i++]);
            continue;
        }
        std::size_t end = s.find(';', i);
        if (end == std::string_view::npos || end - i > 10) {
            out.push_back(s[i++]);
            continue;
        }
        std::string_view name = s.substr(i + 1, end - i - 1);
        if (name == "lt") out.push_back('<');
        else if (name == "gt") out.push_back('>');
        else if (name == "amp") out.push_back('&');
        else if (name == "quot") out.push_back('"');
        else if (name == "apos") out.push_back('\'');
        else if (!name.empty() && name[0] == '#') {
            long code = 0;
            bool ok = false;
            if (name.size() > 1 && (name[1] == 'x' || name[1] == 'X')) {
                char* stop = nullptr;
                std::string hex(name.substr(2));
                code = std::strtol(hex.c_str(), &stop, 16);
                ok = stop && *stop == '\0' && !hex.empty();
            } else {
                char* stop = nullptr;
                std::string dec(name.substr(1));
                code = std::strtol(dec.c_str(), &stop, 10);
                ok = stop && *stop == '\0' && !dec.empty();
            }
            if (ok && code > 0 && code < 128) {
                out.push_back(static_cast<char>(code));
            } else if (ok && code >= 128) {
                // UTF-8 encode
                unsigned long cp = static_cast<unsigned long>(code);
                if (cp < 0x800) {
                    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
                    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
                } else if (cp < 0x10000) {
                    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
                    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
                    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
                } else {
                    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
                    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
                    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
                    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
                }
            } else {
                out.append(s.substr(i, end - i + 1));
            }
        } else {
            out.append(s.substr(i, end - i + 1));
            i = end + 1;
            continue;
        }
        i = end + 1;
    }
    return out;
}

namespace {

bool istarts_with(std::string_view s, std::size_t pos, std::string_view prefix) {
    if (pos + prefix.size() > s.size()) return false;
    for (std::size_t k = 0; k < prefix.size(); ++k) {
        if (std::tolower(static_cast<unsigned char>(s[pos + k])) !=
            std::tolower(static_cast<unsigned char>(prefix[k])))
            return false;
    }
    return true;
}

// Strip every <...> tag, then decode entities.
std::string strip_tags(std::string_view html) {
    std::string out;
    out.reserve(html.size());
    std::size_t i = 0;
    while (i < html.size()) {
        if (html[i] == '<') {
            std::size_t close = html.find('>', i);
            if (close == std::string_view::npos) break;  // dangling tag at end
            i = close + 1;
        } else {
            out.push_back(html[i++]);
        }
    }
    return decode_entities(out);
}

}  // namespace

ExtractedBody extract_body(std::string_view html) {
    ExtractedBody out;
    std::string remaining;
    remaining.reserve(html.size());
    std::size_t i = 0;
    while (i < html.size()) {
        if (html[i] == '<' && istarts_with(html, i, "<pre")) {
            std::size_t pre_close = html.find('>', i);
            if (pre_close == std::string_view::npos) break;
            std::size_t j = pre_close + 1;
            while (j < html.size() && std::isspace(static_cast<unsigned char>(html[j]))) ++j;
            if (istarts_with(html, j, "<code")) {
                std::size_t code_close = html.find('>', j);
                std::size_t body_start = code_close == std::string_view::npos
                                             ? std::string_view::npos
                                             : code_close + 1;
                std::size_t code_end = body_start == std::string_view::npos
                                           ? std::string_view::npos
                                           : html.find("</code>", body_start);
                if (code_end != std::string_view::npos) {
                    std::string snippet = decode_entities(html.substr(body_start, code_end - body_start));
                    if (!trim(snippet).empty()) out.snippets.push_back(std::move(snippet));
                    std::size_t after = code_end + 7;
                    while (after < html.size() &&
                           std::isspace(static_cast<unsigned char>(html[after])))
                        ++after;
                    if (istarts_with(html, after, "</pre>")) after += 6;
                    i = after;
                    continue;
                }
            }
            // <pre> without a code block: fall through as regular markup
            remaining.push_back(html[i++]);
        } else {
            remaining.push_back(html[i++]);
        }
    }
    out.text = strip_tags(remaining);
    return out;
}

namespace {

std::set<std::string> parse_tags(std::string_view decoded) {
    std::set<std::string> tags;
    std::size_t i = 0;
    bool saw_bracket = false;
    while (i < decoded.size()) {
        if (decoded[i] == '<') {
            std::size_t close = decoded.find('>', i);
            if (close == std::string_view::npos) break;
            saw_bracket = true;
            auto tag = trim(decoded.substr(i + 1, close - i - 1));
            if (!tag.empty()) tags.insert(lowercase(tag));
            i = close + 1;
        } else {
            ++i;
        }
    }
    if (!saw_bracket) {
        for (auto& part : split_ws(decoded)) {
            std::string t = lowercase(part);
            t.erase(std::remove(t.begin(), t.end(), '|'), t.end());
            if (!t.empty()) tags.insert(t);
        }
    }
    return tags;
}

struct RawAttrs {
    std::unordered_map<std::string, std::string> attrs;  // values still XML-escaped
    const std::string* find(const std::string& key) const {
        auto it = attrs.find(key);
        return it == attrs.end() ? nullptr : &it->second;
    }
};

// Parses attributes of one <row .../> element starting at `pos` (just past
// "<row"). Returns end position past the closing '>' or npos on error.
std::size_t parse_row_attrs(std::string_view xml, std::size_t pos, RawAttrs& out,
                            std::string& error) {
    while (pos < xml.size()) {
        while (pos < xml.size() && std::isspace(static_cast<unsigned char>(xml[pos]))) ++pos;
        if (pos >= xml.size()) break;
        if (xml[pos] == '/' || xml[pos] == '>') {
            std::size_t close = xml.find('>', pos);
            return close == std::string_view::npos ? std::string_view::npos : close + 1;
        }
        std::size_t eq = xml.find('=', pos);
        if (eq == std::string_view::npos) {
            error = "attribute without value";
            return std::string_view::npos;
        }
        std::string name(trim(xml.substr(pos, eq - pos)));
        std::size_t q1 = xml.find('"', eq);
        if (q1 == std::string_view::npos) {
            error = "attribute value not quoted";
            return std::string_view::npos;
        }
        std::size_t q2 = xml.find('"', q1 + 1);
        if (q2 == std::string_view::npos) {
            error = "unterminated attribute value";
            return std::string_view::npos;
        }
        out.attrs[name] = std::string(xml.substr(q1 + 1, q2 - q1 - 1));
        pos = q2 + 1;
    }
    error = "row element not closed";
    return std::string_view::npos;
}

void finish_post(Post& post, std::string_view decoded_body) {
    ExtractedBody body = extract_body(decoded_body);
    post.body_text = std::move(body.text);
    int ord = 0;
    for (auto& sn : body.snippets) {
        post.snippets.push_back({post.id, ord++, std::move(sn)});
    }
}

std::vector<Post> parse_xml_rows(const std::string& xml, RejectsReport& rejects) {
    std::vector<Post> posts;
    std::size_t pos = 0;
    std::size_t ordinal = 0;
    while (true) {
        std::size_t row = xml.find("<row", pos);
        if (row == std::string::npos) break;
        // guard against e.g. <rows>
        char next = row + 4 < xml.size() ? xml[row + 4] : ' ';
        if (!std::isspace(static_cast<unsigned char>(next)) && next != '/' && next != '>') {
            pos = row + 4;
            continue;
        }
        ++ordinal;
        RawAttrs attrs;
        std::string error;
        std::size_t end = parse_row_attrs(xml, row + 4, attrs, error);
        if (end == std::string_view::npos) {
            rejects.add(ordinal, error);
            pos = row + 4;
            continue;
        }
        pos = end;

        const std::string* type = attrs.find("PostTypeId");
        if (!type) {
            rejects.add(ordinal, "missing PostTypeId");
            continue;
        }
        if (*type != "1" && *type != "2") continue;  // other row kinds are skipped, not rejected

        const std::string* id = attrs.find("Id");
        std::int64_t id_val = 0;
        if (!id || (id_val = std::strtoll(id->c_str(), nullptr, 10)) <= 0) {
            rejects.add(ordinal, "missing or invalid Id");
            continue;
        }

        Post post;
        post.id = id_val;
        if (*type == "1") {
            post.post_type = PostType::Question;
            const std::string* title = attrs.find("Title");
            if (!title) {
                rejects.add(ordinal, "question without Title");
                continue;
            }
            post.title = decode_entities(*title);
            if (const std::string* tags = attrs.find("Tags"))
                post.tags = parse_tags(decode_entities(*tags));
        } else {
            post.post_type = PostType::Answer;
            const std::string* parent = attrs.find("ParentId");
            std::int64_t parent_val = 0;
            if (!parent || (parent_val = std::strtoll(parent->c_str(), nullptr, 10)) <= 0) {
                rejects.add(ordinal, "answer without ParentId");
                continue;
            }
            post.parent_id = parent_val;
        }
        std::string body = attrs.find("Body") ? decode_entities(*attrs.find("Body")) : "";
        finish_post(post, body);
        posts.push_back(std::move(post));
    }
    return posts;
}

std::vector<Post> parse_json_lines(std::istream& in, RejectsReport& rejects) {
    std::vector<Post> posts;
    std::string line;
    std::size_t ordinal = 0;
    while (std::getline(in, line)) {
        ++ordinal;
        if (trim(line).empty()) continue;
        nlohmann::json row = nlohmann::json::parse(line, nullptr, false);
        if (row.is_discarded() || !row.is_object()) {
            rejects.add(ordinal, "malformed json");
            continue;
        }
        try {
            int type_num = 0;
            if (row.contains("type") && row["type"].is_string()) {
                std::string t = lowercase(row["type"].get<std::string>());
                if (t == "question" || t == "1") type_num = 1;
                else if (t == "answer" || t == "2") type_num = 2;
            } else if (row.contains("type") && row["type"].is_number_integer()) {
                type_num = row["type"].get<int>();
            }
            if (type_num != 1 && type_num != 2) continue;

            Post post;
            post.id = row.at("id").get<std::int64_t>();
            if (post.id <= 0) {
                rejects.add(ordinal, "invalid id");
                continue;
            }
            if (type_num == 1) {
                post.post_type = PostType::Question;
                if (!row.contains("title") || !row["title"].is_string()) {
                    rejects.add(ordinal, "question without title");
                    continue;
                }
                post.title = row["title"].get<std::string>();
                if (row.contains("tags") && row["tags"].is_array()) {
                    for (const auto& t : row["tags"])
                        if (t.is_string()) post.tags.insert(lowercase(t.get<std::string>()));
                }
            } else {
                post.post_type = PostType::Answer;
                if (!row.contains("parent_id") || !row["parent_id"].is_number_integer()) {
                    rejects.add(ordinal, "answer without parent_id");
                    continue;
                }
                post.parent_id = row["parent_id"].get<std::int64_t>();
            }
            std::string body = row.value("body", std::string());
            finish_post(post, body);
            posts.push_back(std::move(post));
        } catch (const nlohmann::json::exception& e) {
            rejects.add(ordinal, std::string("bad field: ") + e.what());
        }
    }
    return posts;
}

}  // namespace

std::vector<Post> parse_dump(std::istream& source, DumpFormat format, RejectsReport& rejects) {
    if (format == DumpFormat::JsonLines) return parse_json_lines(source, rejects);
    std::ostringstream ss;
    ss << source.rdbuf();
    std::string xml = ss.str();
    return parse_xml_rows(xml, rejects);
}

std::vector<Post> parse_dump_file(const std::string& path, DumpFormat format,
                                  RejectsReport& rejects) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open dump: " + path);
    return parse_dump(in, format, rejects);
}

std::vector<Post> filter_corpus(const std::vector<Post>& posts, const std::string& tag,
                                bool require_snippet) {
    std::unordered_set<std::int64_t> kept_questions;
    for (const auto& p : posts) {
        if (p.is_question() && p.tags.count(tag) &&
            (!require_snippet || !p.snippets.empty()))
            kept_questions.insert(p.id);
    }
    std::vector<Post> out;
    for (const auto& p : posts) {
        if (p.is_question()) {
            if (kept_questions.count(p.id)) out.push_back(p);
        } else if (p.parent_id && kept_questions.count(*p.parent_id)) {
            out.push_back(p);
        }
    }
    return out;
}

}  // namespace codemap
