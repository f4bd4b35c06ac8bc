#pragma once

#include <istream>
#include <string>
#include <vector>

#include "codemap/post.hpp"

namespace codemap {

enum class DumpFormat { XmlRows, JsonLines };

// Decode &lt; &gt; &amp; &quot; &#39; and numeric character references.
std::string decode_entities(std::string_view s);

// Split an HTML body into plain text and <pre><code> blocks. Inline <code>
// text stays in the body; only pre/code regions become snippets.
struct ExtractedBody {
    std::string text;
    std::vector<std::string> snippets;
};
ExtractedBody extract_body(std::string_view html);

// One Post per row with PostTypeId 1 or 2; other row types skipped.
// Malformed rows are recorded in `rejects` and parsing continues.
std::vector<Post> parse_dump(std::istream& source, DumpFormat format, RejectsReport& rejects);
std::vector<Post> parse_dump_file(const std::string& path, DumpFormat format,
                                  RejectsReport& rejects);

// Questions kept iff tagged `tag` and (require_snippet implies snippets
// nonempty); answers kept iff their parent question is kept. Order preserved.
std::vector<Post> filter_corpus(const std::vector<Post>& posts, const std::string& tag,
                                bool require_snippet);

}  // namespace codemap
