#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "codemap/classifier.hpp"
#include "codemap/config.hpp"
#include "codemap/discovery.hpp"
#include "codemap/dump_parser.hpp"
#include "codemap/linker.hpp"
#include "codemap/profile.hpp"
#include "codemap/search_index.hpp"

namespace codemap {

// Serialization of the ingested corpus: one JSON object per post.
std::string serialize_posts(const std::vector<Post>& posts);
std::vector<Post> parse_posts(const std::string& jsonl);

// Helpers assembled from the configuration.
Preprocessor make_preprocessor(const PipelineConfig& config);
CodeLexer make_code_lexer(const PipelineConfig& config);
PosTagger make_pos_tagger(const PipelineConfig& config);

// Fixed artifact names inside config.out_dir.
std::string corpus_path(const PipelineConfig& config);
std::string howto_path(const PipelineConfig& config);
std::string model_path(const PipelineConfig& config);
std::string entities_path(const PipelineConfig& config);
std::string discovery_path(const PipelineConfig& config);
std::string profiles_path(const PipelineConfig& config);
std::string annotated_dir(const PipelineConfig& config);
std::string annotated_meta_path(const PipelineConfig& config);
std::string index_path(const PipelineConfig& config);

// The corpus later stages read: the how-to filtered one when the classifier
// stage is enabled, the plain ingested corpus otherwise.
std::vector<Post> load_pipeline_corpus(const PipelineConfig& config, bool force);

struct StageResult {
    std::vector<std::string> outputs;  // files written
    std::string summary;               // one human line
};

StageResult run_ingest(const PipelineConfig& config, bool force, bool dry_run);
StageResult run_classify_train(const PipelineConfig& config, bool force, bool dry_run);
StageResult run_classify_filter(const PipelineConfig& config, bool force, bool dry_run);
StageResult run_discover(const PipelineConfig& config, bool force, bool dry_run);
StageResult run_profile(const PipelineConfig& config, bool force, bool dry_run);
StageResult run_annotate(const PipelineConfig& config, const std::string& input,
                         bool force, bool dry_run);
StageResult run_index(const PipelineConfig& config, bool force, bool dry_run);
StageResult run_eval(const PipelineConfig& config, int k, bool force, bool dry_run,
                     std::ostream& out);

struct SearchOptions {
    bool concepts_first = false;
};
// Prints `path:line: text` per hit; returns the number of hits.
std::size_t run_search(const PipelineConfig& config, const std::vector<std::string>& terms,
                       const SearchOptions& options, bool force, std::ostream& out);

// Discovery report serialization (structured text, one record per line).
std::string serialize_discovery(const DiscoveryReport& report);

}  // namespace codemap
