#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace codemap {

// Wrong invocation (bad flags, missing inputs): exit 1.
struct UserError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Broken or stale data (corrupt artifacts, hash mismatches): exit 2.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Every tunable of the pipeline. Values come from an optional key=value
// config file, overridden by command-line flags.
struct PipelineConfig {
    // inputs
    std::string dump;
    std::string format = "xml";  // xml | jsonl
    std::string tag = "java";
    bool require_snippet = true;
    std::string seeds;
    std::string train;           // labeled questions for the classifier
    std::string gold;
    std::string stopwords;       // optional override files
    std::string lexicon;
    std::string keywords;
    std::string operators;
    // discovery
    int window_before = 3;
    int window_after = 2;
    double split_ratio = 0.8;
    double min_support = 0.1;
    int rounds = 1;
    // profiles
    int n_max = 7;
    int top_k = 50;
    int min_post_df = 2;
    // linking
    double link_min_weight = 0.25;
    int link_depth = 20;
    int link_max_entities = 4;
    // classifier
    std::string classifier = "none";  // none | bayes | logistic
    double alpha = 1.0;
    double learning_rate = 0.5;
    int epochs = 500;
    std::uint64_t seed = 1;
    // output
    std::string out_dir = "out";

    void set(const std::string& key, const std::string& value);  // throws UserError
    // Pipeline-relevant keys in canonical order (out_dir excluded).
    std::vector<std::pair<std::string, std::string>> items() const;
    std::string hash() const;  // 16 hex chars over items()
};

PipelineConfig load_config(const std::string& path);  // key = value lines, # comments

// Artifact headers: "#codemap <kind> v1" then "#config <hash>" then one
// commented line per config item, then the payload.
std::string artifact_header(const std::string& kind, const PipelineConfig& config);

// Splits an artifact into (kind, config_hash, payload). Throws DataError on a
// foreign kind; on a config-hash mismatch throws unless force is set.
std::string read_artifact(const std::string& path, const std::string& kind,
                          const PipelineConfig& config, bool force);

}  // namespace codemap
