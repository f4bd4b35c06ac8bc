#include "codemap/config.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "codemap/util.hpp"

namespace codemap {

namespace {

int to_int(const std::string& key, const std::string& v) {
    char* end = nullptr;
    long out = std::strtol(v.c_str(), &end, 10);
    if (!end || *end != '\0') throw UserError("config key '" + key + "' expects an integer, got '" + v + "'");
    return static_cast<int>(out);
}

double to_double(const std::string& key, const std::string& v) {
    char* end = nullptr;
    double out = std::strtod(v.c_str(), &end);
    if (!end || *end != '\0') throw UserError("config key '" + key + "' expects a number, got '" + v + "'");
    return out;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw UserError("config key '" + key + "' expects a boolean, got '" + v + "'");
}

}  // namespace

void PipelineConfig::set(const std::string& key, const std::string& value) {
    if (key == "dump") dump = value;
    else if (key == "format") {
        if (value != "xml" && value != "jsonl") throw UserError("format must be xml or jsonl");
        format = value;
    }
    else if (key == "tag") tag = lowercase(value);
    else if (key == "require_snippet") require_snippet = to_bool(key, value);
    else if (key == "seeds") seeds = value;
    else if (key == "train") train = value;
    else if (key == "gold") gold = value;
    else if (key == "stopwords") stopwords = value;
    else if (key == "lexicon") lexicon = value;
    else if (key == "keywords") keywords = value;
    else if (key == "operators") operators = value;
    else if (key == "window_before") window_before = to_int(key, value);
    else if (key == "window_after") window_after = to_int(key, value);
    else if (key == "split_ratio") split_ratio = to_double(key, value);
    else if (key == "min_support") min_support = to_double(key, value);
    else if (key == "rounds") rounds = to_int(key, value);
    else if (key == "n_max") n_max = to_int(key, value);
    else if (key == "top_k") top_k = to_int(key, value);
    else if (key == "min_post_df") min_post_df = to_int(key, value);
    else if (key == "link_min_weight") link_min_weight = to_double(key, value);
    else if (key == "link_depth") link_depth = to_int(key, value);
    else if (key == "link_max_entities") link_max_entities = to_int(key, value);
    else if (key == "classifier") {
        if (value != "none" && value != "bayes" && value != "logistic")
            throw UserError("classifier must be none, bayes or logistic");
        classifier = value;
    }
    else if (key == "alpha") alpha = to_double(key, value);
    else if (key == "learning_rate") learning_rate = to_double(key, value);
    else if (key == "epochs") epochs = to_int(key, value);
    else if (key == "seed") seed = std::strtoull(value.c_str(), nullptr, 10);
    else if (key == "out_dir") out_dir = value;
    else throw UserError("unknown config key: " + key);
}

std::vector<std::pair<std::string, std::string>> PipelineConfig::items() const {
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("dump", dump);
    out.emplace_back("format", format);
    out.emplace_back("tag", tag);
    out.emplace_back("require_snippet", require_snippet ? "true" : "false");
    out.emplace_back("seeds", seeds);
    out.emplace_back("train", train);
    out.emplace_back("gold", gold);
    out.emplace_back("stopwords", stopwords);
    out.emplace_back("lexicon", lexicon);
    out.emplace_back("keywords", keywords);
    out.emplace_back("operators", operators);
    out.emplace_back("window_before", std::to_string(window_before));
    out.emplace_back("window_after", std::to_string(window_after));
    out.emplace_back("split_ratio", format_double(split_ratio));
    out.emplace_back("min_support", format_double(min_support));
    out.emplace_back("rounds", std::to_string(rounds));
    out.emplace_back("n_max", std::to_string(n_max));
    out.emplace_back("top_k", std::to_string(top_k));
    out.emplace_back("min_post_df", std::to_string(min_post_df));
    out.emplace_back("link_min_weight", format_double(link_min_weight));
    out.emplace_back("link_depth", std::to_string(link_depth));
    out.emplace_back("link_max_entities", std::to_string(link_max_entities));
    out.emplace_back("classifier", classifier);
    out.emplace_back("alpha", format_double(alpha));
    out.emplace_back("learning_rate", format_double(learning_rate));
    out.emplace_back("epochs", std::to_string(epochs));
    out.emplace_back("seed", std::to_string(seed));
    return out;
}

std::string PipelineConfig::hash() const {
    std::uint64_t h = fnv1a("codemap-config-v1");
    for (const auto& [k, v] : items()) {
        h = fnv1a(k, h);
        h = fnv1a("=", h);
        h = fnv1a(v, h);
        h = fnv1a("\n", h);
    }
    return to_hex(h);
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UserError("cannot open config file: " + path);
    PipelineConfig config;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string_view::npos)
            throw UserError("bad config line " + std::to_string(lineno) + ": " + std::string(t));
        config.set(std::string(trim(t.substr(0, eq))), std::string(trim(t.substr(eq + 1))));
    }
    return config;
}

std::string artifact_header(const std::string& kind, const PipelineConfig& config) {
    std::ostringstream out;
    out << "#codemap " << kind << " v1\n";
    out << "#config " << config.hash() << "\n";
    for (const auto& [k, v] : config.items()) out << "#cfg " << k << " = " << v << "\n";
    return out.str();
}

std::string read_artifact(const std::string& path, const std::string& kind,
                          const PipelineConfig& config, bool force) {
    if (!std::filesystem::exists(path))
        throw UserError("missing artifact '" + path + "'; run the producing subcommand first");
    std::string text = read_file(path);
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "#codemap " + kind + " v1")
        throw DataError("'" + path + "' is not a codemap " + kind + " artifact");
    if (!std::getline(in, line) || line.rfind("#config ", 0) != 0)
        throw DataError("'" + path + "' has no config hash");
    std::string found = line.substr(8);
    if (found != config.hash() && !force)
        throw DataError("stale artifact '" + path + "': built with config " + found +
                        " but the current config is " + config.hash() +
                        "; re-run the pipeline or pass --force");
    std::ostringstream payload;
    while (std::getline(in, line)) {
        if (line.rfind("#cfg ", 0) == 0) continue;
        payload << line << '\n';
    }
    return payload.str();
}

}  // namespace codemap
