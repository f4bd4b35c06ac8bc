#include "codemap/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "codemap/evaluation.hpp"
#include "codemap/util.hpp"

namespace fs = std::filesystem;

namespace codemap {

std::string serialize_posts(const std::vector<Post>& posts) {
    std::ostringstream out;
    for (const auto& p : posts) {
        nlohmann::json row;
        row["id"] = p.id;
        row["type"] = p.is_question() ? "question" : "answer";
        if (p.parent_id) row["parent_id"] = *p.parent_id;
        if (p.title) row["title"] = *p.title;
        row["body"] = p.body_text;
        row["tags"] = p.tags;
        row["snippets"] = nlohmann::json::array();
        for (const auto& s : p.snippets) row["snippets"].push_back(s.raw_text);
        out << row.dump() << '\n';
    }
    return out.str();
}

std::vector<Post> parse_posts(const std::string& jsonl) {
    std::vector<Post> posts;
    std::istringstream in(jsonl);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        nlohmann::json row = nlohmann::json::parse(line, nullptr, false);
        if (row.is_discarded())
            throw DataError("corpus artifact corrupt at line " + std::to_string(lineno));
        Post p;
        p.id = row.at("id").get<std::int64_t>();
        p.post_type = row.at("type").get<std::string>() == "answer" ? PostType::Answer
                                                                    : PostType::Question;
        if (row.contains("parent_id")) p.parent_id = row["parent_id"].get<std::int64_t>();
        if (row.contains("title")) p.title = row["title"].get<std::string>();
        p.body_text = row.value("body", std::string());
        if (row.contains("tags"))
            for (const auto& t : row["tags"]) p.tags.insert(t.get<std::string>());
        int ord = 0;
        if (row.contains("snippets"))
            for (const auto& s : row["snippets"])
                p.snippets.push_back({p.id, ord++, s.get<std::string>()});
        posts.push_back(std::move(p));
    }
    return posts;
}

Preprocessor make_preprocessor(const PipelineConfig& config) {
    if (!config.stopwords.empty()) return Preprocessor::from_stopword_file(config.stopwords);
    return Preprocessor();
}

CodeLexer make_code_lexer(const PipelineConfig& config) {
    if (!config.keywords.empty() || !config.operators.empty()) {
        if (config.keywords.empty() || config.operators.empty())
            throw UserError("keywords and operators overrides must be given together");
        return CodeLexer::from_files(config.keywords, config.operators);
    }
    return CodeLexer();
}

PosTagger make_pos_tagger(const PipelineConfig& config) {
    PosTagger tagger;
    if (!config.lexicon.empty()) tagger.load_lexicon_file(config.lexicon);
    return tagger;
}

namespace {

std::string out_file(const PipelineConfig& config, const char* name) {
    return (fs::path(config.out_dir) / name).string();
}

void ensure_out_dir(const PipelineConfig& config) {
    fs::create_directories(config.out_dir);
}

}  // namespace

std::string corpus_path(const PipelineConfig& c) { return out_file(c, "corpus.jsonl"); }
std::string howto_path(const PipelineConfig& c) { return out_file(c, "corpus.howto.jsonl"); }
std::string model_path(const PipelineConfig& c) { return out_file(c, "classifier.model"); }
std::string entities_path(const PipelineConfig& c) { return out_file(c, "entities.txt"); }
std::string discovery_path(const PipelineConfig& c) { return out_file(c, "discovery.txt"); }
std::string profiles_path(const PipelineConfig& c) { return out_file(c, "profiles.tsv"); }
std::string annotated_dir(const PipelineConfig& c) { return out_file(c, "annotated"); }
std::string annotated_meta_path(const PipelineConfig& c) { return out_file(c, "annotated.meta"); }
std::string index_path(const PipelineConfig& c) { return out_file(c, "index.txt"); }

std::vector<Post> load_pipeline_corpus(const PipelineConfig& config, bool force) {
    const bool filtered = config.classifier != "none";
    const std::string path = filtered ? howto_path(config) : corpus_path(config);
    return parse_posts(read_artifact(path, filtered ? "howto-corpus" : "corpus", config, force));
}

StageResult run_ingest(const PipelineConfig& config, bool force, bool dry_run) {
    (void)force;
    if (config.dump.empty()) throw UserError("no dump configured: set dump=<path> or pass --dump");
    if (!fs::exists(config.dump)) throw UserError("dump not found: " + config.dump);
    StageResult result;
    result.outputs = {corpus_path(config), out_file(config, "rejects.txt")};
    if (dry_run) {
        result.summary = "would ingest " + config.dump + " -> " + corpus_path(config);
        return result;
    }

    RejectsReport rejects;
    auto posts = parse_dump_file(config.dump, config.format == "jsonl" ? DumpFormat::JsonLines
                                                                       : DumpFormat::XmlRows,
                                 rejects);
    auto kept = filter_corpus(posts, config.tag, config.require_snippet);

    ensure_out_dir(config);
    write_file(corpus_path(config), artifact_header("corpus", config) + serialize_posts(kept));
    std::ostringstream rej;
    rej << artifact_header("rejects", config);
    for (const auto& r : rejects.rejects) rej << r.row_ordinal << '\t' << r.reason << '\n';
    write_file(out_file(config, "rejects.txt"), rej.str());

    result.summary = "ingested " + std::to_string(posts.size()) + " posts, kept " +
                     std::to_string(kept.size()) + " (tag '" + config.tag + "'), " +
                     std::to_string(rejects.rejects.size()) + " rejects";
    return result;
}

StageResult run_classify_train(const PipelineConfig& config, bool force, bool dry_run) {
    (void)force;
    if (config.classifier == "none")
        throw UserError("classifier=none: set classifier=bayes or classifier=logistic");
    if (config.train.empty()) throw UserError("no training data: set train=<path> or pass --train");
    if (!fs::exists(config.train)) throw UserError("training data not found: " + config.train);
    StageResult result;
    result.outputs = {model_path(config)};
    if (dry_run) {
        result.summary = "would train " + config.classifier + " model -> " + model_path(config);
        return result;
    }

    auto data = load_labeled_questions(config.train);
    auto pre = make_preprocessor(config);
    std::string payload;
    if (config.classifier == "bayes") {
        payload = BayesModel::train(data, config.alpha, pre).serialize();
    } else {
        LogisticHyperparams hp;
        hp.learning_rate = config.learning_rate;
        hp.epochs = config.epochs;
        hp.seed = config.seed;
        payload = LogisticModel::train(data, hp, pre).serialize();
    }
    ensure_out_dir(config);
    write_file(model_path(config), artifact_header("model", config) + payload);
    result.summary = "trained " + config.classifier + " model on " +
                     std::to_string(data.size()) + " questions";
    return result;
}

namespace {

std::vector<Post> classify_filter_posts(const PipelineConfig& config,
                                        const std::vector<Post>& posts, bool force) {
    std::string payload = read_artifact(model_path(config), "model", config, force);
    auto pre = make_preprocessor(config);
    if (config.classifier == "bayes")
        return filter_howto(posts, BayesModel::parse(payload), pre);
    return filter_howto(posts, LogisticModel::parse(payload), pre);
}

}  // namespace

StageResult run_classify_filter(const PipelineConfig& config, bool force, bool dry_run) {
    if (config.classifier == "none")
        throw UserError("classifier=none: the filter stage is disabled by configuration");
    StageResult result;
    result.outputs = {howto_path(config)};
    if (dry_run) {
        result.summary = "would filter " + corpus_path(config) + " -> " + howto_path(config);
        return result;
    }
    auto posts = parse_posts(read_artifact(corpus_path(config), "corpus", config, force));
    auto kept = classify_filter_posts(config, posts, force);
    ensure_out_dir(config);
    write_file(howto_path(config), artifact_header("howto-corpus", config) + serialize_posts(kept));
    result.summary = "kept " + std::to_string(kept.size()) + " of " +
                     std::to_string(posts.size()) + " posts as how-to-do-it";
    return result;
}

std::string serialize_discovery(const DiscoveryReport& report) {
    std::ostringstream out;
    for (const auto& seed : report.seeds) {
        out << "seed\t" << seed.entity << "\ttitles " << seed.title_count << "\ttrain "
            << seed.train_count << "\tholdout " << seed.holdout_count;
        if (!seed.skipped_reason.empty()) out << "\tskipped: " << seed.skipped_reason;
        out << '\n';
        for (const auto& p : seed.patterns) {
            out << "pattern\t" << seed.entity << '\t' << p.key_string() << "\tsupport "
                << p.support_count << "\tnormalized " << format_double(p.normalized_support)
                << "\tvalidated " << (p.validated ? "yes" : "no") << '\n';
        }
    }
    for (const auto& h : report.harvest) {
        out << "harvest\t" << h.pattern.key_string() << "\tfrom " << h.source_entity
            << "\taccepted";
        for (const auto& name : h.accepted) out << ' ' << name;
        out << '\n';
        for (const auto& [lemma, count] : h.candidates)
            out << "candidate\t" << h.pattern.key_string() << '\t' << lemma << '\t' << count
                << '\n';
    }
    return out.str();
}

StageResult run_discover(const PipelineConfig& config, bool force, bool dry_run) {
    if (config.seeds.empty()) throw UserError("no seed entities: set seeds=<path> or pass --seeds");
    if (!fs::exists(config.seeds)) throw UserError("seeds file not found: " + config.seeds);
    StageResult result;
    result.outputs = {entities_path(config), discovery_path(config)};
    if (dry_run) {
        result.summary = "would discover entities -> " + entities_path(config);
        return result;
    }

    std::vector<std::string> seeds;
    {
        std::ifstream in(config.seeds);
        std::string line;
        while (std::getline(in, line)) {
            auto t = trim(line);
            if (!t.empty() && t.front() != '#') seeds.push_back(lowercase(t));
        }
    }
    if (seeds.empty()) throw UserError("seeds file is empty: " + config.seeds);

    auto posts = load_pipeline_corpus(config, force);
    auto pre = make_preprocessor(config);
    auto tagger = make_pos_tagger(config);
    std::vector<TaggedTitle> titles;
    for (const auto& p : posts) {
        if (!p.is_question() || !p.title) continue;
        auto toks = pre.preprocess(*p.title);
        if (toks.empty()) continue;
        titles.push_back(tagger.tag_title(toks, p.id));
    }

    DiscoveryConfig dc;
    dc.window = {config.window_before, config.window_after};
    dc.split_ratio = config.split_ratio;
    dc.min_support = config.min_support;
    dc.rounds = config.rounds;
    auto report = run_discovery(titles, seeds, dc, pre);

    ensure_out_dir(config);
    std::ostringstream entities;
    entities << artifact_header("entities", config);
    for (const auto& s : seeds) entities << s << "\tseed\n";
    for (const auto& e : report.discovered)
        entities << e.name << "\tdiscovered round " << e.origin.round << " via "
                 << e.origin.via_pattern << '\n';
    write_file(entities_path(config), entities.str());
    write_file(discovery_path(config),
               artifact_header("discovery", config) + serialize_discovery(report));

    result.summary = "mined " + std::to_string(titles.size()) + " titles, discovered " +
                     std::to_string(report.discovered.size()) + " entities from " +
                     std::to_string(seeds.size()) + " seeds";
    return result;
}

namespace {

std::vector<std::string> load_entity_names(const PipelineConfig& config, bool force) {
    std::string payload = read_artifact(entities_path(config), "entities", config, force);
    std::vector<std::string> names;
    std::istringstream in(payload);
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        auto fields = split(line, '\t');
        names.push_back(fields[0]);
    }
    return names;
}

}  // namespace

StageResult run_profile(const PipelineConfig& config, bool force, bool dry_run) {
    StageResult result;
    result.outputs = {profiles_path(config)};
    if (dry_run) {
        result.summary = "would build profiles -> " + profiles_path(config);
        return result;
    }
    auto posts = load_pipeline_corpus(config, force);
    auto names = load_entity_names(config, force);
    auto pre = make_preprocessor(config);
    auto lexer = make_code_lexer(config);

    NGramRange range{1, config.n_max};
    auto stats = build_corpus_stats(lexer, posts, range);

    ProfileOptions options;
    options.range = range;
    options.top_k = static_cast<std::size_t>(config.top_k);
    options.min_post_df = static_cast<std::size_t>(config.min_post_df);

    std::vector<EntityProfile> profiles;
    std::vector<std::string> unprofiled;
    for (const auto& name : names) {
        std::vector<Post> entity_posts;
        for (const auto& p : posts) {
            if (!p.is_question() || !p.title) continue;
            if (pre.preprocess(*p.title).contains_lemma(name)) entity_posts.push_back(p);
        }
        if (entity_posts.empty()) {
            unprofiled.push_back(name);
            continue;
        }
        profiles.push_back(build_profile(name, entity_posts, stats, lexer, options));
    }

    ensure_out_dir(config);
    write_file(profiles_path(config),
               artifact_header("profiles", config) + serialize_profiles(profiles));
    result.summary = "profiled " + std::to_string(profiles.size()) + " entities over " +
                     std::to_string(posts.size()) + " posts";
    if (!unprofiled.empty())
        result.summary += " (no titled posts for: " + join(unprofiled, ", ") + ")";
    return result;
}

namespace {

std::vector<EntityProfile> load_profiles(const PipelineConfig& config, bool force) {
    return parse_profiles(read_artifact(profiles_path(config), "profiles", config, force));
}

LinkConfig make_link_config(const PipelineConfig& config) {
    LinkConfig lc;
    lc.min_normalized_weight = config.link_min_weight;
    lc.profile_depth = static_cast<std::size_t>(config.link_depth);
    lc.max_entities_per_line = static_cast<std::size_t>(config.link_max_entities);
    return lc;
}

}  // namespace

StageResult run_annotate(const PipelineConfig& config, const std::string& input, bool force,
                         bool dry_run) {
    if (input.empty()) throw UserError("annotate needs an input file or directory");
    if (!fs::exists(input)) throw UserError("annotate input not found: " + input);

    std::vector<fs::path> files;
    if (fs::is_directory(input)) {
        for (const auto& entry : fs::recursive_directory_iterator(input))
            if (entry.is_regular_file()) files.push_back(entry.path());
        std::sort(files.begin(), files.end());
    } else {
        files.push_back(input);
    }

    StageResult result;
    result.outputs = {annotated_dir(config), annotated_meta_path(config)};
    if (dry_run) {
        result.summary = "would annotate " + std::to_string(files.size()) + " files -> " +
                         annotated_dir(config);
        return result;
    }

    auto profiles = load_profiles(config, force);
    auto lexer = make_code_lexer(config);
    LinkConfig lc = make_link_config(config);

    fs::create_directories(annotated_dir(config));
    std::ostringstream meta;
    meta << artifact_header("annotated", config);
    std::size_t linked_lines = 0;
    for (const auto& file : files) {
        fs::path rel = fs::is_directory(input) ? fs::relative(file, input) : file.filename();
        fs::path out_path = fs::path(annotated_dir(config)) / rel;
        fs::create_directories(out_path.parent_path());

        auto annotated = annotate_file(read_file(file.string()), profiles, lc, lexer);
        write_file(out_path.string(), annotated.text);
        write_file(out_path.string() + ".concepts", serialize_sidecar(annotated.lines));
        linked_lines += annotated.lines.size();
        meta << rel.generic_string() << '\t' << to_hex(fnv1a(annotated.text)) << '\n';
    }
    write_file(annotated_meta_path(config), meta.str());
    result.summary = "annotated " + std::to_string(files.size()) + " files, " +
                     std::to_string(linked_lines) + " lines linked";
    return result;
}

StageResult run_index(const PipelineConfig& config, bool force, bool dry_run) {
    StageResult result;
    result.outputs = {index_path(config)};
    if (dry_run) {
        result.summary = "would build index -> " + index_path(config);
        return result;
    }
    std::string meta = read_artifact(annotated_meta_path(config), "annotated", config, force);
    std::vector<std::pair<std::string, std::string>> files;
    std::istringstream in(meta);
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        auto fields = split(line, '\t');
        if (fields.size() != 2) throw DataError("annotated.meta corrupt: " + line);
        fs::path path = fs::path(annotated_dir(config)) / fields[0];
        std::string content = read_file(path.string());
        if (to_hex(fnv1a(content)) != fields[1] && !force)
            throw DataError("annotated file changed since annotate ran: " + path.string() +
                            "; re-run annotate or pass --force");
        files.emplace_back(path.generic_string(), std::move(content));
    }

    auto lexer = make_code_lexer(config);
    auto pre = make_preprocessor(config);
    IndexFile index = build_index(files, lexer, pre);
    ensure_out_dir(config);
    // serialize_index already emits the "#codemap index v1" / "#config" header
    write_file(index_path(config), serialize_index(index, config.hash()));
    result.summary = "indexed " + std::to_string(index.docs.size()) + " documents, " +
                     std::to_string(index.dictionary.size()) + " terms";
    return result;
}

namespace {

IndexFile load_index_artifact(const PipelineConfig& config, bool force) {
    std::string payload = read_artifact(index_path(config), "index", config, force);
    return parse_index(payload);
}

}  // namespace

std::size_t run_search(const PipelineConfig& config, const std::vector<std::string>& terms,
                       const SearchOptions& options, bool force, std::ostream& out) {
    if (terms.empty()) throw UserError("search needs at least one term");
    IndexFile index = load_index_artifact(config, force);
    auto pre = make_preprocessor(config);
    std::vector<QueryHit> hits;
    try {
        hits = query(index, terms, pre);
    } catch (const std::invalid_argument& e) {
        throw UserError(e.what());
    }

    std::size_t printed = 0;
    for (const auto& hit : hits) {
        const auto& doc = index.docs.at(static_cast<std::size_t>(hit.doc_id));
        std::vector<std::string> lines;
        if (fs::exists(doc.path)) lines = split(read_file(doc.path), '\n');

        auto print_one = [&](int line_no, bool) {
            out << doc.path << ':' << line_no << ':';
            if (line_no >= 1 && static_cast<std::size_t>(line_no) <= lines.size()) {
                std::string text = lines[static_cast<std::size_t>(line_no) - 1];
                if (!text.empty() && text.back() == '\r') text.pop_back();
                out << ' ' << text;
            }
            out << '\n';
            ++printed;
        };
        if (options.concepts_first) {
            for (const auto& [line_no, concept] : hit.lines)
                if (concept) print_one(line_no, concept);
            for (const auto& [line_no, concept] : hit.lines)
                if (!concept) print_one(line_no, concept);
        } else {
            for (const auto& [line_no, concept] : hit.lines) print_one(line_no, concept);
        }
    }
    return printed;
}

StageResult run_eval(const PipelineConfig& config, int k, bool force, bool dry_run,
                     std::ostream& out) {
    if (config.gold.empty()) throw UserError("no gold judgments: set gold=<path> or pass --gold");
    StageResult result;
    result.outputs = {(fs::path(config.out_dir) / "eval.txt").string()};
    if (dry_run) {
        result.summary = "would evaluate profiles against " + config.gold;
        return result;
    }
    if (!fs::exists(config.gold)) throw UserError("gold file not found: " + config.gold);
    auto profiles = load_profiles(config, force);
    auto lexer = make_code_lexer(config);
    auto gold = load_gold(config.gold, lexer);
    std::string table = report(profiles, gold, k);
    out << table;
    ensure_out_dir(config);
    write_file(result.outputs[0], artifact_header("eval", config) + table);
    result.summary = "evaluated " + std::to_string(gold.relevant.size()) + " judged entities at k=" +
                     std::to_string(k);
    return result;
}

}  // namespace codemap
