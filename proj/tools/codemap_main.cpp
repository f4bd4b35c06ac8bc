// Command-line front end: each subcommand reads its predecessor's artifact
// from the output directory and writes its own.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "codemap/pipeline.hpp"
#include "codemap/util.hpp"

using namespace codemap;

namespace {

void report_stage(const StageResult& result, bool dry_run) {
    std::cout << result.summary << "\n";
    if (!dry_run)
        for (const auto& path : result.outputs) std::cout << "  wrote " << path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"codemap: map programming concepts to syntactic patterns and search code by keyword"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> sets;
    bool force = false;
    bool dry_run = false;
    app.add_option("--config", config_path, "key = value config file");
    app.add_option("--set", sets, "override a config key (KEY=VALUE, repeatable)");
    app.add_flag("--force", force, "use stale artifacts despite config hash mismatches");
    app.add_flag("--dry-run", dry_run, "print the plan without writing anything");

    std::string dump, format, tag, seeds, train, gold, out_dir, classifier, input;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_dir, "output directory (default: out)");
        return cmd;
    };

    auto* ingest = add_common(app.add_subcommand("ingest", "parse and filter a Q&A dump"));
    ingest->add_option("--dump", dump, "dump file");
    ingest->add_option("--format", format, "xml or jsonl")
        ->check(CLI::IsMember({"xml", "jsonl"}));
    ingest->add_option("--tag", tag, "language tag to keep (default: java)");

    auto* ctrain = add_common(app.add_subcommand("classify-train", "train the question classifier"));
    ctrain->add_option("--train", train, "labeled questions, label<TAB>text");
    ctrain->add_option("--model", classifier, "bayes or logistic")
        ->check(CLI::IsMember({"bayes", "logistic"}));

    auto* cfilter = add_common(
        app.add_subcommand("classify-filter", "keep how-to-do-it questions and their answers"));

    auto* discover = add_common(app.add_subcommand("discover", "mine POS patterns, expand entities"));
    discover->add_option("--seeds", seeds, "seed entities, one per line");

    auto* profile = add_common(app.add_subcommand("profile", "build TF-IDF entity profiles"));

    auto* annotate = add_common(app.add_subcommand("annotate", "tag source lines with concepts"));
    annotate->add_option("input", input, "source file or directory")->required();

    auto* index_cmd = add_common(app.add_subcommand("index", "build the inverted index"));

    std::vector<std::string> terms;
    bool concepts_first = false;
    auto* search = add_common(app.add_subcommand("search", "keyword search over annotated code"));
    search->add_option("terms", terms, "query terms")->required();
    search->add_flag("--concepts-first", concepts_first, "print concept-tagged lines first");

    int k = 4;
    auto* eval = add_common(app.add_subcommand("eval", "precision@k against gold judgments"));
    eval->add_option("--gold", gold, "gold file, entity<TAB>pattern");
    eval->add_option("--k", k, "cutoff (default 4)");

    CLI11_PARSE(app, argc, argv);

    try {
        PipelineConfig config;
        if (!config_path.empty()) config = load_config(config_path);
        for (const auto& kv : sets) {
            std::size_t eq = kv.find('=');
            if (eq == std::string::npos) throw UserError("--set expects KEY=VALUE, got: " + kv);
            config.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (!out_dir.empty()) config.set("out_dir", out_dir);
        if (!dump.empty()) config.set("dump", dump);
        if (!format.empty()) config.set("format", format);
        if (!tag.empty()) config.set("tag", tag);
        if (!seeds.empty()) config.set("seeds", seeds);
        if (!train.empty()) config.set("train", train);
        if (!gold.empty()) config.set("gold", gold);
        if (!classifier.empty()) config.set("classifier", classifier);

        if (ingest->parsed()) {
            report_stage(run_ingest(config, force, dry_run), dry_run);
        } else if (ctrain->parsed()) {
            report_stage(run_classify_train(config, force, dry_run), dry_run);
        } else if (cfilter->parsed()) {
            report_stage(run_classify_filter(config, force, dry_run), dry_run);
        } else if (discover->parsed()) {
            report_stage(run_discover(config, force, dry_run), dry_run);
        } else if (profile->parsed()) {
            report_stage(run_profile(config, force, dry_run), dry_run);
        } else if (annotate->parsed()) {
            report_stage(run_annotate(config, input, force, dry_run), dry_run);
        } else if (index_cmd->parsed()) {
            report_stage(run_index(config, force, dry_run), dry_run);
        } else if (search->parsed()) {
            if (dry_run) {
                std::cout << "would search " << index_path(config) << "\n";
            } else {
                SearchOptions options;
                options.concepts_first = concepts_first;
                run_search(config, terms, options, force, std::cout);
            }
        } else if (eval->parsed()) {
            report_stage(run_eval(config, k, force, dry_run, std::cout), dry_run);
        }
    } catch (const UserError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
