#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "creditlens/ack_classifier.hpp"
#include "creditlens/corpus.hpp"
#include "creditlens/credit_map.hpp"
#include "creditlens/error.hpp"
#include "creditlens/gender.hpp"
#include "creditlens/report.hpp"
#include "creditlens/synth.hpp"

namespace fs = std::filesystem;
using namespace creditlens;

namespace {

enum Exit { kOk = 0, kInputError = 1, kConfigError = 2 };

struct RunConfig {
    std::string corpus;
    std::string scholars;
    std::string taxonomy;
    std::string credit_map;
    std::string gender_dict;
    std::string gender_service_url;
    std::string gender_cache;
    double gender_threshold = kDefaultGenderThreshold;
    double q = 0.10;
    std::string ttest = "welch";
    bool by_discipline = false;
    bool tiers_by_discipline = false;
    bool same_gender_pairs = false;
    std::int64_t min_shared_papers = 1;
    std::string out;
    unsigned workers = 1;
    std::uint64_t seed = 42;
    std::size_t n_papers = 0;
    std::string synth_config;
};

void require_file(const std::string& path, const char* flag) {
    if (!path.empty() && !fs::is_regular_file(path)) {
        throw InputError(std::string(flag) + ": no such file: " + path);
    }
}

std::ofstream open_out(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    return out;
}

Corpus load(const RunConfig& c) {
    return load_corpus(c.corpus, c.scholars.empty() ? std::nullopt : std::optional<fs::path>(c.scholars));
}

CreditMapping mapping_of(const RunConfig& c) {
    return c.credit_map.empty() ? CreditMapping::standard() : CreditMapping::load(c.credit_map);
}

AckTaxonomy taxonomy_of(const RunConfig& c) {
    return c.taxonomy.empty() ? AckTaxonomy::standard() : AckTaxonomy::load(c.taxonomy);
}

void print_load_issues(const Corpus& corpus) {
    for (const auto& issue : corpus.load_report) {
        std::cerr << "warning: " << issue.file << ':' << issue.line << ": " << issue.message << '\n';
    }
}

/// Fills missing genders from the dictionary and optional web service.
Corpus annotate(const Corpus& corpus, const RunConfig& c, AnnotationCounts* counts) {
    if (c.gender_threshold < 0.5 || c.gender_threshold > 1.0) {
        throw ConfigError("--gender-threshold must lie in [0.5, 1]");
    }
    GenderDictionary dict = c.gender_dict.empty() ? GenderDictionary{} : GenderDictionary::load(c.gender_dict);
    std::unique_ptr<HttpGenderService> service;
    std::unique_ptr<GenderCache> cache;
    std::unique_ptr<CachedGenderClient> client;
    if (!c.gender_service_url.empty()) {
        std::optional<std::string> key;
        if (const char* env = std::getenv(kGenderApiKeyEnv)) key = env;
        service = std::make_unique<HttpGenderService>(c.gender_service_url, key);
        // Responses persist next to the corpus unless a cache file is named.
        const fs::path cache_path = c.gender_cache.empty()
                                        ? fs::path(c.corpus).parent_path() / "gender_cache.jsonl"
                                        : fs::path(c.gender_cache);
        cache = std::make_unique<GenderCache>(cache_path);
        client = std::make_unique<CachedGenderClient>(*service, *cache);
    }
    Corpus out = annotate_corpus(corpus, dict, client.get(), c.gender_threshold, counts);
    if (client) {
        for (const auto& w : client->warnings()) std::cerr << "warning: " << w << '\n';
    }
    return out;
}

int cmd_validate(const RunConfig& c) {
    const Corpus corpus = load(c);
    print_load_issues(corpus);
    const ValidationReport report = validate(corpus, mapping_of(c));
    const fs::path out = fs::path(c.out.empty() ? "." : c.out) / "validation_report.jsonl";
    auto file = open_out(out);
    write_validation_report(file, corpus.load_report, report);
    std::cout << "papers: " << corpus.papers.size() << "\nissues: "
              << corpus.load_report.size() + report.entries.size() << "\nreport: " << out.string()
              << '\n';
    return kOk;
}

int cmd_infer_gender(const RunConfig& c) {
    const Corpus corpus = load(c);
    print_load_issues(corpus);
    AnnotationCounts counts;
    const Corpus annotated = annotate(corpus, c, &counts);
    const fs::path out = fs::path(c.out.empty() ? "." : c.out) / "corpus_gendered.jsonl";
    auto file = open_out(out);
    write_corpus(file, annotated);
    std::cout << "women: " << counts.labels[Gender::Woman] << "\nmen: " << counts.labels[Gender::Man]
              << "\nunknown: " << counts.labels[Gender::Unknown] << "\ninitials only: "
              << counts.initials_only << "\ncorpus: " << out.string() << '\n';
    return kOk;
}

int cmd_classify(const RunConfig& c) {
    const Corpus corpus = load(c);
    print_load_issues(corpus);
    const AssignmentResult result = classify_corpus(corpus, taxonomy_of(c), c.workers);
    const fs::path dir = c.out.empty() ? "." : c.out;
    {
        auto file = open_out(dir / "assignments.jsonl");
        write_assignments(file, corpus, result);
    }
    auto file = open_out(dir / "classify_diagnostics.jsonl");
    write_diagnostics(file, result);
    std::cout << "assignments: " << result.assignments.size()
              << "\ndiagnostics: " << result.diagnostics.size() << '\n';
    return kOk;
}

int cmd_analyze(const RunConfig& c) {
    AnalyzeOptions options;
    options.q = c.q;
    if (c.ttest == "welch") {
        options.ttest = stats::TTestVariant::Welch;
    } else if (c.ttest == "pooled") {
        options.ttest = stats::TTestVariant::Pooled;
    } else {
        throw ConfigError("--ttest must be welch or pooled");
    }
    options.by_discipline = c.by_discipline;
    options.tiers_by_discipline = c.tiers_by_discipline;
    options.pairs.min_shared_papers = c.min_shared_papers;
    options.pairs.include_same_gender = c.same_gender_pairs;
    options.workers = c.workers;
    const auto mapping = mapping_of(c);
    const auto taxonomy = taxonomy_of(c);

    Corpus corpus = load(c);
    print_load_issues(corpus);
    if (!c.gender_dict.empty() || !c.gender_service_url.empty()) corpus = annotate(corpus, c, nullptr);
    const AnalysisResult result = analyze(corpus, mapping, taxonomy, options);
    for (const auto& w : result.tiers.warnings) std::cerr << "warning: " << w << '\n';
    const fs::path dir = c.out.empty() ? "results" : c.out;
    for (const auto& name : write_bundle(result, corpus, options, dir)) {
        std::cout << (dir / name).string() << '\n';
    }
    return kOk;
}

int cmd_synth(const RunConfig& c, const CLI::App& sub) {
    SynthConfig config;
    if (!c.synth_config.empty()) {
        std::ifstream in(c.synth_config, std::ios::binary);
        config = SynthConfig::from_json(std::string(std::istreambuf_iterator<char>(in), {}));
    }
    if (sub.count("--seed")) config.seed = c.seed;
    if (sub.count("--n-papers")) config.n_papers = c.n_papers;
    config.check();
    const SynthOutput out = generate(config);
    const fs::path dir = c.out.empty() ? "synth" : c.out;
    const fs::path corpus_path = dir / "corpus.jsonl";
    const fs::path scholars_path = dir / "scholars.jsonl";
    const fs::path truth_path = dir / "ground_truth.json";
    const fs::path names_path = dir / "names.tsv";
    {
        auto f = open_out(corpus_path);
        write_corpus(f, out.corpus);
    }
    {
        auto f = open_out(scholars_path);
        write_scholars(f, out.corpus.scholars);
    }
    {
        auto f = open_out(truth_path);
        out.truth.write_json(f);
    }
    {
        auto f = open_out(names_path);
        write_name_dictionary(f);
    }
    for (const auto& p : {corpus_path, scholars_path, truth_path, names_path}) std::cout << p.string() << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gender and contribution-role analysis of authorship and acknowledgment credit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    RunConfig c;

    auto corpus_opts = [&](CLI::App* sub, bool scholars) {
        sub->add_option("--corpus", c.corpus, "Corpus JSONL file")->required();
        if (scholars) sub->add_option("--scholars", c.scholars, "Scholar profile JSONL file");
    };
    auto gender_opts = [&](CLI::App* sub) {
        sub->add_option("--gender-dict", c.gender_dict, "Given-name dictionary (name<TAB>label[:confidence])");
        sub->add_option("--gender-service-url", c.gender_service_url,
                        std::string("Name-to-gender web service; API key read from ") + kGenderApiKeyEnv);
        sub->add_option("--gender-cache", c.gender_cache, "JSONL cache of service responses (default: next to the corpus)");
        sub->add_option("--gender-threshold", c.gender_threshold, "Minimum confidence for a label")
            ->capture_default_str();
    };

    auto* validate_cmd = app.add_subcommand("validate", "Load a corpus and report data problems");
    corpus_opts(validate_cmd, true);
    validate_cmd->add_option("--credit-map", c.credit_map, "CRediT mapping JSON");
    validate_cmd->add_option("--out", c.out, "Output directory");

    auto* infer_cmd = app.add_subcommand("infer-gender", "Fill in missing gender labels");
    corpus_opts(infer_cmd, true);
    gender_opts(infer_cmd);
    infer_cmd->add_option("--out", c.out, "Output directory");

    auto* classify_cmd = app.add_subcommand("classify", "Assign roles to acknowledgees");
    corpus_opts(classify_cmd, false);
    classify_cmd->add_option("--taxonomy", c.taxonomy, "Acknowledgment taxonomy JSON");
    classify_cmd->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
    classify_cmd->add_option("--out", c.out, "Output directory");

    auto* analyze_cmd = app.add_subcommand("analyze", "Compute authorship-rate tables");
    corpus_opts(analyze_cmd, true);
    analyze_cmd->add_option("--taxonomy", c.taxonomy, "Acknowledgment taxonomy JSON");
    analyze_cmd->add_option("--credit-map", c.credit_map, "CRediT mapping JSON");
    gender_opts(analyze_cmd);
    analyze_cmd->add_option("--q", c.q, "Status tier fraction")->capture_default_str();
    analyze_cmd->add_option("--ttest", c.ttest, "Independent t-test variant")
        ->check(CLI::IsMember({"welch", "pooled"}))
        ->capture_default_str();
    analyze_cmd->add_flag("--by-discipline", c.by_discipline, "Also emit per-discipline tables");
    analyze_cmd->add_flag("--tiers-by-discipline", c.tiers_by_discipline,
                          "Compute status tiers within gender and discipline");
    analyze_cmd->add_flag("--same-gender-pairs", c.same_gender_pairs,
                          "Also build same-gender pairs (listed in ar_pairs.csv only)");
    analyze_cmd->add_option("--min-shared-papers", c.min_shared_papers, "Minimum shared papers per pair")
        ->capture_default_str();
    analyze_cmd->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
    analyze_cmd->add_option("--out", c.out, "Output directory");

    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus with ground truth");
    synth_cmd->add_option("--config", c.synth_config, "Generator config JSON");
    synth_cmd->add_option("--n-papers", c.n_papers, "Number of papers");
    synth_cmd->add_option("--seed", c.seed, "Random seed");
    synth_cmd->add_option("--out", c.out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        require_file(c.corpus, "--corpus");
        require_file(c.scholars, "--scholars");
        require_file(c.taxonomy, "--taxonomy");
        require_file(c.credit_map, "--credit-map");
        require_file(c.gender_dict, "--gender-dict");
        require_file(c.synth_config, "--config");
        if (*validate_cmd) return cmd_validate(c);
        if (*infer_cmd) return cmd_infer_gender(c);
        if (*classify_cmd) return cmd_classify(c);
        if (*analyze_cmd) return cmd_analyze(c);
        return cmd_synth(c, *synth_cmd);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const UnmappedRoleError& e) {
        std::cerr << "input error: " << e.what() << " (add it to the CRediT mapping)\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }
}
