#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "phonodetect/errors.hpp"
#include "phonodetect/eval.hpp"
#include "phonodetect/fixture.hpp"
#include "phonodetect/manifest.hpp"

namespace fs = std::filesystem;
using namespace phonodetect;

namespace {

struct CommonFlags {
    std::string wordlist_path;
    std::string symbols_path;
    std::string sonority_path;
    std::string out_dir = ".";
    std::string setup = "syllable";
    std::string analysis;
    std::string ngrams;
    std::string agg;
    std::string algorithm = "iforest";
    uint64_t seed = 42;
    int lof_k = 20;
    bool pool = false;
    bool loo = false;
    bool use_zscore = false;
    bool per_order = false;
};

SymbolTable load_symbols(const CommonFlags& f) {
    return f.symbols_path.empty() ? SymbolTable::default_table() : SymbolTable::load(f.symbols_path);
}

SonorityScale load_sonority(const CommonFlags& f) {
    return f.sonority_path.empty() ? SonorityScale::default_scale()
                                   : SonorityScale::load(f.sonority_path);
}

std::string hex64(uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string iso_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

RunManifest make_manifest(const CommonFlags& f) {
    RunManifest m;
    m.seed = f.seed;
    m.dataset_path = f.wordlist_path;
    m.dataset_hash = hex64(hash_file(f.wordlist_path));
    if (!f.symbols_path.empty()) m.symbols_hash = hex64(hash_file(f.symbols_path));
    m.timestamp = iso_now();
    m.flags = {{"setup", f.setup},         {"analysis", f.analysis},
               {"ngrams", f.ngrams},       {"agg", f.agg},
               {"algorithm", f.algorithm}, {"k", std::to_string(f.lof_k)},
               {"pool", f.pool ? "1" : "0"}, {"loo", f.loo ? "1" : "0"},
               {"zscore", f.use_zscore ? "1" : "0"},
               {"per-order-agg", f.per_order ? "1" : "0"}};
    return m;
}

RunOptions make_run_options(const CommonFlags& f) {
    RunOptions o;
    o.seed = f.seed;
    o.pool = f.pool;
    o.leave_one_out = f.loo;
    o.zscore = f.use_zscore;
    o.per_order_agg = f.per_order;
    o.lof_k = f.lof_k;
    return o;
}

// Paper-grid default cell: the strongest syllable-aware configuration.
FeatureConfig make_feature_config(const CommonFlags& f) {
    FeatureConfig cfg;
    if (f.setup == "character") cfg.setup = Setup::character;
    else if (f.setup == "syllable") cfg.setup = Setup::syllable;
    else throw UsageError("unknown setup '" + f.setup + "'");

    std::string analysis = f.analysis;
    if (analysis.empty()) analysis = cfg.setup == Setup::character ? "plain" : "boundary_phoneme";
    if (cfg.setup == Setup::character) {
        if (analysis != "plain")
            throw UsageError("the character setup has no analysis types; drop --analysis");
        cfg.analysis = Analysis::plain;
    } else {
        if (analysis == "within_syllable") cfg.analysis = Analysis::within_syllable;
        else if (analysis == "cross_boundary") cfg.analysis = Analysis::cross_boundary;
        else if (analysis == "boundary_phoneme") cfg.analysis = Analysis::boundary_phoneme;
        else if (analysis == "all" || analysis == "ALL") cfg.analysis = Analysis::all;
        else throw UsageError("unknown analysis '" + analysis + "'");
    }
    cfg.combination = NgramCombination::parse(f.ngrams.empty() ? "2+3" : f.ngrams);

    std::string agg = f.agg.empty() ? "all" : f.agg;
    if (agg == "sum") cfg.aggregation = Aggregation::sum;
    else if (agg == "mean") cfg.aggregation = Aggregation::mean;
    else if (agg == "min") cfg.aggregation = Aggregation::min;
    else if (agg == "max") cfg.aggregation = Aggregation::max;
    else if (agg == "all" || agg == "ALL") cfg.aggregation = Aggregation::all;
    else throw UsageError("unknown aggregation '" + agg + "'");
    return cfg;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << text;
}

int cmd_validate(const CommonFlags& f) {
    const SymbolTable table = load_symbols(f);
    const SonorityScale scale = load_sonority(f);
    int errors = 0, warnings = 0;
    Wordlist wl;
    try {
        wl = parse_wordlist(f.wordlist_path);
    } catch (const std::exception& ex) {
        std::cout << "error: " << ex.what() << "\n";
        std::cout << "1 error, 0 warnings\n";
        return 1;
    }
    for (const auto& entry : wl.entries) {
        try {
            const WordlistEntry norm = normalize(entry, table);
            const PhonemeSequence seq = tokenize(norm.form_norm, table);
            try {
                syllabify(seq, scale);
            } catch (const NoNucleusError&) {
                std::cout << "warning: line " << entry.line_no << ": form '" << norm.form_norm
                          << "' has no vowel nucleus (single-syllable fallback applies)\n";
                ++warnings;
            }
        } catch (const std::exception& ex) {
            std::cout << "error: line " << entry.line_no << ": " << ex.what() << "\n";
            ++errors;
        }
    }
    if (errors == 0 && warnings == 0) std::cout << "0 issues\n";
    else std::cout << errors << " errors, " << warnings << " warnings\n";
    return errors > 0 ? 1 : 0;
}

int cmd_score(const CommonFlags& f) {
    const SymbolTable table = load_symbols(f);
    const SonorityScale scale = load_sonority(f);
    const FeatureConfig config = make_feature_config(f);
    const Algorithm algorithm = parse_algorithm(f.algorithm);
    const Wordlist wl = parse_wordlist(f.wordlist_path);
    const RunOptions opts = make_run_options(f);

    const auto scored = score_entries(wl, config, algorithm, table, scale, opts);

    std::vector<size_t> order(scored.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        const auto& ea = wl.entries[scored[a].entry_index];
        const auto& eb = wl.entries[scored[b].entry_index];
        if (ea.variety_id != eb.variety_id) return ea.variety_id < eb.variety_id;
        if (scored[a].score != scored[b].score) return scored[a].score > scored[b].score;
        return scored[a].entry_index < scored[b].entry_index;
    });

    std::ostringstream report;
    report << "variety\tconcept\tform\tscore\tflagged\n";
    report.precision(6);
    for (size_t i : order) {
        const auto& e = wl.entries[scored[i].entry_index];
        report << e.variety_id << "\t" << e.concept_id << "\t" << e.form_raw << "\t"
               << scored[i].score << "\t" << (scored[i].flagged ? 1 : 0) << "\n";
    }
    fs::create_directories(f.out_dir);
    write_text(fs::path(f.out_dir) / "report.tsv", report.str());
    make_manifest(f).write((fs::path(f.out_dir) / "manifest.json").string());
    size_t flagged = 0;
    for (const auto& s : scored) flagged += s.flagged ? 1 : 0;
    std::cout << "scored " << scored.size() << " entries, flagged " << flagged << " ("
              << config.name() << ", " << algorithm_name(algorithm) << ")\n";
    std::cout << "wrote " << (fs::path(f.out_dir) / "report.tsv").string() << "\n";
    return 0;
}

int cmd_grid(const CommonFlags& f) {
    const SymbolTable table = load_symbols(f);
    const SonorityScale scale = load_sonority(f);
    const Setup setup = f.setup == "character" ? Setup::character : Setup::syllable;
    const Wordlist wl = parse_wordlist(f.wordlist_path);
    const RunOptions opts = make_run_options(f);

    const auto results = run_grid(
        wl, setup, {Algorithm::iforest, Algorithm::lof, Algorithm::ocsvm}, table, scale, opts);
    const auto top = top_k(results, 10);

    fs::create_directories(f.out_dir);
    write_text(fs::path(f.out_dir) / "grid.tsv", grid_to_tsv(results));
    write_text(fs::path(f.out_dir) / "top10.tsv", grid_to_tsv(top));
    write_text(fs::path(f.out_dir) / "pr_dump.csv", emit_pr_dump(results));
    make_manifest(f).write((fs::path(f.out_dir) / "manifest.json").string());

    std::cout << "grid: " << results.size() << " rows (" << setup_name(setup) << " setup)\n\n";
    std::cout << grid_to_tsv(top);
    std::cout << "\nwrote grid.tsv, top10.tsv, pr_dump.csv, manifest.json under " << f.out_dir
              << "\n";
    return 0;
}

int cmd_fixture(const std::string& out_path, uint64_t seed) {
    FixtureOptions opts;
    opts.seed = seed;
    const Wordlist wl = make_fixture(opts);
    write_text(out_path, serialize_wordlist(wl));
    std::cout << "wrote " << wl.entries.size() << " entries to " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"phonodetect - phonotactic anomaly detection for fieldwork wordlists"};
    app.require_subcommand(1);

    CommonFlags f;
    std::string fixture_out = "fixture.tsv";

    auto add_common = [&](CLI::App* cmd, bool with_model_flags) {
        cmd->add_option("wordlist", f.wordlist_path, "input wordlist TSV")->required();
        cmd->add_option("--symbols", f.symbols_path, "symbol table config");
        cmd->add_option("--sonority", f.sonority_path, "sonority scale config");
        if (with_model_flags) {
            cmd->add_option("--setup", f.setup, "character|syllable");
            cmd->add_option("--seed", f.seed, "random seed");
            cmd->add_option("--k", f.lof_k, "LOF neighbor count");
            cmd->add_option("--out", f.out_dir, "output directory");
            cmd->add_flag("--pool", f.pool, "one pooled matrix instead of per-variety");
            cmd->add_flag("--loo", f.loo, "leave-one-out model fitting");
            cmd->add_flag("--zscore", f.use_zscore, "z-score features per matrix");
            cmd->add_flag("--per-order-agg", f.per_order, "aggregate per n-gram order");
        }
    };

    auto* validate = app.add_subcommand("validate", "parse and report data issues");
    add_common(validate, false);

    auto* score = app.add_subcommand("score", "rank entries by anomaly score");
    add_common(score, true);
    score->add_option("--analysis", f.analysis,
                      "within_syllable|cross_boundary|boundary_phoneme|all");
    score->add_option("--ngrams", f.ngrams, "1|2|3|1+2|2+3|1+2+3");
    score->add_option("--agg", f.agg, "sum|mean|min|max|all");
    score->add_option("--algorithm", f.algorithm, "iforest|lof|ocsvm");

    auto* grid = app.add_subcommand("grid", "run the full configuration grid");
    add_common(grid, true);

    auto* fixture = app.add_subcommand("fixture", "generate the synthetic gold-labeled fixture");
    fixture->add_option("--out", fixture_out, "output TSV path");
    fixture->add_option("--seed", f.seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (validate->parsed()) return cmd_validate(f);
        if (score->parsed()) return cmd_score(f);
        if (grid->parsed()) return cmd_grid(f);
        if (fixture->parsed()) return cmd_fixture(fixture_out, f.seed);
    } catch (const UsageError& ex) {
        std::cerr << "usage error: " << ex.what() << "\n";
        return 2;
    } catch (const ValidationError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    } catch (const std::exception& ex) {
        std::cerr << "internal error: " << ex.what() << "\n";
        return 3;
    }
    return 2;
}
