#include "phonodetect/eval.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "phonodetect/errors.hpp"

namespace phonodetect {

void EvalMetrics::finalize() {
    precision = (true_pos + false_pos) > 0
                    ? static_cast<double>(true_pos) / static_cast<double>(true_pos + false_pos)
                    : 0.0;
    recall = (true_pos + false_neg) > 0
                 ? static_cast<double>(true_pos) / static_cast<double>(true_pos + false_neg)
                 : 0.0;
    f1 = (precision + recall) > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
}

EvalMetrics evaluate(const std::vector<bool>& predicted,
                     const std::vector<std::optional<bool>>& gold) {
    if (predicted.size() != gold.size())
        throw UsageError("prediction/gold length mismatch");
    EvalMetrics m;
    for (size_t i = 0; i < predicted.size(); ++i) {
        if (!gold[i]) {
            ++m.unlabeled;
            continue;
        }
        const bool g = *gold[i];
        const bool p = predicted[i];
        if (p && g) ++m.true_pos;
        else if (p && !g) ++m.false_pos;
        else if (!p && g) ++m.false_neg;
        else ++m.true_neg;
    }
    if (m.true_pos + m.false_pos + m.false_neg + m.true_neg == 0)
        throw ValidationError("no gold-labeled entries to evaluate");
    m.finalize();
    return m;
}

std::vector<ScoringScope> prepare_scopes(const Wordlist& wl, const SymbolTable& table,
                                         const SonorityScale& scale, bool pool,
                                         std::vector<std::string>* warnings) {
    std::map<std::string, size_t> scope_index;
    std::vector<ScoringScope> scopes;
    auto scope_for = [&](const std::string& id) -> ScoringScope& {
        auto it = scope_index.find(id);
        if (it == scope_index.end()) {
            scope_index[id] = scopes.size();
            scopes.push_back({id, {}});
            return scopes.back();
        }
        return scopes[it->second];
    };
    for (size_t i = 0; i < wl.entries.size(); ++i) {
        const WordlistEntry norm = normalize(wl.entries[i], table);
        PreparedEntry pe;
        pe.entry_index = i;
        pe.seq = tokenize(norm.form_norm, table);
        try {
            pe.form = syllabify(pe.seq, scale);
        } catch (const NoNucleusError&) {
            pe.form = whole_form_syllable(pe.seq);
            pe.syllabified_ok = false;
            if (warnings)
                warnings->push_back("line " + std::to_string(norm.line_no) + ": form '" +
                                    norm.form_norm +
                                    "' has no vowel nucleus; treated as one syllable");
        }
        scope_for(pool ? "ALL" : norm.variety_id).entries.push_back(std::move(pe));
    }
    return scopes;
}

ModelSet fit_models(const ScoringScope& scope, Setup setup, FitOptions opts) {
    std::vector<ExtractionMode> modes;
    if (setup == Setup::character)
        modes = {ExtractionMode::plain};
    else
        modes = {ExtractionMode::within_syllable, ExtractionMode::cross_boundary,
                 ExtractionMode::boundary_phoneme};
    std::vector<SyllabifiedForm> forms;
    std::vector<PhonemeSequence> seqs;
    for (const auto& e : scope.entries) {
        forms.push_back(e.form);
        seqs.push_back(e.seq);
    }
    ModelSet set;
    for (ExtractionMode mode : modes) {
        for (int n = 1; n <= 3; ++n) {
            try {
                if (mode == ExtractionMode::plain)
                    set.models[{n, mode}] = fit(seqs, n, opts);
                else
                    set.models[{n, mode}] = fit(forms, n, mode, opts);
            } catch (const ValidationError&) {
                // corpus yields no n-grams under this slot; placeholder
                NgramModel empty;
                empty.n = n;
                empty.mode = mode;
                empty.smoothing_k = opts.smoothing_k;
                empty.padding = opts.padding;
                empty.joint = opts.joint;
                set.models[{n, mode}] = std::move(empty);
            }
        }
    }
    return set;
}

uint64_t derive_seed(uint64_t base, const std::string& scope, const std::string& config,
                     const std::string& algorithm) {
    uint64_t h = 0xCBF29CE484222325ULL ^ base;
    auto mix = [&h](const std::string& s) {
        for (char c : s) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001B3ULL;
        }
        h ^= 0xFF;
        h *= 0x100000001B3ULL;
    };
    mix(scope);
    mix(config);
    mix(algorithm);
    return h;
}

namespace {

struct CellRun {
    std::vector<bool> predicted;  // aligned with wordlist entries
    std::vector<double> scores;
    std::vector<std::string> scope_of;
};

CellRun run_cell(const Wordlist& wl, const std::vector<ScoringScope>& scopes,
                 const std::map<std::string, ModelSet>& model_sets,
                 const std::map<std::string, NllCache>* caches, const FeatureConfig& config,
                 Algorithm algorithm, const RunOptions& opts) {
    CellRun run;
    run.predicted.assign(wl.entries.size(), false);
    run.scores.assign(wl.entries.size(), 0.0);
    run.scope_of.assign(wl.entries.size(), "");
    DetectorConfig dcfg;
    dcfg.algorithm = algorithm;
    dcfg.k_neighbors = opts.lof_k;
    dcfg.nu = opts.nu;
    BuildOptions bopts;
    bopts.leave_one_out = opts.leave_one_out;
    bopts.per_order_agg = opts.per_order_agg;
    for (const auto& scope : scopes) {
        Matrix X;
        X.reserve(scope.entries.size());
        if (caches) {
            const NllCache& cache = caches->at(scope.id);
            for (size_t r = 0; r < scope.entries.size(); ++r)
                X.push_back(build_vector_cached(cache, r, scope.entries[r].entry_index, config,
                                                bopts)
                                .values);
        } else {
            const ModelSet& models = model_sets.at(scope.id);
            for (const auto& e : scope.entries)
                X.push_back(build_vector(e, config, models, bopts).values);
        }
        if (opts.zscore) zscore(X);
        const uint64_t cell_seed =
            derive_seed(opts.seed, scope.id, config.name(), algorithm_name(algorithm));
        const auto results = run_detector(X, dcfg, cell_seed);
        for (size_t r = 0; r < results.size(); ++r) {
            const size_t idx = scope.entries[r].entry_index;
            run.predicted[idx] = results[r].is_anomaly;
            run.scores[idx] = results[r].score;
            run.scope_of[idx] = scope.id;
        }
    }
    return run;
}

}  // namespace

std::vector<EntryScore> score_entries(const Wordlist& wl, const FeatureConfig& config,
                                      Algorithm algorithm, const SymbolTable& table,
                                      const SonorityScale& scale, const RunOptions& opts) {
    const auto scopes = prepare_scopes(wl, table, scale, opts.pool);
    std::map<std::string, ModelSet> model_sets;
    for (const auto& scope : scopes)
        model_sets[scope.id] = fit_models(scope, config.setup, opts.fit);
    const CellRun run = run_cell(wl, scopes, model_sets, nullptr, config, algorithm, opts);
    std::vector<EntryScore> out;
    out.reserve(wl.entries.size());
    for (size_t i = 0; i < wl.entries.size(); ++i)
        out.push_back({i, run.scope_of[i], run.scores[i], run.predicted[i]});
    return out;
}

std::vector<GridResult> run_grid(const Wordlist& wl, Setup setup,
                                 const std::vector<Algorithm>& algorithms,
                                 const SymbolTable& table, const SonorityScale& scale,
                                 const RunOptions& opts) {
    std::vector<std::optional<bool>> gold;
    gold.reserve(wl.entries.size());
    bool any_gold = false;
    for (const auto& e : wl.entries) {
        gold.push_back(e.gold_label);
        if (e.gold_label) any_gold = true;
    }
    if (!any_gold)
        throw ValidationError("no gold labels in wordlist; add a 'gold' column to run the grid");

    const auto scopes = prepare_scopes(wl, table, scale, opts.pool);
    std::map<std::string, ModelSet> model_sets;
    std::map<std::string, NllCache> caches;
    for (const auto& scope : scopes) {
        model_sets[scope.id] = fit_models(scope, setup, opts.fit);
        caches[scope.id] =
            build_nll_cache(scope.entries, model_sets[scope.id], setup, opts.leave_one_out);
    }

    std::vector<GridResult> results;
    for (const FeatureConfig& config : enumerate_grid(setup)) {
        for (Algorithm algorithm : algorithms) {
            GridResult row;
            row.config = config;
            row.algorithm = algorithm;
            row.seed = opts.seed;
            try {
                const CellRun run =
                    run_cell(wl, scopes, model_sets, &caches, config, algorithm, opts);
                row.metrics = evaluate(run.predicted, gold);
            } catch (const std::exception& ex) {
                row.failed = true;
                row.failure_reason = ex.what();
            }
            results.push_back(std::move(row));
        }
    }
    std::stable_sort(results.begin(), results.end(), [](const GridResult& a, const GridResult& b) {
        if (a.failed != b.failed) return !a.failed;
        if (a.metrics.f1 != b.metrics.f1) return a.metrics.f1 > b.metrics.f1;
        if (a.metrics.recall != b.metrics.recall) return a.metrics.recall > b.metrics.recall;
        if (a.metrics.precision != b.metrics.precision) return a.metrics.precision > b.metrics.precision;
        return a.config.name() < b.config.name();
    });
    return results;
}

std::vector<GridResult> top_k(const std::vector<GridResult>& results, size_t k) {
    std::vector<GridResult> sorted = results;
    std::stable_sort(sorted.begin(), sorted.end(), [](const GridResult& a, const GridResult& b) {
        if (a.failed != b.failed) return !a.failed;
        if (a.metrics.f1 != b.metrics.f1) return a.metrics.f1 > b.metrics.f1;
        if (a.metrics.recall != b.metrics.recall) return a.metrics.recall > b.metrics.recall;
        if (a.metrics.precision != b.metrics.precision) return a.metrics.precision > b.metrics.precision;
        return a.config.name() < b.config.name();
    });
    if (sorted.size() > k) sorted.resize(k);
    return sorted;
}

namespace {

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

}  // namespace

std::string grid_to_tsv(const std::vector<GridResult>& results) {
    std::string out =
        "setup\tanalysis\tcombination\taggregation\talgorithm\ttp\tfp\tfn\ttn\t"
        "precision\trecall\tf1\tstatus\n";
    for (const auto& r : results) {
        out += std::string(setup_name(r.config.setup)) + "\t" + analysis_name(r.config.analysis) +
               "\t" + r.config.combination.name() + "\t" + aggregation_name(r.config.aggregation) +
               "\t" + algorithm_name(r.algorithm) + "\t";
        if (r.failed) {
            out += "-\t-\t-\t-\t-\t-\t-\tfailed: " + r.failure_reason + "\n";
        } else {
            out += std::to_string(r.metrics.true_pos) + "\t" + std::to_string(r.metrics.false_pos) +
                   "\t" + std::to_string(r.metrics.false_neg) + "\t" +
                   std::to_string(r.metrics.true_neg) + "\t" + fmt(r.metrics.precision) + "\t" +
                   fmt(r.metrics.recall) + "\t" + fmt(r.metrics.f1) + "\tok\n";
        }
    }
    return out;
}

std::string emit_pr_dump(const std::vector<GridResult>& results) {
    std::string out = "algorithm,setup,analysis,combination,aggregation,precision,recall,f1\n";
    for (const auto& r : results) {
        if (r.failed) continue;
        out += std::string(algorithm_name(r.algorithm)) + "," + setup_name(r.config.setup) + "," +
               analysis_name(r.config.analysis) + "," + r.config.combination.name() + "," +
               aggregation_name(r.config.aggregation) + "," + fmt(r.metrics.precision) + "," +
               fmt(r.metrics.recall) + "," + fmt(r.metrics.f1) + "\n";
    }
    return out;
}

}  // namespace phonodetect
