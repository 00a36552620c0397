#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phonodetect/detect.hpp"
#include "phonodetect/features.hpp"
#include "phonodetect/ingest.hpp"
#include "phonodetect/syllabify.hpp"

namespace phonodetect {

struct EvalMetrics {
    long true_pos = 0;
    long false_pos = 0;
    long false_neg = 0;
    long true_neg = 0;
    long unlabeled = 0;  // excluded from the counts above
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;

    void finalize();  // derives P/R/F1 with 0-denominator conventions
};

// Positive class = anomaly. Entries without gold labels are excluded
// and tallied in `unlabeled`.
EvalMetrics evaluate(const std::vector<bool>& predicted,
                     const std::vector<std::optional<bool>>& gold);

struct GridResult {
    FeatureConfig config;
    Algorithm algorithm = Algorithm::iforest;
    EvalMetrics metrics;
    uint64_t seed = 0;
    bool failed = false;
    std::string failure_reason;
};

// One detection scope: a per-variety matrix, or the pooled matrix.
struct ScoringScope {
    std::string id;
    std::vector<PreparedEntry> entries;
};

// Tokenizes and syllabifies every entry; vowel-less forms fall back to
// a single syllable and produce a warning line.
std::vector<ScoringScope> prepare_scopes(const Wordlist& wl, const SymbolTable& table,
                                         const SonorityScale& scale, bool pool,
                                         std::vector<std::string>* warnings = nullptr);

// Fits one model per (order 1..3, mode) needed by the setup. A (n, mode)
// slot the corpus cannot populate (e.g. cross-boundary unigrams) gets an
// empty placeholder model; extraction under it yields no n-grams anyway.
ModelSet fit_models(const ScoringScope& scope, Setup setup, FitOptions opts = {});

struct RunOptions {
    uint64_t seed = 42;
    bool pool = false;
    bool leave_one_out = false;
    bool zscore = false;
    bool per_order_agg = false;
    int lof_k = 20;
    double nu = 0.05;
    FitOptions fit;
};

// Per-entry anomaly scores for one (config, algorithm) cell, entries in
// wordlist order.
struct EntryScore {
    size_t entry_index = 0;
    std::string scope_id;
    double score = 0.0;
    bool flagged = false;
};

std::vector<EntryScore> score_entries(const Wordlist& wl, const FeatureConfig& config,
                                      Algorithm algorithm, const SymbolTable& table,
                                      const SonorityScale& scale, const RunOptions& opts);

// Full grid: every enumerate_grid(setup) config crossed with every
// algorithm; per-scope confusion counts pooled before P/R/F1; rows
// sorted by F1 descending (ties: recall, precision, config name).
// Cell failures become failed rows, the grid continues.
std::vector<GridResult> run_grid(const Wordlist& wl, Setup setup,
                                 const std::vector<Algorithm>& algorithms,
                                 const SymbolTable& table, const SonorityScale& scale,
                                 const RunOptions& opts);

std::vector<GridResult> top_k(const std::vector<GridResult>& results, size_t k);

std::string grid_to_tsv(const std::vector<GridResult>& results);
std::string emit_pr_dump(const std::vector<GridResult>& results);  // CSV

// Deterministic per-cell seed derivation.
uint64_t derive_seed(uint64_t base, const std::string& scope, const std::string& config,
                     const std::string& algorithm);

}  // namespace phonodetect
