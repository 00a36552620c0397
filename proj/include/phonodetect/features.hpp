#pragma once

#include <map>
#include <string>
#include <vector>

#include "phonodetect/ngram.hpp"

namespace phonodetect {

enum class Setup { character, syllable };
enum class Analysis { plain, within_syllable, cross_boundary, boundary_phoneme, all };
enum class Aggregation { sum, mean, min, max, all };

const char* setup_name(Setup s);
const char* analysis_name(Analysis a);
const char* aggregation_name(Aggregation a);

// The six order sets: {1} {2} {3} {1,2} {2,3} {1,2,3}, in this order.
struct NgramCombination {
    std::vector<int> orders;
    std::string name() const;  // e.g. "1+2"
    static const std::vector<NgramCombination>& all_combinations();
    static NgramCombination parse(const std::string& text);
};

struct FeatureConfig {
    Setup setup = Setup::character;
    Analysis analysis = Analysis::plain;  // plain iff character setup
    NgramCombination combination;
    Aggregation aggregation = Aggregation::sum;

    std::string name() const;
    std::vector<Analysis> selected_analyses() const;  // concrete analyses, fixed order
    // 1, 3, 4, or 12 under pooled aggregation.
    size_t dimension(bool per_order = false) const;
};

// sum/mean/min/max as named; all -> [sum, mean, min, max].
std::vector<double> aggregate(const std::vector<double>& nlls, Aggregation method);

// character → 30 configs; syllable → 120 configs; deterministic order
// (analysis, then combination, then aggregation).
std::vector<FeatureConfig> enumerate_grid(Setup setup);

// One entry prepared for scoring: tokenized, syllabified (or fallback).
struct PreparedEntry {
    size_t entry_index = 0;  // into the source wordlist
    PhonemeSequence seq;
    SyllabifiedForm form;
    bool syllabified_ok = true;  // false -> whole-form fallback in use
};

// Fitted models for one scoring scope, keyed by (order, mode).
struct ModelSet {
    std::map<std::pair<int, ExtractionMode>, NgramModel> models;
    const NgramModel& at(int order, ExtractionMode mode) const;
};

ExtractionMode analysis_mode(Analysis a);

struct FeatureVector {
    size_t entry_index = 0;
    std::vector<double> values;
    bool zero_filled = false;  // some analysis block had no n-grams
};

struct BuildOptions {
    bool leave_one_out = false;
    bool per_order_agg = false;  // aggregate per order, then concatenate
};

FeatureVector build_vector(const PreparedEntry& entry, const FeatureConfig& config,
                           const ModelSet& models, BuildOptions opts = {});

// Per-entry NLL lists computed once per scope and reused across all
// grid cells; lists[{order, mode}][row] mirrors what word_nlls returns
// for a single order.
struct NllCache {
    std::map<std::pair<int, ExtractionMode>, std::vector<std::vector<double>>> lists;
};

NllCache build_nll_cache(const std::vector<PreparedEntry>& entries, const ModelSet& models,
                         Setup setup, bool leave_one_out);

// Equivalent to build_vector for the cached entry at `row`.
FeatureVector build_vector_cached(const NllCache& cache, size_t row, size_t entry_index,
                                  const FeatureConfig& config, BuildOptions opts = {});

// Column-wise z-score in place; constant columns left untouched.
void zscore(std::vector<std::vector<double>>& matrix);

std::vector<std::string> feature_column_names(const FeatureConfig& config, bool per_order = false);

}  // namespace phonodetect
