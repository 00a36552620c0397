#include "phonodetect/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "phonodetect/errors.hpp"

namespace phonodetect {

const char* setup_name(Setup s) {
    return s == Setup::character ? "character" : "syllable";
}

const char* analysis_name(Analysis a) {
    switch (a) {
        case Analysis::plain: return "plain";
        case Analysis::within_syllable: return "within_syllable";
        case Analysis::cross_boundary: return "cross_boundary";
        case Analysis::boundary_phoneme: return "boundary_phoneme";
        case Analysis::all: return "ALL";
    }
    return "?";
}

const char* aggregation_name(Aggregation a) {
    switch (a) {
        case Aggregation::sum: return "sum";
        case Aggregation::mean: return "mean";
        case Aggregation::min: return "min";
        case Aggregation::max: return "max";
        case Aggregation::all: return "ALL";
    }
    return "?";
}

std::string NgramCombination::name() const {
    std::string out;
    for (size_t i = 0; i < orders.size(); ++i) {
        if (i > 0) out += '+';
        out += std::to_string(orders[i]);
    }
    return out;
}

const std::vector<NgramCombination>& NgramCombination::all_combinations() {
    static const std::vector<NgramCombination> combos = {
        {{1}}, {{2}}, {{3}}, {{1, 2}}, {{2, 3}}, {{1, 2, 3}},
    };
    return combos;
}

NgramCombination NgramCombination::parse(const std::string& text) {
    for (const auto& c : all_combinations())
        if (c.name() == text) return c;
    throw UsageError("unknown n-gram combination '" + text +
                     "' (expected one of 1, 2, 3, 1+2, 2+3, 1+2+3)");
}

std::string FeatureConfig::name() const {
    std::string out = setup_name(setup);
    out += "/";
    out += analysis_name(analysis);
    out += "/" + combination.name() + "/";
    out += aggregation_name(aggregation);
    return out;
}

std::vector<Analysis> FeatureConfig::selected_analyses() const {
    if (setup == Setup::character) return {Analysis::plain};
    if (analysis == Analysis::all)
        return {Analysis::within_syllable, Analysis::cross_boundary, Analysis::boundary_phoneme};
    return {analysis};
}

size_t FeatureConfig::dimension(bool per_order) const {
    const size_t scalars = aggregation == Aggregation::all ? 4 : 1;
    const size_t per_analysis = per_order ? combination.orders.size() * scalars : scalars;
    return selected_analyses().size() * per_analysis;
}

std::vector<double> aggregate(const std::vector<double>& nlls, Aggregation method) {
    if (nlls.empty()) throw ValidationError("cannot aggregate an empty NLL list");
    const double sum = std::accumulate(nlls.begin(), nlls.end(), 0.0);
    const double mean = sum / static_cast<double>(nlls.size());
    const double mn = *std::min_element(nlls.begin(), nlls.end());
    const double mx = *std::max_element(nlls.begin(), nlls.end());
    switch (method) {
        case Aggregation::sum: return {sum};
        case Aggregation::mean: return {mean};
        case Aggregation::min: return {mn};
        case Aggregation::max: return {mx};
        case Aggregation::all: return {sum, mean, mn, mx};
    }
    throw InternalError("unreachable aggregation");
}

std::vector<FeatureConfig> enumerate_grid(Setup setup) {
    static const Aggregation aggs[] = {Aggregation::sum, Aggregation::mean, Aggregation::min,
                                       Aggregation::max, Aggregation::all};
    std::vector<Analysis> analyses;
    if (setup == Setup::character)
        analyses = {Analysis::plain};
    else
        analyses = {Analysis::within_syllable, Analysis::cross_boundary,
                    Analysis::boundary_phoneme, Analysis::all};
    std::vector<FeatureConfig> grid;
    for (Analysis a : analyses)
        for (const auto& combo : NgramCombination::all_combinations())
            for (Aggregation agg : aggs)
                grid.push_back({setup, a, combo, agg});
    return grid;
}

ExtractionMode analysis_mode(Analysis a) {
    switch (a) {
        case Analysis::plain: return ExtractionMode::plain;
        case Analysis::within_syllable: return ExtractionMode::within_syllable;
        case Analysis::cross_boundary: return ExtractionMode::cross_boundary;
        case Analysis::boundary_phoneme: return ExtractionMode::boundary_phoneme;
        case Analysis::all: break;
    }
    throw UsageError("ALL is not a concrete extraction mode");
}

const NgramModel& ModelSet::at(int order, ExtractionMode mode) const {
    auto it = models.find({order, mode});
    if (it == models.end())
        throw InternalError(std::string("missing model: order ") + std::to_string(order) +
                            ", mode " + mode_name(mode));
    return it->second;
}

FeatureVector build_vector(const PreparedEntry& entry, const FeatureConfig& config,
                           const ModelSet& models, BuildOptions opts) {
    FeatureVector fv;
    fv.entry_index = entry.entry_index;
    const size_t scalars = config.aggregation == Aggregation::all ? 4 : 1;
    for (Analysis a : config.selected_analyses()) {
        const ExtractionMode mode = analysis_mode(a);
        auto emit = [&](const std::vector<double>& nlls) {
            if (nlls.empty()) {
                // no n-grams under this view: zero block, flagged
                fv.values.insert(fv.values.end(), scalars, 0.0);
                fv.zero_filled = true;
            } else {
                const auto block = aggregate(nlls, config.aggregation);
                fv.values.insert(fv.values.end(), block.begin(), block.end());
            }
        };
        if (opts.per_order_agg) {
            for (int order : config.combination.orders) {
                const NgramModel* m = &models.at(order, mode);
                emit(word_nlls({m}, entry.seq, &entry.form, opts.leave_one_out));
            }
        } else {
            std::vector<const NgramModel*> ms;
            for (int order : config.combination.orders) ms.push_back(&models.at(order, mode));
            emit(word_nlls(ms, entry.seq, &entry.form, opts.leave_one_out));
        }
    }
    return fv;
}

NllCache build_nll_cache(const std::vector<PreparedEntry>& entries, const ModelSet& models,
                         Setup setup, bool leave_one_out) {
    std::vector<ExtractionMode> modes;
    if (setup == Setup::character)
        modes = {ExtractionMode::plain};
    else
        modes = {ExtractionMode::within_syllable, ExtractionMode::cross_boundary,
                 ExtractionMode::boundary_phoneme};
    NllCache cache;
    for (ExtractionMode mode : modes) {
        for (int order = 1; order <= 3; ++order) {
            const NgramModel* m = &models.at(order, mode);
            auto& lists = cache.lists[{order, mode}];
            lists.reserve(entries.size());
            for (const auto& e : entries)
                lists.push_back(word_nlls({m}, e.seq, &e.form, leave_one_out));
        }
    }
    return cache;
}

FeatureVector build_vector_cached(const NllCache& cache, size_t row, size_t entry_index,
                                  const FeatureConfig& config, BuildOptions opts) {
    FeatureVector fv;
    fv.entry_index = entry_index;
    const size_t scalars = config.aggregation == Aggregation::all ? 4 : 1;
    auto emit = [&](const std::vector<double>& nlls) {
        if (nlls.empty()) {
            fv.values.insert(fv.values.end(), scalars, 0.0);
            fv.zero_filled = true;
        } else {
            const auto block = aggregate(nlls, config.aggregation);
            fv.values.insert(fv.values.end(), block.begin(), block.end());
        }
    };
    for (Analysis a : config.selected_analyses()) {
        const ExtractionMode mode = analysis_mode(a);
        if (opts.per_order_agg) {
            for (int order : config.combination.orders)
                emit(cache.lists.at({order, mode})[row]);
        } else {
            std::vector<double> pooled;
            for (int order : config.combination.orders) {
                const auto& list = cache.lists.at({order, mode})[row];
                pooled.insert(pooled.end(), list.begin(), list.end());
            }
            emit(pooled);
        }
    }
    return fv;
}

void zscore(std::vector<std::vector<double>>& matrix) {
    if (matrix.empty()) return;
    const size_t d = matrix[0].size();
    const double n = static_cast<double>(matrix.size());
    for (size_t j = 0; j < d; ++j) {
        double mean = 0.0;
        for (const auto& row : matrix) mean += row[j];
        mean /= n;
        double var = 0.0;
        for (const auto& row : matrix) var += (row[j] - mean) * (row[j] - mean);
        var /= n;
        if (var <= 0.0) continue;
        const double sd = std::sqrt(var);
        for (auto& row : matrix) row[j] = (row[j] - mean) / sd;
    }
}

std::vector<std::string> feature_column_names(const FeatureConfig& config, bool per_order) {
    static const Aggregation scalar_aggs[] = {Aggregation::sum, Aggregation::mean, Aggregation::min,
                                              Aggregation::max};
    std::vector<Aggregation> aggs;
    if (config.aggregation == Aggregation::all)
        aggs.assign(std::begin(scalar_aggs), std::end(scalar_aggs));
    else
        aggs = {config.aggregation};
    std::vector<std::string> names;
    for (Analysis a : config.selected_analyses()) {
        if (per_order) {
            for (int order : config.combination.orders)
                for (Aggregation agg : aggs)
                    names.push_back(std::string(analysis_name(a)) + "." + std::to_string(order) +
                                    "." + aggregation_name(agg));
        } else {
            for (Aggregation agg : aggs)
                names.push_back(std::string(analysis_name(a)) + "." + config.combination.name() +
                                "." + aggregation_name(agg));
        }
    }
    return names;
}

}  // namespace phonodetect
