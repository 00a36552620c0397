#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "phonodetect/detect.hpp"
#include "phonodetect/errors.hpp"

namespace phonodetect {

double iforest_c(int m) {
    if (m <= 1) return 0.0;
    constexpr double euler_gamma = 0.5772156649;
    const double h = std::log(static_cast<double>(m - 1)) + euler_gamma;
    return 2.0 * h - 2.0 * static_cast<double>(m - 1) / static_cast<double>(m);
}

namespace {

struct TreeBuilder {
    const Matrix& X;
    std::vector<IsolationForestModel::Node>& nodes;
    std::mt19937_64& rng;
    int depth_cap;

    // Builds the subtree over `rows`, returns node index.
    int build(std::vector<size_t>& rows, int depth) {
        const int idx = static_cast<int>(nodes.size());
        nodes.emplace_back();
        if (rows.size() <= 1 || depth >= depth_cap) {
            nodes[idx].size = static_cast<int>(rows.size());
            return idx;
        }
        // features with a non-degenerate range on this node's sample
        const size_t d = X[rows[0]].size();
        std::vector<int> usable;
        for (size_t j = 0; j < d; ++j) {
            double lo = X[rows[0]][j], hi = lo;
            for (size_t r : rows) {
                lo = std::min(lo, X[r][j]);
                hi = std::max(hi, X[r][j]);
            }
            if (hi > lo) usable.push_back(static_cast<int>(j));
        }
        if (usable.empty()) {  // all rows identical
            nodes[idx].size = static_cast<int>(rows.size());
            return idx;
        }
        const int feature = usable[std::uniform_int_distribution<size_t>(0, usable.size() - 1)(rng)];
        double lo = X[rows[0]][feature], hi = lo;
        for (size_t r : rows) {
            lo = std::min(lo, X[r][feature]);
            hi = std::max(hi, X[r][feature]);
        }
        const double split = std::uniform_real_distribution<double>(lo, hi)(rng);
        std::vector<size_t> left, right;
        for (size_t r : rows)
            (X[r][feature] < split ? left : right).push_back(r);
        if (left.empty() || right.empty()) {  // split landed on an edge
            nodes[idx].size = static_cast<int>(rows.size());
            return idx;
        }
        nodes[idx].feature = feature;
        nodes[idx].split = split;
        const int l = build(left, depth + 1);
        const int r = build(right, depth + 1);
        nodes[idx].left = l;
        nodes[idx].right = r;
        return idx;
    }
};

}  // namespace

IsolationForestModel iforest_fit(const Matrix& X, const DetectorConfig& cfg, uint64_t seed) {
    if (X.size() < 2) throw UsageError("isolation forest needs at least 2 rows");
    const size_t n = X.size();
    IsolationForestModel model;
    model.dim = X[0].size();
    model.subsample = static_cast<int>(std::min<size_t>(cfg.subsample, n));
    const int depth_cap =
        static_cast<int>(std::ceil(std::log2(static_cast<double>(model.subsample))));
    model.trees.reserve(cfg.n_trees);
    for (int t = 0; t < cfg.n_trees; ++t) {
        // independent deterministic substream per tree
        std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<uint64_t>(t) + 1);
        std::vector<size_t> rows(n);
        std::iota(rows.begin(), rows.end(), size_t{0});
        if (static_cast<size_t>(model.subsample) < n) {
            std::shuffle(rows.begin(), rows.end(), rng);
            rows.resize(model.subsample);
        }
        model.trees.emplace_back();
        TreeBuilder builder{X, model.trees.back(), rng, depth_cap};
        builder.build(rows, 0);
    }
    return model;
}

double IsolationForestModel::mean_path_length(const std::vector<double>& x) const {
    if (x.size() != dim) throw UsageError("feature dimension mismatch in iforest scoring");
    double total = 0.0;
    for (const auto& tree : trees) {
        int node = 0;
        int depth = 0;
        while (tree[node].feature >= 0) {
            node = x[tree[node].feature] < tree[node].split ? tree[node].left : tree[node].right;
            ++depth;
        }
        total += depth + iforest_c(tree[node].size);
    }
    return total / static_cast<double>(trees.size());
}

double IsolationForestModel::score(const std::vector<double>& x) const {
    const double c = iforest_c(subsample);
    if (c <= 0.0) return 1.0;
    return std::pow(2.0, -mean_path_length(x) / c);
}

}  // namespace phonodetect
