#include <algorithm>
#include <cmath>
#include <vector>

#include "phonodetect/detect.hpp"
#include "phonodetect/errors.hpp"

namespace phonodetect {

namespace {

constexpr double kLrdCap = 1e12;

double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace

std::vector<AnomalyResult> lof_fit_predict(const Matrix& X, const DetectorConfig& cfg) {
    const size_t n = X.size();
    const size_t k = static_cast<size_t>(cfg.k_neighbors);
    if (n <= k)
        throw UsageError("LOF needs more rows than neighbors (n=" + std::to_string(n) +
                         ", k=" + std::to_string(k) + "); reduce k");

    // full distance matrix; n is a few hundred per scoring scope
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            dist[i][j] = dist[j][i] = euclidean(X[i], X[j]);

    // exactly k neighbors each, ties broken by row index
    std::vector<std::vector<size_t>> knn(n);
    std::vector<double> kdist(n);
    for (size_t i = 0; i < n; ++i) {
        std::vector<size_t> order;
        order.reserve(n - 1);
        for (size_t j = 0; j < n; ++j)
            if (j != i) order.push_back(j);
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            if (dist[i][a] != dist[i][b]) return dist[i][a] < dist[i][b];
            return a < b;
        });
        order.resize(k);
        kdist[i] = dist[i][order.back()];
        knn[i] = std::move(order);
    }

    std::vector<double> lrd(n);
    for (size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (size_t o : knn[i]) sum += std::max(kdist[o], dist[i][o]);
        const double mean = sum / static_cast<double>(k);
        lrd[i] = mean > 0.0 ? std::min(1.0 / mean, kLrdCap) : kLrdCap;
    }

    std::vector<AnomalyResult> results(n);
    for (size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (size_t o : knn[i]) sum += lrd[o];
        const double lof = sum / static_cast<double>(k) / lrd[i];
        results[i] = {i, lof, lof > cfg.lof_threshold};
    }
    return results;
}

}  // namespace phonodetect
