#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace phonodetect {

using Matrix = std::vector<std::vector<double>>;

enum class Algorithm { iforest, lof, ocsvm };

const char* algorithm_name(Algorithm a);
Algorithm parse_algorithm(const std::string& text);

struct DetectorConfig {
    Algorithm algorithm = Algorithm::iforest;
    // iForest
    int n_trees = 100;
    int subsample = 256;  // capped at n
    double iforest_threshold = 0.5;
    // LOF
    int k_neighbors = 20;
    double lof_threshold = 1.5;
    // OC-SVM
    double nu = 0.05;
};

struct AnomalyResult {
    size_t index = 0;      // row in the input matrix
    double score = 0.0;    // higher = more anomalous
    bool is_anomaly = false;
};

// ---- Isolation forest ----

struct IsolationForestModel {
    struct Node {
        int feature = -1;   // -1 marks a leaf
        double split = 0.0;
        int left = -1;
        int right = -1;
        int size = 0;       // leaf sample count
    };
    std::vector<std::vector<Node>> trees;
    int subsample = 0;
    size_t dim = 0;

    double score(const std::vector<double>& x) const;  // in (0, 1]
    double mean_path_length(const std::vector<double>& x) const;
};

// Average path length adjustment c(m) = 2 H(m-1) - 2(m-1)/m.
double iforest_c(int m);

IsolationForestModel iforest_fit(const Matrix& X, const DetectorConfig& cfg, uint64_t seed);

// ---- LOF ----

// k-distance / reachability-density LOF with Euclidean distance;
// neighborhood ties broken by row index; lrd capped at 1e12 for
// zero-distance neighborhoods.
std::vector<AnomalyResult> lof_fit_predict(const Matrix& X, const DetectorConfig& cfg);

// ---- One-class SVM ----

struct OneClassSVMModel {
    Matrix support;               // all training rows (dense alphas)
    std::vector<double> alpha;
    double rho = 0.0;
    double gamma = 1.0;
    double kkt_residual = 0.0;    // max violation at termination
    int iterations = 0;

    double decision(const std::vector<double>& x) const;  // negative = anomaly
};

// RBF gamma = 1/(d * mean per-feature variance), fallback 1.0.
double rbf_gamma_scale(const Matrix& X);

OneClassSVMModel ocsvm_fit(const Matrix& X, const DetectorConfig& cfg, uint64_t seed);

// ---- Facade ----

// Fit-and-predict on the same matrix; results in input order,
// deterministic given seed.
std::vector<AnomalyResult> run_detector(const Matrix& X, const DetectorConfig& cfg, uint64_t seed);

}  // namespace phonodetect
