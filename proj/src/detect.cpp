#include "phonodetect/detect.hpp"

#include <cmath>

#include "phonodetect/errors.hpp"

namespace phonodetect {

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::iforest: return "iforest";
        case Algorithm::lof: return "lof";
        case Algorithm::ocsvm: return "ocsvm";
    }
    return "?";
}

Algorithm parse_algorithm(const std::string& text) {
    if (text == "iforest") return Algorithm::iforest;
    if (text == "lof") return Algorithm::lof;
    if (text == "ocsvm") return Algorithm::ocsvm;
    throw UsageError("unknown algorithm '" + text + "' (expected iforest, lof, or ocsvm)");
}

std::vector<AnomalyResult> run_detector(const Matrix& X, const DetectorConfig& cfg, uint64_t seed) {
    for (const auto& row : X)
        for (double v : row)
            if (!std::isfinite(v)) throw UsageError("non-finite value in feature matrix");

    switch (cfg.algorithm) {
        case Algorithm::iforest: {
            IsolationForestModel model = iforest_fit(X, cfg, seed);
            std::vector<AnomalyResult> results(X.size());
            for (size_t i = 0; i < X.size(); ++i) {
                const double s = model.score(X[i]);
                results[i] = {i, s, s > cfg.iforest_threshold};
            }
            return results;
        }
        case Algorithm::lof:
            return lof_fit_predict(X, cfg);
        case Algorithm::ocsvm: {
            OneClassSVMModel model = ocsvm_fit(X, cfg, seed);
            std::vector<AnomalyResult> results(X.size());
            for (size_t i = 0; i < X.size(); ++i) {
                const double f = model.decision(X[i]);
                // sign flipped so that higher = more anomalous
                results[i] = {i, -f, f < 0.0};
            }
            return results;
        }
    }
    throw InternalError("unreachable algorithm");
}

}  // namespace phonodetect
