#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "phonodetect/detect.hpp"
#include "phonodetect/errors.hpp"

namespace phonodetect {

namespace {

constexpr double kTol = 1e-6;       // working-set stopping tolerance
constexpr int kMaxIterations = 500000;

double rbf(const std::vector<double>& a, const std::vector<double>& b, double gamma) {
    double s = 0.0;
    for (size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        s += d * d;
    }
    return std::exp(-gamma * s);
}

}  // namespace

double rbf_gamma_scale(const Matrix& X) {
    const size_t n = X.size();
    const size_t d = X[0].size();
    double var_sum = 0.0;
    for (size_t j = 0; j < d; ++j) {
        double mean = 0.0;
        for (const auto& row : X) mean += row[j];
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (const auto& row : X) var += (row[j] - mean) * (row[j] - mean);
        var_sum += var / static_cast<double>(n);
    }
    const double mean_var = var_sum / static_cast<double>(d);
    if (mean_var <= 0.0) return 1.0;
    return 1.0 / (static_cast<double>(d) * mean_var);
}

OneClassSVMModel ocsvm_fit(const Matrix& X, const DetectorConfig& cfg, uint64_t /*seed*/) {
    const size_t n = X.size();
    if (n < 2) throw UsageError("one-class SVM needs at least 2 rows");
    if (cfg.nu <= 0.0 || cfg.nu > 1.0) throw UsageError("nu must lie in (0, 1]");
    if (cfg.nu * static_cast<double>(n) < 1.0)
        throw UsageError("nu * n must be at least 1");

    OneClassSVMModel model;
    model.gamma = rbf_gamma_scale(X);
    model.support = X;

    // Gram matrix
    std::vector<std::vector<double>> K(n, std::vector<double>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j)
            K[i][j] = K[j][i] = rbf(X[i], X[j], model.gamma);

    // minimize (1/2) a^T K a  s.t.  0 <= a_i <= C, sum a = 1
    const double C = 1.0 / (cfg.nu * static_cast<double>(n));
    std::vector<double>& alpha = model.alpha;
    alpha.assign(n, 0.0);
    double remaining = 1.0;
    for (size_t i = 0; i < n && remaining > 0.0; ++i) {
        alpha[i] = std::min(C, remaining);
        remaining -= alpha[i];
    }

    // gradient g = K alpha
    std::vector<double> g(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (size_t j = 0; j < n; ++j) s += K[i][j] * alpha[j];
        g[i] = s;
    }

    int iter = 0;
    double violation = 0.0;
    for (; iter < kMaxIterations; ++iter) {
        // most-violating pair: move mass from the highest gradient with
        // alpha > 0 to the lowest gradient with alpha < C
        int up = -1, down = -1;
        double g_up = std::numeric_limits<double>::infinity();
        double g_down = -std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < n; ++i) {
            if (alpha[i] < C - 1e-12 && g[i] < g_up) {
                g_up = g[i];
                up = static_cast<int>(i);
            }
            if (alpha[i] > 1e-12 && g[i] > g_down) {
                g_down = g[i];
                down = static_cast<int>(i);
            }
        }
        violation = g_down - g_up;
        if (up < 0 || down < 0 || violation < kTol) break;

        double eta = K[up][up] + K[down][down] - 2.0 * K[up][down];
        if (eta < 1e-12) eta = 1e-12;
        double delta = violation / eta;
        delta = std::min(delta, C - alpha[up]);
        delta = std::min(delta, alpha[down]);
        alpha[up] += delta;
        alpha[down] -= delta;
        for (size_t i = 0; i < n; ++i) g[i] += delta * (K[i][up] - K[i][down]);
    }
    if (iter >= kMaxIterations)
        throw InternalError("one-class SVM did not converge; residual gap " +
                            std::to_string(violation));
    model.iterations = iter;

    // rho from margin support vectors, else the midpoint of the bound box
    double rho_sum = 0.0;
    int rho_count = 0;
    for (size_t i = 0; i < n; ++i)
        if (alpha[i] > 1e-9 && alpha[i] < C - 1e-9) {
            rho_sum += g[i];
            ++rho_count;
        }
    if (rho_count > 0) {
        model.rho = rho_sum / rho_count;
    } else {
        double hi = -std::numeric_limits<double>::infinity();
        double lo = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < n; ++i) {
            if (alpha[i] >= C - 1e-9) hi = std::max(hi, g[i]);
            if (alpha[i] <= 1e-9) lo = std::min(lo, g[i]);
        }
        if (!std::isfinite(hi)) hi = lo;
        if (!std::isfinite(lo)) lo = hi;
        model.rho = 0.5 * (hi + lo);
    }

    // KKT residual: interior SVs pinned to rho, bounds one-sided
    double residual = 0.0;
    for (size_t i = 0; i < n; ++i) {
        if (alpha[i] > 1e-9 && alpha[i] < C - 1e-9)
            residual = std::max(residual, std::fabs(g[i] - model.rho));
        else if (alpha[i] <= 1e-9)
            residual = std::max(residual, model.rho - g[i]);
        else
            residual = std::max(residual, g[i] - model.rho);
    }
    model.kkt_residual = residual;
    return model;
}

double OneClassSVMModel::decision(const std::vector<double>& x) const {
    double s = 0.0;
    for (size_t i = 0; i < support.size(); ++i)
        if (alpha[i] > 0.0) s += alpha[i] * rbf(support[i], x, gamma);
    return s - rho;
}

}  // namespace phonodetect
