#include "hyperlp/classify.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hyperlp {

DiscriminantWeights geometric_weights(std::span<const double> gaps, int k_min, int k_max) {
    if (k_min < 0 || k_max < k_min)
        throw std::invalid_argument("geometric_weights: empty or invalid step range");
    if (k_max >= static_cast<int>(gaps.size()))
        throw std::invalid_argument("geometric_weights: gap sequence does not cover k_max = " +
                                    std::to_string(k_max));
    DiscriminantWeights w;
    w.kind = WeightKind::geometric;
    w.k_min = k_min;
    w.gamma.assign(gaps.begin() + k_min, gaps.begin() + k_max + 1);
    return w;
}

DiscriminantWeights schedule_weights(WeightKind kind, double parameter, int k_min, int k_max) {
    if (k_min < 0 || k_max < k_min)
        throw std::invalid_argument("schedule_weights: empty or invalid step range");
    DiscriminantWeights w;
    w.kind = kind;
    w.k_min = k_min;
    w.gamma.resize(static_cast<std::size_t>(k_max - k_min) + 1);
    if (kind == WeightKind::ppr) {
        if (!(parameter > 0.0) || !(parameter < 1.0))
            throw std::invalid_argument("schedule_weights: PPR needs alpha in (0, 1)");
        for (int k = k_min; k <= k_max; ++k)
            w.gamma[static_cast<std::size_t>(k - k_min)] =
                (1.0 - parameter) * std::pow(parameter, k);
    } else if (kind == WeightKind::hpr) {
        if (!(parameter > 0.0))
            throw std::invalid_argument("schedule_weights: HPR needs h > 0");
        for (int k = k_min; k <= k_max; ++k) {
            double term = std::exp(-parameter);
            for (int i = 1; i <= k; ++i) term *= parameter / i;
            w.gamma[static_cast<std::size_t>(k - k_min)] = term;
        }
    } else {
        throw std::invalid_argument("schedule_weights: kind must be ppr or hpr");
    }
    return w;
}

CovarianceEstimate estimate_covariance(const LandingProfile& profile, const BlockLabels* labels,
                                       int k_min, int k_max, double ridge_scale) {
    if (k_min < 0 || k_max < k_min || k_max > profile.K)
        throw std::invalid_argument("estimate_covariance: step range outside profile");
    if (profile.n < 2)
        throw std::invalid_argument("estimate_covariance: need at least two vertices");
    if (ridge_scale < 0.0)
        throw std::invalid_argument("estimate_covariance: ridge_scale must be >= 0");
    const int dim = k_max - k_min + 1;
    const int n = profile.n;

    // Means: one per class in oracle mode, a single global mean otherwise.
    std::vector<double> mean0(static_cast<std::size_t>(dim), 0.0);
    std::vector<double> mean1(static_cast<std::size_t>(dim), 0.0);
    int n0 = 0;
    for (int v = 0; v < n; ++v) {
        const bool in0 = labels == nullptr || labels->block(v) == 0;
        auto& mean = in0 ? mean0 : mean1;
        if (in0) ++n0;
        for (int k = 0; k < dim; ++k)
            mean[static_cast<std::size_t>(k)] += profile.row(k_min + k)[static_cast<std::size_t>(v)];
    }
    for (double& v : mean0) v /= n0;
    if (n0 < n)
        for (double& v : mean1) v /= (n - n0);

    CovarianceEstimate cov;
    cov.k_min = k_min;
    cov.k_max = k_max;
    cov.m.assign(static_cast<std::size_t>(dim) * dim, 0.0);
    std::vector<double> dev(static_cast<std::size_t>(dim));
    for (int v = 0; v < n; ++v) {
        const auto& mean = (labels == nullptr || labels->block(v) == 0) ? mean0 : mean1;
        for (int k = 0; k < dim; ++k)
            dev[static_cast<std::size_t>(k)] =
                profile.row(k_min + k)[static_cast<std::size_t>(v)] -
                mean[static_cast<std::size_t>(k)];
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                cov.m[static_cast<std::size_t>(i) * dim + j] +=
                    dev[static_cast<std::size_t>(i)] * dev[static_cast<std::size_t>(j)];
    }
    for (double& v : cov.m) v /= n;

    double trace = 0.0;
    for (int i = 0; i < dim; ++i) trace += cov.m[static_cast<std::size_t>(i) * dim + i];
    // Zero scatter leaves nothing to scale the ridge by; fall back to the
    // bare ridge_scale so degenerate profiles stay solvable.
    cov.ridge = ridge_scale * (trace > 0.0 ? trace / dim : 1.0);
    for (int i = 0; i < dim; ++i) cov.m[static_cast<std::size_t>(i) * dim + i] += cov.ridge;
    return cov;
}

DiscriminantWeights fisher_weights(const DiscriminantWeights& geometric,
                                   const CovarianceEstimate& cov) {
    const int dim = cov.dim();
    if (static_cast<int>(geometric.gamma.size()) != dim || geometric.k_min != cov.k_min)
        throw std::invalid_argument("fisher_weights: weight/covariance range mismatch");

    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        sigma(cov.m.data(), dim, dim);
    Eigen::Map<const Eigen::VectorXd> rhs(geometric.gamma.data(), dim);

    Eigen::FullPivLU<Eigen::MatrixXd> lu(sigma);
    if (!lu.isInvertible())
        throw singular_matrix_error("fisher_weights: covariance is singular after ridge");
    const Eigen::VectorXd solved = lu.solve(rhs);

    DiscriminantWeights w;
    w.kind = WeightKind::fisher;
    w.k_min = geometric.k_min;
    w.gamma.assign(solved.data(), solved.data() + dim);
    return w;
}

ClassificationResult score_and_classify(const LandingProfile& profile,
                                        const DiscriminantWeights& weights,
                                        const BlockLabels& truth) {
    if (truth.n() != profile.n)
        throw std::invalid_argument("score_and_classify: label length mismatch");
    if (weights.k_min < 0 || weights.k_max() > profile.K)
        throw std::invalid_argument("score_and_classify: weights outside profile steps");
    const bool all_zero =
        std::all_of(weights.gamma.begin(), weights.gamma.end(), [](double g) { return g == 0.0; });
    if (weights.gamma.empty() || all_zero)
        throw std::invalid_argument("score_and_classify: weight vector is all zero");

    const int n = profile.n;
    ClassificationResult result;
    result.scores.assign(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < static_cast<int>(weights.gamma.size()); ++j) {
        const double g = weights.gamma[static_cast<std::size_t>(j)];
        if (g == 0.0) continue;
        const auto row = profile.row(weights.k_min + j);
        for (int v = 0; v < n; ++v) result.scores[static_cast<std::size_t>(v)] += g * row[static_cast<std::size_t>(v)];
    }

    // Median rule: the n/2 best scores are block 0, ties to the lower index.
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int u, int v) {
        const double su = result.scores[static_cast<std::size_t>(u)];
        const double sv = result.scores[static_cast<std::size_t>(v)];
        if (su != sv) return su > sv;
        return u < v;
    });
    result.predicted.assign(static_cast<std::size_t>(n), 1);
    for (int i = 0; i < n / 2; ++i) result.predicted[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 0;

    int match = 0;
    for (int v = 0; v < n; ++v)
        if (result.predicted[static_cast<std::size_t>(v)] == truth.block(v)) ++match;
    const double frac = static_cast<double>(match) / n;
    result.accuracy = std::max(frac, 1.0 - frac);
    return result;
}

AccuracySummary accuracy_summary(std::span<const double> accuracies) {
    if (accuracies.empty())
        throw std::invalid_argument("accuracy_summary: need at least one trial");
    AccuracySummary s;
    s.trials = static_cast<int>(accuracies.size());
    s.single_trial = s.trials == 1;
    s.mean = std::accumulate(accuracies.begin(), accuracies.end(), 0.0) / s.trials;
    if (s.single_trial) return s;
    double ss = 0.0;
    for (double a : accuracies) ss += (a - s.mean) * (a - s.mean);
    s.stderr_of_mean = std::sqrt(ss / (s.trials - 1)) / std::sqrt(static_cast<double>(s.trials));
    return s;
}

}  // namespace hyperlp
