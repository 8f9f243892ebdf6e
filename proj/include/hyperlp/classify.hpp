#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hyperlp/hsbm.hpp"
#include "hyperlp/walks.hpp"

namespace hyperlp {

enum class WeightKind { geometric, ppr, hpr, fisher };

// Step weights gamma_k for k = k_min .. k_min + gamma.size() - 1, combined
// with landing probabilities into a generalized PageRank score.
struct DiscriminantWeights {
    WeightKind kind = WeightKind::geometric;
    int k_min = 0;
    std::vector<double> gamma;

    int k_max() const { return k_min + static_cast<int>(gamma.size()) - 1; }
};

// Covariance of per-vertex landing-probability vectors over a step range,
// with a scaled-trace ridge on the diagonal.
struct CovarianceEstimate {
    int k_min = 0;
    int k_max = 0;
    std::vector<double> m;
    double ridge = 0.0;

    int dim() const { return k_max - k_min + 1; }
    double at(int i, int j) const { return m[static_cast<std::size_t>(i) * dim() + j]; }
};

struct ClassificationResult {
    std::vector<double> scores;
    std::vector<std::uint8_t> predicted;
    double accuracy = 0.0;
};

struct AccuracySummary {
    double mean = 0.0;
    double stderr_of_mean = 0.0;
    int trials = 0;
    bool single_trial = false;
};

// gamma_k = gaps[k] for k in [k_min, k_max]; `gaps` is indexed by absolute
// step (entry k is the step-k centroid gap).
DiscriminantWeights geometric_weights(std::span<const double> gaps, int k_min, int k_max);

// PPR gamma_k = (1 - alpha) alpha^k, HPR gamma_k = e^{-h} h^k / k!, truncated
// to [k_min, k_max] without renormalization.
DiscriminantWeights schedule_weights(WeightKind kind, double parameter, int k_min, int k_max);

// Pooled within-class covariance when `labels` is given (oracle mode),
// covariance around the global mean otherwise. ridge_scale scales trace/dim
// into the diagonal ridge.
CovarianceEstimate estimate_covariance(const LandingProfile& profile, const BlockLabels* labels,
                                       int k_min, int k_max, double ridge_scale = 1e-8);

// gamma_fisher = Sigma^{-1} gamma_geometric.
DiscriminantWeights fisher_weights(const DiscriminantWeights& geometric,
                                   const CovarianceEstimate& cov);

// score_v = sum_k gamma_k x_v^{(k)}; the n/2 top-scoring vertices are block 0
// (ties to the lower index). Accuracy takes the better of the two label
// orientations.
ClassificationResult score_and_classify(const LandingProfile& profile,
                                        const DiscriminantWeights& weights,
                                        const BlockLabels& truth);

AccuracySummary accuracy_summary(std::span<const double> accuracies);

}  // namespace hyperlp
