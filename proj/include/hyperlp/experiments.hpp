#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hyperlp/classify.hpp"
#include "hyperlp/hsbm.hpp"
#include "hyperlp/meanfield.hpp"
#include "hyperlp/walks.hpp"

namespace hyperlp {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Method { ce, tensor, cet };
enum class Discriminant { geometric, fisher };
enum class InitMode { single, uniform };

std::string_view method_name(Method m);
std::string_view discriminant_name(Discriminant d);
std::string_view init_name(InitMode m);

// Inclusive (p, q) grid walked in fixed steps; only points with
// 0 < q < p <= 1 that are not degenerate get evaluated.
struct GridSpec {
    double pmin = 0.05;
    double pmax = 0.95;
    double qmin = 0.05;
    double qmax = 0.95;
    double step = 0.05;
};

struct SweepConfig {
    int n = 100;
    int d = 3;
    int K = 20;
    GridSpec grid;
};

struct SweepRow {
    Method method = Method::ce;
    double p = 0.0, q = 0.0;
    int k = 0;          // step index; ignored on summary rows
    double w = 0.0;     // gap, or the l2 aggregate on summary rows
    bool summary = false;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<std::pair<double, double>> skipped;
};

struct PhaseConfig {
    int n = 100;
    int d = 10;
    int K = 50;
    GridSpec grid;
};

struct PhaseRow {
    double p = 0.0, q = 0.0;
    double w_final = 0.0;  // w at step K
    double decay = 0.0;    // w_K / w_{K-10}
};

struct PhaseResult {
    std::vector<PhaseRow> rows;
    std::vector<std::pair<double, double>> skipped;
};

struct ConcentrationConfig {
    HsbmParams params;
    int K = 6;
    int trials = 20;
    std::uint64_t master_seed = 0;
    Method method = Method::ce;  // ce or tensor
    TensorWalkOptions walk_opts;
    std::uint64_t sample_budget = kDefaultSampleBudget;
};

struct ConcentrationRow {
    int trial = 0;
    int k = 0;
    char stat = 'a';  // 'a'/'b' block centroids (ce), 'g' gap (tensor)
    double empirical = 0.0;
    double meanfield = 0.0;
    double rel_err = 0.0;
};

struct ConcentrationResult {
    std::vector<ConcentrationRow> rows;
};

struct ClusterConfig {
    HsbmParams params;
    int steps = 6;
    int trials = 20;
    std::uint64_t master_seed = 0;
    Method method = Method::ce;
    int cet_order = 0;  // required target order when method == cet
    Discriminant discriminant = Discriminant::geometric;
    InitMode init = InitMode::uniform;
    int calibration_trials = 5;  // empirical-gap batch size for cet weights
    double ridge_scale = 1e-8;
    int max_resamples = 10;
    TensorWalkOptions walk_opts;
    std::uint64_t sample_budget = kDefaultSampleBudget;
};

struct TrialRecord {
    int trial = 0;
    double accuracy = 0.0;
    int resamples = 0;
    bool failed = false;
};

struct ClusterResult {
    std::vector<TrialRecord> trials;
    AccuracySummary summary;  // over completed trials
    int failed_trials = 0;
    std::vector<double> gap_weights;  // gamma for steps 1..K as used
    bool empirical_gap_weights = false;
};

// Mean-field centroid gaps w_0..w_K for a method (closed form for ce,
// reduced recurrence for tensor). CET gaps are estimated empirically by
// run_cluster_benchmark and have no closed form here.
std::vector<double> meanfield_gaps(const HsbmParams& params, Method method, int K);

// Uniform-block-0 tensor profile. When the exact uniform state does not fit
// the sparse budget, falls back to averaging single-tuple walk profiles
// (resampling extinct tuples); results are then Monte-Carlo estimates.
LandingProfile uniform_tensor_profile(const Hypergraph& h, int K, const TensorWalkOptions& opts,
                                      std::uint64_t fallback_seed);

SweepResult run_meanfield_sweep(const SweepConfig& config);
PhaseResult run_phase_diagram(const PhaseConfig& config);

// Throws std::invalid_argument when params are degenerate; drivers refuse
// out-of-model parameters rather than reporting meaningless errors.
ConcentrationResult run_concentration_check(const ConcentrationConfig& config);
ClusterResult run_cluster_benchmark(const ClusterConfig& config);

// CSV emission with a leading '#' metadata line. Column layouts:
//   sweep:         method,p,q,k,w          (summary rows carry k = "l2")
//   phase:         p,q,w50,decay
//   concentration: trial,k,stat,empirical,meanfield,rel_err
//   cluster:       trial,method,discriminant,accuracy,stderr,resamples
//                  (one final summary row with trial = "summary")
void write_sweep_csv(std::ostream& out, const SweepResult& result, std::string_view metadata);
void write_phase_csv(std::ostream& out, const PhaseResult& result, std::string_view metadata);
void write_concentration_csv(std::ostream& out, const ConcentrationResult& result,
                             std::string_view metadata);
void write_cluster_csv(std::ostream& out, const ClusterResult& result, Method method,
                       Discriminant discriminant, std::string_view metadata);

}  // namespace hyperlp
