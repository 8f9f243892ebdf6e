#include "hyperlp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "hyperlp/io.hpp"
#include "hyperlp/rng.hpp"

namespace hyperlp {

namespace {

constexpr std::uint64_t kWalkSeedSalt = 0x77a1c5eed0000000ULL;
constexpr std::uint64_t kCalibrationSalt = 0xca11b7a7e5000000ULL;
constexpr int kUniformFallbackSamples = 64;

// Grid points in deterministic order, invalid or degenerate ones collected
// separately.
template <typename F>
void for_each_grid_point(const GridSpec& grid, std::vector<std::pair<double, double>>& skipped,
                         F&& body) {
    if (!(grid.step > 0.0)) throw std::invalid_argument("grid step must be positive");
    const auto count = [&](double lo, double hi) {
        return static_cast<int>(std::floor((hi - lo) / grid.step + 1e-9));
    };
    const int np = count(grid.pmin, grid.pmax);
    const int nq = count(grid.qmin, grid.qmax);
    for (int i = 0; i <= np; ++i) {
        const double p = grid.pmin + i * grid.step;
        for (int j = 0; j <= nq; ++j) {
            const double q = grid.qmin + j * grid.step;
            if (!(q > 0.0) || !(q < p) || !(p <= 1.0) || p == 1.0) {
                skipped.emplace_back(p, q);
                continue;
            }
            body(p, q);
        }
    }
}

double empirical_gap(const LandingProfile& profile, const BlockLabels& labels, int k) {
    const auto row = profile.row(k);
    double sum0 = 0.0, sum1 = 0.0;
    for (int v = 0; v < profile.n; ++v) {
        if (labels.block(v) == 0)
            sum0 += row[static_cast<std::size_t>(v)];
        else
            sum1 += row[static_cast<std::size_t>(v)];
    }
    return (2.0 / profile.n) * (sum0 - sum1);
}

double block_centroid(const LandingProfile& profile, const BlockLabels& labels, int k,
                      int block) {
    const auto row = profile.row(k);
    double sum = 0.0;
    for (int v = 0; v < profile.n; ++v)
        if (labels.block(v) == block) sum += row[static_cast<std::size_t>(v)];
    return (2.0 / profile.n) * sum;
}

double relative_error(double empirical, double meanfield) {
    if (meanfield == 0.0)
        return empirical == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(empirical - meanfield) / std::abs(meanfield);
}

}  // namespace

LandingProfile uniform_tensor_profile(const Hypergraph& h, int K, const TensorWalkOptions& opts,
                                      std::uint64_t fallback_seed) {
    try {
        return tensor_landing_profile(h, SeedSpec::uniform_block0(), K, opts);
    } catch (const resource_limit_error&) {
        LandingProfile acc(h.n, K);
        int collected = 0;
        const int max_attempts = 4 * kUniformFallbackSamples;
        for (int i = 0; i < max_attempts && collected < kUniformFallbackSamples; ++i) {
            const auto spec = SeedSpec::single_random(derive_seed(fallback_seed, i));
            try {
                const LandingProfile one = tensor_landing_profile(h, spec, K, opts);
                for (std::size_t j = 0; j < acc.x.size(); ++j) acc.x[j] += one.x[j];
                ++collected;
            } catch (const walk_extinction_error&) {
                // extinct tuple: draw a fresh one
            }
        }
        if (collected == 0)
            throw walk_extinction_error(
                "uniform_tensor_profile: every fallback sample went extinct", 0);
        for (double& v : acc.x) v /= collected;
        return acc;
    }
}

std::string_view method_name(Method m) {
    switch (m) {
        case Method::ce: return "ce";
        case Method::tensor: return "tensor";
        case Method::cet: return "cet";
    }
    return "?";
}

std::string_view discriminant_name(Discriminant d) {
    return d == Discriminant::geometric ? "geometric" : "fisher";
}

std::string_view init_name(InitMode m) { return m == InitMode::single ? "single" : "uniform"; }

std::vector<double> meanfield_gaps(const HsbmParams& params, Method method, int K) {
    switch (method) {
        case Method::ce:
            return ce_trajectory(params, K).w;
        case Method::tensor:
            return reduced_recurrence(params, K).w;
        case Method::cet:
            throw std::invalid_argument("meanfield_gaps: cet gaps are estimated empirically");
    }
    throw std::invalid_argument("meanfield_gaps: unknown method");
}

SweepResult run_meanfield_sweep(const SweepConfig& config) {
    if (config.K < 1) throw std::invalid_argument("run_meanfield_sweep: K must be >= 1");
    SweepResult result;
    for_each_grid_point(config.grid, result.skipped, [&](double p, double q) {
        const HsbmParams params{config.n, config.d, p, q};
        for (const Method method : {Method::ce, Method::tensor}) {
            const std::vector<double> w = meanfield_gaps(params, method, config.K);
            double sq = 0.0;
            for (int k = 1; k <= config.K; ++k) {
                const double wk = w[static_cast<std::size_t>(k)];
                sq += wk * wk;
                result.rows.push_back({method, p, q, k, wk, false});
            }
            result.rows.push_back({method, p, q, 0, std::sqrt(sq), true});
        }
    });
    return result;
}

PhaseResult run_phase_diagram(const PhaseConfig& config) {
    if (config.K < 10) throw std::invalid_argument("run_phase_diagram: K must be >= 10");
    PhaseResult result;
    for_each_grid_point(config.grid, result.skipped, [&](double p, double q) {
        const HsbmParams params{config.n, config.d, p, q};
        const ReducedState s = reduced_recurrence(params, config.K);
        PhaseRow row;
        row.p = p;
        row.q = q;
        row.w_final = s.w[static_cast<std::size_t>(config.K)];
        row.decay = s.w[static_cast<std::size_t>(config.K)] /
                    s.w[static_cast<std::size_t>(config.K - 10)];
        result.rows.push_back(row);
    });
    return result;
}

ConcentrationResult run_concentration_check(const ConcentrationConfig& config) {
    config.params.validate();
    if (config.params.degenerate())
        throw std::invalid_argument("run_concentration_check: refusing degenerate parameters");
    if (config.trials < 1) throw std::invalid_argument("run_concentration_check: trials >= 1");
    if (config.method == Method::cet)
        throw std::invalid_argument("run_concentration_check: method must be ce or tensor");

    const BlockLabels labels = BlockLabels::canonical(config.params.n);
    const std::vector<double> mf = meanfield_gaps(config.params, config.method, config.K);
    const MeanFieldTrajectory ce_mf = config.method == Method::ce
                                          ? ce_trajectory(config.params, config.K)
                                          : MeanFieldTrajectory{};

    ConcentrationResult result;
    for (int t = 0; t < config.trials; ++t) {
        const std::uint64_t seed = config.master_seed + static_cast<std::uint64_t>(t);
        const Hypergraph h = sample_hsbm(config.params, seed, config.sample_budget);
        if (config.method == Method::ce) {
            const WeightedGraph g = clique_expand(h);
            const LandingProfile profile =
                ce_landing_profile(g, SeedSpec::uniform_block0(), config.K);
            for (int k = 0; k <= config.K; ++k) {
                const double ea = block_centroid(profile, labels, k, 0);
                const double eb = block_centroid(profile, labels, k, 1);
                const double ma = ce_mf.a[static_cast<std::size_t>(k)];
                const double mb = ce_mf.b[static_cast<std::size_t>(k)];
                result.rows.push_back({t, k, 'a', ea, ma, relative_error(ea, ma)});
                result.rows.push_back({t, k, 'b', eb, mb, relative_error(eb, mb)});
            }
        } else {
            const LandingProfile profile = uniform_tensor_profile(
                h, config.K, config.walk_opts, derive_seed(seed, kWalkSeedSalt));
            for (int k = 0; k <= config.K; ++k) {
                const double eg = empirical_gap(profile, labels, k);
                const double mg = mf[static_cast<std::size_t>(k)];
                result.rows.push_back({t, k, 'g', eg, mg, relative_error(eg, mg)});
            }
        }
    }
    return result;
}

namespace {

LandingProfile run_configured_walk(const ClusterConfig& config, const Hypergraph& h,
                                   const WeightedGraph* g, const Hypergraph* reduced,
                                   std::uint64_t walk_seed) {
    const SeedSpec spec = config.init == InitMode::uniform ? SeedSpec::uniform_block0()
                                                           : SeedSpec::single_random(walk_seed);
    switch (config.method) {
        case Method::ce:
            return ce_landing_profile(*g, spec, config.steps);
        case Method::tensor:
            if (config.init == InitMode::uniform)
                return uniform_tensor_profile(h, config.steps, config.walk_opts, walk_seed);
            return tensor_landing_profile(h, spec, config.steps, config.walk_opts);
        case Method::cet:
            if (config.init == InitMode::uniform)
                return uniform_tensor_profile(*reduced, config.steps, config.walk_opts, walk_seed);
            return tensor_landing_profile(*reduced, spec, config.steps, config.walk_opts);
    }
    throw std::invalid_argument("run_configured_walk: unknown method");
}

// Empirical centroid-gap weights for CET: average the per-step block gap over
// a labeled calibration batch.
std::vector<double> calibrate_cet_gaps(const ClusterConfig& config) {
    const BlockLabels labels = BlockLabels::canonical(config.params.n);
    std::vector<double> gaps(static_cast<std::size_t>(config.steps) + 1, 0.0);
    for (int c = 0; c < config.calibration_trials; ++c) {
        const std::uint64_t seed = derive_seed(config.master_seed, kCalibrationSalt + c);
        const Hypergraph h = sample_hsbm(config.params, seed, config.sample_budget);
        const Hypergraph reduced = partial_clique_expand(h, config.cet_order);
        const LandingProfile profile = run_configured_walk(
            config, h, nullptr, &reduced, derive_seed(seed, kWalkSeedSalt));
        for (int k = 0; k <= config.steps; ++k)
            gaps[static_cast<std::size_t>(k)] += empirical_gap(profile, labels, k);
    }
    for (double& gap : gaps) gap /= config.calibration_trials;
    return gaps;
}

}  // namespace

ClusterResult run_cluster_benchmark(const ClusterConfig& config) {
    config.params.validate();
    if (config.params.degenerate())
        throw std::invalid_argument("run_cluster_benchmark: refusing degenerate parameters");
    if (config.trials < 1 || config.steps < 1)
        throw std::invalid_argument("run_cluster_benchmark: need trials >= 1 and steps >= 1");
    if (config.method == Method::cet &&
        (config.cet_order < 2 || config.cet_order >= config.params.d))
        throw std::invalid_argument("run_cluster_benchmark: cet_order must lie in [2, d)");

    const BlockLabels truth = BlockLabels::canonical(config.params.n);

    ClusterResult result;
    if (config.method == Method::cet) {
        result.gap_weights = calibrate_cet_gaps(config);
        result.empirical_gap_weights = true;
    } else {
        result.gap_weights = meanfield_gaps(config.params, config.method, config.steps);
    }
    const DiscriminantWeights geo = geometric_weights(result.gap_weights, 1, config.steps);

    std::vector<double> accuracies;
    for (int t = 0; t < config.trials; ++t) {
        const std::uint64_t trial_seed = config.master_seed + static_cast<std::uint64_t>(t);
        const Hypergraph h = sample_hsbm(config.params, trial_seed, config.sample_budget);
        WeightedGraph g;
        Hypergraph reduced;
        if (config.method == Method::ce) g = clique_expand(h);
        if (config.method == Method::cet) reduced = partial_clique_expand(h, config.cet_order);

        TrialRecord record;
        record.trial = t;
        bool have_profile = false;
        LandingProfile profile(config.params.n, config.steps);
        // Extinct walks draw fresh seeds; uniform initialization is
        // deterministic so retries cannot help there.
        const int attempts = config.init == InitMode::single ? config.max_resamples + 1 : 1;
        for (int attempt = 0; attempt < attempts && !have_profile; ++attempt) {
            try {
                profile = run_configured_walk(config, h, &g, &reduced,
                                              derive_seed(trial_seed, kWalkSeedSalt + attempt));
                have_profile = true;
            } catch (const walk_extinction_error&) {
                ++record.resamples;
            }
        }
        if (!have_profile) {
            record.failed = true;
            ++result.failed_trials;
            result.trials.push_back(record);
            continue;
        }

        DiscriminantWeights weights = geo;
        if (config.discriminant == Discriminant::fisher) {
            const CovarianceEstimate cov =
                estimate_covariance(profile, &truth, 1, config.steps, config.ridge_scale);
            weights = fisher_weights(geo, cov);
        }
        const ClassificationResult classified = score_and_classify(profile, weights, truth);
        record.accuracy = classified.accuracy;
        accuracies.push_back(classified.accuracy);
        result.trials.push_back(record);
    }
    if (accuracies.empty())
        throw invalid_state_error("run_cluster_benchmark: every trial failed");
    result.summary = accuracy_summary(accuracies);
    return result;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result, std::string_view metadata) {
    out << "# " << metadata << '\n';
    out << "method,p,q,k,w\n";
    for (const SweepRow& row : result.rows) {
        out << method_name(row.method) << ',' << format_double(row.p) << ','
            << format_double(row.q) << ',';
        if (row.summary)
            out << "l2";
        else
            out << row.k;
        out << ',' << format_double(row.w) << '\n';
    }
}

void write_phase_csv(std::ostream& out, const PhaseResult& result, std::string_view metadata) {
    out << "# " << metadata << '\n';
    out << "p,q,w50,decay\n";
    for (const PhaseRow& row : result.rows)
        out << format_double(row.p) << ',' << format_double(row.q) << ','
            << format_double(row.w_final) << ',' << format_double(row.decay) << '\n';
}

void write_concentration_csv(std::ostream& out, const ConcentrationResult& result,
                             std::string_view metadata) {
    out << "# " << metadata << '\n';
    out << "trial,k,stat,empirical,meanfield,rel_err\n";
    for (const ConcentrationRow& row : result.rows)
        out << row.trial << ',' << row.k << ',' << row.stat << ','
            << format_double(row.empirical) << ',' << format_double(row.meanfield) << ','
            << format_double(row.rel_err) << '\n';
}

void write_cluster_csv(std::ostream& out, const ClusterResult& result, Method method,
                       Discriminant discriminant, std::string_view metadata) {
    out << "# " << metadata << '\n';
    out << "trial,method,discriminant,accuracy,stderr,resamples\n";
    for (const TrialRecord& record : result.trials) {
        out << record.trial << ',' << method_name(method) << ','
            << discriminant_name(discriminant) << ',';
        if (record.failed)
            out << "failed";
        else
            out << format_double(record.accuracy);
        out << ",," << record.resamples << '\n';
    }
    out << "summary," << method_name(method) << ',' << discriminant_name(discriminant) << ','
        << format_double(result.summary.mean) << ',' << format_double(result.summary.stderr_of_mean)
        << ',' << result.failed_trials << '\n';
}

}  // namespace hyperlp
