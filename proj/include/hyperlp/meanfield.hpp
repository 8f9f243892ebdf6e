#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "hyperlp/errors.hpp"
#include "hyperlp/hsbm.hpp"

namespace hyperlp {

// A mean-field computation reached a state it cannot evaluate (e.g. all mass
// zero when a ratio is required).
class invalid_state_error : public std::runtime_error {
public:
    explicit invalid_state_error(const std::string& what) : std::runtime_error(what) {}
};

// Deterministic clique-expansion centroid sequences: a[k] and b[k] are the
// mean-field landing probabilities of seed-block and off-block vertices,
// w[k] = a[k] - b[k].
struct MeanFieldTrajectory {
    int K = 0;
    std::vector<double> a, b, w;
};

// Unnormalized block masses M[k], N[k], kept renormalized so M + N = 1 with
// the divided-out magnitude accumulated in log_scale. Ratios are unaffected.
struct UnnormalizedTrajectory {
    int K = 0;
    std::vector<double> m, n, log_scale;

    double raw_m(int k) const;
    double raw_n(int k) const;
    // (2/vertices) * M / (M + N): must reproduce MeanFieldTrajectory::a.
    double a_from_ratio(int k, int vertices) const;
    double b_from_ratio(int k, int vertices) const;
};

// The (d-1)-dimensional reduced tensor-walk recurrences. beta and zeta hold
// (K+1) x (d-1) values, both rescaled per step by the same factor (stored in
// log_scale) so the ratio beta_1/zeta_1 is exact and overflow-free.
struct ReducedState {
    int K = 0;
    int dim = 0;
    int n = 0;
    std::vector<double> beta, zeta, log_scale;
    std::vector<double> w;  // (2/n) beta_1(k) / zeta_1(k)

    double beta_at(int k, int i) const;  // raw magnitude
    double zeta_at(int k, int i) const;
};

// Full 2^{d-1}-state block-pattern mean-field recurrence. Pattern index j
// encodes the tuple's block labels with the last visited vertex in the least
// significant bit.
struct FullMeanFieldState {
    int d = 0;
    int K = 0;
    int n = 0;
    int states = 0;
    std::vector<double> y, log_scale;

    double raw(int k, int j) const;
    std::span<const double> row(int k) const {
        return {y.data() + static_cast<std::size_t>(k) * states, static_cast<std::size_t>(states)};
    }
};

struct PhaseConstants {
    double R = 0.0;   // (p - q) / q
    double C1 = 0.0;  // -q / (p - 2q)
    double C2 = 0.0;  // (p - q) / (p - 2q)
    double C3 = 0.0;  // (p - q) / p
};

enum class RootFamily { beta, zeta };

struct DecayBoundReport {
    double min_step_margin = 0.0;        // min_k w_k - rho * w_{k-1}
    double min_ratio_margin = 0.0;       // min_k w_k / w_{k-1} - rho
    double min_telescoped_margin = 0.0;  // min_k w_k - (2/n) rho^k
    double first_step_ratio_gap = 0.0;   // w_1 / w_0 - rho, zero up to roundoff
    int argmin_k = 0;
};

// Two-state clique-expansion recurrence from (2/n, 0).
MeanFieldTrajectory ce_trajectory(const HsbmParams& params, int K);

// (2/n) [(p - q) / (p + (2^{d-1} - 1) q)]^k.
double ce_gap_closed_form(const HsbmParams& params, int k);

// Unnormalized two-state recurrence from (1, 0); independent oracle for
// ce_trajectory via a = (2/n) M / (M + N).
UnnormalizedTrajectory ce_unnormalized_trajectory(const HsbmParams& params, int K);

// Reduced-order recurrences governing the tensor-walk centroid gap;
// requires d >= 3.
ReducedState reduced_recurrence(const HsbmParams& params, int K);

// Block-pattern recurrence; requires 3 <= d <= max_d (state count 2^{d-1}).
FullMeanFieldState fullstate_recurrence(const HsbmParams& params, int K, int max_d = 16);

// w_k = (2/n) (sum_j s_j Y_j) / (sum_j Y_j) with s_j = +1 when the pattern's
// last bit is 0. Validated against reduced_recurrence rather than assumed.
std::vector<double> gap_from_fullstate(const FullMeanFieldState& state);

// Explicit eigen-expansion of the d = 3 reduced recurrences, scaled to the
// 4/n^2 initial conditions. Returns (beta_1(k), zeta_1(k)).
std::pair<double, double> d3_closed_form(const HsbmParams& params, int k);

// All d-1 complex roots of the reduced-recurrence characteristic polynomials,
// in units of nq/2, via a companion-matrix eigensolve.
std::vector<std::complex<double>> characteristic_roots(const HsbmParams& params,
                                                       RootFamily family);

PhaseConstants phase_constants(const HsbmParams& params);

// Large-d heuristic (2/n) C3 p^k / (C1 (2q)^k + C2 p^k). A large-k asymptotic
// only; at k = 0 it does not reproduce 2/n.
double large_d_approximation(const HsbmParams& params, int k);

// Checks w_k >= ((p-q)/(p+q)) w_{k-1} and the telescoped bound
// w_k >= (2/n) ((p-q)/(p+q))^k over 1 <= k <= K.
DecayBoundReport decay_bound_check(const HsbmParams& params, int K);

}  // namespace hyperlp
