#include "hyperlp/meanfield.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace hyperlp {

namespace {

void require_valid(const HsbmParams& params) { params.validate(); }

void require_tensor_params(const HsbmParams& params) {
    params.validate();
    if (params.d < 3)
        throw std::invalid_argument("reduced recurrences require d >= 3, got d = " +
                                    std::to_string(params.d));
}

}  // namespace

double UnnormalizedTrajectory::raw_m(int k) const {
    return m[static_cast<std::size_t>(k)] * std::exp(log_scale[static_cast<std::size_t>(k)]);
}

double UnnormalizedTrajectory::raw_n(int k) const {
    return n[static_cast<std::size_t>(k)] * std::exp(log_scale[static_cast<std::size_t>(k)]);
}

double UnnormalizedTrajectory::a_from_ratio(int k, int vertices) const {
    const auto i = static_cast<std::size_t>(k);
    return (2.0 / vertices) * m[i] / (m[i] + n[i]);
}

double UnnormalizedTrajectory::b_from_ratio(int k, int vertices) const {
    const auto i = static_cast<std::size_t>(k);
    return (2.0 / vertices) * n[i] / (m[i] + n[i]);
}

double ReducedState::beta_at(int k, int i) const {
    return beta[static_cast<std::size_t>(k) * dim + i] *
           std::exp(log_scale[static_cast<std::size_t>(k)]);
}

double ReducedState::zeta_at(int k, int i) const {
    return zeta[static_cast<std::size_t>(k) * dim + i] *
           std::exp(log_scale[static_cast<std::size_t>(k)]);
}

double FullMeanFieldState::raw(int k, int j) const {
    return y[static_cast<std::size_t>(k) * states + j] *
           std::exp(log_scale[static_cast<std::size_t>(k)]);
}

MeanFieldTrajectory ce_trajectory(const HsbmParams& params, int K) {
    require_valid(params);
    if (K < 0) throw std::invalid_argument("ce_trajectory: K must be >= 0");
    const double denom = params.p + (std::pow(2.0, params.d - 1) - 1.0) * params.q;
    if (denom == 0.0)
        throw std::invalid_argument("ce_trajectory: update undefined at p = q = 0");

    // The 2x2 update diagonalizes exactly: a + b = 2/n is conserved and the
    // gap contracts by (p - q)/denom each step. Iterating the gap directly
    // avoids the catastrophic cancellation of a - b once the gap falls below
    // the roundoff floor of a.
    const double rate = (params.p - params.q) / denom;
    MeanFieldTrajectory t;
    t.K = K;
    t.a.resize(static_cast<std::size_t>(K) + 1);
    t.b.resize(static_cast<std::size_t>(K) + 1);
    t.w.resize(static_cast<std::size_t>(K) + 1);
    double w = 2.0 / params.n;
    for (int k = 0; k <= K; ++k) {
        if (k > 0) w *= rate;
        t.w[static_cast<std::size_t>(k)] = w;
        t.a[static_cast<std::size_t>(k)] = 1.0 / params.n + w / 2.0;
        t.b[static_cast<std::size_t>(k)] = 1.0 / params.n - w / 2.0;
    }
    return t;
}

double ce_gap_closed_form(const HsbmParams& params, int k) {
    require_valid(params);
    if (k < 0) throw std::invalid_argument("ce_gap_closed_form: k must be >= 0");
    const double denom = params.p + (std::pow(2.0, params.d - 1) - 1.0) * params.q;
    if (denom == 0.0)
        throw std::invalid_argument("ce_gap_closed_form: undefined at p = q = 0");
    return (2.0 / params.n) * std::pow((params.p - params.q) / denom, k);
}

UnnormalizedTrajectory ce_unnormalized_trajectory(const HsbmParams& params, int K) {
    require_valid(params);
    if (K < 0) throw std::invalid_argument("ce_unnormalized_trajectory: K must be >= 0");
    const double scale = std::pow(params.n / 2.0, params.d - 1);
    const double diag = scale * (params.p + (std::pow(2.0, params.d - 2) - 1.0) * params.q);
    const double off = scale * std::pow(2.0, params.d - 2) * params.q;
    if (diag + off == 0.0)
        throw std::invalid_argument("ce_unnormalized_trajectory: undefined at p = q = 0");

    UnnormalizedTrajectory t;
    t.K = K;
    t.m.resize(static_cast<std::size_t>(K) + 1);
    t.n.resize(static_cast<std::size_t>(K) + 1);
    t.log_scale.resize(static_cast<std::size_t>(K) + 1);
    double m = 1.0, n = 0.0, ls = 0.0;
    for (int k = 0; k <= K; ++k) {
        if (k > 0) {
            const double nm = diag * m + off * n;
            const double nn = off * m + diag * n;
            const double total = nm + nn;
            m = nm / total;
            n = nn / total;
            ls += std::log(total);
        }
        t.m[static_cast<std::size_t>(k)] = m;
        t.n[static_cast<std::size_t>(k)] = n;
        t.log_scale[static_cast<std::size_t>(k)] = ls;
    }
    return t;
}

ReducedState reduced_recurrence(const HsbmParams& params, int K) {
    require_tensor_params(params);
    if (K < 0) throw std::invalid_argument("reduced_recurrence: K must be >= 0");
    if (params.p == 0.0 && params.q == 0.0)
        throw std::invalid_argument("reduced_recurrence: undefined at p = q = 0");
    const int m = params.d - 1;
    const double half = params.n / 2.0;
    const double lastcol = half * (params.p - params.q);
    const double sub = half * params.q;

    ReducedState s;
    s.K = K;
    s.dim = m;
    s.n = params.n;
    s.beta.resize(static_cast<std::size_t>(K + 1) * m);
    s.zeta.resize(static_cast<std::size_t>(K + 1) * m);
    s.log_scale.resize(static_cast<std::size_t>(K) + 1);
    s.w.resize(static_cast<std::size_t>(K) + 1);

    std::vector<double> beta(static_cast<std::size_t>(m), 4.0 / (static_cast<double>(params.n) * params.n));
    std::vector<double> zeta = beta;
    std::vector<double> nb(static_cast<std::size_t>(m)), nz(static_cast<std::size_t>(m));
    double ls = 0.0;
    for (int k = 0; k <= K; ++k) {
        if (k > 0) {
            // beta update: subdiagonal q plus a p-q last column, times n/2.
            // zeta update: the same matrix with 2q added at the top-left.
            const double bl = beta[static_cast<std::size_t>(m - 1)] * lastcol;
            const double zl = zeta[static_cast<std::size_t>(m - 1)] * lastcol;
            for (int i = 0; i < m; ++i) {
                nb[static_cast<std::size_t>(i)] =
                    bl + (i > 0 ? sub * beta[static_cast<std::size_t>(i - 1)] : 0.0);
                nz[static_cast<std::size_t>(i)] =
                    zl + (i > 0 ? sub * zeta[static_cast<std::size_t>(i - 1)] : 0.0);
            }
            nz[0] += 2.0 * sub * zeta[0];
            beta.swap(nb);
            zeta.swap(nz);
            double norm = 0.0;
            for (double v : zeta) norm += std::abs(v);
            if (!(norm > 0.0))
                throw invalid_state_error("reduced_recurrence: zeta mass vanished at step " +
                                          std::to_string(k));
            const double inv = 1.0 / norm;
            for (double& v : beta) v *= inv;
            for (double& v : zeta) v *= inv;
            ls += std::log(norm);
        }
        std::copy(beta.begin(), beta.end(), s.beta.begin() + static_cast<std::size_t>(k) * m);
        std::copy(zeta.begin(), zeta.end(), s.zeta.begin() + static_cast<std::size_t>(k) * m);
        s.log_scale[static_cast<std::size_t>(k)] = ls;
        s.w[static_cast<std::size_t>(k)] = (2.0 / params.n) * beta[0] / zeta[0];
    }
    return s;
}

FullMeanFieldState fullstate_recurrence(const HsbmParams& params, int K, int max_d) {
    require_tensor_params(params);
    if (K < 0) throw std::invalid_argument("fullstate_recurrence: K must be >= 0");
    if (params.d > max_d)
        throw resource_limit_error("fullstate_recurrence: d = " + std::to_string(params.d) +
                                   " exceeds the state cap d <= " + std::to_string(max_d));
    const int m = 1 << (params.d - 1);
    const double pcoef = params.n * params.p / 2.0;
    const double qcoef = params.n * params.q / 2.0;

    FullMeanFieldState s;
    s.d = params.d;
    s.K = K;
    s.n = params.n;
    s.states = m;
    s.y.resize(static_cast<std::size_t>(K + 1) * m, 0.0);
    s.log_scale.resize(static_cast<std::size_t>(K) + 1, 0.0);

    std::vector<double> y(static_cast<std::size_t>(m), 0.0);
    y[0] = std::pow(2.0 / params.n, params.d - 1);
    std::vector<double> next(static_cast<std::size_t>(m));
    double ls = 0.0;
    const int shift = params.d - 2;
    for (int k = 0; k <= K; ++k) {
        if (k > 0) {
            for (int t = 0; t < m; ++t) {
                // Pattern t feeds from the two patterns whose leading bits
                // match t shifted right; np/2 on the all-equal transition.
                const int s0 = t >> 1;
                const int s1 = (t >> 1) | (1 << shift);
                const double c0 = (t == 0) ? pcoef : qcoef;
                const double c1 = (t == m - 1) ? pcoef : qcoef;
                next[static_cast<std::size_t>(t)] = c0 * y[static_cast<std::size_t>(s0)] +
                                                    c1 * y[static_cast<std::size_t>(s1)];
            }
            y.swap(next);
            const double norm = std::accumulate(y.begin(), y.end(), 0.0);
            if (norm > 0.0 && (norm > 1e200 || norm < 1e-200)) {
                const double inv = 1.0 / norm;
                for (double& v : y) v *= inv;
                ls += std::log(norm);
            }
        }
        std::copy(y.begin(), y.end(), s.y.begin() + static_cast<std::size_t>(k) * m);
        s.log_scale[static_cast<std::size_t>(k)] = ls;
    }
    return s;
}

std::vector<double> gap_from_fullstate(const FullMeanFieldState& state) {
    std::vector<double> w(static_cast<std::size_t>(state.K) + 1);
    for (int k = 0; k <= state.K; ++k) {
        const auto row = state.row(k);
        double num = 0.0, den = 0.0;
        for (int j = 0; j < state.states; ++j) {
            const double v = row[static_cast<std::size_t>(j)];
            den += v;
            num += (j & 1) == 0 ? v : -v;
        }
        if (!(den > 0.0))
            throw invalid_state_error("gap_from_fullstate: zero total mass at step " +
                                      std::to_string(k));
        w[static_cast<std::size_t>(k)] = (2.0 / state.n) * num / den;
    }
    return w;
}

std::pair<double, double> d3_closed_form(const HsbmParams& params, int k) {
    params.validate();
    if (params.d != 3)
        throw std::invalid_argument("d3_closed_form: requires d = 3, got d = " +
                                    std::to_string(params.d));
    if (!(params.p > params.q) || !(params.q > 0.0))
        throw std::invalid_argument("d3_closed_form: requires p > q > 0");
    if (k < 0) throw std::invalid_argument("d3_closed_form: k must be >= 0");

    const double R = (params.p - params.q) / params.q;
    const double nq4 = params.n * params.q / 4.0;
    const double init = 4.0 / (static_cast<double>(params.n) * params.n);

    const double sz = std::sqrt(R * R + 4.0);
    const double zeta_minus = (sz - R - 2.0) / (2.0 * sz);
    const double zeta_plus = (sz + R + 2.0) / (2.0 * sz);
    const double zeta = zeta_minus * std::pow(nq4 * (R - sz + 2.0), k) +
                        zeta_plus * std::pow(nq4 * (R + sz + 2.0), k);

    const double sb = std::sqrt(R * (R + 4.0));
    const double u = std::sqrt(R / (R + 4.0));
    const double beta = 0.5 * (1.0 - u) * std::pow(nq4 * (R - sb), k) +
                        0.5 * (1.0 + u) * std::pow(nq4 * (R + sb), k);

    return {init * beta, init * zeta};
}

std::vector<std::complex<double>> characteristic_roots(const HsbmParams& params,
                                                       RootFamily family) {
    require_tensor_params(params);
    if (!(params.p > params.q) || !(params.q > 0.0))
        throw std::invalid_argument("characteristic_roots: requires p > q > 0");
    const int m = params.d - 1;
    const double R = (params.p - params.q) / params.q;

    // Monic coefficients c_0..c_{m-1} of t^m + c_{m-1} t^{m-1} + ... + c_0.
    std::vector<double> c(static_cast<std::size_t>(m), 0.0);
    if (family == RootFamily::beta) {
        for (double& v : c) v = -R;
    } else {
        for (double& v : c) v = R;
        c[static_cast<std::size_t>(m - 1)] = -(2.0 + R);
    }

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(m, m);
    for (int i = 1; i < m; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < m; ++i) companion(i, m - 1) = -c[static_cast<std::size_t>(i)];

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw solver_error("characteristic_roots: eigensolver failed to converge for d = " +
                           std::to_string(params.d));

    std::vector<std::complex<double>> roots(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });

    // Residual sanity check of the computed roots against the polynomial.
    double worst = 0.0;
    for (const auto& r : roots) {
        std::complex<double> value(1.0, 0.0);
        for (int i = m - 1; i >= 0; --i)
            value = value * r + c[static_cast<std::size_t>(i)];
        const double scale = std::max(1.0, std::pow(std::abs(r), m));
        worst = std::max(worst, std::abs(value) / scale);
    }
    if (worst > 1e-6)
        throw solver_error("characteristic_roots: root residual " + std::to_string(worst) +
                           " too large");
    return roots;
}

PhaseConstants phase_constants(const HsbmParams& params) {
    params.validate();
    if (!(params.q > 0.0))
        throw std::invalid_argument("phase_constants: requires q > 0");
    if (params.p == 2.0 * params.q)
        throw singular_parameter_error("phase_constants: singular at p = 2q");
    PhaseConstants c;
    c.R = (params.p - params.q) / params.q;
    c.C1 = -params.q / (params.p - 2.0 * params.q);
    c.C2 = (params.p - params.q) / (params.p - 2.0 * params.q);
    c.C3 = (params.p - params.q) / params.p;
    return c;
}

double large_d_approximation(const HsbmParams& params, int k) {
    if (k < 0) throw std::invalid_argument("large_d_approximation: k must be >= 0");
    const PhaseConstants c = phase_constants(params);
    const double num = c.C3 * std::pow(params.p, k);
    const double den = c.C1 * std::pow(2.0 * params.q, k) + c.C2 * std::pow(params.p, k);
    return (2.0 / params.n) * num / den;
}

DecayBoundReport decay_bound_check(const HsbmParams& params, int K) {
    require_tensor_params(params);
    if (!(params.p > params.q) || !(params.q > 0.0))
        throw std::invalid_argument("decay_bound_check: requires p > q > 0");
    const ReducedState s = reduced_recurrence(params, K);
    const double rho = (params.p - params.q) / (params.p + params.q);

    DecayBoundReport report;
    report.min_step_margin = std::numeric_limits<double>::infinity();
    report.min_ratio_margin = std::numeric_limits<double>::infinity();
    report.min_telescoped_margin = std::numeric_limits<double>::infinity();
    double bound = 2.0 / params.n;
    for (int k = 1; k <= K; ++k) {
        const double wk = s.w[static_cast<std::size_t>(k)];
        const double wprev = s.w[static_cast<std::size_t>(k - 1)];
        bound *= rho;
        const double step_margin = wk - rho * wprev;
        if (step_margin < report.min_step_margin) {
            report.min_step_margin = step_margin;
            report.argmin_k = k;
        }
        if (wprev > 0.0)
            report.min_ratio_margin = std::min(report.min_ratio_margin, wk / wprev - rho);
        report.min_telescoped_margin = std::min(report.min_telescoped_margin, wk - bound);
        if (k == 1) report.first_step_ratio_gap = wk / wprev - rho;
    }
    return report;
}

}  // namespace hyperlp
