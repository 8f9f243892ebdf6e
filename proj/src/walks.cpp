#include "hyperlp/walks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "hyperlp/rng.hpp"

namespace hyperlp {

namespace {

// n^e with a cap check; returns 0 when the power would exceed the cap.
std::uint64_t checked_pow(std::uint64_t base, int exp, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && r > cap / base) return 0;
        r *= base;
    }
    return r;
}

std::vector<std::uint64_t> factorials(int d) {
    std::vector<std::uint64_t> f(static_cast<std::size_t>(d) + 1, 1);
    for (int i = 1; i <= d; ++i) f[static_cast<std::size_t>(i)] = f[i - 1] * static_cast<std::uint64_t>(i);
    return f;
}

// Distinct values and multiplicities of a sorted multiset.
void compress(std::span<const std::int32_t> edge, std::vector<int>& values,
              std::vector<int>& counts) {
    values.clear();
    counts.clear();
    for (std::int32_t v : edge) {
        if (!values.empty() && values.back() == v) {
            ++counts.back();
        } else {
            values.push_back(v);
            counts.push_back(1);
        }
    }
}

}  // namespace

double WeightedGraph::row_sum(int u) const {
    const double* row = w.data() + static_cast<std::size_t>(u) * n;
    return std::accumulate(row, row + n, 0.0);
}

WeightedGraph clique_expand(const Hypergraph& h) {
    WeightedGraph g(h.n);
    const auto fact = factorials(h.d);
    std::vector<int> values, counts, rem;
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        compress(h.edge(e), values, counts);
        const double w = h.weights[e];
        const int m = static_cast<int>(values.size());
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                if (i == j && counts[static_cast<std::size_t>(i)] < 2) continue;
                rem = counts;
                --rem[static_cast<std::size_t>(i)];
                --rem[static_cast<std::size_t>(j)];
                // Distinct arrangements of the remaining d-2 entries.
                std::uint64_t perms = fact[static_cast<std::size_t>(h.d - 2)];
                for (int c : rem) perms /= fact[static_cast<std::size_t>(c)];
                g.at(values[static_cast<std::size_t>(i)], values[static_cast<std::size_t>(j)]) +=
                    w * static_cast<double>(perms);
            }
        }
    }
    return g;
}

Hypergraph partial_clique_expand(const Hypergraph& h, int target_order) {
    if (target_order < 2 || target_order >= h.d)
        throw std::invalid_argument("partial_clique_expand: target order must be in [2, d), got " +
                                    std::to_string(target_order));
    const std::uint64_t key_cap =
        checked_pow(static_cast<std::uint64_t>(h.n), target_order,
                    std::numeric_limits<std::uint64_t>::max());
    if (key_cap == 0)
        throw resource_limit_error("partial_clique_expand: n^target_order exceeds 64-bit keys");

    std::unordered_map<std::uint64_t, double> acc;
    std::vector<int> values, counts, chosen;
    // Enumerates distinct sorted sub-multisets of each edge by choosing a
    // multiplicity for every distinct vertex value.
    auto recurse = [&](auto&& self, std::size_t idx, int remaining, std::uint64_t key,
                       double w) -> void {
        if (remaining == 0) {
            acc[key] += w;
            return;
        }
        if (idx == values.size()) return;
        int avail = std::min(counts[idx], remaining);
        // Ensure the tail can still supply the remaining slots.
        int tail = 0;
        for (std::size_t j = idx + 1; j < values.size(); ++j) tail += counts[j];
        const int lo = std::max(0, remaining - tail);
        for (int take = lo; take <= avail; ++take) {
            std::uint64_t k = key;
            for (int t = 0; t < take; ++t)
                k = k * static_cast<std::uint64_t>(h.n) + static_cast<std::uint64_t>(values[idx]);
            self(self, idx + 1, remaining - take, k, w);
        }
    };
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        compress(h.edge(e), values, counts);
        recurse(recurse, 0, target_order, 0, h.weights[e]);
    }

    std::vector<std::uint64_t> keys;
    keys.reserve(acc.size());
    for (const auto& [k, v] : acc) keys.push_back(k);
    std::sort(keys.begin(), keys.end());

    Hypergraph out;
    out.n = h.n;
    out.d = target_order;
    out.labels = h.labels;
    out.verts.reserve(keys.size() * static_cast<std::size_t>(target_order));
    out.weights.reserve(keys.size());
    std::vector<std::int32_t> tuple(static_cast<std::size_t>(target_order));
    for (std::uint64_t k : keys) {
        std::uint64_t rest = k;
        for (int i = target_order - 1; i >= 0; --i) {
            tuple[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(rest % h.n);
            rest /= static_cast<std::uint64_t>(h.n);
        }
        out.verts.insert(out.verts.end(), tuple.begin(), tuple.end());
        out.weights.push_back(acc[k]);
    }
    return out;
}

TensorState::TensorState(int n, int order, const TensorWalkOptions& opts)
    : n_(n), order_(order), budget_(opts.sparse_budget) {
    if (n <= 0 || order < 1) throw std::invalid_argument("TensorState: need n > 0 and order >= 1");
    capacity_ = checked_pow(static_cast<std::uint64_t>(n), order,
                            std::numeric_limits<std::uint64_t>::max());
    if (capacity_ == 0)
        throw resource_limit_error("TensorState: n^order exceeds 64-bit tuple keys");
    dense_ = capacity_ <= opts.dense_cap;
    if (dense_) dense_v_.assign(static_cast<std::size_t>(capacity_), 0.0);
}

std::uint64_t TensorState::key_of(std::span<const int> tuple, int n) {
    std::uint64_t key = 0;
    for (int v : tuple) key = key * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(v);
    return key;
}

void TensorState::add(std::uint64_t key, double mass) {
    if (dense_) {
        dense_v_[static_cast<std::size_t>(key)] += mass;
    } else {
        map_[key] += mass;
        if (map_.size() > budget_)
            throw resource_limit_error("TensorState: live entries exceed the budget of " +
                                       std::to_string(budget_));
    }
}

double TensorState::get(std::uint64_t key) const {
    if (dense_) return dense_v_[static_cast<std::size_t>(key)];
    const auto it = map_.find(key);
    return it == map_.end() ? 0.0 : it->second;
}

double TensorState::l1() const {
    double total = 0.0;
    for_each([&](std::uint64_t, double v) { total += std::abs(v); });
    return total;
}

void TensorState::scale(double c) {
    if (dense_) {
        for (double& v : dense_v_) v *= c;
    } else {
        for (auto& [k, v] : map_) v *= c;
    }
}

std::vector<double> make_ce_seed_state(const SeedSpec& spec, int n) {
    std::vector<double> y(static_cast<std::size_t>(n), 0.0);
    switch (spec.mode) {
        case SeedSpec::Mode::explicit_seed: {
            if (spec.vertices.size() != 1)
                throw std::invalid_argument("make_ce_seed_state: explicit seed needs one vertex");
            const int s = spec.vertices[0];
            if (s < 0 || s >= n)
                throw std::invalid_argument("make_ce_seed_state: seed vertex " +
                                            std::to_string(s) + " out of range");
            y[static_cast<std::size_t>(s)] = 1.0;
            break;
        }
        case SeedSpec::Mode::single: {
            Rng rng(spec.seed);
            y[static_cast<std::size_t>(rng.uniform_int(n / 2))] = 1.0;
            break;
        }
        case SeedSpec::Mode::uniform_block0: {
            const double mass = 2.0 / n;
            for (int v = 0; v < n / 2; ++v) y[static_cast<std::size_t>(v)] = mass;
            break;
        }
    }
    return y;
}

TensorState make_tensor_seed_state(const SeedSpec& spec, int n, int order,
                                   const TensorWalkOptions& opts) {
    TensorState y(n, order, opts);
    switch (spec.mode) {
        case SeedSpec::Mode::explicit_seed: {
            if (static_cast<int>(spec.vertices.size()) != order)
                throw std::invalid_argument(
                    "make_tensor_seed_state: explicit seed needs a tuple of length " +
                    std::to_string(order));
            for (int v : spec.vertices)
                if (v < 0 || v >= n)
                    throw std::invalid_argument("make_tensor_seed_state: seed vertex " +
                                                std::to_string(v) + " out of range");
            y.add(TensorState::key_of(spec.vertices, n), 1.0);
            break;
        }
        case SeedSpec::Mode::single: {
            Rng rng(spec.seed);
            std::vector<int> tuple(static_cast<std::size_t>(order));
            for (int& v : tuple) v = rng.uniform_int(n / 2);
            y.add(TensorState::key_of(tuple, n), 1.0);
            break;
        }
        case SeedSpec::Mode::uniform_block0: {
            const std::uint64_t half = static_cast<std::uint64_t>(n / 2);
            const std::uint64_t tuples = checked_pow(half, order, y.capacity());
            if (!y.is_dense() && (tuples == 0 || tuples > opts.sparse_budget))
                throw resource_limit_error(
                    "make_tensor_seed_state: uniform block-0 state exceeds the sparse budget of " +
                    std::to_string(opts.sparse_budget));
            const double mass = std::pow(2.0 / n, order);
            std::vector<int> tuple(static_cast<std::size_t>(order), 0);
            for (;;) {
                y.add(TensorState::key_of(tuple, n), mass);
                int pos = order - 1;
                while (pos >= 0 && tuple[static_cast<std::size_t>(pos)] == n / 2 - 1) --pos;
                if (pos < 0) break;
                ++tuple[static_cast<std::size_t>(pos)];
                for (int j = pos + 1; j < order; ++j) tuple[static_cast<std::size_t>(j)] = 0;
            }
            break;
        }
    }
    return y;
}

LandingProfile ce_landing_profile(const WeightedGraph& g, std::vector<double> y0, int K) {
    if (K < 0) throw std::invalid_argument("ce_landing_profile: K must be >= 0");
    if (static_cast<int>(y0.size()) != g.n)
        throw std::invalid_argument("ce_landing_profile: state length mismatch");

    LandingProfile profile(g.n, K);
    std::vector<double> y = std::move(y0);
    std::vector<double> next(static_cast<std::size_t>(g.n));
    for (int k = 0; k <= K; ++k) {
        if (k > 0) {
            for (int u = 0; u < g.n; ++u) {
                const double* row = g.w.data() + static_cast<std::size_t>(u) * g.n;
                double acc = 0.0;
                for (int v = 0; v < g.n; ++v) acc += row[v] * y[static_cast<std::size_t>(v)];
                next[static_cast<std::size_t>(u)] = acc;
            }
            y.swap(next);
        }
        const double norm = std::accumulate(y.begin(), y.end(), 0.0);
        if (!(norm > 0.0))
            throw walk_extinction_error("ce_landing_profile: walk mass vanished at step " +
                                        std::to_string(k), k);
        const double inv = 1.0 / norm;
        for (double& v : y) v *= inv;
        std::copy(y.begin(), y.end(), profile.row(k).begin());
    }
    return profile;
}

LandingProfile ce_landing_profile(const WeightedGraph& g, const SeedSpec& spec, int K) {
    return ce_landing_profile(g, make_ce_seed_state(spec, g.n), K);
}

LandingProfile tensor_landing_profile(const Hypergraph& h, TensorState y0, int K,
                                      const TensorWalkOptions& opts) {
    if (K < 0) throw std::invalid_argument("tensor_landing_profile: K must be >= 0");
    const int r = h.d - 1;
    if (y0.order() != r || y0.n() != h.n)
        throw std::invalid_argument("tensor_landing_profile: state shape mismatch");

    LandingProfile profile(h.n, K);

    // Step 0: symmetric position-count marginal of the seed state.
    {
        double total = 0.0;
        auto row = profile.row(0);
        y0.for_each([&](std::uint64_t key, double mass) {
            total += mass * r;
            std::uint64_t rest = key;
            for (int i = 0; i < r; ++i) {
                row[static_cast<std::size_t>(rest % h.n)] += mass;
                rest /= static_cast<std::uint64_t>(h.n);
            }
        });
        if (!(total > 0.0))
            throw walk_extinction_error("tensor_landing_profile: empty seed state", 0);
        for (double& v : row) v /= total;
    }

    TensorState y = std::move(y0);
    {
        const double norm = y.l1();
        y.scale(1.0 / norm);
    }
    const std::uint64_t nn = static_cast<std::uint64_t>(h.n);
    // suffix key = (prefix key mod n^{r-1}) * n + last vertex
    std::uint64_t suffix_mod = 1;
    for (int i = 0; i < r - 1; ++i) suffix_mod *= nn;

    std::vector<int> perm(static_cast<std::size_t>(h.d));
    for (int k = 1; k <= K; ++k) {
        TensorState next(h.n, r, opts);
        for (std::size_t e = 0; e < h.edge_count(); ++e) {
            const auto edge = h.edge(e);
            const double w = h.weights[e];
            std::copy(edge.begin(), edge.end(), perm.begin());
            do {
                const std::uint64_t prefix = TensorState::key_of(
                    std::span<const int>(perm.data(), static_cast<std::size_t>(r)), h.n);
                const double mass = y.get(prefix);
                if (mass != 0.0) {
                    const std::uint64_t suffix =
                        (prefix % suffix_mod) * nn +
                        static_cast<std::uint64_t>(perm[static_cast<std::size_t>(r)]);
                    next.add(suffix, w * mass);
                }
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        const double norm = next.l1();
        if (!(norm > 0.0))
            throw walk_extinction_error("tensor_landing_profile: walk mass vanished at step " +
                                        std::to_string(k), k);
        next.scale(1.0 / norm);

        auto row = profile.row(k);
        next.for_each([&](std::uint64_t key, double mass) {
            row[static_cast<std::size_t>(key % nn)] += mass;
        });
        y = std::move(next);
    }
    return profile;
}

LandingProfile tensor_landing_profile(const Hypergraph& h, const SeedSpec& spec, int K,
                                      const TensorWalkOptions& opts) {
    return tensor_landing_profile(h, make_tensor_seed_state(spec, h.n, h.d - 1, opts), K, opts);
}

}  // namespace hyperlp
