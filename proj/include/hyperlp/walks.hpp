#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "hyperlp/hsbm.hpp"

namespace hyperlp {

// Dense symmetric weighted adjacency matrix (the clique expansion A^{(ce)}).
// Diagonal entries are legal: the expansion sum runs over all index tuples,
// so multiset edges with repeated vertices leave self-loop mass.
struct WeightedGraph {
    int n = 0;
    std::vector<double> w;

    explicit WeightedGraph(int n_ = 0)
        : n(n_), w(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0.0) {}

    double& at(int u, int v) { return w[static_cast<std::size_t>(u) * n + v]; }
    double at(int u, int v) const { return w[static_cast<std::size_t>(u) * n + v]; }
    double row_sum(int u) const;
};

// Landing probabilities x_v^{(k)} for k = 0..K; row k sums to 1.
struct LandingProfile {
    int n = 0;
    int K = 0;
    std::vector<double> x;

    LandingProfile(int n_, int K_)
        : n(n_), K(K_),
          x(static_cast<std::size_t>(K_ + 1) * static_cast<std::size_t>(n_), 0.0) {}

    std::span<const double> row(int k) const {
        return {x.data() + static_cast<std::size_t>(k) * n, static_cast<std::size_t>(n)};
    }
    std::span<double> row(int k) {
        return {x.data() + static_cast<std::size_t>(k) * n, static_cast<std::size_t>(n)};
    }
};

// How the walk starts. `single` draws seeds uniformly at random from block 0
// (one vertex for graph walks, d-1 i.i.d. vertices for tensor walks);
// `uniform_block0` starts from the mean-field initial mass; `explicit_seed`
// uses the given vertex or tuple.
struct SeedSpec {
    enum class Mode { single, uniform_block0, explicit_seed };

    Mode mode = Mode::single;
    std::vector<int> vertices;
    std::uint64_t seed = 0;

    static SeedSpec single_random(std::uint64_t seed) { return {Mode::single, {}, seed}; }
    static SeedSpec uniform_block0() { return {Mode::uniform_block0, {}, 0}; }
    static SeedSpec explicit_seed(std::vector<int> vertices) {
        return {Mode::explicit_seed, std::move(vertices), 0};
    }
};

struct TensorWalkOptions {
    // Use a flat n^{d-1} array when it fits under this many entries.
    std::size_t dense_cap = std::size_t{1} << 22;
    // Live-entry budget for the sparse (hash map) state.
    std::size_t sparse_budget = std::size_t{1} << 23;
};

// Unnormalized mass over ordered (d-1)-tuples of vertices, keyed by the
// base-n encoding of the tuple. Dense storage when n^{d-1} fits the cap.
class TensorState {
public:
    TensorState(int n, int order, const TensorWalkOptions& opts = {});

    int n() const { return n_; }
    int order() const { return order_; }
    bool is_dense() const { return dense_; }
    std::uint64_t capacity() const { return capacity_; }
    std::size_t live_entries() const { return dense_ ? dense_v_.size() : map_.size(); }

    static std::uint64_t key_of(std::span<const int> tuple, int n);

    void add(std::uint64_t key, double mass);
    double get(std::uint64_t key) const;
    double l1() const;
    void scale(double c);

    template <typename F>
    void for_each(F&& f) const {
        if (dense_) {
            for (std::uint64_t k = 0; k < dense_v_.size(); ++k)
                if (dense_v_[k] != 0.0) f(k, dense_v_[k]);
        } else {
            for (const auto& [k, v] : map_) f(k, v);
        }
    }

private:
    int n_ = 0;
    int order_ = 0;
    bool dense_ = false;
    std::uint64_t capacity_ = 0;
    std::size_t budget_ = 0;
    std::vector<double> dense_v_;
    std::unordered_map<std::uint64_t, double> map_;
};

// A^{(ce)}_{u,v} = sum over ordered (d-2)-tuples l of A_{l,u,v}. For a simple
// edge of weight w this contributes (d-2)! w to each unordered pair.
WeightedGraph clique_expand(const Hypergraph& h);

// Replaces each order-d edge of weight w by all of its sorted sub-multisets
// of size target_order, accumulating weights additively.
Hypergraph partial_clique_expand(const Hypergraph& h, int target_order);

std::vector<double> make_ce_seed_state(const SeedSpec& spec, int n);
TensorState make_tensor_seed_state(const SeedSpec& spec, int n, int order,
                                   const TensorWalkOptions& opts = {});

// Power iteration y <- y A^{(ce)} with per-step renormalization; row k of the
// result is the normalized step-k mass. Throws walk_extinction_error when the
// mass dies.
LandingProfile ce_landing_profile(const WeightedGraph& g, std::vector<double> y0, int K);
LandingProfile ce_landing_profile(const WeightedGraph& g, const SeedSpec& spec, int K);

// Order-(d-1) tensor walk driven edge-by-edge over distinct orderings of each
// stored multiset. Row k >= 1 marginalizes the state over its last coordinate;
// row 0 counts seed-tuple positions symmetrically.
LandingProfile tensor_landing_profile(const Hypergraph& h, TensorState y0, int K,
                                      const TensorWalkOptions& opts = {});
LandingProfile tensor_landing_profile(const Hypergraph& h, const SeedSpec& spec, int K,
                                      const TensorWalkOptions& opts = {});

}  // namespace hyperlp
