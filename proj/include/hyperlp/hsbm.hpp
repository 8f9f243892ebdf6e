#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hyperlp/errors.hpp"

namespace hyperlp {

// Parameters of the two-block symmetric hypergraph stochastic block model:
// n vertices split into two equal blocks, hyperedges of order d, within-block
// edge probability p, cross-block probability q.
struct HsbmParams {
    int n = 0;
    int d = 2;
    double p = 0.0;
    double q = 0.0;

    // Throws std::invalid_argument unless n is even and positive, d >= 2,
    // and 0 <= q <= p <= 1.
    void validate() const;

    // True outside the model's proper regime 0 < q < p < 1. Degenerate
    // values are fine for unit tests; experiment drivers refuse them.
    bool degenerate() const {
        return q == 0.0 || p == q || p == 1.0;
    }
};

// Balanced two-block vertex labeling. The canonical labeling puts the first
// n/2 vertices in block 0; the model is exchangeable so nothing is lost.
class BlockLabels {
public:
    BlockLabels() = default;
    explicit BlockLabels(std::vector<std::uint8_t> labels);

    static BlockLabels canonical(int n);

    int n() const { return static_cast<int>(labels_.size()); }
    int block(int v) const { return labels_[static_cast<std::size_t>(v)]; }
    std::span<const std::uint8_t> labels() const { return labels_; }

private:
    std::vector<std::uint8_t> labels_;
};

// A weighted d-uniform hypergraph over vertices [0, n). Edges are sorted
// d-multisets stored flat (d vertex ids per edge, edges in lexicographic
// order, each distinct multiset at most once; weight carries multiplicity).
// The implied adjacency tensor is symmetric: every permutation of an edge's
// vertices indexes the same weight.
struct Hypergraph {
    int n = 0;
    int d = 0;
    std::vector<std::int32_t> verts;
    std::vector<double> weights;
    BlockLabels labels;

    std::size_t edge_count() const { return weights.size(); }
    std::span<const std::int32_t> edge(std::size_t i) const {
        return {verts.data() + i * static_cast<std::size_t>(d), static_cast<std::size_t>(d)};
    }
    double total_weight() const;

    // Throws std::invalid_argument on malformed edge lists (wrong arity,
    // out-of-range vertices, unsorted or duplicate multisets, weights <= 0).
    void validate() const;
};

// Expected clique-expansion row sums by block pair.
struct ExpectedBlockDegrees {
    double d00 = 0.0;
    double d01 = 0.0;
    double d10 = 0.0;
    double d11 = 0.0;
};

// Number of sorted d-multisets over n vertices, C(n + d - 1, d).
// Throws resource_limit_error on overflow of 64 bits.
std::uint64_t count_sorted_multisets(int n, int d);

// Inclusion probability of the hyperedge given by `tuple`: p when all its
// vertices share one block, q otherwise.
double edge_probability(const HsbmParams& params, const BlockLabels& labels,
                        std::span<const int> tuple);

inline constexpr std::uint64_t kDefaultSampleBudget = 100'000'000;

// Samples a hypergraph by one Bernoulli draw per sorted d-multiset.
// Deterministic in (params, seed). Throws resource_limit_error when the
// multiset enumeration would exceed `budget` draws.
Hypergraph sample_hsbm(const HsbmParams& params, std::uint64_t seed,
                       std::uint64_t budget = kDefaultSampleBudget);

// d00 = d11 = (n/2)^{d-1} (p + (2^{d-2} - 1) q),
// d01 = d10 = (n/2)^{d-1} 2^{d-2} q.
ExpectedBlockDegrees expected_block_degrees(const HsbmParams& params);

}  // namespace hyperlp
