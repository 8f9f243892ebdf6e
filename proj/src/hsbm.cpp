#include "hyperlp/hsbm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "hyperlp/rng.hpp"

namespace hyperlp {

void HsbmParams::validate() const {
    if (n <= 0 || n % 2 != 0)
        throw std::invalid_argument("HsbmParams: n must be positive and even, got " +
                                    std::to_string(n));
    if (d < 2)
        throw std::invalid_argument("HsbmParams: d must be >= 2, got " + std::to_string(d));
    if (!(q >= 0.0) || !(p >= q) || !(p <= 1.0))
        throw std::invalid_argument("HsbmParams: need 0 <= q <= p <= 1, got p=" +
                                    std::to_string(p) + " q=" + std::to_string(q));
}

BlockLabels::BlockLabels(std::vector<std::uint8_t> labels) : labels_(std::move(labels)) {
    const int n = static_cast<int>(labels_.size());
    if (n == 0 || n % 2 != 0)
        throw std::invalid_argument("BlockLabels: length must be positive and even");
    int ones = 0;
    for (std::uint8_t l : labels_) {
        if (l > 1) throw std::invalid_argument("BlockLabels: labels must be 0 or 1");
        ones += l;
    }
    if (ones != n / 2)
        throw std::invalid_argument("BlockLabels: blocks must be balanced, got " +
                                    std::to_string(ones) + " ones out of " + std::to_string(n));
}

BlockLabels BlockLabels::canonical(int n) {
    std::vector<std::uint8_t> l(static_cast<std::size_t>(n), 0);
    std::fill(l.begin() + n / 2, l.end(), std::uint8_t{1});
    return BlockLabels(std::move(l));
}

double Hypergraph::total_weight() const {
    return std::accumulate(weights.begin(), weights.end(), 0.0);
}

void Hypergraph::validate() const {
    if (n <= 0 || d < 2) throw std::invalid_argument("Hypergraph: need n > 0 and d >= 2");
    if (labels.n() != n) throw std::invalid_argument("Hypergraph: label length mismatch");
    if (verts.size() != weights.size() * static_cast<std::size_t>(d))
        throw std::invalid_argument("Hypergraph: vertex/weight storage mismatch");
    std::span<const std::int32_t> prev;
    for (std::size_t i = 0; i < edge_count(); ++i) {
        const auto e = edge(i);
        if (!(weights[i] > 0.0))
            throw std::invalid_argument("Hypergraph: edge weights must be positive");
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (e[j] < 0 || e[j] >= n)
                throw std::invalid_argument("Hypergraph: vertex index out of range");
            if (j > 0 && e[j] < e[j - 1])
                throw std::invalid_argument("Hypergraph: edge multisets must be sorted");
        }
        if (i > 0 && !std::lexicographical_compare(prev.begin(), prev.end(), e.begin(), e.end()))
            throw std::invalid_argument("Hypergraph: edges must be strictly increasing");
        prev = e;
    }
}

std::uint64_t count_sorted_multisets(int n, int d) {
    // C(n + d - 1, d) with overflow checking.
    std::uint64_t result = 1;
    for (int i = 1; i <= d; ++i) {
        const std::uint64_t numer = static_cast<std::uint64_t>(n - 1 + i);
        if (result > std::numeric_limits<std::uint64_t>::max() / numer)
            throw resource_limit_error("count_sorted_multisets: C(n+d-1, d) overflows 64 bits");
        result = result * numer / static_cast<std::uint64_t>(i);
    }
    return result;
}

double edge_probability(const HsbmParams& params, const BlockLabels& labels,
                        std::span<const int> tuple) {
    params.validate();
    if (static_cast<int>(tuple.size()) != params.d)
        throw std::invalid_argument("edge_probability: tuple must have exactly d = " +
                                    std::to_string(params.d) + " entries");
    for (int v : tuple) {
        if (v < 0 || v >= params.n)
            throw std::invalid_argument("edge_probability: vertex " + std::to_string(v) +
                                        " out of range [0, " + std::to_string(params.n) + ")");
    }
    const int b0 = labels.block(tuple[0]);
    for (int v : tuple.subspan(1)) {
        if (labels.block(v) != b0) return params.q;
    }
    return params.p;
}

Hypergraph sample_hsbm(const HsbmParams& params, std::uint64_t seed, std::uint64_t budget) {
    params.validate();
    const std::uint64_t draws = count_sorted_multisets(params.n, params.d);
    if (draws > budget)
        throw resource_limit_error("sample_hsbm: " + std::to_string(draws) +
                                   " multisets exceed the sampling budget of " +
                                   std::to_string(budget));

    Hypergraph h;
    h.n = params.n;
    h.d = params.d;
    h.labels = BlockLabels::canonical(params.n);

    Rng rng(seed);
    const int half = params.n / 2;
    std::vector<int> tuple(static_cast<std::size_t>(params.d), 0);
    // Odometer over sorted multisets v_1 <= ... <= v_d. Sortedness means the
    // tuple is monochromatic iff its first and last vertices share a block.
    for (;;) {
        const bool same_block = (tuple.front() < half) == (tuple.back() < half);
        const double prob = same_block ? params.p : params.q;
        if (rng.bernoulli(prob)) {
            h.verts.insert(h.verts.end(), tuple.begin(), tuple.end());
            h.weights.push_back(1.0);
        }
        int pos = params.d - 1;
        while (pos >= 0 && tuple[static_cast<std::size_t>(pos)] == params.n - 1) --pos;
        if (pos < 0) break;
        const int next = tuple[static_cast<std::size_t>(pos)] + 1;
        for (int j = pos; j < params.d; ++j) tuple[static_cast<std::size_t>(j)] = next;
    }
    return h;
}

ExpectedBlockDegrees expected_block_degrees(const HsbmParams& params) {
    params.validate();
    const double half = params.n / 2.0;
    const double scale = std::pow(half, params.d - 1);
    const double cross = std::pow(2.0, params.d - 2);
    ExpectedBlockDegrees deg;
    deg.d00 = deg.d11 = scale * (params.p + (cross - 1.0) * params.q);
    deg.d01 = deg.d10 = scale * cross * params.q;
    return deg;
}

}  // namespace hyperlp
