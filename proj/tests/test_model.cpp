#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hyperlp/hsbm.hpp"
#include "hyperlp/io.hpp"

using namespace hyperlp;

namespace {

// Independent binomial-coefficient oracle for expected edge counts.
double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST_CASE("HsbmParams validation and degeneracy") {
    HsbmParams good{100, 3, 0.4, 0.1};
    CHECK_NOTHROW(good.validate());
    CHECK_FALSE(good.degenerate());

    CHECK_THROWS_AS((HsbmParams{101, 3, 0.4, 0.1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((HsbmParams{100, 1, 0.4, 0.1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((HsbmParams{100, 3, 0.1, 0.4}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((HsbmParams{100, 3, 1.2, 0.1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((HsbmParams{-2, 3, 0.4, 0.1}.validate()), std::invalid_argument);

    CHECK(HsbmParams{100, 3, 0.4, 0.0}.degenerate());
    CHECK(HsbmParams{100, 3, 0.2, 0.2}.degenerate());
    CHECK(HsbmParams{100, 3, 1.0, 0.1}.degenerate());
}

TEST_CASE("BlockLabels balance") {
    const BlockLabels labels = BlockLabels::canonical(10);
    CHECK(labels.n() == 10);
    CHECK(labels.block(0) == 0);
    CHECK(labels.block(4) == 0);
    CHECK(labels.block(5) == 1);
    CHECK(labels.block(9) == 1);

    CHECK_THROWS_AS(BlockLabels({0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(BlockLabels({0, 0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(BlockLabels({0, 2, 1, 1}), std::invalid_argument);
    CHECK_NOTHROW(BlockLabels({1, 0, 0, 1}));
}

TEST_CASE("count_sorted_multisets") {
    CHECK(count_sorted_multisets(4, 2) == 10);
    CHECK(count_sorted_multisets(100, 3) == 171700);
    CHECK(count_sorted_multisets(52, 3) == 24804);  // C(54, 3)
    CHECK(count_sorted_multisets(2, 3) == 4);
    CHECK_THROWS_AS(count_sorted_multisets(1000000, 12), resource_limit_error);
}

TEST_CASE("edge_probability branches") {
    const HsbmParams params{100, 3, 0.4, 0.1};
    const BlockLabels labels = BlockLabels::canonical(100);

    const std::vector<int> within{1, 2, 3};
    const std::vector<int> across{1, 2, 60};
    CHECK(edge_probability(params, labels, within) == doctest::Approx(0.4));
    CHECK(edge_probability(params, labels, across) == doctest::Approx(0.1));

    const HsbmParams flat{100, 3, 0.2, 0.2};
    CHECK(edge_probability(flat, labels, within) == doctest::Approx(0.2));
    CHECK(edge_probability(flat, labels, across) == doctest::Approx(0.2));

    const std::vector<int> wrong_arity{1, 2};
    const std::vector<int> out_of_range{1, 2, 100};
    CHECK_THROWS_AS(edge_probability(params, labels, wrong_arity), std::invalid_argument);
    CHECK_THROWS_AS(edge_probability(params, labels, out_of_range), std::invalid_argument);
}

TEST_CASE("sample_hsbm deterministic inclusion at p = q = 1") {
    const HsbmParams params{10, 3, 1.0, 1.0};
    const Hypergraph h = sample_hsbm(params, 42);
    CHECK(h.edge_count() == count_sorted_multisets(10, 3));
    CHECK_NOTHROW(h.validate());
}

TEST_CASE("sample_hsbm at p = 1, q = 0 keeps only monochromatic edges") {
    const HsbmParams params{10, 3, 1.0, 0.0};
    const Hypergraph h = sample_hsbm(params, 7);
    CHECK(h.edge_count() == 2 * count_sorted_multisets(5, 3));
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        const auto e = h.edge(i);
        CHECK((e.front() < 5) == (e.back() < 5));
        CHECK(h.weights[i] == 1.0);
    }
}

TEST_CASE("sample_hsbm mean edge count matches the Bernoulli expectation") {
    const HsbmParams params{100, 3, 0.4, 0.1};
    const double within = 2.0 * binom(52, 3);
    const double total = binom(102, 3);
    const double expect = params.p * within + params.q * (total - within);
    const double var = within * params.p * (1 - params.p) +
                       (total - within) * params.q * (1 - params.q);

    const int seeds = 50;
    double mean = 0.0;
    for (int s = 0; s < seeds; ++s)
        mean += static_cast<double>(sample_hsbm(params, 1000 + static_cast<std::uint64_t>(s)).edge_count());
    mean /= seeds;

    const double sigma_mean = std::sqrt(var / seeds);
    CHECK(std::abs(mean - expect) <= 3.0 * sigma_mean);
}

TEST_CASE("sampled edge indicator frequency tracks edge_probability") {
    const HsbmParams params{10, 3, 0.4, 0.1};
    const BlockLabels labels = BlockLabels::canonical(10);
    const std::vector<int> within{0, 1, 2};
    const std::vector<int> across{0, 1, 7};
    const int trials = 1000;

    int hits_within = 0, hits_across = 0;
    for (int t = 0; t < trials; ++t) {
        const Hypergraph h = sample_hsbm(params, static_cast<std::uint64_t>(t));
        for (std::size_t i = 0; i < h.edge_count(); ++i) {
            const auto e = h.edge(i);
            if (e[0] == 0 && e[1] == 1 && e[2] == 2) ++hits_within;
            if (e[0] == 0 && e[1] == 1 && e[2] == 7) ++hits_across;
        }
    }
    const double fw = static_cast<double>(hits_within) / trials;
    const double fa = static_cast<double>(hits_across) / trials;
    CHECK(std::abs(fw - 0.4) <= 4.0 * std::sqrt(0.4 * 0.6 / trials));
    CHECK(std::abs(fa - 0.1) <= 4.0 * std::sqrt(0.1 * 0.9 / trials));
}

TEST_CASE("sample_hsbm is a pure function of params and seed") {
    const HsbmParams params{40, 3, 0.5, 0.2};
    const Hypergraph a = sample_hsbm(params, 99);
    const Hypergraph b = sample_hsbm(params, 99);
    CHECK(a.verts == b.verts);
    CHECK(a.weights == b.weights);

    const Hypergraph c = sample_hsbm(params, 100);
    CHECK(a.verts != c.verts);
}

TEST_CASE("sampled edges are valid sorted multisets without duplicates") {
    const HsbmParams params{20, 4, 0.6, 0.3};
    const Hypergraph h = sample_hsbm(params, 5);
    CHECK_NOTHROW(h.validate());
    std::set<std::vector<std::int32_t>> seen;
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        const auto e = h.edge(i);
        std::vector<std::int32_t> key(e.begin(), e.end());
        CHECK(std::is_sorted(key.begin(), key.end()));
        CHECK(seen.insert(key).second);
    }
}

TEST_CASE("sample_hsbm enforces the enumeration budget") {
    const HsbmParams params{100, 3, 0.4, 0.1};
    try {
        sample_hsbm(params, 1, /*budget=*/1000);
        FAIL("expected resource_limit_error");
    } catch (const resource_limit_error& e) {
        CHECK(std::string(e.what()).find("1000") != std::string::npos);
    }
}

TEST_CASE("expected_block_degrees") {
    SUBCASE("worked d = 3 example") {
        const auto deg = expected_block_degrees({100, 3, 0.4, 0.1});
        CHECK(deg.d00 == doctest::Approx(1250.0));
        CHECK(deg.d11 == doctest::Approx(1250.0));
        CHECK(deg.d01 == doctest::Approx(500.0));
        CHECK(deg.d10 == doctest::Approx(500.0));
    }
    SUBCASE("p = q gives a flat ratio") {
        const auto deg = expected_block_degrees({60, 4, 0.3, 0.3});
        CHECK(deg.d00 / deg.d01 == doctest::Approx(1.0));
    }
    SUBCASE("graph case d = 2") {
        const auto deg = expected_block_degrees({50, 2, 0.8, 0.2});
        CHECK(deg.d00 == doctest::Approx(25 * 0.8));
        CHECK(deg.d01 == doctest::Approx(25 * 0.2));
    }
    SUBCASE("row-sum identity") {
        for (int d = 2; d <= 6; ++d) {
            const HsbmParams params{30, d, 0.7, 0.25};
            const auto deg = expected_block_degrees(params);
            const double total =
                std::pow(15.0, d - 1) * (params.p + (std::pow(2.0, d - 1) - 1) * params.q);
            CHECK(deg.d00 + deg.d01 == doctest::Approx(total).epsilon(1e-12));
        }
    }
}

TEST_CASE("hypergraph text format round-trips") {
    const HsbmParams params{12, 3, 0.8, 0.3};
    const Hypergraph h = sample_hsbm(params, 21);
    std::stringstream stream;
    write_hypergraph(stream, h);

    const std::string first_line = stream.str().substr(0, stream.str().find('\n'));
    CHECK(first_line == "12 3");

    const Hypergraph back = read_hypergraph(stream);
    CHECK(back.n == h.n);
    CHECK(back.d == h.d);
    CHECK(back.verts == h.verts);
    CHECK(back.weights == h.weights);
}
