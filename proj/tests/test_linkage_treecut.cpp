#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "tom/linkage.hpp"
#include "tom/tree_cut.hpp"

using namespace tom;

namespace {

std::vector<std::string> ids(size_t n) {
    std::vector<std::string> out;
    for (size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i));
    return out;
}

// planted-group dissimilarity: within-group draws in [0.02, 0.1],
// between-group draws in [0.9, 1.0]
std::vector<std::vector<double>> planted_groups(std::mt19937& rng, int groups, int size) {
    int n = groups * size;
    std::vector<std::vector<double>> d(static_cast<size_t>(n),
                                       std::vector<double>(static_cast<size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            bool same = i / size == j / size;
            double v = same ? 0.02 + 0.08 * oracles::uniform01(rng)
                            : 0.9 + 0.1 * oracles::uniform01(rng);
            d[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
            d[static_cast<size_t>(j)][static_cast<size_t>(i)] = v;
        }
    }
    return d;
}

} // namespace

TEST_CASE("average_linkage: two points merge at their dissimilarity") {
    std::vector<std::vector<double>> d = {{0.0, 0.3}, {0.3, 0.0}};
    Dendrogram dendro = average_linkage(d, ids(2));
    REQUIRE(dendro.merges.size() == 1);
    CHECK(dendro.merges[0].left == 0);
    CHECK(dendro.merges[0].right == 1);
    CHECK(dendro.merges[0].height == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("average_linkage: three-point hand trace") {
    // d(0,1)=0.1, d(0,2)=0.9, d(1,2)=0.9
    std::vector<std::vector<double>> d = {
        {0.0, 0.1, 0.9}, {0.1, 0.0, 0.9}, {0.9, 0.9, 0.0}};
    Dendrogram dendro = average_linkage(d, ids(3));
    REQUIRE(dendro.merges.size() == 2);
    CHECK(dendro.merges[0].left == 0);
    CHECK(dendro.merges[0].right == 1);
    CHECK(dendro.merges[0].height == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(dendro.merges[1].left == 3); // the {0,1} cluster
    CHECK(dendro.merges[1].right == 2);
    CHECK(dendro.merges[1].height == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("average_linkage: matches the recompute-everything oracle") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 60; ++trial) {
        size_t n = 2 + rng() % 7; // up to 8
        auto d = oracles::random_dissimilarity(rng, n);
        Dendrogram dendro = average_linkage(d, ids(n));
        auto expected = oracles::upgma_oracle(d);
        REQUIRE(dendro.merges.size() == expected.size());
        for (size_t m = 0; m < expected.size(); ++m) {
            CHECK(dendro.merges[m].left == expected[m].left);
            CHECK(dendro.merges[m].right == expected[m].right);
            CHECK(dendro.merges[m].height ==
                  doctest::Approx(expected[m].height).epsilon(1e-12));
        }
    }
}

TEST_CASE("average_linkage: heights are non-decreasing") {
    std::mt19937 rng(102);
    for (int trial = 0; trial < 30; ++trial) {
        size_t n = 3 + rng() % 10;
        auto d = oracles::random_dissimilarity(rng, n);
        Dendrogram dendro = average_linkage(d, ids(n));
        for (size_t m = 1; m < dendro.merges.size(); ++m)
            CHECK(dendro.merges[m].height >= dendro.merges[m - 1].height - 1e-12);
    }
}

TEST_CASE("average_linkage: permutation leaves the height multiset unchanged") {
    std::mt19937 rng(103);
    size_t n = 9;
    auto d = oracles::random_dissimilarity(rng, n);

    std::vector<size_t> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<double>> pd(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) pd[i][j] = d[perm[i]][perm[j]];

    auto heights = [](const Dendrogram& dd) {
        std::vector<double> h;
        for (const DendrogramMerge& m : dd.merges) h.push_back(m.height);
        std::sort(h.begin(), h.end());
        return h;
    };
    auto h1 = heights(average_linkage(d, ids(n)));
    auto h2 = heights(average_linkage(pd, ids(n)));
    REQUIRE(h1.size() == h2.size());
    for (size_t i = 0; i < h1.size(); ++i)
        CHECK(h1[i] == doctest::Approx(h2[i]).epsilon(1e-9));
}

TEST_CASE("average_linkage: input validation") {
    CHECK_THROWS_AS(average_linkage({{0.0}}, ids(1)), DataError);
    std::vector<std::vector<double>> asym = {{0.0, 0.2}, {0.3, 0.0}};
    CHECK_THROWS_AS(average_linkage(asym, ids(2)), ShapeError);
    std::vector<std::vector<double>> diag = {{0.1, 0.2}, {0.2, 0.0}};
    CHECK_THROWS_AS(average_linkage(diag, ids(2)), ShapeError);
    std::vector<std::vector<double>> good = {{0.0, 0.2}, {0.2, 0.0}};
    CHECK_THROWS_AS(average_linkage(good, ids(3)), ShapeError);
}

TEST_CASE("dynamic_tree_cut: three planted groups recover exactly") {
    std::mt19937 rng(104);
    auto d = planted_groups(rng, 3, 10);
    Dendrogram dendro = average_linkage(d, ids(30));
    ClusterAssignment cut = dynamic_tree_cut(dendro, 5, 1);

    CHECK(cut.cluster_count == 3);
    CHECK(cut.assigned_count() == 30);
    REQUIRE(cut.cluster_sizes.size() == 3);
    for (int s : cut.cluster_sizes) CHECK(s == 10);
    // groups are contiguous leaf ranges in this fixture
    for (int g = 0; g < 3; ++g)
        for (int i = 1; i < 10; ++i)
            CHECK(cut.labels[static_cast<size_t>(g * 10 + i)] ==
                  cut.labels[static_cast<size_t>(g * 10)]);
}

TEST_CASE("dynamic_tree_cut: all-equal dissimilarities give one cluster") {
    size_t n = 12;
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.4));
    for (size_t i = 0; i < n; ++i) d[i][i] = 0.0;
    Dendrogram dendro = average_linkage(d, ids(n));
    ClusterAssignment cut = dynamic_tree_cut(dendro, 5, 1);
    CHECK(cut.cluster_count == 1);
    CHECK(cut.assigned_count() == n);
}

TEST_CASE("dynamic_tree_cut: min_cluster_size = n yields at most one cluster") {
    std::mt19937 rng(105);
    auto d = oracles::random_dissimilarity(rng, 10);
    Dendrogram dendro = average_linkage(d, ids(10));
    ClusterAssignment cut = dynamic_tree_cut(dendro, 10, 1);
    CHECK(cut.cluster_count <= 1);
}

TEST_CASE("dynamic_tree_cut: min_cluster_size above n unassigns everything") {
    std::mt19937 rng(106);
    auto d = oracles::random_dissimilarity(rng, 6);
    Dendrogram dendro = average_linkage(d, ids(6));
    ClusterAssignment cut = dynamic_tree_cut(dendro, 7, 1);
    CHECK(cut.cluster_count == 0);
    CHECK(cut.assigned_count() == 0);
    CHECK(cut.all_unassigned_warning);
}

TEST_CASE("dynamic_tree_cut: clusters partition a subset of leaves") {
    std::mt19937 rng(107);
    for (int trial = 0; trial < 20; ++trial) {
        size_t n = 6 + rng() % 20;
        auto d = oracles::random_dissimilarity(rng, n);
        Dendrogram dendro = average_linkage(d, ids(n));
        ClusterAssignment cut = dynamic_tree_cut(dendro, 3, 2);
        REQUIRE(cut.labels.size() == n);
        std::vector<int> sizes(static_cast<size_t>(cut.cluster_count), 0);
        for (int l : cut.labels) {
            CHECK(l >= ClusterAssignment::kUnassigned);
            CHECK(l < cut.cluster_count);
            if (l >= 0) ++sizes[static_cast<size_t>(l)];
        }
        for (size_t c = 0; c < sizes.size(); ++c) {
            CHECK(sizes[c] == cut.cluster_sizes[c]);
            CHECK(sizes[c] >= 3); // every non-residual cluster obeys min size
        }
    }
}

TEST_CASE("dynamic_tree_cut: parameter validation") {
    std::vector<std::vector<double>> d = {{0.0, 0.2}, {0.2, 0.0}};
    Dendrogram dendro = average_linkage(d, ids(2));
    CHECK_THROWS_AS(dynamic_tree_cut(dendro, 1, 4), ConfigError);
    CHECK_THROWS_AS(dynamic_tree_cut(dendro, 0, 1), ConfigError);
}

TEST_CASE("dynamic_tree_cut: deeper split is at least as fine") {
    std::mt19937 rng(108);
    auto d = planted_groups(rng, 4, 6);
    Dendrogram dendro = average_linkage(d, ids(24));
    ClusterAssignment coarse = dynamic_tree_cut(dendro, 3, 0);
    ClusterAssignment fine = dynamic_tree_cut(dendro, 3, 3);
    CHECK(fine.cluster_count >= coarse.cluster_count);
}
