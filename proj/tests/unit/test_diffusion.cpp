#include "incite/diffusion.hpp"
#include "incite/error.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <random>

using namespace incite;

namespace {

RetweetGraph two_user() {
    return RetweetGraph({"u", "v"}, {1, 2}, {{0, 1, 3}});
}

DangerCounts counts_of(const RetweetGraph& g, const std::vector<std::uint64_t>& c) {
    DangerCounts d;
    for (std::size_t i = 0; i < c.size(); ++i) {
        d.per_user[g.nodes()[i]] = c[i];
    }
    return d;
}

} // namespace

TEST_CASE("degroot_step") {
    const auto id = TransitionMatrix{SparseMatrix::identity(3), {false, false, false}};
    const auto p = degroot_step(id, {{1.0, 2.0, 3.0}, 0});
    CHECK(p.values == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(p.iteration == 1);

    const auto t = transition(adjacency(two_user()));
    const auto p1 = degroot_step(t, {{2.0, 0.0}, 0});
    CHECK(p1.values[0] == 2.0);
    CHECK(std::abs(p1.values[1] - 1.2) < 1e-15);

    const auto uniform = TransitionMatrix{SparseMatrix::from_dense({{0.25, 0.25, 0.25, 0.25},
                                                                    {0.25, 0.25, 0.25, 0.25},
                                                                    {0.25, 0.25, 0.25, 0.25},
                                                                    {0.25, 0.25, 0.25, 0.25}}),
                                          {false, false, false, false}};
    const auto avg = degroot_step(uniform, {{1.0, 2.0, 3.0, 6.0}, 0});
    for (double v : avg.values) {
        CHECK(v == 3.0);
    }
    CHECK_THROWS_AS(degroot_step(t, {{1.0}, 0}), InvalidArgument);
}

TEST_CASE("compute_dab worked example") {
    const auto g = two_user();
    const auto d = compute_dab(g, counts_of(g, {2, 0}));
    CHECK(std::abs(d.raw[0] - 2.0) < 1e-12);
    CHECK(std::abs(d.raw[1] - 1.68) < 1e-12);
    CHECK(d.normalized[0] == 1.0);
    CHECK(std::abs(d.normalized[1] - 0.84) < 1e-12);

    const auto zero = compute_dab(g, counts_of(g, {0, 0}));
    CHECK(zero.raw == std::vector<double>{0.0, 0.0});
    CHECK(zero.normalized == std::vector<double>{0.0, 0.0});
    CHECK_THROWS_AS(compute_dab(g, counts_of(g, {1, 1}), 0), InvalidArgument);
}

TEST_CASE("compute_dab reaches consensus on a strongly connected aperiodic graph") {
    std::mt19937_64 rng(41);
    const auto g = oracle::random_graph(rng, 5, 0.3, true);
    const auto d = compute_dab(g, counts_of(g, {4, 0, 1, 0, 2}), 500);
    const auto [lo, hi] = std::minmax_element(d.raw.begin(), d.raw.end());
    CHECK(*hi - *lo < 1e-6);
}

TEST_CASE("diffusion properties") {
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<std::uint64_t> count(0, 6);
    for (int trial = 0; trial < 100; ++trial) {
        const auto g = oracle::random_graph(rng, 2 + trial % 15, 0.25, trial % 3 == 0);
        std::vector<std::uint64_t> c1(g.node_count());
        std::vector<std::uint64_t> c2(g.node_count());
        for (std::size_t i = 0; i < c1.size(); ++i) {
            c1[i] = count(rng);
            c2[i] = count(rng);
        }
        std::vector<std::uint64_t> sum(c1.size());
        for (std::size_t i = 0; i < c1.size(); ++i) {
            sum[i] = c1[i] + c2[i];
        }
        const int t = 1 + trial % 5;
        const auto d1 = compute_dab(g, counts_of(g, c1), t);
        const auto d2 = compute_dab(g, counts_of(g, c2), t);
        const auto ds = compute_dab(g, counts_of(g, sum), t);

        const auto [mn, mx] = std::minmax_element(c1.begin(), c1.end());
        auto bumped = c1;
        bumped[static_cast<std::size_t>(trial) % bumped.size()] += 3;
        const auto db = compute_dab(g, counts_of(g, bumped), t);

        const auto dense = oracle::dense_transition(oracle::dense_adjacency(g));
        std::vector<double> p(c1.begin(), c1.end());
        for (int s = 0; s < t; ++s) {
            p = oracle::dense_apply(dense, p);
        }
        for (std::size_t i = 0; i < c1.size(); ++i) {
            CHECK(std::abs(ds.raw[i] - (d1.raw[i] + d2.raw[i])) < 1e-9);
            CHECK(d1.raw[i] >= static_cast<double>(*mn) - 1e-12);
            CHECK(d1.raw[i] <= static_cast<double>(*mx) + 1e-12);
            CHECK(db.raw[i] >= d1.raw[i] - 1e-12);
            CHECK(std::abs(d1.raw[i] - p[i]) < 1e-9);
        }
    }
}

TEST_CASE("jenks examples") {
    const std::vector<double> clusters{1, 1, 1, 10, 10, 10, 20, 20, 20};
    CHECK(jenks_breaks(clusters, 3) == std::vector<double>{1, 10});
    CHECK_THROWS_AS(jenks_breaks(std::vector<double>{1, 1, 2}, 3), InvalidArgument);
    CHECK_THROWS_AS(jenks_breaks(std::vector<double>{}, 3), InvalidArgument);
    CHECK_THROWS_AS(jenks_breaks(clusters, 1), InvalidArgument);
}

TEST_CASE("jenks matches exhaustive partitions") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 4 + static_cast<std::size_t>(trial) % 9;
        const int k = 2 + trial % 3;
        std::vector<double> v(n);
        for (auto& x : v) {
            x = u(rng);
        }
        const auto best = oracle::brute_force_jenks(v, k);
        const auto got = jenks_breaks(v, k);
        CHECK(got == best.thresholds);
        CHECK(std::abs(oracle::partition_sse(v, got) - best.sse) < 1e-9);
    }
}

TEST_CASE("jenks with repeated values matches brute-force SSE") {
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<int> u(0, 6);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<double> v(10);
        for (auto& x : v) {
            x = u(rng);
        }
        std::vector<double> s = v;
        std::sort(s.begin(), s.end());
        const auto distinct = static_cast<int>(std::unique(s.begin(), s.end()) - s.begin());
        const int k = std::min(distinct, 2 + trial % 3);
        if (k < 2) {
            continue;
        }
        const auto got = jenks_breaks(v, k);
        CHECK(got.size() == static_cast<std::size_t>(k - 1));
        CHECK(std::abs(oracle::partition_sse(v, got) - oracle::brute_force_jenks(v, k).sse) < 1e-9);
    }
}

TEST_CASE("quantile thinning") {
    std::vector<double> v(10);
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = static_cast<double>(10 - i);
    }
    CHECK(quantile_representatives(v, 4) == std::vector<double>{3, 6, 9, 10});
    CHECK(quantile_representatives(v, 10) == std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});

    std::mt19937_64 rng(59);
    std::lognormal_distribution<double> ln(0.0, 1.0);
    std::vector<double> big(20000);
    for (auto& x : big) {
        x = ln(rng);
    }
    const auto exact = jenks_breaks_exact(big, 3);
    const auto thin = jenks_breaks(big, 3);
    std::sort(big.begin(), big.end());
    for (std::size_t i = 0; i < 2; ++i) {
        const auto re = std::upper_bound(big.begin(), big.end(), exact[i]) - big.begin();
        const auto rt = std::upper_bound(big.begin(), big.end(), thin[i]) - big.begin();
        CHECK(std::abs(static_cast<double>(re - rt)) / static_cast<double>(big.size()) < 0.01);
    }
}

TEST_CASE("assign_dac") {
    const std::vector<double> zeros{0, 0, 0};
    const std::vector<double> eps{0.0, 1e-9};
    const auto a = assign_dac(zeros, eps);
    CHECK(a.dangerous_fraction == 0.0);
    for (auto c : a.categories) {
        CHECK(c == DangerCategory::N);
    }
    const std::vector<double> th{0.2, 0.6};
    const std::vector<double> scores{0.2, 0.21, 0.6, 0.61, 0.0};
    const auto b = assign_dac(scores, th);
    CHECK(b.categories == std::vector<DangerCategory>{DangerCategory::N, DangerCategory::M, DangerCategory::M,
                                                      DangerCategory::V, DangerCategory::N});
    CHECK(b.dangerous_fraction == doctest::Approx(0.6));
    CHECK_THROWS_AS(assign_dac(scores, std::vector<double>{0.6, 0.2}), InvalidArgument);
    CHECK(category_from_char(to_char(DangerCategory::M)) == DangerCategory::M);
}

TEST_CASE("classify_dab") {
    SUBCASE("all zero") {
        DabScores s{{"a", "b"}, {0, 0}, {0, 0}, 2};
        const auto r = classify_dab(s, 3);
        for (auto c : r.dac.categories) {
            CHECK(c == DangerCategory::N);
        }
        CHECK(r.thresholds.size() == 2);
    }
    SUBCASE("two distinct values") {
        DabScores s{{"a", "b", "c"}, {0, 0, 2}, {0, 0, 1}, 2};
        const auto r = classify_dab(s, 3);
        CHECK(r.dac.categories == std::vector<DangerCategory>{DangerCategory::N, DangerCategory::N,
                                                              DangerCategory::M});
    }
    SUBCASE("categories invariant under rescaling") {
        std::mt19937_64 rng(61);
        std::exponential_distribution<double> e(1.0);
        for (int trial = 0; trial < 20; ++trial) {
            DabScores s;
            for (int i = 0; i < 50; ++i) {
                s.users.push_back(std::to_string(i));
                s.raw.push_back(e(rng));
            }
            const double mx = *std::max_element(s.raw.begin(), s.raw.end());
            for (double r : s.raw) {
                s.normalized.push_back(r / mx);
            }
            DabScores scaled = s;
            for (auto& r : scaled.raw) {
                r *= 13.0;
            }
            CHECK(classify_dab(s).dac.categories == classify_dab(scaled).dac.categories);
        }
    }
}

TEST_CASE("average_dab and ecdf") {
    std::vector<ScoreMap> one{{{"a", 0.5}}};
    CHECK(average_dab(one) == one[0]);
    std::vector<ScoreMap> three{{{"a", 0.2}, {"b", 0.9}}, {{"a", 0.4}}, {}};
    const auto avg = average_dab(three);
    CHECK(avg.at("a") == doctest::Approx(0.3));
    CHECK(avg.at("b") == 0.9);
    CHECK_THROWS_AS(average_dab(std::vector<ScoreMap>{}), InvalidArgument);

    CHECK(ecdf(std::vector<double>{5}) == std::vector<std::pair<double, double>>{{5, 1.0}});
    CHECK(ecdf(std::vector<double>{4, 2, 1, 2}) ==
          std::vector<std::pair<double, double>>{{1, 0.25}, {2, 0.75}, {4, 1.0}});
    CHECK_THROWS_AS(ecdf(std::vector<double>{}), InvalidArgument);
}
