// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include "incite/annotate.hpp"
#include "incite/diffusion.hpp"
#include "incite/distributions.hpp"
#include "incite/graph.hpp"
#include "incite/pipeline.hpp"
#include "incite/polarity.hpp"
#include "incite/stats.hpp"

#include "support/fixture.hpp"
#include "support/oracles.hpp"
#include "support/reference_values.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace incite;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---------------------------------------------------------------------------

Outcome transition_stochasticity() {
    std::mt19937_64 rng(1001);
    std::uniform_int_distribution<std::size_t> size(1, 50);
    std::uniform_real_distribution<double> density(0.0, 0.3);
    double worst = 0.0;
    std::size_t degenerate = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto g = oracle::random_graph(rng, size(rng), density(rng), false);
        const auto t = transition(adjacency(g));
        for (std::size_t r = 0; r < t.matrix.rows(); ++r) {
            double sum = 0.0;
            for (double v : t.matrix.row_values(r)) {
                sum += v;
            }
            worst = std::max(worst, std::abs(sum - 1.0));
            degenerate += t.degenerate[r] ? 1 : 0;
        }
    }
    return {worst <= 1e-9, fmt::format("1000 graphs, max |row sum - 1| = {:.3g}, {} degenerate rows", worst, degenerate)};
}

Outcome degroot_convexity_consensus() {
    const auto start = Clock::now();
    std::mt19937_64 rng(2002);
    std::uniform_int_distribution<std::size_t> size(2, 50);
    std::uniform_real_distribution<double> density(0.05, 0.3);
    std::uniform_real_distribution<double> belief(0.0, 10.0);
    bool convex = true;
    double worst_spread = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = size(rng);
        const auto g = oracle::random_graph(rng, n, density(rng), true);
        const auto t = transition(adjacency(g));
        BeliefVector p;
        for (std::size_t i = 0; i < n; ++i) {
            p.values.push_back(belief(rng));
        }
        const auto [lo_it, hi_it] = std::minmax_element(p.values.begin(), p.values.end());
        const double lo = *lo_it;
        const double hi = *hi_it;
        const double slack = 1e-12 * std::max(1.0, std::abs(hi));
        for (int step = 0; step < 1000; ++step) {
            p = degroot_step(t, p);
            for (double v : p.values) {
                convex = convex && v >= lo - slack && v <= hi + slack;
            }
        }
        const auto [a, b] = std::minmax_element(p.values.begin(), p.values.end());
        worst_spread = std::max(worst_spread, *b - *a);
    }
    const double elapsed = seconds_since(start);
    return {convex && worst_spread < 1e-6 && elapsed < 10.0,
            fmt::format("200 graphs, convex hull kept: {}, max spread at t=1000 = {:.3g}, {:.2f} s", convex,
                        worst_spread, elapsed)};
}

Outcome worked_example() {
    const RetweetGraph g({"u", "v"}, {1, 2}, {{0, 1, 3}});
    DangerCounts counts;
    counts.per_user = {{"u", 2}, {"v", 0}};
    const auto d = compute_dab(g, counts, 2);
    const double err = std::max({std::abs(d.raw[0] - 2.0), std::abs(d.raw[1] - 1.68),
                                 std::abs(d.normalized[0] - 1.0), std::abs(d.normalized[1] - 0.84)});
    return {err <= 1e-12, fmt::format("raw [{:.15g}, {:.15g}], normalized [{:.15g}, {:.15g}]", d.raw[0], d.raw[1],
                                      d.normalized[0], d.normalized[1])};
}

Outcome jenks_exactness() {
    std::mt19937_64 rng(4004);
    std::uniform_int_distribution<int> size(2, 12);
    std::uniform_int_distribution<int> small(0, 6);
    std::uniform_real_distribution<double> real(0.0, 1.0);
    int matched = 0;
    int cases = 0;
    while (cases < 500) {
        const int n = size(rng);
        const bool ties = cases % 3 == 0;
        std::vector<double> v(static_cast<std::size_t>(n));
        for (auto& x : v) {
            x = ties ? static_cast<double>(small(rng)) : real(rng);
        }
        std::vector<double> distinct = v;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        const int k = 2 + cases % 3;
        if (static_cast<int>(distinct.size()) < k) {
            continue;
        }
        ++cases;
        const auto dp = jenks_breaks(v, k);
        const auto brute = oracle::brute_force_jenks(v, k);
        const double dp_sse = oracle::partition_sse(v, dp);
        if (std::abs(dp_sse - brute.sse) <= 1e-12 * std::max(1.0, brute.sse)) {
            ++matched;
        }
    }

    std::mt19937_64 big_rng(4005);
    std::lognormal_distribution<double> ln(0.0, 1.0);
    std::vector<double> big(50000);
    for (auto& x : big) {
        x = ln(big_rng);
    }
    const auto exact = jenks_breaks_exact(big, 3);
    const auto thin = jenks_breaks(big, 3);
    std::sort(big.begin(), big.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
        const auto re = std::upper_bound(big.begin(), big.end(), exact[i]) - big.begin();
        const auto rt = std::upper_bound(big.begin(), big.end(), thin[i]) - big.begin();
        worst = std::max(worst, std::abs(static_cast<double>(re - rt)) / static_cast<double>(big.size()));
    }
    return {matched == 500 && worst < 0.01,
            fmt::format("{}/500 brute-force optima matched; n=50000 thinned vs exact max gap {:.4f} percentile",
                        matched, 100.0 * worst)};
}

Outcome centrality_oracle() {
    std::mt19937_64 rng(5005);
    std::uniform_int_distribution<std::size_t> size(1, 8);
    std::uniform_real_distribution<double> density(0.1, 0.6);
    double indegree_err = 0.0;
    double harmonic_err = 0.0;
    double eigen_err = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = size(rng);
        // General graphs for indegree and closeness.
        const auto g = oracle::random_graph(rng, n, density(rng), false);
        const auto in = indegree_centrality(g);
        const auto in_o = oracle::indegree(g);
        const auto h = harmonic_closeness(g);
        const auto h_o = oracle::harmonic_closeness(g);
        for (std::size_t i = 0; i < n; ++i) {
            indegree_err = std::max(indegree_err, std::abs(in[i] - in_o[i]));
            harmonic_err = std::max(harmonic_err, std::abs(h[i] - h_o[i]));
        }
        // Strongly connected graphs, where the dominant eigenvector is unique.
        const auto s = oracle::random_graph(rng, n, density(rng), true);
        const auto ev = eigenvector_centrality(s, 1e-13, 100000);
        const auto ev_o = n > 1 ? oracle::eigenvector(s) : std::vector<double>{1.0};
        const auto sin = indegree_centrality(s);
        const auto sin_o = oracle::indegree(s);
        const auto sh = harmonic_closeness(s);
        const auto sh_o = oracle::harmonic_closeness(s);
        for (std::size_t i = 0; i < n; ++i) {
            eigen_err = std::max(eigen_err, std::abs(ev.scores[i] - ev_o[i]));
            indegree_err = std::max(indegree_err, std::abs(sin[i] - sin_o[i]));
            harmonic_err = std::max(harmonic_err, std::abs(sh[i] - sh_o[i]));
        }
    }
    return {indegree_err == 0.0 && harmonic_err < 1e-12 && eigen_err < 1e-6,
            fmt::format("400 graphs (n<=8): indegree err {:.3g}, harmonic err {:.3g}, eigenvector err {:.3g}",
                        indegree_err, harmonic_err, eigen_err)};
}

Outcome kappa_checks() {
    // 20 yes/yes, 15 no/no, 5 yes/no, 10 no/yes.
    std::vector<AnnotationPair> hand;
    const std::pair<int, std::pair<bool, bool>> blocks[] = {
        {20, {true, true}}, {15, {false, false}}, {5, {true, false}}, {10, {false, true}}};
    for (const auto& [count, labels] : blocks) {
        for (int i = 0; i < count; ++i) {
            hand.push_back({"t" + std::to_string(hand.size()), labels.first, labels.second});
        }
    }
    const auto k_hand = cohens_kappa(hand).kappa;

    std::mt19937_64 rng(6006);
    std::bernoulli_distribution a(0.3);
    std::bernoulli_distribution b(0.3);
    std::vector<AnnotationPair> sim;
    for (int i = 0; i < 10000; ++i) {
        sim.push_back({"s" + std::to_string(i), a(rng), b(rng)});
    }
    const auto k_sim = cohens_kappa(sim).kappa;
    return {std::abs(k_hand - 0.4) <= 1e-9 && std::abs(k_sim) < 0.1,
            fmt::format("hand example {:.12g}, independent annotators {:.4f} over 10000 pairs", k_hand, k_sim)};
}

Outcome follower_polarity_check() {
    const auto r = follower_polarity({100, 0, 14094, 12341});
    // Chi-square oracle: the closed form for 1 df is erfc(sqrt(x/2)).
    const double p_oracle = std::erfc(std::sqrt(r.chi_square / 2.0));
    const auto prop = follower_polarity({14094, 12341, 14094, 12341});
    const auto half = follower_polarity({1409, 1234, 14094, 12341});
    const bool ok = std::abs(r.chi_square - 87.56) <= 0.05 && std::abs(r.score - 4.484) <= 0.01 &&
                    std::abs(r.p_value - p_oracle) <= 1e-6 * std::max(p_oracle, 1e-300) + 1e-300 && r.significant &&
                    prop.score == 0.0 && half.score == 0.0;
    return {ok, fmt::format("chi2 {:.4f}, score {:.4f}, p {:.4g} (oracle {:.4g}); proportional scores {} and {}",
                            r.chi_square, r.score, r.p_value, p_oracle, prop.score, half.score)};
}

Outcome statistical_kernels() {
    double worst = 0.0;
    for (const auto& c : reference::kChiSquare) {
        worst = std::max(worst, std::abs(dist::chi_square_sf(c.x, c.df) - c.value));
    }
    for (const auto& c : reference::kStudentT) {
        worst = std::max(worst, std::abs(dist::t_two_sided_p(c.x, c.df) - c.value));
    }
    for (const auto& c : reference::kFisherF) {
        worst = std::max(worst, std::abs(dist::f_sf(c.x, c.df1, c.df2) - c.value));
    }
    for (const auto& c : reference::kStudentizedRange) {
        worst = std::max(worst, std::abs(dist::studentized_range_cdf(c.q, c.k, c.df) - c.value));
    }
    const std::vector<std::vector<double>> groups{{1, 2, 3}, {2, 3, 4}, {3, 4, 5}};
    const auto anova = one_way_anova(groups);
    const double q = dist::studentized_range_quantile(0.95, 3, 6);
    const bool ok = worst <= 1e-6 && std::abs(anova.f - 3.0) <= 1e-12 && std::abs(q - reference::kTableQ_3_6) <= 0.01;
    return {ok, fmt::format("max p-value error {:.3g}; ANOVA F = {:.12g}; q(0.95; 3, 6) = {:.4f} vs table {}", worst,
                            anova.f, q, reference::kTableQ_3_6)};
}

Outcome golden_run() {
    fixture::TempDir tmp;
    const auto config = fixture::config_into(tmp.path());
    std::ostringstream log;
    std::ostringstream warn;
    const auto start = Clock::now();
    run("all", config, log, warn);
    const double elapsed = seconds_since(start);

    const auto golden = fixture::artifacts(fixture::golden_dir());
    const auto produced = fixture::artifacts(tmp.path());
    std::size_t identical = 0;
    std::vector<std::string> differing;
    for (const auto& [name, bytes] : golden) {
        const auto it = produced.find(name);
        if (it != produced.end() && it->second == bytes) {
            ++identical;
        } else {
            differing.push_back(name);
        }
    }
    const bool manifest_ok = fixture::stable_manifest(fixture::golden_dir() / "manifest.json") ==
                             fixture::stable_manifest(tmp.path() / "manifest.json");
    const bool same_set = golden.size() == produced.size();

    // Shape of the fixture: per-event agreement and dangerous-user share.
    const std::map<std::string, std::pair<double, double>> targets{
        {"CAA_NRC", {0.92, 0.04}}, {"COVID19", {0.73, 0.01}}, {"FARMERS", {0.88, 0.06}}};
    bool shape_ok = true;
    std::string shape;
    auto column = [&](const std::string& file, const std::string& event, const std::string& col) {
        std::istringstream in(produced.at(file));
        std::string line;
        std::getline(in, line);
        std::vector<std::string> header;
        std::istringstream h(line);
        for (std::string cell; std::getline(h, cell, ',');) {
            header.push_back(cell);
        }
        const auto idx = static_cast<std::size_t>(std::find(header.begin(), header.end(), col) - header.begin());
        while (std::getline(in, line)) {
            std::vector<std::string> cells;
            std::istringstream r(line);
            for (std::string cell; std::getline(r, cell, ',');) {
                cells.push_back(cell);
            }
            if (!cells.empty() && cells[0] == event && idx < cells.size()) {
                return std::stod(cells[idx]);
            }
        }
        return std::nan("");
    };
    for (const auto& [event, target] : targets) {
        const double kappa = column("kappa.csv", event, "kappa");
        const double share = column("thresholds.csv", event, "dangerous_fraction");
        const bool ok = std::abs(kappa - target.first) <= 0.005 && std::abs(share - target.second) <= 0.005;
        shape_ok = shape_ok && ok;
        shape += fmt::format(" {} kappa {:.4f} share {:.2f}%;", event, kappa, 100.0 * share);
    }

    std::string diff;
    for (const auto& name : differing) {
        diff += " " + name;
    }
    return {identical == golden.size() && same_set && manifest_ok && shape_ok && elapsed < 30.0,
            fmt::format("{}/{} artifacts byte-identical, manifest {}, {:.2f} s;{}{}", identical, golden.size(),
                        manifest_ok ? "matches" : "differs", elapsed, shape,
                        differing.empty() ? "" : " differing:" + diff)};
}

Outcome scale_check() {
    constexpr std::size_t n = 100000;
    constexpr std::size_t m = 1000000;
    std::mt19937_64 rng(10010);
    std::uniform_int_distribution<std::uint32_t> node(0, n - 1);
    std::uniform_int_distribution<std::uint64_t> weight(1, 3);
    std::vector<std::string> nodes;
    std::vector<std::uint64_t> originals(n);
    nodes.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        nodes.push_back(fmt::format("u{:07d}", i));
        originals[i] = i % 4;
    }
    std::vector<RetweetEdge> edges;
    edges.reserve(m);
    while (edges.size() < m) {
        const auto a = node(rng);
        const auto b = node(rng);
        if (a != b) {
            edges.push_back({a, b, weight(rng)});
        }
    }
    const RetweetGraph g(std::move(nodes), std::move(originals), std::move(edges));
    DangerCounts counts;
    for (std::size_t i = 0; i < n; i += 25) {
        counts.per_user[g.nodes()[i]] = 1 + i % 5;
    }

    const auto start = Clock::now();
    const auto d = compute_dab(g, counts, 2);
    const double elapsed = seconds_since(start);
    const auto t = transition(adjacency(g));
    const std::size_t stored = t.matrix.nonzeros();
    const bool linear = stored <= g.edge_count() + g.node_count();
    return {elapsed < 5.0 && linear && d.raw.size() == n,
            fmt::format("{} nodes, {} edges: t=2 in {:.3f} s; transition stores {} nonzeros (edges + nodes = {})", n,
                        g.edge_count(), elapsed, stored, g.edge_count() + g.node_count())};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"transition stochasticity", transition_stochasticity},
        {"degroot convexity and consensus", degroot_convexity_consensus},
        {"worked diffusion example", worked_example},
        {"jenks exactness", jenks_exactness},
        {"centrality oracle", centrality_oracle},
        {"kappa", kappa_checks},
        {"follower polarity", follower_polarity_check},
        {"statistical kernels", statistical_kernels},
        {"end-to-end golden run", golden_run},
        {"scale check", scale_check},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
              << " acceptance criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
