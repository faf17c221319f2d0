#include "incite/annotate.hpp"
#include "incite/error.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace incite;

namespace {

std::vector<AnnotationPair> hand_pairs() {
    std::vector<AnnotationPair> p;
    auto add = [&](int n, bool a, bool b) {
        for (int i = 0; i < n; ++i) {
            p.push_back({std::to_string(p.size()), a, b});
        }
    };
    add(20, true, true);
    add(15, false, false);
    add(5, true, false);
    add(10, false, true);
    return p;
}

} // namespace

TEST_CASE("resolve_label") {
    CHECK(resolve_label({"t", true, true}));
    CHECK(!resolve_label({"t", true, false}));
    CHECK(!resolve_label({"t", false, true}));
    CHECK(!resolve_label({"t", false, false}));
}

TEST_CASE("cohens_kappa") {
    const auto pairs = hand_pairs();
    const auto k = cohens_kappa(pairs);
    CHECK(std::abs(k.kappa - 0.4) < 1e-9);
    CHECK(k.observed == doctest::Approx(0.7));
    CHECK(k.expected == doctest::Approx(0.5));
    CHECK(!k.degenerate);

    SUBCASE("perfect agreement") {
        std::vector<AnnotationPair> p{{"a", true, true}, {"b", false, false}};
        CHECK(cohens_kappa(p).kappa == 1.0);
    }
    SUBCASE("degenerate") {
        std::vector<AnnotationPair> p{{"a", false, false}, {"b", false, false}};
        const auto r = cohens_kappa(p);
        CHECK(r.degenerate);
        CHECK(r.kappa == 1.0);
    }
    SUBCASE("empty") {
        CHECK_THROWS_AS(cohens_kappa(std::vector<AnnotationPair>{}), InvalidArgument);
    }
    SUBCASE("symmetry and duplication") {
        std::mt19937_64 rng(3);
        std::bernoulli_distribution coin(0.4);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<AnnotationPair> p;
            for (int i = 0; i < 30; ++i) {
                p.push_back({std::to_string(i), coin(rng), coin(rng)});
            }
            auto swapped = p;
            for (auto& x : swapped) {
                std::swap(x.label_a, x.label_b);
            }
            auto doubled = p;
            doubled.insert(doubled.end(), p.begin(), p.end());
            const double k0 = cohens_kappa(p).kappa;
            CHECK(cohens_kappa(swapped).kappa == doctest::Approx(k0).epsilon(1e-12));
            CHECK(cohens_kappa(doubled).kappa == doctest::Approx(k0).epsilon(1e-12));
        }
    }
}

TEST_CASE("resolve_label is monotone") {
    for (int mask = 0; mask < 4; ++mask) {
        AnnotationPair p{"t", (mask & 1) != 0, (mask & 2) != 0};
        const bool before = resolve_label(p);
        for (int flip = 0; flip < 2; ++flip) {
            auto q = p;
            bool& label = flip == 0 ? q.label_a : q.label_b;
            if (!label) {
                label = true;
                CHECK((!before || resolve_label(q)));
            }
        }
    }
}

TEST_CASE("parse_annotations") {
    std::istringstream in(R"({"tweet_id":"1","label_a":true,"label_b":false})"
                          "\n"
                          R"({"tweet_id":"1","label_a":false,"label_b":false})"
                          "\n"
                          R"({"tweet_id":"2","label_a":true})"
                          "\n"
                          "{broken\n"
                          R"({"tweet_id":"3","label_a":true,"label_b":true})"
                          "\n");
    const auto f = parse_annotations(in);
    REQUIRE(f.pairs.records.size() == 2);
    CHECK(f.pairs.records[0].label_a);
    CHECK(f.single_annotated == 1);
    CHECK(f.pairs.skipped == 2);
}

TEST_CASE("danger_counts") {
    auto make = [](std::string id, std::string user, bool label) {
        Tweet t;
        t.id = std::move(id);
        t.user_id = std::move(user);
        t.danger_label = label;
        return t;
    };
    SUBCASE("none dangerous") {
        const std::vector<Tweet> tweets{make("1", "a", false), make("2", "b", false)};
        const auto c = danger_counts(tweets);
        CHECK(c.dangerous_users.empty());
        CHECK(c.per_user.at("a") == 0);
        CHECK(c.per_user.at("b") == 0);
    }
    SUBCASE("three of ten") {
        std::vector<Tweet> tweets;
        for (int i = 0; i < 10; ++i) {
            tweets.push_back(make(std::to_string(i), "u", i < 3));
        }
        const auto c = danger_counts(tweets);
        CHECK(c.per_user.at("u") == 3);
        CHECK(c.dangerous_users.count("u") == 1);
        CHECK(c.dangerous_tweets == 3);
    }
    SUBCASE("unresolved") {
        Tweet t;
        t.id = "x";
        t.user_id = "a";
        const std::vector<Tweet> tweets{t};
        CHECK_THROWS_AS(danger_counts(tweets), InvalidArgument);
    }
}
