#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ctp/evaluation.hpp"
#include "ctp/generator.hpp"
#include "fixtures.hpp"

using namespace ctp;

TEST_CASE("single certain edge evaluates to its weight with zero-width CI") {
    CtpSpec spec = fixtures::single_edge(3.0, 1.0);
    EvalReport report = evaluate(spec, uniform_policy(spec), 500, 7);
    CHECK(report.mean_cost == 3.0);
    CHECK(report.ci_lo == 3.0);
    CHECK(report.ci_hi == 3.0);
    CHECK(report.rollouts_used == 500);
    CHECK(report.rollouts_rejected == 0);
}

TEST_CASE("exact oracle fixtures") {
    CtpSpec one = fixtures::single_edge(3.0, 0.7);
    CHECK(exact_expected_cost(one, uniform_policy(one)) ==
          doctest::Approx(3.0).epsilon(1e-12));

    CtpSpec diamond = fixtures::diamond(1.0);
    CHECK(exact_expected_cost(diamond, uniform_policy(diamond)) == 6.5);

    Policy direct = uniform_policy(diamond);
    direct.node_probs[0] = {1.0, 0.0};
    CHECK(exact_expected_cost(diamond, direct) == 2.0);
}

TEST_CASE("oracle rejects oversized problems") {
    // a 14-node path has 13 edges, one past the enumeration bound
    std::vector<Node> nodes;
    std::vector<Edge> edges;
    for (int i = 0; i < 14; ++i) nodes.push_back({i, 0.1 * i, 0.0});
    for (int i = 0; i < 13; ++i) edges.push_back({i, i, i + 1, 1.0, 0.9});
    CtpSpec path(std::move(nodes), std::move(edges), 0, 13);
    CHECK_THROWS_AS(exact_expected_cost(path, uniform_policy(path)), OracleTooLargeError);
}

TEST_CASE("monte carlo mean stays within three standard errors of the oracle") {
    struct Case {
        CtpSpec spec;
        Policy policy;
    };
    std::vector<Case> cases;
    cases.push_back({fixtures::diamond(1.0), uniform_policy(fixtures::diamond(1.0))});
    cases.push_back({fixtures::diamond(0.5), uniform_policy(fixtures::diamond(0.5))});
    cases.push_back({fixtures::path3(0.8), uniform_policy(fixtures::path3(0.8))});
    {
        Policy skewed = uniform_policy(fixtures::diamond(1.0));
        skewed.node_probs[0] = {0.85, 0.15};
        cases.push_back({fixtures::diamond(1.0), skewed});
    }

    for (const auto& c : cases) {
        double exact = exact_expected_cost(c.spec, c.policy);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            EvalReport report = evaluate(c.spec, c.policy, 4000, seed);
            double se = (report.ci_hi - report.mean_cost) / 1.96;
            double margin = 3.0 * std::max(se, 1e-12);
            CHECK(std::abs(report.mean_cost - exact) <= margin);
            CHECK(report.ci_lo <= report.mean_cost);
            CHECK(report.mean_cost <= report.ci_hi);
        }
    }
}

TEST_CASE("rollout accounting and rejection rate") {
    CtpSpec spec = fixtures::diamond(0.5);
    EvalReport report = evaluate(spec, uniform_policy(spec), 20'000, 3);
    CHECK(report.rollouts_used + report.rollouts_rejected == 20'000);

    // enumeration: 9 of the 16 equiprobable instances have no s-t path
    double expected_rejected = 9.0 / 16.0;
    double freq = static_cast<double>(report.rollouts_rejected) / 20'000.0;
    double sigma = std::sqrt(expected_rejected * (1 - expected_rejected) / 20'000.0);
    CHECK(std::abs(freq - expected_rejected) < 4 * sigma);

    // every distance is bounded by twice the total weight
    CHECK(report.mean_cost <= 2.0 * total_weight(spec));
}

TEST_CASE("evaluate is bit-identical across thread counts and runs") {
    CtpSpec spec = generate_spec(15, 0.7, 42);
    Policy policy = uniform_policy(spec);
    EvalReport base = evaluate(spec, policy, 2000, 11, 1);
    for (unsigned threads : {1u, 2u, 4u, 7u}) {
        EvalReport report = evaluate(spec, policy, 2000, 11, threads);
        CHECK(report.mean_cost == base.mean_cost);
        CHECK(report.ci_lo == base.ci_lo);
        CHECK(report.ci_hi == base.ci_hi);
        CHECK(report.rollouts_used == base.rollouts_used);
        CHECK(report.rollouts_rejected == base.rollouts_rejected);
    }
}

TEST_CASE("evaluate input validation and infeasibility") {
    CtpSpec spec = fixtures::single_edge(3.0, 1.0);
    CHECK_THROWS_AS(evaluate(spec, uniform_policy(spec), 1, 0), std::invalid_argument);

    CtpSpec nearly_blocked = fixtures::single_edge(3.0, 1e-9);
    CHECK_THROWS_AS(evaluate(nearly_blocked, uniform_policy(nearly_blocked), 10, 0),
                    InfeasibleEvaluationError);
}

TEST_CASE("learning curve with one checkpoint matches learn plus evaluate") {
    CtpSpec spec = fixtures::diamond(0.9);
    LearnConfig config;
    config.iterations = 300;
    config.checkpoints = {300};
    config.seed = 5;

    LearningCurve curve = learning_curve(spec, config, 1000, 77);
    REQUIRE(curve.points.size() == 1);
    CHECK(curve.points[0].first == 300);

    LearnResult direct = learn(spec, config);
    EvalReport report =
        evaluate(spec, extract_policy(direct.posterior, ExtractMethod::MapSample), 1000, 77);
    CHECK(curve.points[0].second.mean_cost == report.mean_cost);
    CHECK(curve.points[0].second.rollouts_used == report.rollouts_used);
}

TEST_CASE("diamond learning curve improves from early to late checkpoints") {
    CtpSpec spec = fixtures::diamond(1.0);
    LearnConfig config;
    config.iterations = 5000;
    config.checkpoints = {10, 5000};
    config.seed = 2;

    LearningCurve curve = learning_curve(spec, config, 4000, 9);
    REQUIRE(curve.points.size() == 2);
    CHECK(curve.points[1].second.mean_cost <= curve.points[0].second.mean_cost);
    // iterations strictly increasing along the curve
    CHECK(curve.points[0].first < curve.points[1].first);
}

TEST_CASE("curve requires a checkpoint") {
    CtpSpec spec = fixtures::diamond(1.0);
    LearnConfig config;
    config.iterations = 10;
    CHECK_THROWS_AS(learning_curve(spec, config, 10, 0), std::invalid_argument);
}
