#include <doctest.h>

#include <cmath>

#include "grover/combinatorics.hpp"
#include "grover/dynamics.hpp"

using namespace grover;

TEST_CASE("three-qubit single-marked trace") {
    const auto t = run_dynamics(3, MarkedSet(3, {0}));
    REQUIRE(t.steps.size() == 6);
    const char* labels[] = {"initial", "hadamard", "oracle(1)", "diffusion(1)", "oracle(2)", "diffusion(2)"};
    for (std::size_t i = 0; i < 6; ++i) CHECK(t.steps[i].label.str() == labels[i]);
    CHECK_FALSE(t.steps[0].a.has_value());
    CHECK(t.steps[0].report.delta == 3);
    CHECK(t.steps[1].report.delta == 3);
    CHECK(std::abs(t.steps[3].success_probability - 25.0 / 32) <= 1e-12);
    CHECK(std::abs(t.final_step().success_probability - 121.0 / 128) <= 1e-12);
    for (std::size_t i = 2; i < 6; ++i) {
        CHECK(t.steps[i].report.delta == 1);
        CHECK(t.steps[i].report.chi == 2);
        CHECK(t.steps[i].closed_form_deviation <= 1e-12);
    }
    CHECK_FALSE(t.final_cos_zero);
    CHECK_FALSE(t.ambiguous());
}

TEST_CASE("subcube of half-size-over-two ends fully separable with certainty") {
    const auto t = run_dynamics(4, MarkedSet(4, {0, 1, 2, 3}));
    REQUIRE(t.steps.size() == 4);
    CHECK(t.final_cos_zero);
    const auto& f = t.final_step();
    CHECK(f.report.delta == 4);
    CHECK(f.report.chi == 1);
    CHECK(std::abs(f.success_probability - 1.0) <= 1e-12);
    CHECK(t.first_oracle().report.delta == 3);
}

TEST_CASE("run_dynamics rejects sizes outside the algorithm's range") {
    CHECK_THROWS_AS(run_dynamics(3, MarkedSet(3, {0, 1, 2, 3})), std::invalid_argument);
    CHECK_THROWS_AS(run_dynamics(3, MarkedSet(3, {})), std::invalid_argument);
    CHECK_THROWS_AS(run_dynamics(3, MarkedSet(4, {0})), std::invalid_argument);
}

TEST_CASE("cos-zero detection") {
    CHECK(final_cos_is_zero(grover_params(4, 4)));
    CHECK_FALSE(final_cos_is_zero(grover_params(4, 1)));
    CHECK(final_cos_is_zero(grover_params(6, 16)));
}

TEST_CASE("reports do not depend on the worker count") {
    auto rng = instance_rng(3, 0);
    const MarkedSet marked(6, random_subset(6, 5, rng));
    const auto a = run_dynamics(6, marked, DynamicsOptions{{}, {}, 1});
    const auto b = run_dynamics(6, marked, DynamicsOptions{{}, {}, 4});
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t i = 0; i < a.steps.size(); ++i) {
        CHECK(a.steps[i].report.delta == b.steps[i].report.delta);
        CHECK(a.steps[i].report.chi == b.steps[i].report.chi);
        CHECK(a.steps[i].success_probability == b.steps[i].success_probability);
        CHECK(a.steps[i].closed_form_deviation == b.steps[i].closed_form_deviation);
    }
}

TEST_CASE("trace length is 2 + 2R and the success probability ends above one half") {
    for (int n = 2; n <= 8; ++n) {
        const std::uint64_t half = std::uint64_t{1} << (n - 1);
        for (std::uint64_t M = 1; M < half; M += 3) {
            auto rng = instance_rng(n, M);
            const auto t = run_dynamics(n, MarkedSet(n, random_subset(n, M, rng)));
            CHECK(t.steps.size() == static_cast<std::size_t>(2 + 2 * t.params.R));
            CHECK(t.final_step().success_probability >= 0.5);
            for (const auto& s : t.steps) CHECK(s.closed_form_deviation <= 1e-10);
        }
    }
}

TEST_CASE("success probability increases across diffusion steps") {
    for (int n = 3; n <= 7; ++n) {
        const std::uint64_t half = std::uint64_t{1} << (n - 1);
        for (std::uint64_t M = 1; M < half; M += 2) {
            auto rng = instance_rng(99, M);
            const auto t = run_dynamics(n, MarkedSet(n, random_subset(n, M, rng)));
            double prev = t.steps[1].success_probability;
            for (std::size_t i = 3; i < t.steps.size(); i += 2) {
                CHECK(t.steps[i].success_probability > prev);
                prev = t.steps[i].success_probability;
            }
        }
    }
}
