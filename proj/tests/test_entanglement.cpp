#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "grover/combinatorics.hpp"
#include "grover/entanglement.hpp"
#include "grover/errors.hpp"
#include "support.hpp"

using namespace grover;
using testing_support::basis_state;
using testing_support::brute_chi;
using testing_support::brute_delta;
using testing_support::random_state;

namespace {

PureState bell() { return PureState(2, {M_SQRT1_2, 0.0, 0.0, M_SQRT1_2}); }

PureState ghz(int n) {
    std::vector<double> v(std::size_t{1} << n, 0.0);
    v.front() = M_SQRT1_2;
    v.back() = M_SQRT1_2;
    return PureState(n, std::move(v));
}

// Product of random factors over a random qubit partition, then qubits permuted into place.
PureState planted_product(int n, std::mt19937_64& rng) {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    PureState acc = random_state(1 + static_cast<int>(rng() % 2), rng);
    while (acc.n() < n) {
        const int size = std::min(n - acc.n(), 1 + static_cast<int>(rng() % 3));
        acc = tensor_product(acc, random_state(size, rng));
    }
    if (acc.n() > n) return random_state(n, rng);
    std::vector<double> out(acc.dimension());
    for (std::uint64_t x = 0; x < acc.dimension(); ++x) {
        std::uint64_t y = 0;
        for (int q = 0; q < n; ++q) {
            if (qubit_value(x, n, q)) y |= std::uint64_t{1} << bit_position(n, order[static_cast<std::size_t>(q)]);
        }
        out[y] = acc[x];
    }
    return PureState(n, std::move(out));
}

}  // namespace

TEST_CASE("small reference states") {
    const auto bell0 = tensor_product(bell(), basis_state(1, 0));
    const auto r = analyze(bell0);
    CHECK(r.delta == 2);
    CHECK(r.chi == 2);
    CHECK(r.e_chi == doctest::Approx(1.0));
    REQUIRE(r.factors.size() == 2);
    CHECK(r.factors[0].qubits == std::vector<int>{0, 1});
    CHECK(r.factors[1].qubits == std::vector<int>{2});
    CHECK(r.per_factor_chi == std::vector<int>{2, 1});

    const auto u = analyze(make_uniform(3));
    CHECK(u.delta == 3);
    CHECK(u.chi == 1);
    CHECK(u.e_chi == 0.0);

    const auto g = analyze(ghz(4));
    CHECK(g.delta == 1);
    CHECK(g.chi == 2);
}

TEST_CASE("single-marked REWS has Schmidt number two") {
    const double amp = 1.0 / std::sqrt(8.0);
    const auto s = two_value_state({MarkedSet(3, {0}), amp, -amp});
    const auto r = analyze(s);
    CHECK(r.delta == 1);
    CHECK(r.chi == 2);
}

TEST_CASE("finest factorization agrees with the brute-force oracle") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const auto s = planted_product(n, rng);
        CAPTURE(n);
        const auto r = analyze(s);
        CHECK_FALSE(r.ambiguous);
        CHECK(r.delta == brute_delta(s));
        CHECK(r.chi == brute_chi(s));
        CHECK(max_schmidt_number_direct(s).chi == r.chi);
        CHECK(max_abs_difference(PureState(n, reconstruct(n, r.factors)), s) <= 1e-9);
    }
}

TEST_CASE("two-value states agree with the brute-force oracle") {
    for (int n = 2; n <= 4; ++n) {
        const std::uint64_t dim = std::uint64_t{1} << n;
        for (std::uint64_t M = 1; M < dim; ++M) {
            const double a = 0.3 / std::sqrt(static_cast<double>(dim - M));
            const double b = std::sqrt(1.0 - 0.09) / std::sqrt(static_cast<double>(M));
            for (const auto& set : all_subsets(n, M)) {
                for (const double sign : {1.0, -1.0}) {
                    const auto s = two_value_state({MarkedSet(n, set), a, sign * b});
                    const auto r = analyze(s);
                    CHECK(r.delta == brute_delta(s));
                    CHECK(r.chi == brute_chi(s));
                }
            }
        }
    }
}

TEST_CASE("factors are ordered, cover the register and carry positive leading amplitudes") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 4);
        const auto f = finest_factorization(planted_product(n, rng));
        std::vector<int> covered;
        int prev_first = -1;
        for (std::size_t i = 0; i < f.factors.size(); ++i) {
            const auto& fac = f.factors[i];
            CHECK(std::is_sorted(fac.qubits.begin(), fac.qubits.end()));
            CHECK(fac.qubits.front() > prev_first);
            prev_first = fac.qubits.front();
            covered.insert(covered.end(), fac.qubits.begin(), fac.qubits.end());
            if (i == 0) continue;
            const auto amps = fac.state.amplitudes();
            const auto big = std::max_element(amps.begin(), amps.end(),
                                              [](double x, double y) { return std::abs(x) < std::abs(y); });
            CHECK(*big > 0.0);
        }
        std::sort(covered.begin(), covered.end());
        std::vector<int> all(static_cast<std::size_t>(n));
        std::iota(all.begin(), all.end(), 0);
        CHECK(covered == all);
    }
}

TEST_CASE("Schmidt number is multiplicative over tensor products") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        const int n1 = 1 + static_cast<int>(rng() % 5);
        const int n2 = 1 + static_cast<int>(rng() % 5);
        const auto x = planted_product(n1, rng);
        const auto y = planted_product(n2, rng);
        const auto xy = tensor_product(x, y);
        const auto rx = analyze(x);
        const auto ry = analyze(y);
        const auto rxy = analyze(xy);
        CHECK(rxy.chi == rx.chi * ry.chi);
        CHECK(rxy.delta == rx.delta + ry.delta);
    }
}

TEST_CASE("local rotations leave delta and chi unchanged") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        auto s = planted_product(n, rng);
        const auto before = analyze(s);
        for (int q = 0; q < n; ++q) s = testing_support::rotate_qubit(s, q, angle(rng));
        const auto after = analyze(s);
        CHECK(after.delta == before.delta);
        CHECK(after.chi == before.chi);
    }
}

TEST_CASE("chi bounds and the chi = 1 <=> fully separable equivalence") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 7);
        const auto s = trial % 2 ? random_state(n, rng) : planted_product(n, rng);
        const auto r = analyze(s);
        CHECK(r.chi <= (1 << (n / 2)));
        CHECK((r.chi == 1) == (r.delta == n));
        CHECK(r.e_chi == doctest::Approx(std::log2(r.chi)));
        CHECK(separable_degree(s) == r.delta);
        CHECK(max_schmidt_number(s).chi == r.chi);
        CHECK(schmidt_measure(s) == doctest::Approx(r.e_chi));
    }
}

TEST_CASE("generic random states are fully entangled with maximal chi") {
    std::mt19937_64 rng(4);
    for (int n = 2; n <= 8; ++n) {
        const auto r = analyze(random_state(n, rng));
        CHECK(r.delta == 1);
        CHECK(r.chi == (1 << (n / 2)));
    }
}

TEST_CASE("reduced rank on explicit splits") {
    const auto s = tensor_product(bell(), bell());
    CHECK(reduced_rank(s, Bipartition::make(4, 0b0011)).rank == 1);
    CHECK(reduced_rank(s, Bipartition::make(4, 0b0101)).rank == 4);
    CHECK(reduced_rank(s, Bipartition::make(4, 0b0001)).rank == 2);
    const auto m = bipartition_matrix(s, Bipartition::make(4, 0b0011));
    CHECK(m.rows() == 4);
    CHECK(m.cols() == 4);
}

TEST_CASE("bipartitions are validated") {
    CHECK_THROWS_AS(Bipartition::make(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(Bipartition::make(3, 0b111), std::invalid_argument);
    CHECK_THROWS_AS(Bipartition::make(3, 0b1000), std::invalid_argument);
    const auto b = Bipartition::make(3, 0b110).canonical();
    CHECK(b.mask_a == 0b001);
    CHECK(b.mask_b() == 0b110);
}

TEST_CASE("rank decisions near the threshold are flagged") {
    const RankPolicy policy;
    Eigen::VectorXd sigma(3);
    sigma << 1.0, 0.5, 1e-20;
    auto r = rank_from_singular_values(sigma, 4, 4, policy);
    CHECK(r.rank == 2);
    CHECK_FALSE(r.ambiguous);
    sigma << 1.0, 0.5, 4e-10;  // threshold is 4e-10
    r = rank_from_singular_values(sigma, 4, 4, policy);
    CHECK(r.ambiguous);
    CHECK_THROWS_AS((RankPolicy{-1.0, 32.0}.validate()), std::invalid_argument);
}

TEST_CASE("analysis caps raise resource-limit errors") {
    CHECK_THROWS_AS(AnalysisLimits{}.enforce(17, "test"), ResourceLimitError);
    CHECK_NOTHROW(AnalysisLimits{}.enforce(16, "test"));
    CHECK_NOTHROW((AnalysisLimits{20, false}.enforce(18, "test")));
    CHECK_THROWS_AS((AnalysisLimits{30, true}.enforce(25, "test")), ResourceLimitError);
}

TEST_CASE("emitted factors cannot be split further") {
    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 80; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const auto f = finest_factorization(planted_product(n, rng));
        for (const auto& fac : f.factors) {
            const int m = static_cast<int>(fac.qubits.size());
            if (m < 2) continue;
            for (std::uint32_t mask = 1; mask < (1U << m) - 1; ++mask) {
                CHECK(testing_support::split_rank(fac.state, mask) >= 2);
            }
        }
    }
}
