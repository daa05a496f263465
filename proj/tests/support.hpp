#pragma once

// Independent reference implementations used only by the tests: ranks by Gaussian
// elimination with partial pivoting, separable degree by enumerating set partitions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "grover/state.hpp"

namespace testing_support {

using grover::PureState;

inline int gauss_rank(std::vector<std::vector<double>> m, double tol = 1e-9) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (std::abs(m[r][c]) > std::abs(m[pivot][c])) pivot = r;
        }
        if (std::abs(m[pivot][c]) <= tol) continue;
        std::swap(m[pivot], m[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            const double f = m[r][c] / m[rank][c];
            for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

// Rank of the reshaping with rows indexed by the qubits in `mask` (bit i = qubit i).
inline int split_rank(const PureState& s, std::uint32_t mask) {
    const int n = s.n();
    std::vector<int> a;
    std::vector<int> b;
    for (int q = 0; q < n; ++q) ((mask >> q) & 1U ? a : b).push_back(q);
    std::vector<std::vector<double>> m(std::size_t{1} << a.size(), std::vector<double>(std::size_t{1} << b.size()));
    for (std::uint64_t x = 0; x < s.dimension(); ++x) {
        std::size_t r = 0;
        std::size_t c = 0;
        for (int q : a) r = (r << 1) | static_cast<std::size_t>(grover::qubit_value(x, n, q));
        for (int q : b) c = (c << 1) | static_cast<std::size_t>(grover::qubit_value(x, n, q));
        m[r][c] = s[x];
    }
    return gauss_rank(std::move(m));
}

inline int brute_chi(const PureState& s) {
    const std::uint32_t full = (1U << s.n()) - 1;
    int best = 1;
    for (std::uint32_t mask = 1; mask < full; ++mask) best = std::max(best, split_rank(s, mask));
    return best;
}

// Largest number of blocks in a qubit partition whose every block splits off with rank 1.
inline int brute_delta(const PureState& s) {
    const int n = s.n();
    const std::uint32_t full = (1U << n) - 1;
    std::vector<char> separable(full + 1, 0);
    separable[full] = 1;
    for (std::uint32_t mask = 1; mask < full; ++mask) separable[mask] = split_rank(s, mask) == 1;
    int best = 1;
    std::function<void(std::uint32_t, int)> go = [&](std::uint32_t remaining, int blocks) {
        if (remaining == 0) {
            best = std::max(best, blocks);
            return;
        }
        const std::uint32_t low = remaining & (~remaining + 1);
        const std::uint32_t rest = remaining & ~low;
        for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
            const std::uint32_t block = sub | low;
            if (separable[block]) go(remaining & ~block, blocks + 1);
            if (sub == 0) break;
        }
    };
    go(full, 0);
    return best;
}

inline PureState random_state(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> v(std::size_t{1} << n);
    for (auto& x : v) x = g(rng);
    return PureState::normalized(n, std::move(v), 1e300);
}

// Applies a real rotation by `angle` on one qubit.
inline PureState rotate_qubit(const PureState& s, int qubit, double angle) {
    const int n = s.n();
    const std::uint64_t bit = std::uint64_t{1} << grover::bit_position(n, qubit);
    std::vector<double> out(s.amplitudes().begin(), s.amplitudes().end());
    const double c = std::cos(angle);
    const double sn = std::sin(angle);
    for (std::uint64_t x = 0; x < s.dimension(); ++x) {
        if (x & bit) continue;
        const double u = s[x];
        const double w = s[x | bit];
        out[x] = c * u - sn * w;
        out[x | bit] = sn * u + c * w;
    }
    return PureState::normalized(n, std::move(out), 1e-9);
}

inline PureState basis_state(int n, std::uint64_t x) {
    std::vector<double> v(std::size_t{1} << n, 0.0);
    v[x] = 1.0;
    return PureState(n, std::move(v));
}

}  // namespace testing_support
