#include "grover/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace grover {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    boost::multiprecision::uint128_t acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i;
        if (acc > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("binomial: overflow");
    }
    return static_cast<std::uint64_t>(acc);
}

std::vector<std::vector<BasisIndex>> all_subsets(int n, std::uint64_t M) {
    if (n < 1 || n > 6) throw std::invalid_argument("all_subsets: need 1 <= n <= 6");
    const unsigned dim = 1U << n;
    if (M > dim) throw std::invalid_argument("all_subsets: M exceeds 2^n");
    std::vector<std::vector<BasisIndex>> out;
    out.reserve(static_cast<std::size_t>(binomial(dim, M)));
    if (M == 0) {
        out.emplace_back();
        return out;
    }
    const auto emit = [&](std::uint64_t mask) {
        std::vector<BasisIndex> s;
        s.reserve(M);
        for (; mask != 0; mask &= mask - 1) s.push_back(static_cast<BasisIndex>(std::countr_zero(mask)));
        out.push_back(std::move(s));
    };
    if (M == dim) {
        emit(dim == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << dim) - 1);
        return out;
    }
    // Gosper's hack over dim-bit masks; M < dim so the first mask fits.
    std::uint64_t v = (std::uint64_t{1} << M) - 1;
    const std::uint64_t last = v << (dim - M);
    while (true) {
        emit(v);
        if (v == last) break;
        const std::uint64_t t = v | (v - 1);
        v = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
    }
    return out;
}

std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    while (true) {
        const std::uint64_t r = rng();
        if (r < limit) return r % bound;
    }
}

std::vector<BasisIndex> random_subset(int n, std::uint64_t M, std::mt19937_64& rng) {
    const std::uint64_t dim = std::uint64_t{1} << n;
    if (M > dim) throw std::invalid_argument("random_subset: M exceeds 2^n");
    std::set<BasisIndex> chosen;
    for (std::uint64_t j = dim - M; j < dim; ++j) {
        const BasisIndex t = uniform_below(rng, j + 1);
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    return {chosen.begin(), chosen.end()};
}

}  // namespace grover
