#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "grover/entanglement.hpp"

namespace grover {

/// Dense row-major matrix with entries in {+1, -1}.
struct SignMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::int8_t> entries;

    std::int8_t operator()(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

/// Rank over the rationals by fraction-free (Bareiss) elimination on arbitrary-precision integers.
int exact_integer_rank(std::size_t rows, std::size_t cols, const std::vector<std::int64_t>& entries);

/// Exact rank of a +-1 matrix. Throws std::invalid_argument on any other entry.
int exact_sign_rank(const SignMatrix& m);

/// Reshapes an equally weighted state (amplitudes +-2^{-n/2}) into the sign matrix of a split.
SignMatrix sign_matrix(const PureState& state, const Bipartition& split);

}  // namespace grover
