#include "grover/exact_rank.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace grover {

int exact_integer_rank(std::size_t rows, std::size_t cols, const std::vector<std::int64_t>& entries) {
    using Int = boost::multiprecision::cpp_int;
    if (entries.size() != rows * cols) throw std::invalid_argument("exact_integer_rank: size mismatch");
    std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) a[r][c] = entries[r * cols + c];
    }

    Int prev = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t c = col + 1; c < cols; ++c) {
                // Exact: every entry stays a minor of the original matrix.
                a[r][c] = (a[rank][col] * a[r][c] - a[r][col] * a[rank][c]) / prev;
            }
            a[r][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return static_cast<int>(rank);
}

int exact_sign_rank(const SignMatrix& m) {
    if (m.entries.size() != m.rows * m.cols) throw std::invalid_argument("exact_sign_rank: size mismatch");
    std::vector<std::int64_t> values(m.entries.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (m.entries[i] != 1 && m.entries[i] != -1) throw std::invalid_argument("exact_sign_rank: entry not +-1");
        values[i] = m.entries[i];
    }
    return exact_integer_rank(m.rows, m.cols, values);
}

SignMatrix sign_matrix(const PureState& state, const Bipartition& split) {
    const Eigen::MatrixXd scaled = bipartition_matrix(state, split) * std::sqrt(static_cast<double>(state.dimension()));
    SignMatrix out;
    out.rows = static_cast<std::size_t>(scaled.rows());
    out.cols = static_cast<std::size_t>(scaled.cols());
    out.entries.resize(out.rows * out.cols);
    for (std::size_t r = 0; r < out.rows; ++r) {
        for (std::size_t c = 0; c < out.cols; ++c) {
            const double v = scaled(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            if (std::abs(std::abs(v) - 1.0) > 1e-9) {
                throw std::invalid_argument("sign_matrix: state is not equally weighted");
            }
            out.entries[r * out.cols + c] = v > 0 ? 1 : -1;
        }
    }
    return out;
}

}  // namespace grover
