#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "grover/dynamics.hpp"

namespace grover {

/// Row of the entanglement-dynamics table, selected by the shape of M.
enum class TableRow {
    one,           // M = 1
    odd,           // M = 2p + 1, p >= 1
    power_of_two,  // M = 2^q, q >= 1
    mixed,         // M = 2^q (2p + 1) < 2^{n/2}, p, q >= 1
    out_of_table,  // M = 2^q (2p + 1) >= 2^{n/2}, p, q >= 1
};

std::string_view to_string(TableRow row);

TableRow table_row(int n, std::uint64_t M);

/// Closed integer interval [lo, hi]; empty when lo > hi.
struct IntRange {
    int lo;
    int hi;

    bool contains(int v) const { return lo <= v && v <= hi; }
    std::string str() const;
    friend bool operator==(const IntRange&, const IntRange&) = default;
};

/// Predicted (delta, chi) for one table cell.
struct CellPrediction {
    IntRange delta;
    IntRange chi;
};

struct StepConformance {
    StepLabel label;
    int delta;
    int chi;
    CellPrediction predicted;
    bool conforms;
};

struct TraceClassification {
    TableRow row;
    /// Separable degree of the first oracle state; selects the sub-row for even M.
    int subrow_k;
    bool final_cos_zero;
    /// False when the sub-row k has no cell in the table (k > q + 1).
    bool has_cell;
    std::vector<StepConformance> steps;
    /// Every step lies in its predicted cell. Always true for out-of-table rows.
    bool conforms;
};

/// chi interval {2, ..., min(M + 1, 2^{floor(n/2)})}.
IntRange set_a(int n, std::uint64_t M);
/// chi interval {2, ..., min(M, 2^{floor(n/2)})}.
IntRange set_a_prime(int n, std::uint64_t M);
/// chi interval {2, ..., min(M / 2^{k-1} + 1, 2^{floor((n-k+1)/2)})}.
IntRange set_b(int n, std::uint64_t M, int k);
/// chi interval {2, ..., min(M / 2^{k-1}, 2^{floor((n-k+1)/2)})}.
IntRange set_b_prime(int n, std::uint64_t M, int k);

/// Places a complete trace in the table and checks every step against its cell.
TraceClassification classify_trace(const DynamicsTrace& trace);

}  // namespace grover
