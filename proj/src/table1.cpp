#include "grover/table1.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace grover {
namespace {

int half_power(int qubits) { return 1 << (qubits / 2); }

int clamp_int(std::uint64_t v) { return static_cast<int>(std::min<std::uint64_t>(v, 1U << 30)); }

}  // namespace

std::string_view to_string(TableRow row) {
    switch (row) {
        case TableRow::one: return "1";
        case TableRow::odd: return "2p+1";
        case TableRow::power_of_two: return "2^q";
        case TableRow::mixed: return "2^q(2p+1)";
        case TableRow::out_of_table: return "out-of-table";
    }
    return "out-of-table";
}

std::string IntRange::str() const {
    if (lo == hi) return std::to_string(lo);
    return "{" + std::to_string(lo) + ".." + std::to_string(hi) + "}";
}

TableRow table_row(int n, std::uint64_t M) {
    if (M == 1) return TableRow::one;
    if (M % 2 == 1) return TableRow::odd;
    if (std::has_single_bit(M)) return TableRow::power_of_two;
    // M < 2^{n/2}  <=>  M^2 < 2^n
    const bool small = M < (std::uint64_t{1} << 32) && M * M < (std::uint64_t{1} << n);
    return small ? TableRow::mixed : TableRow::out_of_table;
}

IntRange set_a(int n, std::uint64_t M) { return {2, std::min(clamp_int(M + 1), half_power(n))}; }

IntRange set_a_prime(int n, std::uint64_t M) { return {2, std::min(clamp_int(M), half_power(n))}; }

IntRange set_b(int n, std::uint64_t M, int k) {
    return {2, std::min(clamp_int((M >> (k - 1)) + 1), half_power(n - k + 1))};
}

IntRange set_b_prime(int n, std::uint64_t M, int k) {
    return {2, std::min(clamp_int(M >> (k - 1)), half_power(n - k + 1))};
}

TraceClassification classify_trace(const DynamicsTrace& trace) {
    const int n = trace.params.n;
    const std::uint64_t M = trace.params.M;
    TraceClassification out{};
    out.row = table_row(n, M);
    out.final_cos_zero = trace.final_cos_zero;
    out.subrow_k = trace.first_oracle().report.delta;
    out.has_cell = true;

    const int k = out.subrow_k;
    const int q = std::countr_zero(M);
    const CellPrediction separable{{n, n}, {1, 1}};
    CellPrediction middle{};
    CellPrediction last_nonzero{};
    CellPrediction last_zero{};

    switch (out.row) {
        case TableRow::one:
            middle = {{1, 1}, {2, 2}};
            last_nonzero = middle;
            last_zero = separable;
            break;
        case TableRow::odd:
            middle = {{1, 1}, set_a(n, M)};
            last_nonzero = middle;
            last_zero = {{1, n - 1}, set_a_prime(n, M)};
            break;
        case TableRow::power_of_two:
        case TableRow::mixed:
            if (k == 1) {
                middle = {{1, 1}, set_a(n, M)};
                last_nonzero = middle;
                last_zero = {{1, n - 1}, set_a_prime(n, M)};
            } else if (out.row == TableRow::power_of_two && k == q + 1) {
                middle = {{k, k}, {2, 2}};
                last_nonzero = middle;
                last_zero = separable;
            } else if (k >= 2 && k <= q + 1) {
                middle = {{k, k}, set_b(n, M, k)};
                last_nonzero = middle;
                last_zero = {{k, n - 1}, set_b_prime(n, M, k)};
            } else {
                out.has_cell = false;
            }
            break;
        case TableRow::out_of_table:
            out.has_cell = false;
            break;
    }

    out.conforms = true;
    const std::size_t last = trace.steps.size() - 1;
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const StepRecord& s = trace.steps[i];
        CellPrediction cell = separable;
        if (i >= 2) cell = i < last ? middle : (trace.final_cos_zero ? last_zero : last_nonzero);
        const bool in_cell = cell.delta.contains(s.report.delta) && cell.chi.contains(s.report.chi);
        const bool ok = in_cell && (i < 2 || out.has_cell);
        out.steps.push_back(StepConformance{s.label, s.report.delta, s.report.chi, cell, ok});
        out.conforms = out.conforms && ok;
    }
    if (out.row == TableRow::out_of_table) out.conforms = true;
    return out;
}

}  // namespace grover
