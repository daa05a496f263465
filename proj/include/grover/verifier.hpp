#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grover/dynamics.hpp"
#include "grover/entanglement.hpp"

namespace grover {

enum class CheckId {
    lemma1,
    lemma2_count,
    thm3,
    thm4,
    thm5,
    thm6,
    thm7,
    lemma8,
    thm9,
    thm10,
    thm11,
    thm12,
    table1,
};

std::string_view to_string(CheckId id);
std::optional<CheckId> parse_check_id(std::string_view text);

struct Exhaustive {};
struct Sampled {
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
};

struct CheckSpec {
    CheckId id = CheckId::table1;
    int n = 3;
    /// Restrict to one solution-set size.
    std::optional<std::uint64_t> m_filter;
    bool exhaustive = true;
    Sampled sampling{};
};

struct CheckOptions {
    RankPolicy policy{};
    AnalysisLimits limits{};
    int jobs = 1;
    /// Largest enumeration accepted before a ResourceLimitError.
    std::uint64_t max_instances = 250'000;
};

struct Violation {
    std::vector<BasisIndex> marked;
    std::string step;
    std::string observed;
    std::string predicted;
};

enum class Verdict { pass, fail, pass_with_ambiguity };
std::string_view to_string(Verdict v);

struct CheckResult {
    CheckId id;
    int n;
    std::uint64_t instances_tested = 0;
    /// Ordered by instance index.
    std::vector<Violation> violations;
    std::uint64_t ambiguous_count = 0;
    Verdict verdict = Verdict::pass;
    /// Check-specific tallies (row counts, brute/formula counts, literal-form counts).
    std::map<std::string, std::int64_t> summary;
};

/// Runs one finite-model check of a structural claim over enumerated or sampled marked sets.
CheckResult check(const CheckSpec& spec, const CheckOptions& options = {});

/// (a, b) with a b != 0 and a != +-b for an n-qubit 2-value state with M marked entries.
///
/// Uses the amplitudes after one Grover iteration when those are generic; at
/// M = 2^{n-2} and M >= 2^{n-1} they are not, and a fixed-angle normalized pair
/// a = cos(phi) / sqrt(2^n - M), b = sin(phi) / sqrt(M) is used instead.
AmplitudePair generic_amplitudes(int n, std::uint64_t M);

struct SeparableCount {
    std::uint64_t brute_count = 0;
    std::uint64_t formula_count = 0;
    std::uint64_t total = 0;
    std::uint64_t ambiguous = 0;
};

/// Brute-force number of M-subsets whose generic 2-value state is at least 2-separable,
/// next to n * C(2^{n-1}, M/2). M must be even.
SeparableCount count_2separable(int n, std::uint64_t M, const CheckOptions& options = {});

struct FractionRow {
    int n;
    SeparableCount count;
    double fraction;
};

struct FractionReport {
    std::uint64_t M;
    std::vector<FractionRow> rows;
    /// Fraction strictly decreases in n over the rows with M < 2^{n/2}.
    bool strictly_decreasing;
};

FractionReport fraction_report(int n_lo, int n_hi, std::uint64_t M, const CheckOptions& options = {});

}  // namespace grover
