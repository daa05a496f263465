#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "grover/state.hpp"

namespace grover {

using QubitMask = std::uint32_t;

/// One side of an A:B split of the register; bit i of `mask_a` selects qubit i.
struct Bipartition {
    int n;
    QubitMask mask_a;

    /// Validates that A is a nonempty proper subset of the n qubits.
    static Bipartition make(int n, QubitMask mask_a);
    /// Same split with qubit 0 moved to side A.
    Bipartition canonical() const;
    QubitMask mask_b() const { return ((QubitMask{1} << n) - 1) & ~mask_a; }
};

/// Numerical rank decision: sigma counts when sigma > rel_tol * sigma_1 * max(rows, cols).
/// Singular values within a factor `ambiguity_factor` of that threshold flag the decision.
struct RankPolicy {
    double rel_tol = 1e-10;
    double ambiguity_factor = 32.0;

    void validate() const;
};

/// Qubit-count caps for the exponential-time analyses.
struct AnalysisLimits {
    int max_qubits = 16;
    bool override_cap = false;

    void enforce(int n, const char* who) const;
};

struct RankResult {
    int rank = 0;
    bool ambiguous = false;
};

/// Reshapes the amplitudes into a 2^|A| x 2^|B| matrix. Row and column indices take
/// the A (resp. B) qubits in ascending qubit order, first qubit most significant.
Eigen::MatrixXd bipartition_matrix(const PureState& state, const Bipartition& split);

/// Rank decision over singular values sorted in descending order.
RankResult rank_from_singular_values(const Eigen::VectorXd& sigma, Eigen::Index rows, Eigen::Index cols,
                                     const RankPolicy& policy);

/// Rank of the reduced density matrix Tr_B |psi><psi|, i.e. the Schmidt rank across A:B.
RankResult reduced_rank(const PureState& state, const Bipartition& split, const RankPolicy& policy = {});

/// A tensor factor: the qubits it covers (ascending) and its normalized state over them.
struct Factor {
    std::vector<int> qubits;
    PureState state;
};

struct Factorization {
    /// Ordered by smallest member qubit.
    std::vector<Factor> factors;
    /// Largest Schmidt rank over each factor's internal bipartitions (1 for single qubits).
    std::vector<int> per_factor_chi;
    bool ambiguous = false;
};

/// Finest tensor-product factorization.
///
/// Greedy: take the smallest unassigned qubit q, search subsets S of the unassigned
/// qubits containing q by size and then by mask value, and split off the first S whose
/// S:rest reshaping has rank 1. Each factor is signed so its largest-magnitude
/// amplitude is positive; the leftover global sign goes on the first factor.
/// Throws InternalConsistencyError if the factors do not reproduce the input to 1e-9.
Factorization finest_factorization(const PureState& state, const RankPolicy& policy = {},
                                   const AnalysisLimits& limits = {});

struct SchmidtNumber {
    int chi = 1;
    bool ambiguous = false;
};

/// Maximum Schmidt number over all bipartitions, evaluated factor by factor.
SchmidtNumber max_schmidt_number(const PureState& state, const RankPolicy& policy = {},
                                 const AnalysisLimits& limits = {});

/// Cross-check: direct scan over all 2^{n-1} - 1 canonical bipartitions of the whole register.
SchmidtNumber max_schmidt_number_direct(const PureState& state, const RankPolicy& policy = {},
                                        const AnalysisLimits& limits = {});

/// log2 of the maximum Schmidt number.
double schmidt_measure(const PureState& state, const RankPolicy& policy = {}, const AnalysisLimits& limits = {});

/// Number of factors in the finest factorization.
int separable_degree(const PureState& state, const RankPolicy& policy = {}, const AnalysisLimits& limits = {});

struct EntanglementReport {
    int delta = 0;
    std::vector<Factor> factors;
    int chi = 1;
    double e_chi = 0.0;
    std::vector<int> per_factor_chi;
    bool ambiguous = false;
};

/// Factorization, separable degree and Schmidt numbers in one pass.
EntanglementReport analyze(const PureState& state, const RankPolicy& policy = {}, const AnalysisLimits& limits = {});

/// Rebuilds the full register state from factors covering all n qubits.
std::vector<double> reconstruct(int n, const std::vector<Factor>& factors);

}  // namespace grover
