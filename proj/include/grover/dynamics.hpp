#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grover/entanglement.hpp"
#include "grover/state.hpp"

namespace grover {

enum class StepKind { initial, hadamard, oracle, diffusion };

struct StepLabel {
    StepKind kind;
    /// Iteration index: 0 for initial/hadamard, k for oracle(k)/diffusion(k).
    int k;

    std::string name() const;  // "initial", "hadamard", "oracle", "diffusion"
    std::string str() const;   // name with "(k)" for oracle and diffusion
    friend bool operator==(const StepLabel&, const StepLabel&) = default;
};

/// One state of |0..0> -> H -> O -> P -> ... -> O -> P.
struct StepRecord {
    StepLabel label;
    /// Amplitude on unmarked / marked basis states; absent for |0..0>, which is not 2-valued.
    std::optional<double> a;
    std::optional<double> b;
    double success_probability = 0.0;
    EntanglementReport report;
    /// Max |closed form - operator-applied| over amplitudes.
    double closed_form_deviation = 0.0;
};

struct DynamicsTrace {
    GroverParams params;
    MarkedSet marked;
    /// 2 + 2R records.
    std::vector<StepRecord> steps;
    /// |cos[(2R+1) theta / 2]| <= kCosZeroTolerance.
    bool final_cos_zero = false;

    bool ambiguous() const;
    const StepRecord& first_oracle() const { return steps.at(2); }
    const StepRecord& final_step() const { return steps.back(); }
};

inline constexpr double kCosZeroTolerance = 1e-12;

struct DynamicsOptions {
    RankPolicy policy{};
    AnalysisLimits limits{};
    /// Worker budget for the per-step entanglement reports.
    int jobs = 1;
};

/// Whether cos[(2R+1) theta / 2] vanishes within kCosZeroTolerance.
bool final_cos_is_zero(const GroverParams& params);

/// Runs the full state sequence, building every state both by operator application and
/// in closed form. Entanglement is measured on the operator-applied states.
/// Requires 1 <= M <= 2^{n-1} - 1.
DynamicsTrace run_dynamics(int n, const MarkedSet& marked, const DynamicsOptions& options = {});

}  // namespace grover
