#pragma once

#include <string_view>
#include <vector>

#include "grover/state.hpp"

namespace grover {

enum class TwoValueCategory {
    uniform,           // a = b, or M in {0, 2^n}
    lemma1_single,     // one amplitude is zero and the support is a single basis state
    lemma1_subcube,    // one amplitude is zero and the support is a subcube
    lemma1_entangled,  // one amplitude is zero, support is not a subcube
    rews,              // a = -b
    generic,           // ab != 0, a != +-b
};

std::string_view to_string(TwoValueCategory c);

/// Combinatorial structure of a real 2-value state, read off the marked set alone.
struct TwoValueClass {
    TwoValueCategory category = TwoValueCategory::generic;
    /// Qubits carrying a (|0> + |1>)/sqrt2 factor: the nonzero pattern is invariant under flipping them.
    std::vector<int> free_qubits;
    /// Qubits constant over the support (only for the zero-amplitude categories).
    std::vector<int> fixed_qubits;
    /// Qubits left after removing the free ones, ascending.
    std::vector<int> residual_qubits;
    /// Projection of the marked set onto `residual_qubits`, ascending, deduplicated.
    std::vector<BasisIndex> residual_marked;
    int predicted_delta_lower_bound = 1;
    /// True when the lower bound is the exact separable degree (uniform, subcube and generic cases).
    bool prediction_exact = false;
};

/// Absolute tolerance used to decide a = b, a = -b, a = 0 and b = 0.
inline constexpr double kAmplitudeTieTolerance = 1e-12;

TwoValueClass classify_two_value(const TwoValueSpec& spec, double tie_tolerance = kAmplitudeTieTolerance);

/// Qubits whose bit flip maps the set onto itself.
std::vector<int> flip_invariant_qubits(const MarkedSet& set);

/// True when the set is {x : bits outside some free subset are fixed}.
bool is_subcube(const MarkedSet& set);

/// True when the set is {x : qubit i of x equals c} for some qubit i and bit c.
bool is_half_space(const MarkedSet& set);

}  // namespace grover
