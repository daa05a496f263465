#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "grover/marked_set.hpp"

namespace grover {

/// Largest register the state vector routines accept.
inline constexpr int kMaxStateQubits = 30;

/// Normalization tolerance enforced on every constructed state.
inline constexpr double kNormTolerance = 1e-12;

/// Real pure state of an n-qubit register.
///
/// Amplitudes are indexed by the basis integer x. Qubit i of |x0 x1 ... x(n-1)>
/// lives at bit position n-1-i of x, so qubit 0 is the most significant bit.
class PureState {
public:
    /// Validates dimension (2^n) and unit norm within kNormTolerance.
    PureState(int n, std::vector<double> amplitudes);

    /// Rescales to unit norm; rejects the zero vector and norms off by more than `tolerance`.
    static PureState normalized(int n, std::vector<double> amplitudes, double tolerance);

    int n() const { return n_; }
    std::size_t dimension() const { return amps_.size(); }
    std::span<const double> amplitudes() const { return amps_; }
    double operator[](BasisIndex x) const { return amps_[x]; }

    double norm() const;

    friend bool operator==(const PureState&, const PureState&) = default;

private:
    struct Unchecked {};
    PureState(Unchecked, int n, std::vector<double> amplitudes);

    friend PureState apply_oracle(const PureState&, const MarkedSet&);
    friend PureState apply_diffusion(const PureState&);
    friend PureState apply_hadamard_all(const PureState&);

    int n_;
    std::vector<double> amps_;
};

/// Bit position of qubit `qubit` inside a basis index of an n-qubit register.
constexpr int bit_position(int n, int qubit) { return n - 1 - qubit; }

constexpr int qubit_value(BasisIndex x, int n, int qubit) {
    return static_cast<int>((x >> bit_position(n, qubit)) & 1U);
}

/// Amplitudes of a real 2-value state: `a` off the marked set, `b` on it.
struct TwoValueSpec {
    MarkedSet marked;
    double a;
    double b;
};

struct GroverParams {
    int n;
    std::uint64_t M;
    /// cos(theta/2) = sqrt((2^n - M) / 2^n), theta/2 in (0, pi/4].
    double theta;
    /// Optimal iteration count.
    int R;
};

/// Closed-form (unmarked, marked) amplitude pair.
struct AmplitudePair {
    double a;
    double b;
};

/// |0...0>.
PureState make_zero(int n);

/// H^{(x)n}|0...0>: every amplitude 2^{-n/2}.
PureState make_uniform(int n);

PureState two_value_state(const TwoValueSpec& spec);

GroverParams grover_params(int n, std::uint64_t M);

/// Amplitudes of the state after k Grover iterations.
AmplitudePair iteration_amplitudes(const GroverParams& params, int k);

/// Amplitudes of the state after the k-th oracle call (k >= 1).
AmplitudePair oracle_amplitudes(const GroverParams& params, int k);

PureState iteration_state(const GroverParams& params, const MarkedSet& marked, int k);
PureState oracle_state(const GroverParams& params, const MarkedSet& marked, int k);

/// Sign flip on the marked amplitudes; every other amplitude is copied bit-for-bit.
PureState apply_oracle(const PureState& state, const MarkedSet& marked);

/// Inversion about the mean, 2|u><u| - I with u the uniform state, in O(2^n).
PureState apply_diffusion(const PureState& state);

/// H on every qubit via the fast Walsh-Hadamard transform.
PureState apply_hadamard_all(const PureState& state);

double success_probability(const PureState& state, const MarkedSet& marked);

/// Largest absolute amplitude difference between two states of equal size.
double max_abs_difference(const PureState& lhs, const PureState& rhs);

/// Tensor product; `lhs` occupies the leading (most significant) qubits.
PureState tensor_product(const PureState& lhs, const PureState& rhs);

}  // namespace grover
