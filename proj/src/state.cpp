#include "grover/state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace grover {
namespace {

void check_qubits(int n, const char* who) {
    if (n < 1 || n > kMaxStateQubits) {
        throw std::invalid_argument(std::string(who) + ": qubit count " + std::to_string(n) + " out of range");
    }
}

double sum_squares(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

void check_same_register(const PureState& state, const MarkedSet& marked, const char* who) {
    if (state.n() != marked.n()) {
        throw std::invalid_argument(std::string(who) + ": state has " + std::to_string(state.n()) +
                                    " qubits, marked set has " + std::to_string(marked.n()));
    }
}

// Slack absorbing rounding in the ceiling; at M = 2^{n-1} the argument is 0 up to ~1e-16.
constexpr double kRoundingSlack = 1e-9;

}  // namespace

PureState::PureState(int n, std::vector<double> amplitudes) : n_(n), amps_(std::move(amplitudes)) {
    check_qubits(n, "state");
    if (amps_.size() != (std::size_t{1} << n)) {
        throw std::invalid_argument("state: expected 2^" + std::to_string(n) + " amplitudes, got " +
                                    std::to_string(amps_.size()));
    }
    if (std::abs(sum_squares(amps_) - 1.0) > kNormTolerance) {
        throw std::invalid_argument("state: amplitudes are not normalized");
    }
}

PureState::PureState(Unchecked, int n, std::vector<double> amplitudes) : n_(n), amps_(std::move(amplitudes)) {}

PureState PureState::normalized(int n, std::vector<double> amplitudes, double tolerance) {
    check_qubits(n, "state");
    const double s = sum_squares(amplitudes);
    if (!(s > 0.0)) throw std::invalid_argument("state: zero vector");
    if (std::abs(std::sqrt(s) - 1.0) > tolerance) {
        throw std::invalid_argument("state: norm " + std::to_string(std::sqrt(s)) + " outside tolerance");
    }
    const double inv = 1.0 / std::sqrt(s);
    for (double& x : amplitudes) x *= inv;
    return PureState(n, std::move(amplitudes));
}

double PureState::norm() const { return std::sqrt(sum_squares(amps_)); }

PureState make_zero(int n) {
    check_qubits(n, "make_zero");
    std::vector<double> amps(std::size_t{1} << n, 0.0);
    amps[0] = 1.0;
    return PureState(n, std::move(amps));
}

PureState make_uniform(int n) {
    check_qubits(n, "make_uniform");
    const std::size_t dim = std::size_t{1} << n;
    return PureState(n, std::vector<double>(dim, 1.0 / std::sqrt(static_cast<double>(dim))));
}

PureState two_value_state(const TwoValueSpec& spec) {
    const int n = spec.marked.n();
    const std::size_t dim = std::size_t{1} << n;
    const double M = static_cast<double>(spec.marked.size());
    const double weight = spec.a * spec.a * (static_cast<double>(dim) - M) + spec.b * spec.b * M;
    if (std::abs(weight - 1.0) > 1e-9) {
        throw std::invalid_argument("two_value_state: a^2 (2^n - M) + b^2 M = " + std::to_string(weight) + " != 1");
    }
    std::vector<double> amps(dim, spec.a);
    for (auto x : spec.marked.members()) amps[x] = spec.b;
    return PureState::normalized(n, std::move(amps), 1e-9);
}

GroverParams grover_params(int n, std::uint64_t M) {
    check_qubits(n, "grover_params");
    const std::uint64_t dim = std::uint64_t{1} << n;
    if (M == 0 || 2 * M > dim) {
        throw std::out_of_range("grover_params: need 1 <= M <= 2^(n-1), got M = " + std::to_string(M));
    }
    const double theta = 2.0 * std::asin(std::sqrt(static_cast<double>(M) / static_cast<double>(dim)));
    const double x = (std::numbers::pi - theta) / (2.0 * theta) - 0.5;
    const int R = static_cast<int>(std::ceil(x - kRoundingSlack));
    return GroverParams{n, M, theta, R < 0 ? 0 : R};
}

AmplitudePair iteration_amplitudes(const GroverParams& params, int k) {
    if (k < 0) throw std::invalid_argument("iteration_amplitudes: k must be >= 0");
    const double root = std::sqrt(std::ldexp(1.0, params.n));
    const double half = params.theta / 2.0;
    const double angle = (2.0 * k + 1.0) * half;
    return {std::cos(angle) / (root * std::cos(half)), std::sin(angle) / (root * std::sin(half))};
}

AmplitudePair oracle_amplitudes(const GroverParams& params, int k) {
    if (k < 1) throw std::invalid_argument("oracle_amplitudes: k must be >= 1");
    const auto prev = iteration_amplitudes(params, k - 1);
    return {prev.a, -prev.b};
}

namespace {

PureState from_pair(const GroverParams& params, const MarkedSet& marked, AmplitudePair ab, const char* who) {
    if (marked.n() != params.n || marked.size() != params.M) {
        throw std::invalid_argument(std::string(who) + ": marked set does not match Grover parameters");
    }
    std::vector<double> amps(std::size_t{1} << params.n, ab.a);
    for (auto x : marked.members()) amps[x] = ab.b;
    return PureState::normalized(params.n, std::move(amps), 1e-9);
}

}  // namespace

PureState iteration_state(const GroverParams& params, const MarkedSet& marked, int k) {
    return from_pair(params, marked, iteration_amplitudes(params, k), "iteration_state");
}

PureState oracle_state(const GroverParams& params, const MarkedSet& marked, int k) {
    return from_pair(params, marked, oracle_amplitudes(params, k), "oracle_state");
}

PureState apply_oracle(const PureState& state, const MarkedSet& marked) {
    check_same_register(state, marked, "apply_oracle");
    std::vector<double> amps(state.amps_);
    for (auto x : marked.members()) amps[x] = -amps[x];
    return PureState(PureState::Unchecked{}, state.n_, std::move(amps));
}

PureState apply_diffusion(const PureState& state) {
    double sum = 0.0;
    for (double x : state.amps_) sum += x;
    const double twice_mean = 2.0 * sum / static_cast<double>(state.amps_.size());
    std::vector<double> amps(state.amps_.size());
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = twice_mean - state.amps_[i];
    return PureState(PureState::Unchecked{}, state.n_, std::move(amps));
}

PureState apply_hadamard_all(const PureState& state) {
    std::vector<double> amps(state.amps_);
    const std::size_t dim = amps.size();
    for (std::size_t len = 1; len < dim; len <<= 1) {
        for (std::size_t base = 0; base < dim; base += 2 * len) {
            for (std::size_t i = base; i < base + len; ++i) {
                const double u = amps[i];
                const double v = amps[i + len];
                amps[i] = u + v;
                amps[i + len] = u - v;
            }
        }
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    for (double& x : amps) x *= scale;
    return PureState(PureState::Unchecked{}, state.n_, std::move(amps));
}

double success_probability(const PureState& state, const MarkedSet& marked) {
    check_same_register(state, marked, "success_probability");
    double p = 0.0;
    for (auto x : marked.members()) p += state[x] * state[x];
    return p;
}

double max_abs_difference(const PureState& lhs, const PureState& rhs) {
    if (lhs.n() != rhs.n()) throw std::invalid_argument("max_abs_difference: qubit counts differ");
    double worst = 0.0;
    for (std::size_t i = 0; i < lhs.dimension(); ++i) {
        worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
    }
    return worst;
}

PureState tensor_product(const PureState& lhs, const PureState& rhs) {
    const int n = lhs.n() + rhs.n();
    check_qubits(n, "tensor_product");
    std::vector<double> amps;
    amps.reserve(lhs.dimension() * rhs.dimension());
    for (double x : lhs.amplitudes()) {
        for (double y : rhs.amplitudes()) amps.push_back(x * y);
    }
    return PureState::normalized(n, std::move(amps), 1e-9);
}

}  // namespace grover
