#include "grover/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "grover/errors.hpp"
#include "grover/parallel.hpp"

namespace grover {

std::string StepLabel::name() const {
    switch (kind) {
        case StepKind::initial: return "initial";
        case StepKind::hadamard: return "hadamard";
        case StepKind::oracle: return "oracle";
        case StepKind::diffusion: return "diffusion";
    }
    return "initial";
}

std::string StepLabel::str() const {
    if (kind == StepKind::oracle || kind == StepKind::diffusion) return name() + "(" + std::to_string(k) + ")";
    return name();
}

bool DynamicsTrace::ambiguous() const {
    for (const auto& s : steps) {
        if (s.report.ambiguous) return true;
    }
    return false;
}

bool final_cos_is_zero(const GroverParams& params) {
    return std::abs(std::cos((2.0 * params.R + 1.0) * params.theta / 2.0)) <= kCosZeroTolerance;
}

namespace {

struct Pending {
    StepRecord record;
    PureState state;
};

std::optional<double> first_amplitude(const PureState& state, const MarkedSet& marked, bool want_marked) {
    for (BasisIndex x = 0; x < state.dimension(); ++x) {
        if (marked.contains(x) == want_marked) return state[x];
    }
    return std::nullopt;
}

}  // namespace

DynamicsTrace run_dynamics(int n, const MarkedSet& marked, const DynamicsOptions& options) {
    if (marked.n() != n) throw std::invalid_argument("run_dynamics: marked set is over a different register");
    const std::uint64_t dim = std::uint64_t{1} << n;
    const std::uint64_t M = marked.size();
    if (M < 1 || 2 * M >= dim) {
        throw std::invalid_argument("run_dynamics: need 1 <= M <= 2^(n-1) - 1, got M = " + std::to_string(M));
    }
    options.policy.validate();
    options.limits.enforce(n, "run_dynamics");

    const GroverParams params = grover_params(n, M);
    DynamicsTrace trace{params, marked, {}, final_cos_is_zero(params)};
    trace.steps.reserve(static_cast<std::size_t>(2 + 2 * params.R));

    const std::size_t batch = static_cast<std::size_t>(std::max(options.jobs, 1));
    std::vector<Pending> pending;
    auto flush = [&] {
        parallel_for(pending.size(), options.jobs, [&](std::size_t i) {
            pending[i].record.report = analyze(pending[i].state, options.policy, options.limits);
        });
        for (auto& p : pending) trace.steps.push_back(std::move(p.record));
        pending.clear();
    };
    auto push = [&](StepLabel label, const PureState& applied, const PureState& closed, bool two_valued) {
        StepRecord rec;
        rec.label = label;
        rec.success_probability = success_probability(applied, marked);
        rec.closed_form_deviation = max_abs_difference(applied, closed);
        if (two_valued) {
            rec.a = first_amplitude(applied, marked, false);
            rec.b = first_amplitude(applied, marked, true);
            const double weight = *rec.a * *rec.a * static_cast<double>(dim - M) + *rec.b * *rec.b * static_cast<double>(M);
            if (std::abs(weight - 1.0) > 1e-10) {
                throw InternalConsistencyError("run_dynamics: 2-value normalization drifted at " + label.str());
            }
        }
        pending.push_back(Pending{std::move(rec), applied});
        if (pending.size() >= batch) flush();
    };

    const PureState zero = make_zero(n);
    push({StepKind::initial, 0}, zero, zero, false);
    PureState current = apply_hadamard_all(zero);
    push({StepKind::hadamard, 0}, current, make_uniform(n), true);
    for (int k = 1; k <= params.R; ++k) {
        current = apply_oracle(current, marked);
        push({StepKind::oracle, k}, current, oracle_state(params, marked, k), true);
        current = apply_diffusion(current);
        push({StepKind::diffusion, k}, current, iteration_state(params, marked, k), true);
    }
    flush();
    return trace;
}

}  // namespace grover
