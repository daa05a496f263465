#include "grover/two_value.hpp"

#include <algorithm>
#include <cmath>

namespace grover {
namespace {

bool invariant_under_flip(const MarkedSet& set, int qubit) {
    const BasisIndex flip = BasisIndex{1} << bit_position(set.n(), qubit);
    return std::all_of(set.members().begin(), set.members().end(),
                       [&](BasisIndex x) { return set.contains(x ^ flip); });
}

std::vector<int> constant_qubits(const MarkedSet& set) {
    std::vector<int> out;
    if (set.empty()) return out;
    const BasisIndex first = set.members().front();
    for (int i = 0; i < set.n(); ++i) {
        const int v = qubit_value(first, set.n(), i);
        const bool constant = std::all_of(set.members().begin(), set.members().end(),
                                          [&](BasisIndex x) { return qubit_value(x, set.n(), i) == v; });
        if (constant) out.push_back(i);
    }
    return out;
}

std::vector<BasisIndex> project(const MarkedSet& set, const std::vector<int>& qubits) {
    std::vector<BasisIndex> out;
    out.reserve(set.size());
    for (auto x : set.members()) {
        BasisIndex y = 0;
        for (int q : qubits) y = (y << 1) | static_cast<BasisIndex>(qubit_value(x, set.n(), q));
        out.push_back(y);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<int> without(int n, const std::vector<int>& drop) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i) {
        if (!std::binary_search(drop.begin(), drop.end(), i)) out.push_back(i);
    }
    return out;
}

}  // namespace

std::string_view to_string(TwoValueCategory c) {
    switch (c) {
        case TwoValueCategory::uniform: return "uniform";
        case TwoValueCategory::lemma1_single: return "lemma1-single";
        case TwoValueCategory::lemma1_subcube: return "lemma1-subcube";
        case TwoValueCategory::lemma1_entangled: return "lemma1-entangled";
        case TwoValueCategory::rews: return "rews";
        case TwoValueCategory::generic: return "generic";
    }
    return "generic";
}

std::vector<int> flip_invariant_qubits(const MarkedSet& set) {
    std::vector<int> out;
    for (int i = 0; i < set.n(); ++i) {
        if (invariant_under_flip(set, i)) out.push_back(i);
    }
    return out;
}

bool is_subcube(const MarkedSet& set) {
    if (set.empty()) return false;
    const auto free = flip_invariant_qubits(set);
    return set.size() == (std::size_t{1} << free.size());
}

bool is_half_space(const MarkedSet& set) {
    return 2 * set.size() == (std::size_t{1} << set.n()) && is_subcube(set);
}

TwoValueClass classify_two_value(const TwoValueSpec& spec, double tie_tolerance) {
    const MarkedSet& marked = spec.marked;
    const int n = marked.n();
    const std::size_t dim = std::size_t{1} << n;
    const auto near = [&](double x, double y) { return std::abs(x - y) <= tie_tolerance; };

    TwoValueClass out;
    out.free_qubits = flip_invariant_qubits(marked);

    if (marked.empty() || marked.size() == dim || near(spec.a, spec.b)) {
        out.category = TwoValueCategory::uniform;
        out.free_qubits.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) out.free_qubits[static_cast<std::size_t>(i)] = i;
        out.predicted_delta_lower_bound = n;
        out.prediction_exact = true;
        return out;
    }

    out.residual_qubits = without(n, out.free_qubits);
    out.residual_marked = project(marked, out.residual_qubits);
    const int free_count = static_cast<int>(out.free_qubits.size());

    if (near(spec.a, 0.0) || near(spec.b, 0.0)) {
        const MarkedSet support = near(spec.a, 0.0) ? marked : marked.complement();
        out.fixed_qubits = constant_qubits(support);
        if (support.size() == 1) {
            out.category = TwoValueCategory::lemma1_single;
        } else if (is_subcube(support)) {
            out.category = TwoValueCategory::lemma1_subcube;
        } else {
            out.category = TwoValueCategory::lemma1_entangled;
        }
        if (out.category == TwoValueCategory::lemma1_entangled) {
            out.predicted_delta_lower_bound = free_count + static_cast<int>(out.fixed_qubits.size()) + 1;
        } else {
            out.predicted_delta_lower_bound = n;
            out.prediction_exact = true;
        }
        return out;
    }

    out.category = near(spec.a, -spec.b) ? TwoValueCategory::rews : TwoValueCategory::generic;
    out.predicted_delta_lower_bound = free_count + 1;
    out.prediction_exact = out.category == TwoValueCategory::generic;
    return out;
}

}  // namespace grover
