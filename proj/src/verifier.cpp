#include "grover/verifier.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "grover/combinatorics.hpp"
#include "grover/errors.hpp"
#include "grover/parallel.hpp"
#include "grover/table1.hpp"
#include "grover/two_value.hpp"

namespace grover {
namespace {

constexpr std::array<std::pair<CheckId, std::string_view>, 13> kCheckNames{{
    {CheckId::lemma1, "lemma1"},
    {CheckId::lemma2_count, "lemma2_count"},
    {CheckId::thm3, "thm3"},
    {CheckId::thm4, "thm4"},
    {CheckId::thm5, "thm5"},
    {CheckId::thm6, "thm6"},
    {CheckId::thm7, "thm7"},
    {CheckId::lemma8, "lemma8"},
    {CheckId::thm9, "thm9"},
    {CheckId::thm10, "thm10"},
    {CheckId::thm11, "thm11"},
    {CheckId::thm12, "thm12"},
    {CheckId::table1, "table1"},
}};

constexpr int kMaxExhaustiveQubits = 5;
constexpr double kGenericTolerance = 1e-9;

using Instance = std::vector<BasisIndex>;

struct Outcome {
    std::vector<Violation> violations;
    bool ambiguous = false;
    std::map<std::string, std::int64_t> tally;

    void fail(const Instance& marked, std::string step, std::string observed, std::string predicted) {
        violations.push_back(Violation{marked, std::move(step), std::move(observed), std::move(predicted)});
    }
    void expect(bool ok, const Instance& marked, const std::string& step, const std::string& observed,
                const std::string& predicted) {
        if (!ok) fail(marked, step, observed, predicted);
    }
};

int chi_cap(int n) { return 1 << (n / 2); }

std::uint64_t dim_of(int n) { return std::uint64_t{1} << n; }

bool is_power_of_two(std::uint64_t v) { return std::has_single_bit(v); }

std::string pair_str(int delta, int chi) {
    return "delta=" + std::to_string(delta) + " chi=" + std::to_string(chi);
}

std::string range_str(const char* what, int lo, int hi) {
    return std::string(what) + " in " + IntRange{lo, hi}.str();
}

// Properties every report must have regardless of the claim under test.
void check_report(const EntanglementReport& r, int n, const Instance& marked, const std::string& step, Outcome& out) {
    out.ambiguous = out.ambiguous || r.ambiguous;
    out.expect(r.chi >= 1 && r.chi <= chi_cap(n), marked, step, pair_str(r.delta, r.chi),
               range_str("chi", 1, chi_cap(n)));
    out.expect((r.chi == 1) == (r.delta == n), marked, step, pair_str(r.delta, r.chi), "chi = 1 <=> delta = n");
}

std::vector<std::uint64_t> sizes_between(const CheckSpec& spec, std::uint64_t lo, std::uint64_t hi,
                                         const std::function<bool(std::uint64_t)>& keep) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t M = lo; M <= hi; ++M) {
        if (spec.m_filter && *spec.m_filter != M) continue;
        if (keep(M)) out.push_back(M);
    }
    return out;
}

std::vector<Instance> make_instances(const CheckSpec& spec, const CheckOptions& options,
                                     const std::vector<std::uint64_t>& sizes) {
    std::vector<Instance> out;
    if (sizes.empty()) return out;
    if (spec.exhaustive) {
        if (spec.n > kMaxExhaustiveQubits) {
            throw ResourceLimitError("exhaustive enumeration needs n <= " + std::to_string(kMaxExhaustiveQubits));
        }
        std::uint64_t total = 0;
        for (auto M : sizes) total += binomial(dim_of(spec.n), M);
        if (total > options.max_instances) {
            throw ResourceLimitError("exhaustive enumeration of " + std::to_string(total) +
                                     " marked sets exceeds the limit of " + std::to_string(options.max_instances));
        }
        out.reserve(static_cast<std::size_t>(total));
        for (auto M : sizes) {
            auto block = all_subsets(spec.n, M);
            for (auto& s : block) out.push_back(std::move(s));
        }
        return out;
    }
    if (spec.sampling.count > options.max_instances) {
        throw ResourceLimitError("sample count exceeds the limit of " + std::to_string(options.max_instances));
    }
    out.reserve(static_cast<std::size_t>(spec.sampling.count));
    for (std::uint64_t i = 0; i < spec.sampling.count; ++i) {
        auto rng = instance_rng(spec.sampling.seed, i);
        const std::uint64_t M = sizes[static_cast<std::size_t>(uniform_below(rng, sizes.size()))];
        out.push_back(random_subset(spec.n, M, rng));
    }
    return out;
}

CheckResult collect(const CheckSpec& spec, std::vector<Outcome> outcomes, std::uint64_t instances) {
    CheckResult result{spec.id, spec.n, 0, {}, 0, Verdict::pass, {}};
    result.instances_tested = instances;
    for (auto& o : outcomes) {
        for (auto& v : o.violations) result.violations.push_back(std::move(v));
        if (o.ambiguous) ++result.ambiguous_count;
        for (const auto& [key, count] : o.tally) result.summary[key] += count;
    }
    if (!result.violations.empty()) {
        result.verdict = Verdict::fail;
    } else if (result.ambiguous_count > 0) {
        result.verdict = Verdict::pass_with_ambiguity;
    } else {
        result.verdict = Verdict::pass;
    }
    return result;
}

CheckResult run_instances(const CheckSpec& spec, const CheckOptions& options, const std::vector<Instance>& instances,
                          const std::function<void(const MarkedSet&, const Instance&, Outcome&)>& body) {
    std::vector<Outcome> outcomes(instances.size());
    parallel_for(instances.size(), options.jobs, [&](std::size_t i) {
        body(MarkedSet(spec.n, instances[i]), instances[i], outcomes[i]);
    });
    return collect(spec, std::move(outcomes), instances.size());
}

EntanglementReport analyze_two_value(const TwoValueSpec& tv, const CheckOptions& options) {
    return analyze(two_value_state(tv), options.policy, options.limits);
}

// ---------------------------------------------------------------- static 2-value claims

CheckResult check_lemma1(const CheckSpec& spec, const CheckOptions& options) {
    const int n = spec.n;
    const auto sizes = sizes_between(spec, 1, dim_of(n), [](std::uint64_t) { return true; });
    return run_instances(spec, options, make_instances(spec, options, sizes),
                         [&](const MarkedSet& marked, const Instance& inst, Outcome& out) {
        const double b = 1.0 / std::sqrt(static_cast<double>(marked.size()));
        const TwoValueSpec tv{marked, 0.0, b};
        const auto report = analyze_two_value(tv, options);
        check_report(report, n, inst, "state", out);
        const auto cls = classify_two_value(tv);
        const bool subcube = cls.category == TwoValueCategory::lemma1_single ||
                             cls.category == TwoValueCategory::lemma1_subcube ||
                             cls.category == TwoValueCategory::uniform;
        out.expect((report.delta == n) == subcube, inst, "state", pair_str(report.delta, report.chi),
                   subcube ? "delta = n (subcube support)" : "delta < n (not a subcube)");
        out.expect(report.delta >= cls.predicted_delta_lower_bound, inst, "state", pair_str(report.delta, report.chi),
                   "delta >= " + std::to_string(cls.predicted_delta_lower_bound));
        if (subcube) {
            ++out.tally["subcube"];
            // Leading form: uniform on the leading qubits, a fixed string on the rest.
            const auto m = static_cast<int>(cls.free_qubits.size());
            bool leading = true;
            for (int i = 0; i < m; ++i) leading = leading && cls.free_qubits[static_cast<std::size_t>(i)] == i;
            ++out.tally[leading ? "subcube_leading_form" : "subcube_other_positions"];
        } else {
            ++out.tally["not_subcube"];
        }
    });
}

CheckResult check_thm3(const CheckSpec& spec, const CheckOptions& options) {
    const int n = spec.n;
    const auto sizes = sizes_between(spec, 1, dim_of(n) - 1, [](std::uint64_t) { return true; });
    return run_instances(spec, options, make_instances(spec, options, sizes),
                         [&](const MarkedSet& marked, const Instance& inst, Outcome& out) {
        const std::uint64_t M = marked.size();
        const auto ab = generic_amplitudes(n, M);
        const TwoValueSpec tv{marked, ab.a, ab.b};
        const auto report = analyze_two_value(tv, options);
        check_report(report, n, inst, "state", out);
        const auto cls = classify_two_value(tv);
        const std::string seen = pair_str(report.delta, report.chi);

        const bool half = 2 * M == dim_of(n) && is_half_space(marked);
        out.expect((report.delta == n) == half, inst, "(i)", seen,
                   half ? "fully separable (half-space at M = 2^(n-1))" : "not fully separable");
        if (report.delta == n) {
            ++out.tally["fully_separable"];
            const auto free = flip_invariant_qubits(marked);
            const bool last_qubit_varies = free.size() == static_cast<std::size_t>(n - 1) && free.back() == n - 2;
            ++out.tally[last_qubit_varies ? "fully_separable_last_qubit_form" : "fully_separable_other_qubit"];
        }
        if (M % 2 == 1) {
            out.expect(report.delta == 1, inst, "(ii)", seen, "delta = 1 (odd M)");
        } else {
            const int q = marked.q();
            if (report.delta >= 2) {
                const int k = report.delta;
                out.expect(k <= q + 1, inst, "(iii)", seen, "k <= q+1 = " + std::to_string(q + 1));
                out.expect(cls.free_qubits.size() == static_cast<std::size_t>(k - 1), inst, "(iii)",
                           "free qubits = " + std::to_string(cls.free_qubits.size()),
                           "k-1 = " + std::to_string(k - 1) + " uniform factors");
                out.expect(cls.residual_marked.size() == (M >> (k - 1)), inst, "(iii)",
                           "|T| = " + std::to_string(cls.residual_marked.size()),
                           "|T| = " + std::to_string(M >> (k - 1)));
            }
        }
        out.expect(report.delta == cls.predicted_delta_lower_bound, inst, "classifier", seen,
                   "delta = " + std::to_string(cls.predicted_delta_lower_bound));
    });
}

CheckResult check_thm4(const CheckSpec& spec, const CheckOptions& options) {
    const int n = spec.n;
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim_of(n)));
    Instance all(dim_of(n));
    for (std::size_t x = 0; x < all.size(); ++x) all[x] = x;
    const std::vector<std::pair<Instance, double>> cases{{{}, amp}, {{}, -amp}, {all, amp}, {all, -amp}};
    std::vector<Outcome> outcomes(cases.size());
    std::uint64_t tested = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& [inst, sign_amp] = cases[i];
        if (spec.m_filter && *spec.m_filter != inst.size()) continue;
        ++tested;
        const MarkedSet marked(n, inst);
        const TwoValueSpec tv{marked, inst.empty() ? sign_amp : 0.0, inst.empty() ? 0.0 : sign_amp};
        const auto report = analyze_two_value(tv, options);
        check_report(report, n, inst, "state", outcomes[i]);
        outcomes[i].expect(report.chi == 1, inst, "state", pair_str(report.delta, report.chi), "chi = 1");
    }
    return collect(spec, std::move(outcomes), tested);
}

void chi_claims(int n, std::uint64_t M, const EntanglementReport& r, const Instance& inst, const char* tag,
                Outcome& out) {
    const std::uint64_t half = dim_of(n) / 2;
    const std::string seen = pair_str(r.delta, r.chi);
    const int cap = chi_cap(n);
    if (r.chi == 1) out.expect(M == half, inst, std::string(tag) + "(i)", seen, "chi = 1 only at M = 2^(n-1)");
    if (M == half) {
        out.expect(r.chi >= 1 && r.chi <= cap, inst, std::string(tag) + "(ii)", seen, range_str("chi", 1, cap));
    } else {
        const int hi = static_cast<int>(std::min<std::uint64_t>(M + 1, static_cast<std::uint64_t>(cap)));
        out.expect(r.chi >= 2 && r.chi <= hi, inst, std::string(tag) + "(iii)", seen, range_str("chi", 2, hi));
    }
    if (M == 1) out.expect(r.chi == 2, inst, std::string(tag) + "(iv)", seen, "chi = 2");
}

CheckResult check_thm5(const CheckSpec& spec, const CheckOptions& options) {
    const int n = spec.n;
    const auto sizes = sizes_between(spec, 1, dim_of(n) - 1, [](std::uint64_t) { return true; });
    return run_instances(spec, options, make_instances(spec, options, sizes),
                         [&](const MarkedSet& marked, const Instance& inst, Outcome& out) {
        // a = 0 puts the weight on the marked set, b = 0 on its complement.
        for (const bool zero_a : {true, false}) {
            const std::uint64_t support = zero_a ? marked.size() : dim_of(n) - marked.size();
            const double w = 1.0 / std::sqrt(static_cast<double>(support));
            const TwoValueSpec tv{marked, zero_a ? 0.0 : w, zero_a ? w : 0.0};
            const auto r = analyze_two_value(tv, options);
            const std::string step = zero_a ? "a=0" : "b=0";
            check_report(r, n, inst, step, out);
            const std::string seen = pair_str(r.delta, r.chi);
            const int cap = chi_cap(n);
            const int hi = static_cast<int>(std::min<std::uint64_t>(support, static_cast<std::uint64_t>(cap)));
            if (r.chi == 1) {
                out.expect(is_power_of_two(support), inst, step + " (i)", seen, "support size a power of two");
            }
            if (support == 1) out.expect(r.chi == 1, inst, step + " (ii)", seen, "chi = 1");
            if (is_power_of_two(support) && support > 1) {
                out.expect(r.chi >= 1 && r.chi <= hi, inst, step + " (iii)", seen, range_str("chi", 1, hi));
            }
            if (!is_power_of_two(support)) {
                out.expect(r.chi >= 2 && r.chi <= hi, inst, step + " (iv)", seen, range_str("chi", 2, hi));
            }
        }
    });
}

CheckResult check_thm6(const CheckSpec& spec, const CheckOptions& options) {
    const int n = spec.n;
    const auto sizes = sizes_between(spec, 1, dim_of(n) - 1, [](std::uint64_t) { return true; });
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim_of(n)));
    return run_instances(spec, options, make_instances(spec, options, sizes),
                         [&](const MarkedSet& marked, const Instance& inst, Outcome& out) {
        const auto r = analyze_two_value(TwoValueSpec{marked, amp, -amp}, options);
        check_report(r, n, inst, "state", out);
        chi_claims(n, marked.size(), r, inst, "", out);
    });
}

CheckResult check_thm7(const CheckSpec& spec, const CheckOptions& options) {
    const int n = spec.n;
    const auto sizes = sizes_between(spec, 1, dim_of(n) - 1, [](std::uint64_t) { return true; });
    return run_instances(spec, options, make_instances(spec, options, sizes),
                         [&](const MarkedSet& marked, const Instance& inst, Outcome& out) {
        const auto ab = generic_amplitudes(n, marked.size());
        const auto r = analyze_two_value(TwoValueSpec{marked, ab.a, ab.b}, options);
        check_report(r, n, inst, "state", out);
        chi_claims(n, marked.size(), r, inst, "", out);
    });
}

CheckResult check_lemma8(const CheckSpec& spec) {
    const int n = spec.n;
    const auto sizes = sizes_between(spec, 1, dim_of(n) / 2 - 1, [](std::uint64_t) { return true; });
    CheckResult result{spec.id, n, 0, {}, 0, Verdict::pass, {}};
    for (auto M : sizes) {
        const auto params = grover_params(n, M);
        for (int k = 1; k <= params.R; ++k) {
            ++result.instances_tested;
            const auto ab = iteration_amplitudes(params, k);
            if (std::abs(ab.a - ab.b) <= kAmplitudeTieTolerance) {
                std::ostringstream seen;
                seen.precision(17);
                seen << "M=" << M << " a=" << ab.a << " b=" << ab.b;
                result.violations.push_back(Violation{{}, "iteration(" + std::to_string(k) + ")", seen.str(), "a != b"});
            }
        }
    }
    result.verdict = result.violations.empty() ? Verdict::pass : Verdict::fail;
    return result;
}

// ---------------------------------------------------------------- dynamics claims

struct TraceView {
    const DynamicsTrace& trace;
    int n;
    std::uint64_t M;
    int q;
    std::uint64_t p;
    int k;  // separable degree of the first oracle state
    bool cos_zero;

    // Oracle(1) .. oracle(R): every post-Hadamard step except the last.
    std::size_t first_middle() const { return 2; }
    std::size_t end_middle() const { return trace.steps.size() - 1; }
    const StepRecord& final_step() const { return trace.steps.back(); }
};

TraceView view_of(const DynamicsTrace& trace) {
    const std::uint64_t M = trace.params.M;
    const int q = std::countr_zero(M);
    return TraceView{trace, trace.params.n, M, q, ((M >> q) - 1) / 2, trace.first_oracle().report.delta,
                     trace.final_cos_zero};
}

DynamicsTrace traced(int n, const MarkedSet& marked, const CheckOptions& options, const Instance& inst, Outcome& out) {
    DynamicsOptions dyn{options.policy, options.limits, 1};
    DynamicsTrace trace = run_dynamics(n, marked, dyn);
    out.ambiguous = out.ambiguous || trace.ambiguous();
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const StepRecord& s = trace.steps[i];
        check_report(s.report, n, inst, s.label.str(), out);
        if (i < 2) continue;
        // Same measurement on the closed-form state.
        const auto closed = s.label.kind == StepKind::oracle ? oracle_state(trace.params, marked, s.label.k)
                                                            : iteration_state(trace.params, marked, s.label.k);
        const auto r = analyze(closed, options.policy, options.limits);
        out.ambiguous = out.ambiguous || r.ambiguous;
        out.expect(r.delta == s.report.delta && r.chi == s.report.chi, inst, s.label.str(),
                   "closed form " + pair_str(r.delta, r.chi), "operator " + pair_str(s.report.delta, s.report.chi));
    }
    return trace;
}

CheckResult check_dynamics(const CheckSpec& spec, const CheckOptions& options,
                           const std::function<bool(std::uint64_t)>& keep,
                           const std::function<void(const TraceView&, const MarkedSet&, const Instance&, Outcome&)>& claim) {
    const int n = spec.n;
    if (n < 2) throw std::invalid_argument("dynamics checks need n >= 2");
    const auto sizes = sizes_between(spec, 1, dim_of(n) / 2 - 1, keep);
    return run_instances(spec, options, make_instances(spec, options, sizes),
                         [&](const MarkedSet& marked, const Instance& inst, Outcome& out) {
        const DynamicsTrace trace = traced(n, marked, options, inst, out);
        claim(view_of(trace), marked, inst, out);
    });
}

void claim_thm9(const TraceView& v, const MarkedSet&, const Instance& inst, Outcome& out) {
    for (std::size_t i = v.first_middle(); i < v.end_middle(); ++i) {
        const auto& s = v.trace.steps[i];
        out.expect(s.report.delta == 1, inst, s.label.str() + " (i)", pair_str(s.report.delta, s.report.chi),
                   "delta = 1");
    }
    const auto& f = v.final_step();
    if (!v.cos_zero) {
        out.expect(f.report.delta == 1, inst, f.label.str() + " (ii)", pair_str(f.report.delta, f.report.chi),
                   "delta = 1");
    } else {
        ++out.tally["final_cos_zero"];
        out.expect(f.report.delta >= 1 && f.report.delta <= v.n - 1, inst, f.label.str() + " (ii)",
                   pair_str(f.report.delta, f.report.chi), range_str("delta", 1, v.n - 1));
    }
}

void claim_thm11(const TraceView& v, const MarkedSet&, const Instance& inst, Outcome& out) {
    const IntRange a = set_a(v.n, v.M);
    for (std::size_t i = v.first_middle(); i < v.end_middle(); ++i) {
        const auto& s = v.trace.steps[i];
        const std::string seen = pair_str(s.report.delta, s.report.chi);
        out.expect(a.contains(s.report.chi), inst, s.label.str() + " (i)", seen, "chi in " + a.str());
        if (v.M == 1) {
            out.expect(s.report.chi == 2 && s.report.delta == 1, inst, s.label.str() + " (i)", seen,
                       "delta = 1, chi = 2");
        }
    }
    const auto& f = v.final_step();
    const bool predicted_one = v.cos_zero && v.M == 1;
    out.expect((f.report.chi == 1) == predicted_one, inst, f.label.str() + " (ii)",
               pair_str(f.report.delta, f.report.chi), predicted_one ? "chi = 1" : "chi != 1");
}

// Whether the first oracle state factors as k-1 uniform qubits
// and one remaining factor carrying the marked structure.
bool has_uniform_factor_form(const TraceView& v, const MarkedSet& marked, TwoValueClass& cls) {
    const auto& s = v.trace.first_oracle();
    cls = classify_two_value(TwoValueSpec{marked, *s.a, *s.b});
    return v.k >= 2 && v.k <= v.q + 1 && cls.free_qubits.size() == static_cast<std::size_t>(v.k - 1);
}

void claim_thm10(const TraceView& v, const MarkedSet& marked, const Instance& inst, Outcome& out) {
    const auto& f = v.final_step();
    if (v.k == 1) {
        ++out.tally["first_oracle_fully_entangled"];
        for (std::size_t i = v.first_middle(); i < v.end_middle(); ++i) {
            const auto& s = v.trace.steps[i];
            out.expect(s.report.delta == 1, inst, s.label.str() + " (i)", pair_str(s.report.delta, s.report.chi),
                       "delta = 1");
        }
        if (!v.cos_zero) {
            out.expect(f.report.delta == 1, inst, f.label.str() + " (i)", pair_str(f.report.delta, f.report.chi),
                       "delta = 1");
        }
    } else {
        TwoValueClass first;
        if (has_uniform_factor_form(v, marked, first)) {
            ++out.tally["first_oracle_uniform_factor_form"];
            for (std::size_t i = v.first_middle(); i < v.end_middle(); ++i) {
                const auto& s = v.trace.steps[i];
                out.expect(s.report.delta == v.k, inst, s.label.str() + " (ii)",
                           pair_str(s.report.delta, s.report.chi), "delta = " + std::to_string(v.k));
                const auto cls = classify_two_value(TwoValueSpec{marked, *s.a, *s.b});
                out.expect(cls.free_qubits == first.free_qubits, inst, s.label.str() + " (ii)",
                           "free qubits changed", "same uniform factors as the first oracle state");
            }
            const std::string seen = pair_str(f.report.delta, f.report.chi);
            if (!v.cos_zero) {
                out.expect(f.report.delta == v.k, inst, f.label.str() + " (ii)", seen, "delta = " + std::to_string(v.k));
            } else {
                out.expect(f.report.delta >= v.k, inst, f.label.str() + " (ii)", seen, "delta >= " + std::to_string(v.k));
            }
        } else {
            ++out.tally["first_oracle_other_factor_form"];
        }
    }
    const bool predicted = v.cos_zero && v.p == 0 && v.k == v.q + 1;
    out.expect((f.report.delta == v.n) == predicted, inst, f.label.str() + " (iii)",
               pair_str(f.report.delta, f.report.chi), predicted ? "fully separable" : "not fully separable");
}

void claim_thm12(const TraceView& v, const MarkedSet& marked, const Instance& inst, Outcome& out) {
    const auto& f = v.final_step();
    const std::string final_seen = pair_str(f.report.delta, f.report.chi);
    if (v.k == 1) {
        const IntRange a = set_a(v.n, v.M);
        for (std::size_t i = v.first_middle(); i < v.end_middle(); ++i) {
            const auto& s = v.trace.steps[i];
            out.expect(a.contains(s.report.chi), inst, s.label.str() + " (i)", pair_str(s.report.delta, s.report.chi),
                       "chi in " + a.str());
        }
        const IntRange last = v.cos_zero ? set_a_prime(v.n, v.M) : a;
        out.expect(last.contains(f.report.chi), inst, f.label.str() + " (i)", final_seen, "chi in " + last.str());
    } else {
        TwoValueClass first;
        if (has_uniform_factor_form(v, marked, first)) {
            const std::uint64_t t = v.M >> (v.k - 1);
            const int cap = 1 << ((v.n - v.k + 1) / 2);
            const bool exact_two = v.cos_zero && v.p == 0 && v.k == v.q + 1;
            const IntRange b{2, static_cast<int>(std::min<std::uint64_t>(t + 1, static_cast<std::uint64_t>(cap)))};
            for (std::size_t i = v.first_middle(); i < v.end_middle(); ++i) {
                const auto& s = v.trace.steps[i];
                const IntRange want = exact_two ? IntRange{2, 2} : b;
                out.expect(want.contains(s.report.chi), inst, s.label.str() + " (ii)",
                           pair_str(s.report.delta, s.report.chi), "chi in " + want.str());
            }
            const IntRange last =
                v.cos_zero ? IntRange{1, static_cast<int>(std::min<std::uint64_t>(t, static_cast<std::uint64_t>(cap)))} : b;
            out.expect(last.contains(f.report.chi), inst, f.label.str() + " (ii)", final_seen, "chi in " + last.str());
        } else {
            ++out.tally["first_oracle_other_factor_form"];
        }
    }
    const bool predicted = v.cos_zero && v.p == 0 && v.k == v.q + 1;
    out.expect((f.report.chi == 1) == predicted, inst, f.label.str() + " (iii)", final_seen,
               predicted ? "chi = 1" : "chi != 1");
}

void claim_table1(const TraceView& v, const MarkedSet&, const Instance& inst, Outcome& out) {
    const auto cls = classify_trace(v.trace);
    const std::string row(to_string(cls.row));
    ++out.tally["row " + row];
    if (cls.row == TableRow::out_of_table) return;
    if (cls.conforms) {
        ++out.tally["row " + row + " conforming"];
        return;
    }
    for (const auto& s : cls.steps) {
        if (s.conforms) continue;
        out.fail(inst, s.label.str() + " row " + row + " k=" + std::to_string(cls.subrow_k), pair_str(s.delta, s.chi),
                 cls.has_cell ? "delta in " + s.predicted.delta.str() + ", chi in " + s.predicted.chi.str()
                              : "no table cell for this k");
    }
}

CheckResult check_lemma2_count(const CheckSpec& spec, const CheckOptions& options) {
    const int n = spec.n;
    const auto sizes = sizes_between(spec, 2, dim_of(n) - 2, [](std::uint64_t M) { return M % 2 == 0; });
    if (spec.m_filter && *spec.m_filter % 2 == 1) {
        throw std::invalid_argument("lemma2_count: M must be even");
    }
    CheckResult result{spec.id, n, 0, {}, 0, Verdict::pass, {}};
    for (auto M : sizes) {
        const auto c = count_2separable(n, M, options);
        result.instances_tested += c.total;
        result.ambiguous_count += c.ambiguous;
        const std::string key = "M=" + std::to_string(M);
        result.summary[key + " brute_count"] = static_cast<std::int64_t>(c.brute_count);
        result.summary[key + " formula_count"] = static_cast<std::int64_t>(c.formula_count);
        // The formula counts one free qubit per set, so it can only overcount.
        if (c.brute_count > c.formula_count) {
            result.violations.push_back(Violation{{}, key, "brute " + std::to_string(c.brute_count),
                                                  "<= formula " + std::to_string(c.formula_count)});
        }
    }
    if (!result.violations.empty()) {
        result.verdict = Verdict::fail;
    } else {
        result.verdict = result.ambiguous_count > 0 ? Verdict::pass_with_ambiguity : Verdict::pass;
    }
    return result;
}

}  // namespace

std::string_view to_string(CheckId id) {
    for (const auto& [k, name] : kCheckNames) {
        if (k == id) return name;
    }
    return "unknown";
}

std::optional<CheckId> parse_check_id(std::string_view text) {
    for (const auto& [k, name] : kCheckNames) {
        if (name == text) return k;
    }
    return std::nullopt;
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::pass_with_ambiguity: return "pass-with-ambiguity";
    }
    return "fail";
}

AmplitudePair generic_amplitudes(int n, std::uint64_t M) {
    const std::uint64_t dim = dim_of(n);
    if (M == 0 || M >= dim) throw std::invalid_argument("generic_amplitudes: need 0 < M < 2^n");
    const auto generic = [](AmplitudePair ab) {
        return std::min({std::abs(ab.a), std::abs(ab.b), std::abs(ab.a - ab.b), std::abs(ab.a + ab.b)}) >
               kGenericTolerance;
    };
    if (2 * M < dim) {
        const auto ab = iteration_amplitudes(grover_params(n, M), 1);
        if (generic(ab)) return ab;
    }
    for (double phi = 0.3;; phi += 0.1) {
        const AmplitudePair ab{std::cos(phi) / std::sqrt(static_cast<double>(dim - M)),
                               std::sin(phi) / std::sqrt(static_cast<double>(M))};
        if (generic(ab)) return ab;
    }
}

SeparableCount count_2separable(int n, std::uint64_t M, const CheckOptions& options) {
    if (M % 2 == 1) throw std::invalid_argument("count_2separable: M must be even (odd M is always fully entangled)");
    if (M == 0 || M >= dim_of(n)) throw std::invalid_argument("count_2separable: need 0 < M < 2^n");
    if (n > kMaxExhaustiveQubits) {
        throw ResourceLimitError("count_2separable: enumeration needs n <= " + std::to_string(kMaxExhaustiveQubits));
    }
    SeparableCount out;
    out.total = binomial(dim_of(n), M);
    out.formula_count = static_cast<std::uint64_t>(n) * binomial(dim_of(n) / 2, M / 2);
    if (out.total > options.max_instances) {
        throw ResourceLimitError("count_2separable: " + std::to_string(out.total) + " marked sets exceed the limit");
    }
    const auto sets = all_subsets(n, M);
    const auto ab = generic_amplitudes(n, M);
    std::vector<std::uint8_t> separable(sets.size(), 0);
    std::vector<std::uint8_t> ambiguous(sets.size(), 0);
    parallel_for(sets.size(), options.jobs, [&](std::size_t i) {
        const auto r = analyze_two_value(TwoValueSpec{MarkedSet(n, sets[i]), ab.a, ab.b}, options);
        separable[i] = r.delta >= 2;
        ambiguous[i] = r.ambiguous;
    });
    for (std::size_t i = 0; i < sets.size(); ++i) {
        out.brute_count += separable[i];
        out.ambiguous += ambiguous[i];
    }
    return out;
}

FractionReport fraction_report(int n_lo, int n_hi, std::uint64_t M, const CheckOptions& options) {
    if (n_lo < 3 || n_hi > 5 || n_lo > n_hi) throw std::invalid_argument("fraction_report: n range must lie in [3, 5]");
    FractionReport out{M, {}, true};
    for (int n = n_lo; n <= n_hi; ++n) {
        const auto c = count_2separable(n, M, options);
        out.rows.push_back(FractionRow{n, c, static_cast<double>(c.brute_count) / static_cast<double>(c.total)});
    }
    for (std::size_t i = 1; i < out.rows.size(); ++i) {
        const int n = out.rows[i].n;
        const bool below_half_power = M * M < dim_of(n - 1);
        if (below_half_power && !(out.rows[i].fraction < out.rows[i - 1].fraction)) out.strictly_decreasing = false;
    }
    return out;
}

CheckResult check(const CheckSpec& spec, const CheckOptions& options) {
    if (spec.n < 1 || spec.n > kMaxStateQubits) throw std::invalid_argument("check: qubit count out of range");
    options.policy.validate();
    if (spec.id != CheckId::lemma8) options.limits.enforce(spec.n, "check");
    const auto odd = [](std::uint64_t M) { return M % 2 == 1; };
    const auto even = [](std::uint64_t M) { return M % 2 == 0; };
    switch (spec.id) {
        case CheckId::lemma1: return check_lemma1(spec, options);
        case CheckId::lemma2_count: return check_lemma2_count(spec, options);
        case CheckId::thm3: return check_thm3(spec, options);
        case CheckId::thm4: return check_thm4(spec, options);
        case CheckId::thm5: return check_thm5(spec, options);
        case CheckId::thm6: return check_thm6(spec, options);
        case CheckId::thm7: return check_thm7(spec, options);
        case CheckId::lemma8: return check_lemma8(spec);
        case CheckId::thm9: return check_dynamics(spec, options, odd, claim_thm9);
        case CheckId::thm10: return check_dynamics(spec, options, even, claim_thm10);
        case CheckId::thm11: return check_dynamics(spec, options, odd, claim_thm11);
        case CheckId::thm12: {
            const int n = spec.n;
            return check_dynamics(spec, options, [n](std::uint64_t M) { return M % 2 == 0 && M * M < dim_of(n); },
                                  claim_thm12);
        }
        case CheckId::table1: return check_dynamics(spec, options, [](std::uint64_t) { return true; }, claim_table1);
    }
    throw std::invalid_argument("check: unknown check id");
}

}  // namespace grover
