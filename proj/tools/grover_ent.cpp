#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grover/combinatorics.hpp"
#include "grover/dynamics.hpp"
#include "grover/entanglement.hpp"
#include "grover/errors.hpp"
#include "grover/io.hpp"
#include "grover/parallel.hpp"
#include "grover/table1.hpp"
#include "grover/verifier.hpp"

namespace {

using namespace grover;

enum Exit { kOk = 0, kViolation = 1, kUsage = 2, kAmbiguous = 3, kInternal = 4 };

constexpr int kDefaultEntanglementCap = 16;
constexpr int kDefaultSimulationCap = 20;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    int n = 0;
    std::optional<std::string> marked;
    std::optional<std::string> oracle_file;
    std::string state_file;
    std::string check_name;
    std::optional<std::uint64_t> m;
    std::optional<std::string> m_range;
    bool exhaustive = false;
    std::optional<std::uint64_t> samples;
    std::uint64_t seed = 0;
    std::optional<std::string> format;
    std::string out;
    std::optional<double> tol;
    std::optional<int> max_n;
    int jobs = 1;
};

int entanglement_cap(const Config& cfg) {
    if (cfg.max_n) return *cfg.max_n;
    if (const char* env = std::getenv("GROVER_ENT_MAX_N")) {
        int v = 0;
        const std::string_view text(env);
        const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
        if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || v < 1) {
            throw UsageError("GROVER_ENT_MAX_N must be a positive integer");
        }
        return v;
    }
    return kDefaultEntanglementCap;
}

RankPolicy policy_of(const Config& cfg) {
    RankPolicy p;
    if (cfg.tol) p.rel_tol = *cfg.tol;
    p.validate();
    return p;
}

AnalysisLimits limits_of(const Config& cfg) { return AnalysisLimits{entanglement_cap(cfg), false}; }

std::string format_of(const Config& cfg, const char* fallback) {
    const std::string f = cfg.format.value_or(fallback);
    if (f != "csv" && f != "json") throw UsageError("--format must be csv or json");
    return f;
}

void require_n(const Config& cfg) {
    if (cfg.n < 1) throw UsageError("--n is required and must be >= 1");
    if (cfg.n > kMaxStateQubits) throw UsageError("--n exceeds the state-vector limit");
}

void emit(const Config& cfg, const std::string& content) {
    if (cfg.out.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw UsageError("cannot open output file " + cfg.out);
    f << content;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

MarkedSet marked_of(const Config& cfg) {
    if (cfg.marked.has_value() == cfg.oracle_file.has_value()) {
        throw UsageError("give exactly one of --marked and --oracle-file");
    }
    if (cfg.marked) return parse_marked_list(cfg.n, *cfg.marked);
    std::ifstream f(*cfg.oracle_file);
    if (!f) throw UsageError("cannot read " + *cfg.oracle_file);
    return parse_oracle_file(cfg.n, f);
}

std::pair<std::uint64_t, std::uint64_t> m_range_of(const Config& cfg) {
    if (cfg.m && cfg.m_range) throw UsageError("give at most one of --m and --m-range");
    if (cfg.m) return {*cfg.m, *cfg.m};
    if (!cfg.m_range) return {1, (std::uint64_t{1} << (cfg.n - 1)) - 1};
    const std::string& r = *cfg.m_range;
    const auto dots = r.find("..");
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    const auto parse = [&](std::string_view s, std::uint64_t& v) {
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        return res.ec == std::errc{} && res.ptr == s.data() + s.size() && !s.empty();
    };
    if (dots == std::string::npos || !parse(std::string_view(r).substr(0, dots), lo) ||
        !parse(std::string_view(r).substr(dots + 2), hi) || lo > hi) {
        throw UsageError("--m-range must look like a..b with a <= b");
    }
    return {lo, hi};
}

int exit_for(bool violation, bool ambiguous) {
    if (violation) return kViolation;
    return ambiguous ? kAmbiguous : kOk;
}

// ---------------------------------------------------------------- trace

int cmd_trace(const Config& cfg) {
    require_n(cfg);
    if (cfg.n > std::max(kDefaultSimulationCap, entanglement_cap(cfg))) {
        throw ResourceLimitError("trace: n exceeds the simulation cap; raise it with --max-n");
    }
    const auto format = format_of(cfg, "csv");
    const MarkedSet marked = marked_of(cfg);
    const auto trace = run_dynamics(cfg.n, marked, DynamicsOptions{policy_of(cfg), limits_of(cfg), cfg.jobs});
    emit(cfg, format == "csv" ? trace_csv(trace) : trace_json(trace));
    const auto& f = trace.final_step();
    std::ostream& summary = cfg.out.empty() ? std::cerr : std::cout;
    summary << "n=" << trace.params.n << " M=" << trace.params.M << " theta=" << format_real(trace.params.theta)
            << " R=" << trace.params.R << " epsilon=" << format_real(f.success_probability)
            << " delta=" << f.report.delta << " chi=" << f.report.chi << '\n';
    return exit_for(false, trace.ambiguous());
}

// ---------------------------------------------------------------- analyze

int cmd_analyze(const Config& cfg) {
    if (cfg.state_file.empty()) throw UsageError("--state is required");
    const auto format = format_of(cfg, "json");
    const PureState state = parse_state_json(read_file(cfg.state_file));
    const auto report = analyze(state, policy_of(cfg), limits_of(cfg));
    if (format == "json") {
        emit(cfg, report_json(report));
    } else {
        std::ostringstream out;
        out << "delta,chi,e_chi,ambiguous,factors\n"
            << report.delta << ',' << report.chi << ',' << format_real(report.e_chi) << ','
            << (report.ambiguous ? 1 : 0) << ',';
        for (std::size_t i = 0; i < report.factors.size(); ++i) {
            if (i) out << ';';
            const auto& q = report.factors[i].qubits;
            for (std::size_t j = 0; j < q.size(); ++j) out << (j ? "|" : "") << q[j];
        }
        out << '\n';
        emit(cfg, out.str());
    }
    return exit_for(false, report.ambiguous);
}

// ---------------------------------------------------------------- verify

CheckOptions check_options(const Config& cfg) {
    CheckOptions o;
    o.policy = policy_of(cfg);
    o.limits = limits_of(cfg);
    o.jobs = cfg.jobs;
    return o;
}

std::string check_result_csv(const CheckResult& r) {
    std::ostringstream out;
    out << "key,value\n"
        << "check_id," << to_string(r.id) << '\n'
        << "n," << r.n << '\n'
        << "instances_tested," << r.instances_tested << '\n'
        << "violations," << r.violations.size() << '\n'
        << "ambiguous_count," << r.ambiguous_count << '\n'
        << "verdict," << to_string(r.verdict) << '\n';
    for (const auto& [key, count] : r.summary) out << key << ',' << count << '\n';
    return out.str();
}

int cmd_verify(const Config& cfg) {
    require_n(cfg);
    const auto format = format_of(cfg, "csv");
    if (cfg.exhaustive && cfg.samples) throw UsageError("give at most one of --exhaustive and --samples");
    const auto options = check_options(cfg);

    if (cfg.check_name == "fraction") {
        const std::uint64_t M = cfg.m.value_or(2);
        const auto report = fraction_report(3, cfg.n, M, options);
        if (format == "json") {
            emit(cfg, fraction_report_json(report));
        } else {
            std::ostringstream out;
            out << "n,M,brute_count,formula_count,total,fraction\n";
            for (const auto& r : report.rows) {
                out << r.n << ',' << M << ',' << r.count.brute_count << ',' << r.count.formula_count << ','
                    << r.count.total << ',' << format_real(r.fraction) << '\n';
            }
            emit(cfg, out.str());
        }
        bool ambiguous = false;
        for (const auto& r : report.rows) ambiguous = ambiguous || r.count.ambiguous > 0;
        return exit_for(!report.strictly_decreasing, ambiguous);
    }

    const auto id = parse_check_id(cfg.check_name);
    if (!id) throw UsageError("unknown check id '" + cfg.check_name + "'");
    CheckSpec spec;
    spec.id = *id;
    spec.n = cfg.n;
    spec.m_filter = cfg.m;
    spec.exhaustive = !cfg.samples.has_value();
    if (cfg.samples) spec.sampling = Sampled{*cfg.samples, cfg.seed};
    const auto result = check(spec, options);
    emit(cfg, format == "json" ? check_result_json(result) : check_result_csv(result));
    return exit_for(result.verdict == Verdict::fail, result.verdict == Verdict::pass_with_ambiguity);
}

// ---------------------------------------------------------------- sweep

struct SweepRow {
    std::string line;
    bool conforms = true;
    bool ambiguous = false;
};

std::string distinct_join(const std::vector<int>& values) {
    const std::set<int> s(values.begin(), values.end());
    std::string out;
    for (int v : s) out += (out.empty() ? "" : "|") + std::to_string(v);
    return out;
}

SweepRow sweep_row(int n, const std::vector<BasisIndex>& members, const DynamicsOptions& dyn) {
    const MarkedSet marked(n, members);
    const auto trace = run_dynamics(n, marked, dyn);
    const auto cls = classify_trace(trace);
    std::vector<int> mid_delta;
    std::vector<int> mid_chi;
    for (std::size_t i = 2; i + 1 < trace.steps.size(); ++i) {
        mid_delta.push_back(trace.steps[i].report.delta);
        mid_chi.push_back(trace.steps[i].report.chi);
    }
    std::ostringstream out;
    out << n << ',' << marked.size() << ',';
    for (std::size_t i = 0; i < members.size(); ++i) out << (i ? ";" : "") << members[i];
    const auto& first = trace.first_oracle().report;
    const auto& last = trace.final_step().report;
    out << ',' << to_string(cls.row) << ',' << cls.subrow_k << ',' << trace.params.R << ','
        << (trace.final_cos_zero ? 1 : 0) << ',' << first.delta << ',' << first.chi << ','
        << distinct_join(mid_delta) << ',' << distinct_join(mid_chi) << ',' << last.delta << ',' << last.chi << ','
        << (cls.conforms ? 1 : 0) << '\n';
    return SweepRow{out.str(), cls.conforms, trace.ambiguous()};
}

int cmd_sweep(const Config& cfg) {
    require_n(cfg);
    if (cfg.n < 2) throw UsageError("sweep needs n >= 2");
    const auto format = format_of(cfg, "csv");
    if (format != "csv") throw UsageError("sweep writes csv only");
    if (cfg.exhaustive && cfg.samples) throw UsageError("give at most one of --exhaustive and --samples");
    const auto [lo, hi] = m_range_of(cfg);
    const std::uint64_t half = std::uint64_t{1} << (cfg.n - 1);
    if (lo < 1 || hi >= half) throw UsageError("M range must lie in [1, 2^(n-1) - 1]");
    limits_of(cfg).enforce(cfg.n, "sweep");

    std::vector<std::vector<BasisIndex>> instances;
    if (!cfg.samples) {
        if (cfg.n > 5) throw ResourceLimitError("exhaustive sweep needs n <= 5; use --samples");
        std::uint64_t total = 0;
        for (std::uint64_t M = lo; M <= hi; ++M) total += binomial(2 * half, M);
        if (total > CheckOptions{}.max_instances) throw ResourceLimitError("exhaustive sweep too large; use --samples");
        for (std::uint64_t M = lo; M <= hi; ++M) {
            for (auto& s : all_subsets(cfg.n, M)) instances.push_back(std::move(s));
        }
    } else {
        // --samples marked sets per M value.
        std::uint64_t index = 0;
        for (std::uint64_t M = lo; M <= hi; ++M) {
            for (std::uint64_t i = 0; i < *cfg.samples; ++i, ++index) {
                auto rng = instance_rng(cfg.seed, index);
                instances.push_back(random_subset(cfg.n, M, rng));
            }
        }
    }

    const DynamicsOptions dyn{policy_of(cfg), limits_of(cfg), 1};
    std::vector<SweepRow> rows(instances.size());
    parallel_for(instances.size(), cfg.jobs, [&](std::size_t i) { rows[i] = sweep_row(cfg.n, instances[i], dyn); });

    std::string out =
        "n,M,marked,row,subrow_k,R,final_cos_zero,first_delta,first_chi,intermediate_delta,intermediate_chi,"
        "final_delta,final_chi,conforms\n";
    bool violation = false;
    bool ambiguous = false;
    for (const auto& r : rows) {
        out += r.line;
        violation = violation || !r.conforms;
        ambiguous = ambiguous || r.ambiguous;
    }
    emit(cfg, out);
    return exit_for(violation, ambiguous);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement dynamics of Grover search: traces, analysis, verification, sweeps"};
    app.require_subcommand(1);
    Config cfg;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "csv or json");
        sub->add_option("--out", cfg.out, "Output file (default stdout)");
        sub->add_option("--tol", cfg.tol, "Relative singular-value tolerance");
        sub->add_option("--max-n", cfg.max_n, "Qubit cap for entanglement analysis");
        sub->add_option("--jobs", cfg.jobs, "Worker count")->check(CLI::PositiveNumber);
    };
    const auto add_marked = [&](CLI::App* sub) {
        sub->add_option("--marked", cfg.marked, "Comma-separated decimal indices or n-bit strings");
        sub->add_option("--oracle-file", cfg.oracle_file, "File with one marked entry per line");
    };

    auto* trace = app.add_subcommand("trace", "Run the algorithm and measure every state");
    trace->add_option("--n", cfg.n, "Qubit count")->required();
    add_marked(trace);
    add_common(trace);

    auto* an = app.add_subcommand("analyze", "Entanglement report for a state file");
    an->add_option("--state", cfg.state_file, "State JSON file")->required();
    add_common(an);

    auto* verify = app.add_subcommand("verify", "Finite-model check of a structural claim");
    verify->add_option("--check", cfg.check_name, "Check id, or 'fraction'")->required();
    verify->add_option("--n", cfg.n, "Qubit count")->required();
    verify->add_option("--m", cfg.m, "Restrict to one marked-set size");
    verify->add_flag("--exhaustive", cfg.exhaustive, "Enumerate every marked set (default)");
    verify->add_option("--samples", cfg.samples, "Number of seeded random marked sets");
    verify->add_option("--seed", cfg.seed, "Sampling seed");
    add_common(verify);

    auto* sweep = app.add_subcommand("sweep", "Table classification of every trace over an M range");
    sweep->add_option("--n", cfg.n, "Qubit count")->required();
    sweep->add_option("--m", cfg.m, "Single marked-set size");
    sweep->add_option("--m-range", cfg.m_range, "Marked-set sizes a..b");
    sweep->add_flag("--exhaustive", cfg.exhaustive, "Enumerate every marked set (default)");
    sweep->add_option("--samples", cfg.samples, "Seeded random marked sets per M");
    sweep->add_option("--seed", cfg.seed, "Sampling seed");
    add_common(sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*trace) return cmd_trace(cfg);
        if (*an) return cmd_analyze(cfg);
        if (*verify) return cmd_verify(cfg);
        return cmd_sweep(cfg);
    } catch (const InternalConsistencyError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
}
