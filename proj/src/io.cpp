#include "grover/io.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace grover {
namespace {

using nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

ordered_json report_object(const EntanglementReport& report) {
    ordered_json factors = ordered_json::array();
    for (const auto& f : report.factors) {
        const auto amps = f.state.amplitudes();
        factors.push_back({{"qubits", f.qubits}, {"amplitudes", std::vector<double>(amps.begin(), amps.end())}});
    }
    return {{"delta", report.delta},
            {"chi", report.chi},
            {"e_chi", report.e_chi},
            {"factors", std::move(factors)},
            {"ambiguous", report.ambiguous}};
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string format_real(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

BasisIndex parse_basis_entry(int n, std::string_view text) {
    text = trim(text);
    if (text.empty()) throw std::invalid_argument("empty marked entry");
    const std::uint64_t dim = std::uint64_t{1} << n;
    const bool bits = text.size() == static_cast<std::size_t>(n) && text.find_first_not_of("01") == std::string_view::npos;
    if (bits && (n > 1 || text.size() > 1)) {
        BasisIndex x = 0;
        for (char c : text) x = (x << 1) | static_cast<BasisIndex>(c == '1');
        return x;
    }
    BasisIndex x = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), x);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw std::invalid_argument("malformed marked entry '" + std::string(text) + "'");
    }
    if (x >= dim) {
        throw std::out_of_range("marked entry " + std::to_string(x) + " is not below 2^" + std::to_string(n));
    }
    return x;
}

MarkedSet parse_marked_list(int n, std::string_view text) {
    std::vector<BasisIndex> entries;
    text = trim(text);
    if (!text.empty()) {
        std::size_t start = 0;
        while (true) {
            const auto comma = text.find(',', start);
            entries.push_back(parse_basis_entry(n, text.substr(start, comma - start)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
    }
    return MarkedSet(n, std::move(entries));
}

MarkedSet parse_oracle_file(int n, std::istream& in) {
    std::vector<BasisIndex> entries;
    std::string line;
    while (std::getline(in, line)) {
        const auto body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        entries.push_back(parse_basis_entry(n, body));
    }
    return MarkedSet(n, std::move(entries));
}

PureState parse_state_json(std::string_view text, double tolerance) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("state file: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("amplitudes") || !j["n"].is_number_integer() ||
        !j["amplitudes"].is_array()) {
        throw std::invalid_argument("state file: expected {\"n\": int, \"amplitudes\": [...]}");
    }
    const int n = j["n"].get<int>();
    if (n < 1 || n > kMaxStateQubits) throw std::invalid_argument("state file: n out of range");
    std::vector<double> amps;
    amps.reserve(j["amplitudes"].size());
    for (const auto& v : j["amplitudes"]) {
        if (!v.is_number()) throw std::invalid_argument("state file: amplitudes must be real numbers");
        amps.push_back(v.get<double>());
    }
    if (amps.size() != (std::size_t{1} << n)) {
        throw std::invalid_argument("state file: expected 2^n amplitudes");
    }
    return PureState::normalized(n, std::move(amps), tolerance);
}

std::string state_json(const PureState& state) {
    const auto amps = state.amplitudes();
    return dump({{"n", state.n()}, {"amplitudes", std::vector<double>(amps.begin(), amps.end())}});
}

std::string report_json(const EntanglementReport& report) { return dump(report_object(report)); }

std::string trace_csv(const DynamicsTrace& trace) {
    std::ostringstream out;
    out << "step_index,label,k,a,b,success_probability,delta,chi,e_chi,ambiguous,closed_form_deviation\n";
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& s = trace.steps[i];
        out << i << ',' << s.label.name() << ',' << s.label.k << ',' << (s.a ? format_real(*s.a) : "") << ','
            << (s.b ? format_real(*s.b) : "") << ',' << format_real(s.success_probability) << ',' << s.report.delta
            << ',' << s.report.chi << ',' << format_real(s.report.e_chi) << ',' << (s.report.ambiguous ? 1 : 0) << ','
            << format_real(s.closed_form_deviation) << '\n';
    }
    return out.str();
}

std::string trace_json(const DynamicsTrace& trace) {
    const auto members = trace.marked.members();
    ordered_json header{{"n", trace.params.n},
                        {"M", trace.params.M},
                        {"theta", trace.params.theta},
                        {"R", trace.params.R},
                        {"final_cos_zero", trace.final_cos_zero},
                        {"marked", std::vector<BasisIndex>(members.begin(), members.end())}};
    ordered_json steps = ordered_json::array();
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& s = trace.steps[i];
        steps.push_back({{"step_index", i},
                         {"label", s.label.name()},
                         {"k", s.label.k},
                         {"a", s.a ? ordered_json(*s.a) : ordered_json(nullptr)},
                         {"b", s.b ? ordered_json(*s.b) : ordered_json(nullptr)},
                         {"success_probability", s.success_probability},
                         {"report", report_object(s.report)},
                         {"closed_form_deviation", s.closed_form_deviation}});
    }
    return dump({{"header", std::move(header)}, {"steps", std::move(steps)}});
}

std::string check_result_json(const CheckResult& result) {
    ordered_json violations = ordered_json::array();
    for (const auto& v : result.violations) {
        violations.push_back(
            {{"marked", v.marked}, {"step", v.step}, {"observed", v.observed}, {"predicted", v.predicted}});
    }
    ordered_json summary = ordered_json::object();
    for (const auto& [key, count] : result.summary) summary[key] = count;
    return dump({{"check_id", to_string(result.id)},
                 {"n", result.n},
                 {"instances_tested", result.instances_tested},
                 {"violations", std::move(violations)},
                 {"ambiguous_count", result.ambiguous_count},
                 {"verdict", to_string(result.verdict)},
                 {"summary", std::move(summary)}});
}

std::string separable_count_json(int n, std::uint64_t M, const SeparableCount& count) {
    return dump({{"check_id", "lemma2_count"},
                 {"n", n},
                 {"M", M},
                 {"brute_count", count.brute_count},
                 {"formula_count", count.formula_count},
                 {"total", count.total},
                 {"ambiguous_count", count.ambiguous}});
}

std::string fraction_report_json(const FractionReport& report) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"n", r.n},
                        {"brute_count", r.count.brute_count},
                        {"formula_count", r.count.formula_count},
                        {"total", r.count.total},
                        {"fraction", r.fraction}});
    }
    return dump({{"M", report.M}, {"rows", std::move(rows)}, {"strictly_decreasing", report.strictly_decreasing}});
}

}  // namespace grover
