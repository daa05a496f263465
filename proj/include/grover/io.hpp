#pragma once

#include <istream>
#include <string>
#include <string_view>

#include "grover/dynamics.hpp"
#include "grover/entanglement.hpp"
#include "grover/marked_set.hpp"
#include "grover/state.hpp"
#include "grover/verifier.hpp"

namespace grover {

/// Tolerance on the norm of amplitudes read from a state file before renormalization.
inline constexpr double kStateFileNormTolerance = 1e-6;

/// 17 significant digits, '.' separator, independent of the global locale.
std::string format_real(double value);

/// One marked entry: decimal index below 2^n, or an n-character bit string with qubit 0 leftmost.
BasisIndex parse_basis_entry(int n, std::string_view text);

/// Comma-separated entries, e.g. "0,3" or "000,011".
MarkedSet parse_marked_list(int n, std::string_view text);

/// One entry per line; blank lines and lines starting with '#' are skipped.
MarkedSet parse_oracle_file(int n, std::istream& in);

/// {"n": int, "amplitudes": [...]}; throws std::invalid_argument on malformed input.
PureState parse_state_json(std::string_view text, double tolerance = kStateFileNormTolerance);

std::string state_json(const PureState& state);
std::string report_json(const EntanglementReport& report);
std::string trace_csv(const DynamicsTrace& trace);
std::string trace_json(const DynamicsTrace& trace);
std::string check_result_json(const CheckResult& result);
std::string separable_count_json(int n, std::uint64_t M, const SeparableCount& count);
std::string fraction_report_json(const FractionReport& report);

}  // namespace grover
