#include "grover/entanglement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "grover/errors.hpp"

namespace grover {
namespace {

constexpr double kReconstructionTolerance = 1e-9;
constexpr double kSplitNormSlack = 1.0;
// Ranks are cached per subset mask; larger registers would need a sparse cache.
constexpr int kMaxFactorizationQubits = 24;

QubitMask full_mask(int n) { return n >= 32 ? ~QubitMask{0} : (QubitMask{1} << n) - 1; }

template <class Svd>
Eigen::VectorXd sigma_of(const Eigen::MatrixXd& m) {
    Svd svd(m);
    return svd.singularValues();
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& m) {
    if (std::min(m.rows(), m.cols()) <= 16) return sigma_of<Eigen::JacobiSVD<Eigen::MatrixXd>>(m);
    return sigma_of<Eigen::BDCSVD<Eigen::MatrixXd>>(m);
}

// Leading singular triple of a matrix known to have rank 1.
void leading_pair(const Eigen::MatrixXd& m, std::vector<double>& left, std::vector<double>& right) {
    const auto opts = Eigen::ComputeThinU | Eigen::ComputeThinV;
    Eigen::VectorXd u, v;
    double s = 0.0;
    if (std::min(m.rows(), m.cols()) <= 16) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, opts);
        u = svd.matrixU().col(0);
        v = svd.matrixV().col(0);
        s = svd.singularValues()(0);
    } else {
        Eigen::BDCSVD<Eigen::MatrixXd> svd(m, opts);
        u = svd.matrixU().col(0);
        v = svd.matrixV().col(0);
        s = svd.singularValues()(0);
    }
    left.assign(u.data(), u.data() + u.size());
    right.resize(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) right[static_cast<std::size_t>(i)] = s * v(i);
}

// Positive largest-magnitude amplitude; near-ties resolve to the lowest index.
void fix_sign(std::vector<double>& amps) {
    double peak = 0.0;
    for (double x : amps) peak = std::max(peak, std::abs(x));
    for (double x : amps) {
        if (std::abs(x) >= peak * (1.0 - 1e-9)) {
            if (x < 0.0) {
                for (double& y : amps) y = -y;
            }
            return;
        }
    }
}

std::vector<int> qubits_of(QubitMask mask, const std::vector<int>& remaining) {
    std::vector<int> out;
    for (std::size_t j = 0; j < remaining.size(); ++j) {
        if (mask & (QubitMask{1} << j)) out.push_back(remaining[j]);
    }
    return out;
}

// Next larger integer with the same popcount.
QubitMask next_same_popcount(QubitMask v) {
    const QubitMask t = v | (v - 1);
    return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

}  // namespace

Bipartition Bipartition::make(int n, QubitMask mask_a) {
    if (n < 2 || n > 31) throw std::invalid_argument("bipartition: need 2 <= n <= 31");
    const QubitMask full = full_mask(n);
    if (mask_a == 0 || (mask_a & full) == full || (mask_a & ~full) != 0) {
        throw std::invalid_argument("bipartition: side A must be a nonempty proper subset of the qubits");
    }
    return Bipartition{n, mask_a};
}

Bipartition Bipartition::canonical() const { return (mask_a & 1U) ? *this : Bipartition{n, mask_b()}; }

void RankPolicy::validate() const {
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw std::invalid_argument("rank policy: rel_tol must lie in (0, 1)");
    if (!(ambiguity_factor > 1.0)) throw std::invalid_argument("rank policy: ambiguity_factor must exceed 1");
}

void AnalysisLimits::enforce(int n, const char* who) const {
    if (n > max_qubits && !override_cap) {
        throw ResourceLimitError(std::string(who) + ": " + std::to_string(n) + " qubits exceeds the cap of " +
                                 std::to_string(max_qubits));
    }
    if (n > kMaxFactorizationQubits) {
        throw ResourceLimitError(std::string(who) + ": " + std::to_string(n) + " qubits exceeds the hard limit of " +
                                 std::to_string(kMaxFactorizationQubits));
    }
}

Eigen::MatrixXd bipartition_matrix(const PureState& state, const Bipartition& split) {
    const int n = state.n();
    if (split.n != n) throw std::invalid_argument("bipartition_matrix: split and state sizes differ");
    const int na = std::popcount(split.mask_a);
    Eigen::MatrixXd m(Eigen::Index{1} << na, Eigen::Index{1} << (n - na));
    const auto amps = state.amplitudes();
    for (std::size_t x = 0; x < amps.size(); ++x) {
        Eigen::Index row = 0;
        Eigen::Index col = 0;
        for (int i = 0; i < n; ++i) {
            const auto bit = static_cast<Eigen::Index>((x >> bit_position(n, i)) & 1U);
            if (split.mask_a & (QubitMask{1} << i)) {
                row = (row << 1) | bit;
            } else {
                col = (col << 1) | bit;
            }
        }
        m(row, col) = amps[x];
    }
    return m;
}

RankResult rank_from_singular_values(const Eigen::VectorXd& sigma, Eigen::Index rows, Eigen::Index cols,
                                     const RankPolicy& policy) {
    if (sigma.size() == 0 || !(sigma(0) > 0.0)) throw std::invalid_argument("reduced_rank: zero state");
    const double tau = policy.rel_tol * sigma(0) * static_cast<double>(std::max(rows, cols));
    RankResult out;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        const double s = sigma(i);
        if (s > tau) ++out.rank;
        if (s > tau / policy.ambiguity_factor && s < tau * policy.ambiguity_factor) out.ambiguous = true;
    }
    return out;
}

RankResult reduced_rank(const PureState& state, const Bipartition& split, const RankPolicy& policy) {
    const Bipartition checked = Bipartition::make(state.n(), split.mask_a);
    const Eigen::MatrixXd m = bipartition_matrix(state, checked);
    if (std::min(m.rows(), m.cols()) == 1) {
        if (m.norm() == 0.0) throw std::invalid_argument("reduced_rank: zero state");
        return {1, false};
    }
    return rank_from_singular_values(singular_values(m), m.rows(), m.cols(), policy);
}

std::vector<double> reconstruct(int n, const std::vector<Factor>& factors) {
    std::vector<double> out(std::size_t{1} << n, 1.0);
    for (const auto& f : factors) {
        const auto amps = f.state.amplitudes();
        for (std::size_t x = 0; x < out.size(); ++x) {
            std::size_t local = 0;
            for (int q : f.qubits) local = (local << 1) | ((x >> bit_position(n, q)) & 1U);
            out[x] *= amps[local];
        }
    }
    return out;
}

Factorization finest_factorization(const PureState& state, const RankPolicy& policy, const AnalysisLimits& limits) {
    policy.validate();
    limits.enforce(state.n(), "finest_factorization");
    const int n = state.n();

    Factorization out;
    std::vector<int> remaining(static_cast<std::size_t>(n));
    std::iota(remaining.begin(), remaining.end(), 0);
    std::vector<double> residual(state.amplitudes().begin(), state.amplitudes().end());
    std::vector<std::vector<double>> parts;

    while (!remaining.empty()) {
        const int m = static_cast<int>(remaining.size());
        const PureState local = PureState::normalized(m, residual, kSplitNormSlack);
        if (m == 1) {
            parts.emplace_back(local.amplitudes().begin(), local.amplitudes().end());
            out.factors.push_back(Factor{remaining, local});
            out.per_factor_chi.push_back(1);
            break;
        }

        // Index 0 = not evaluated; otherwise the Schmidt rank across mask : complement.
        std::vector<std::uint16_t> rank_of(std::size_t{1} << m, 0);
        QubitMask found = 0;
        for (int size = 1; size < m && found == 0; ++size) {
            const int others = size - 1;
            const QubitMask limit = QubitMask{1} << (m - 1);
            for (QubitMask o = (QubitMask{1} << others) - 1; o < limit;
                 o = others == 0 ? limit : next_same_popcount(o)) {
                const QubitMask mask = (o << 1) | 1U;
                const RankResult rr = reduced_rank(local, Bipartition{m, mask}, policy);
                rank_of[mask] = static_cast<std::uint16_t>(rr.rank);
                out.ambiguous = out.ambiguous || rr.ambiguous;
                if (rr.rank == 1) {
                    found = mask;
                    break;
                }
            }
        }

        const QubitMask factor_mask = found != 0 ? found : full_mask(m);
        // Every proper subset of the factor that contains its first qubit was evaluated
        // before the factor itself, and its rank across the residual equals the rank
        // inside the factor.
        int chi = 1;
        for (QubitMask sub = (factor_mask - 1) & factor_mask; sub != 0; sub = (sub - 1) & factor_mask) {
            if (sub & 1U) chi = std::max<int>(chi, rank_of[sub]);
        }
        out.per_factor_chi.push_back(chi);

        if (found == 0) {
            parts.emplace_back(local.amplitudes().begin(), local.amplitudes().end());
            out.factors.push_back(Factor{remaining, local});
            break;
        }

        std::vector<double> left;
        std::vector<double> right;
        leading_pair(bipartition_matrix(local, Bipartition{m, found}), left, right);
        const auto factor_qubits = qubits_of(found, remaining);
        const int fq = static_cast<int>(factor_qubits.size());
        parts.push_back(left);
        out.factors.push_back(Factor{factor_qubits, PureState::normalized(fq, left, kSplitNormSlack)});
        remaining = qubits_of(~found & full_mask(m), remaining);
        residual = std::move(right);
    }

    for (std::size_t i = 0; i < out.factors.size(); ++i) {
        fix_sign(parts[i]);
        out.factors[i].state = PureState::normalized(static_cast<int>(out.factors[i].qubits.size()), parts[i], 1e-6);
    }
    std::vector<double> rebuilt = reconstruct(n, out.factors);
    const auto amps = state.amplitudes();
    double overlap = 0.0;
    for (std::size_t x = 0; x < amps.size(); ++x) overlap += rebuilt[x] * amps[x];
    if (overlap < 0.0) {
        auto& first = parts.front();
        for (double& y : first) y = -y;
        out.factors.front().state =
            PureState::normalized(static_cast<int>(out.factors.front().qubits.size()), first, 1e-6);
        for (double& y : rebuilt) y = -y;
    }
    double worst = 0.0;
    for (std::size_t x = 0; x < amps.size(); ++x) worst = std::max(worst, std::abs(rebuilt[x] - amps[x]));
    if (worst > kReconstructionTolerance) {
        throw InternalConsistencyError("finest_factorization: factors reproduce the input only to " +
                                       std::to_string(worst));
    }
    return out;
}

EntanglementReport analyze(const PureState& state, const RankPolicy& policy, const AnalysisLimits& limits) {
    Factorization f = finest_factorization(state, policy, limits);
    EntanglementReport r;
    r.delta = static_cast<int>(f.factors.size());
    r.chi = 1;
    for (int c : f.per_factor_chi) r.chi *= c;
    r.e_chi = std::log2(static_cast<double>(r.chi));
    r.per_factor_chi = std::move(f.per_factor_chi);
    r.factors = std::move(f.factors);
    r.ambiguous = f.ambiguous;
    return r;
}

SchmidtNumber max_schmidt_number(const PureState& state, const RankPolicy& policy, const AnalysisLimits& limits) {
    const EntanglementReport r = analyze(state, policy, limits);
    return {r.chi, r.ambiguous};
}

SchmidtNumber max_schmidt_number_direct(const PureState& state, const RankPolicy& policy,
                                        const AnalysisLimits& limits) {
    policy.validate();
    limits.enforce(state.n(), "max_schmidt_number_direct");
    const int n = state.n();
    SchmidtNumber out;
    if (n == 1) return out;
    const QubitMask full = full_mask(n);
    for (QubitMask mask = 1; mask < full; mask += 2) {
        const RankResult rr = reduced_rank(state, Bipartition{n, mask}, policy);
        out.chi = std::max(out.chi, rr.rank);
        out.ambiguous = out.ambiguous || rr.ambiguous;
    }
    return out;
}

double schmidt_measure(const PureState& state, const RankPolicy& policy, const AnalysisLimits& limits) {
    return analyze(state, policy, limits).e_chi;
}

int separable_degree(const PureState& state, const RankPolicy& policy, const AnalysisLimits& limits) {
    return analyze(state, policy, limits).delta;
}

}  // namespace grover
