#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace grover {

using BasisIndex = std::uint64_t;

/// Solution set of a Boolean oracle over n qubits.
///
/// Members are kept sorted; a dense membership table gives O(1) lookups.
/// The cardinality splits as M = 2^q (2p + 1) when M >= 1.
class MarkedSet {
public:
    MarkedSet(int n, std::vector<BasisIndex> members);

    /// Builds the set from the bits of a mask over basis indices (n <= 6).
    static MarkedSet from_mask(int n, std::uint64_t mask);

    int n() const { return n_; }
    std::size_t size() const { return members_.size(); }
    std::span<const BasisIndex> members() const { return members_; }
    bool contains(BasisIndex x) const { return x < table_.size() && table_[x] != 0; }
    bool empty() const { return members_.empty(); }

    /// 2-adic valuation of M. Requires M >= 1.
    int q() const;
    /// Odd part index: M = 2^q (2p + 1). Requires M >= 1.
    std::uint64_t p() const;

    /// Complement within {0, ..., 2^n - 1}.
    MarkedSet complement() const;

    friend bool operator==(const MarkedSet& a, const MarkedSet& b) {
        return a.n_ == b.n_ && a.members_ == b.members_;
    }

private:
    int n_;
    std::vector<BasisIndex> members_;
    std::vector<std::uint8_t> table_;
};

}  // namespace grover
